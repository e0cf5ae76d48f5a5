#include <benchmark/benchmark.h>

#include <memory>

#include "sbplate/solver.hpp"

namespace {

using namespace sbplate;

void BM_GllRule(benchmark::State& state) {
    const int p = static_cast<int>(state.range(0));
    for (auto _ : state) {
        const SpectralBasis1D rule = gll_rule(p);
        benchmark::DoNotOptimize(rule.weights().sum());
    }
}
BENCHMARK(BM_GllRule)->Arg(3)->Arg(8)->Arg(16);

void BM_ElementMatrices(benchmark::State& state) {
    const SpectralMesh mesh(PlateGeometry{1.0, 1.0, 0.01, 0.3}, 2, 2, static_cast<int>(state.range(0)));
    const MaterialPair pair = MaterialPair::si3n4_sus304(1.0);
    for (auto _ : state) {
        const ElementOperators ops = element_coefficient_matrices(mesh, 0, pair);
        benchmark::DoNotOptimize(ops.E2(0, 0));
    }
}
BENCHMARK(BM_ElementMatrices)->Arg(3)->Arg(5);

void BM_SystemBuild(benchmark::State& state) {
    const int ne = static_cast<int>(state.range(0));
    auto mesh = std::make_shared<const SpectralMesh>(PlateGeometry{1.0, 1.0, 1e-3, 0.0}, ne, ne, 3);
    const MaterialPair pair = MaterialPair::si3n4_sus304(1.0);
    for (auto _ : state) {
        const GlobalSystem system(mesh, pair);
        benchmark::DoNotOptimize(system.mass_per_thickness());
    }
}
BENCHMARK(BM_SystemBuild)->Unit(benchmark::kMillisecond)->Arg(4)->Arg(8);

void BM_VibrationSolve(benchmark::State& state) {
    const int ne = static_cast<int>(state.range(0));
    auto mesh = std::make_shared<const SpectralMesh>(PlateGeometry{1.0, 1.0, 1e-3, 0.0}, ne, ne, 3);
    const GlobalSystem system(mesh, MaterialPair::si3n4_sus304(0.0));
    const ConstraintSet cs = constrained_dofs(*mesh, BoundarySpec::parse("SSSS"));
    const std::vector<int> free = cs.free_dofs();
    const Eigen::MatrixXd Kf = select_free(system.plate_stiffness(1e-3), free);
    const Eigen::VectorXd Mf = select_free(system.mass_diagonal(1e-3), free);
    for (auto _ : state) {
        const Solution sol = solve_vibration(Kf, Mf, 4);
        benchmark::DoNotOptimize(sol.values(0));
    }
}
BENCHMARK(BM_VibrationSolve)->Unit(benchmark::kMillisecond)->Arg(4)->Arg(8);

} // namespace

BENCHMARK_MAIN();
