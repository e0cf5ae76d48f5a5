#include "sbplate/analysis.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace sbplate {

namespace {

const double kPi = std::acos(-1.0);

void run_parallel(int count, int workers, const std::function<void(int)>& body) {
    workers = std::max(1, std::min(workers, count));
    if (workers == 1) {
        for (int i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1))
                body(i);
        });
    }
    for (std::thread& t : pool)
        t.join();
}

nlohmann::ordered_json geometry_json(const PlateGeometry& g) {
    return {{"a", g.a}, {"b", g.b}, {"h", g.h}, {"psi_deg", g.psi * 180.0 / kPi}};
}

nlohmann::ordered_json phase_json(const PhaseProperties& p) {
    return {{"E_GPa", p.E / 1e9}, {"nu", p.nu}, {"rho", p.rho}};
}

} // namespace

int max_concurrency() {
    if (const char* env = std::getenv("SBPLATE_MAX_CONCURRENCY")) {
        const int v = std::atoi(env);
        if (v >= 1)
            return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

AnalysisResult run_analysis(const RunConfig& config) {
    config.validate();
    auto mesh = std::make_shared<const SpectralMesh>(config.geometry, config.mesh.nex,
                                                     config.mesh.nez, config.mesh.order);
    const GlobalSystem system(mesh, config.material);
    return run_on_system(system, config);
}

AnalysisResult run_on_system(const GlobalSystem& system, const RunConfig& config,
                             std::optional<double> omega_length) {
    const SpectralMesh& mesh = system.mesh();
    const PlateGeometry& geom = mesh.geometry();
    const double h = config.geometry.h;

    const ConstraintSet constraints = constrained_dofs(mesh, config.bc);
    const std::vector<int> free = constraints.free_dofs();

    AnalysisResult result;
    result.config = config;
    result.mesh = system.mesh_ptr();

    Eigen::MatrixXd K = system.plate_stiffness(h, &result.asymmetry_norm);
    apply_node_rotations(K, constraints);
    Eigen::MatrixXd Kf = select_free(K, free);
    K.resize(0, 0);

    Solution sol;
    if (config.analysis.kind == AnalysisKind::Vibration) {
        const Eigen::VectorXd Mf = select_free(system.mass_diagonal(h), free);
        sol = solve_vibration(Kf, Mf, config.analysis.modes);
    } else {
        if (constraints.count_constrained() == 0)
            throw NumericalError("buckling analysis of a fully free plate is rejected; "
                                 "constrain at least one edge");
        Eigen::MatrixXd KG = system.geometric_stiffness(
            unit_resultants(config.analysis.load == LoadCase::Biaxial), config.analysis.kg_mode, h);
        apply_node_rotations(KG, constraints);
        const Eigen::MatrixXd KGf = select_free(KG, free);
        KG.resize(0, 0);
        sol = solve_buckling(Kf, KGf, config.analysis.modes);
    }

    normalize_mode_signs(sol.vectors, free);

    const PhaseProperties& ceramic = config.material.ceramic;
    result.modes.reserve(static_cast<std::size_t>(sol.values.size()));
    for (int i = 0; i < sol.values.size(); ++i) {
        ModeResult mode;
        mode.index = i + 1;
        mode.raw = sol.values(i);
        if (config.analysis.kind == AnalysisKind::Vibration) {
            const double L = omega_length.value_or(geom.a);
            mode.nondimensional = omega_bar(std::sqrt(std::max(0.0, mode.raw)), L, h, ceramic);
        } else {
            mode.nondimensional = lambda_bar(mode.raw, geom.b, h, ceramic);
        }
        result.modes.push_back(mode);
    }

    result.mode_shapes.resize(3 * mesh.num_nodes(), sol.vectors.cols());
    for (int c = 0; c < sol.vectors.cols(); ++c)
        result.mode_shapes.col(c) = expand_mode(sol.vectors.col(c), constraints, free);
    return result;
}

std::string format_significant(double value, int digits) {
    if (std::isnan(value))
        return "nan";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%#.*g", digits, value);
    std::string s(buf);
    if (!s.empty() && s.back() == '.')
        s.pop_back();
    return s;
}

void write_result_csv(const AnalysisResult& result, std::ostream& out) {
    out << "mode_index,raw_eigenvalue,nondimensional_value\n";
    for (const ModeResult& m : result.modes)
        out << m.index << ',' << format_significant(m.raw) << ','
            << format_significant(m.nondimensional) << '\n';
}

void write_result_json(const AnalysisResult& result, std::ostream& out) {
    using nlohmann::ordered_json;
    const RunConfig& cfg = result.config;

    ordered_json modes = ordered_json::array();
    for (const ModeResult& m : result.modes) {
        modes.push_back({{"index", m.index},
                         {"raw_eigenvalue", std::stod(format_significant(m.raw, 9))},
                         {"nondimensional", std::stod(format_significant(m.nondimensional, 9))}});
    }

    ordered_json doc;
    doc["analysis"] = to_string(cfg.analysis.kind);
    doc["modes"] = modes;
    ordered_json meta;
    meta["geometry"] = geometry_json(cfg.geometry);
    meta["material"] = {{"ceramic", phase_json(cfg.material.ceramic)},
                        {"metal", phase_json(cfg.material.metal)},
                        {"gradient_index", cfg.material.gradient_index}};
    meta["mesh"] = {{"nex", cfg.mesh.nex}, {"nez", cfg.mesh.nez}, {"order", cfg.mesh.order}};
    meta["bc"] = cfg.bc.str();
    meta["modes_requested"] = cfg.analysis.modes;
    if (cfg.analysis.kind == AnalysisKind::Buckling)
        meta["load"] = to_string(cfg.analysis.load);
    ordered_json decisions;
    decisions["kg_mode"] = to_string(cfg.analysis.kg_mode);
    decisions["elasticity_matrix"] = "full-3d-isotropic-6x6";
    decisions["omega_bar_definition"] = "omega*(L/pi)^2*sqrt(rho_c*h/D_c), L = plate length a";
    decisions["edge_letter_order"] = "[t=0, s=a, t=b, s=0]";
    decisions["asymmetry_norm"] = result.asymmetry_norm;
    meta["decisions"] = decisions;
    doc["metadata"] = meta;

    out << doc.dump(2) << '\n';
}

void emit_result(const AnalysisResult& result) {
    const OutputSpec& spec = result.config.output;
    const auto write = [&](std::ostream& out) {
        if (spec.format == OutputFormat::Csv)
            write_result_csv(result, out);
        else
            write_result_json(result, out);
    };
    if (spec.path.empty()) {
        write(std::cout);
        return;
    }
    std::ofstream out(spec.path);
    if (!out)
        throw ConfigError("output: cannot open '" + spec.path + "' for writing");
    write(out);
}

void write_mesh_csv(const SpectralMesh& mesh, std::ostream& out) {
    out << "node,x,y\n";
    for (int i = 0; i < mesh.num_nodes(); ++i)
        out << i << ',' << format_significant(mesh.node_x(i)) << ','
            << format_significant(mesh.node_y(i)) << '\n';
}

void write_modes_csv(const AnalysisResult& result, std::ostream& out) {
    if (!result.mesh)
        throw NumericalError("write_modes_csv: result carries no mesh");
    const SpectralMesh& mesh = *result.mesh;
    out << "mode_index,node,x,y,theta_ux,theta_uy,w\n";
    for (int c = 0; c < result.mode_shapes.cols(); ++c) {
        for (int i = 0; i < mesh.num_nodes(); ++i) {
            out << (c + 1) << ',' << i << ',' << format_significant(mesh.node_x(i)) << ','
                << format_significant(mesh.node_y(i)) << ','
                << format_significant(result.mode_shapes(3 * i + 0, c)) << ','
                << format_significant(result.mode_shapes(3 * i + 1, c)) << ','
                << format_significant(result.mode_shapes(3 * i + 2, c)) << '\n';
        }
    }
}

SweepParameter parse_sweep_parameter(const std::string& name) {
    if (name == "a_over_b")
        return SweepParameter::AspectRatio;
    if (name == "n")
        return SweepParameter::GradientIndex;
    if (name == "psi")
        return SweepParameter::SkewAngle;
    throw ConfigError("sweep: unknown parameter '" + name + "' (expected a_over_b, n or psi)");
}

std::string to_string(SweepParameter parameter) {
    switch (parameter) {
    case SweepParameter::AspectRatio: return "a_over_b";
    case SweepParameter::GradientIndex: return "n";
    case SweepParameter::SkewAngle: return "psi";
    }
    return "?";
}

SweepResult sweep(const RunConfig& base, SweepParameter parameter,
                  const std::vector<double>& values) {
    if (values.empty())
        throw ConfigError("sweep: the value list must not be empty");

    SweepResult result;
    result.parameter = parameter;
    const bool vibration = base.analysis.kind == AnalysisKind::Vibration;
    if (vibration)
        result.columns = {"omega_bar_1", "omega_bar_2", "omega_bar_3", "omega_bar_4"};
    else
        result.columns = {"lambda_cru", "lambda_crb"};
    result.rows.resize(values.size());

    run_parallel(static_cast<int>(values.size()), max_concurrency(), [&](int idx) {
        SweepRow& row = result.rows[static_cast<std::size_t>(idx)];
        row.value = values[static_cast<std::size_t>(idx)];
        row.results.assign(result.columns.size(), std::numeric_limits<double>::quiet_NaN());
        try {
            RunConfig cfg = base;
            std::optional<double> omega_length;
            switch (parameter) {
            case SweepParameter::AspectRatio:
                if (!(row.value > 0.0))
                    throw ConfigError("sweep: aspect ratio must be positive");
                cfg.geometry.a = row.value * cfg.geometry.b;
                omega_length = cfg.geometry.b; // fixed-width normalization
                break;
            case SweepParameter::GradientIndex:
                cfg.material.gradient_index = row.value;
                break;
            case SweepParameter::SkewAngle:
                cfg.geometry.psi = row.value * kPi / 180.0;
                break;
            }
            cfg.validate();

            auto mesh = std::make_shared<const SpectralMesh>(cfg.geometry, cfg.mesh.nex,
                                                             cfg.mesh.nez, cfg.mesh.order);
            const GlobalSystem system(mesh, cfg.material);
            if (vibration) {
                cfg.analysis.modes = 4;
                const AnalysisResult r = run_on_system(system, cfg, omega_length);
                for (std::size_t m = 0; m < 4 && m < r.modes.size(); ++m)
                    row.results[m] = r.modes[m].nondimensional;
            } else {
                cfg.analysis.modes = 1;
                cfg.analysis.load = LoadCase::Uniaxial;
                row.results[0] = run_on_system(system, cfg, omega_length).modes.at(0).nondimensional;
                cfg.analysis.load = LoadCase::Biaxial;
                row.results[1] = run_on_system(system, cfg, omega_length).modes.at(0).nondimensional;
            }
        } catch (const std::exception& e) {
            row.ok = false;
            row.message = e.what();
        }
    });

    for (const SweepRow& row : result.rows) {
        if (!row.ok)
            std::cerr << "sweep: point " << format_significant(row.value) << " failed: "
                      << row.message << '\n';
    }
    return result;
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
    out << to_string(result.parameter);
    for (const std::string& c : result.columns)
        out << ',' << c;
    out << '\n';
    for (const SweepRow& row : result.rows) {
        out << format_significant(row.value);
        for (double v : row.results)
            out << ',' << format_significant(v);
        out << '\n';
    }
}

ConvergenceResult convergence_study(const RunConfig& base, const std::vector<int>& meshes) {
    if (meshes.empty())
        throw ConfigError("converge: the mesh list must not be empty");

    ConvergenceResult result;
    result.points.resize(meshes.size());
    run_parallel(static_cast<int>(meshes.size()), max_concurrency(), [&](int idx) {
        const int m = meshes[static_cast<std::size_t>(idx)];
        RunConfig cfg = base;
        cfg.mesh.nex = cfg.mesh.nez = m;
        cfg.analysis.modes = 1;
        cfg.validate();

        auto mesh = std::make_shared<const SpectralMesh>(cfg.geometry, cfg.mesh.nex, cfg.mesh.nez,
                                                         cfg.mesh.order);
        const GlobalSystem system(mesh, cfg.material);

        cfg.analysis.kind = AnalysisKind::Vibration;
        const double omega1 = run_on_system(system, cfg).modes.at(0).nondimensional;
        cfg.analysis.kind = AnalysisKind::Buckling;
        cfg.analysis.load = LoadCase::Uniaxial;
        const double lambda = run_on_system(system, cfg).modes.at(0).nondimensional;
        result.points[static_cast<std::size_t>(idx)] = ConvergencePoint{m, omega1, lambda};
    });
    return result;
}

void write_convergence_csv(const ConvergenceResult& result, std::ostream& out) {
    out << "mesh,omega_bar_1,delta_omega,lambda_cru,delta_lambda\n";
    for (std::size_t i = 0; i < result.points.size(); ++i) {
        const ConvergencePoint& p = result.points[i];
        out << p.mesh << 'x' << p.mesh << ',' << format_significant(p.omega_bar_1) << ',';
        if (i > 0)
            out << format_significant(std::abs(p.omega_bar_1 - result.points[i - 1].omega_bar_1));
        out << ',' << format_significant(p.lambda_cru) << ',';
        if (i > 0)
            out << format_significant(std::abs(p.lambda_cru - result.points[i - 1].lambda_cru));
        out << '\n';
    }
}

} // namespace sbplate
