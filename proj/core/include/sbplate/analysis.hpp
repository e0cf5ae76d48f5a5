#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sbplate/config.hpp"
#include "sbplate/solver.hpp"

namespace sbplate {

struct ModeResult {
    int index;             ///< 1-based
    double raw;            ///< omega^2 [1/s^2] or load multiplier lambda
    double nondimensional; ///< omega_bar or lambda_bar
};

struct AnalysisResult {
    RunConfig config;
    std::vector<ModeResult> modes;
    double asymmetry_norm = 0.0;
    /// Full-field mode shapes, one column per mode, 3 plate DOFs per node.
    Eigen::MatrixXd mode_shapes;
    std::shared_ptr<const SpectralMesh> mesh;
};

/// Executes the mesh -> kernel -> solver pipeline for one configuration.
AnalysisResult run_analysis(const RunConfig& config);

/// Variant reusing a prebuilt system (the mesh/material build is the
/// expensive part). `omega_length` overrides the frequency reference length;
/// it defaults to the plate length a.
AnalysisResult run_on_system(const GlobalSystem& system, const RunConfig& config,
                             std::optional<double> omega_length = std::nullopt);

void write_result_csv(const AnalysisResult& result, std::ostream& out);
void write_result_json(const AnalysisResult& result, std::ostream& out);

/// Writes to the configured path (stdout when empty) in the configured format.
void emit_result(const AnalysisResult& result);

/// Node table of the mesh: id, x, y.
void write_mesh_csv(const SpectralMesh& mesh, std::ostream& out);

/// Mode-shape export: one row per (mode, node) with the plate DOFs.
void write_modes_csv(const AnalysisResult& result, std::ostream& out);

enum class SweepParameter { AspectRatio, GradientIndex, SkewAngle };

/// Accepts "a_over_b", "n" or "psi".
SweepParameter parse_sweep_parameter(const std::string& name);
std::string to_string(SweepParameter parameter);

struct SweepRow {
    double value;
    std::vector<double> results; ///< NaN-filled on failure
    bool ok = true;
    std::string message;
};

struct SweepResult {
    SweepParameter parameter = SweepParameter::AspectRatio;
    std::vector<std::string> columns;
    std::vector<SweepRow> rows;
};

/// One analysis per value. Vibration sweeps report the first four
/// frequencies; buckling sweeps report both uniaxial and biaxial critical
/// parameters. Aspect-ratio sweeps hold the width b and thickness fixed,
/// scale a = r * b, and nondimensionalize frequencies with the fixed width.
/// Points run concurrently up to SBPLATE_MAX_CONCURRENCY.
SweepResult sweep(const RunConfig& base, SweepParameter parameter,
                  const std::vector<double>& values);

void write_sweep_csv(const SweepResult& result, std::ostream& out);

struct ConvergencePoint {
    int mesh; ///< nex = nez
    double omega_bar_1;
    double lambda_cru;
};

struct ConvergenceResult {
    std::vector<ConvergencePoint> points;
};

/// Fundamental frequency and uniaxial buckling parameter across a mesh
/// refinement ladder (default 2x2 -> 4x4 -> 8x8).
ConvergenceResult convergence_study(const RunConfig& base, const std::vector<int>& meshes = {2, 4, 8});

void write_convergence_csv(const ConvergenceResult& result, std::ostream& out);

/// Fixed-significant-digit float formatting used by every CSV writer.
std::string format_significant(double value, int digits = 6);

/// Maximum concurrent analysis points: SBPLATE_MAX_CONCURRENCY when set,
/// otherwise the hardware concurrency.
int max_concurrency();

} // namespace sbplate
