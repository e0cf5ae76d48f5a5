#pragma once

#include <string>

#include "sbplate/kernel.hpp"
#include "sbplate/material.hpp"
#include "sbplate/mesh.hpp"

namespace sbplate {

enum class AnalysisKind { Vibration, Buckling };
enum class LoadCase { Uniaxial, Biaxial };
enum class OutputFormat { Csv, Json };

std::string to_string(AnalysisKind kind);
std::string to_string(LoadCase load);
std::string to_string(KgMode mode);
std::string to_string(OutputFormat format);

struct MeshSpec {
    int nex = 8;
    int nez = 8;
    int order = 3;
};

struct AnalysisSpec {
    AnalysisKind kind = AnalysisKind::Vibration;
    int modes = 4;
    LoadCase load = LoadCase::Uniaxial;
    KgMode kg_mode = KgMode::DeflectionOnly;
};

struct OutputSpec {
    OutputFormat format = OutputFormat::Csv;
    std::string path; ///< empty: write to stdout
};

/// Full description of one analysis. Defaults follow the reference studies:
/// Si3N4/SUS304 phases and an 8x8 mesh of order-3 elements.
struct RunConfig {
    PlateGeometry geometry{1.0, 1.0, 1e-3, 0.0};
    MaterialPair material = MaterialPair::si3n4_sus304();
    MeshSpec mesh;
    BoundarySpec bc = BoundarySpec::parse("SSSS");
    AnalysisSpec analysis;
    OutputSpec output;

    void validate() const;
};

/// Parses and validates a JSON config file. Errors carry the offending field
/// path and map to exit code 2.
RunConfig parse_config(const std::string& path);

/// Same, from an in-memory JSON document.
RunConfig parse_config_text(const std::string& text);

} // namespace sbplate
