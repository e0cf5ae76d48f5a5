#include "sbplate/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace sbplate {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw ConfigError("config: " + path + ": " + message);
}

void expect_object(const json& j, const std::string& path) {
    if (!j.is_object())
        fail(path, "expected an object");
}

void reject_unknown_keys(const json& j, const std::string& path, const std::set<std::string>& known) {
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (known.find(key) == known.end())
            fail(path.empty() ? key : path + "." + key, "unknown key");
    }
}

double get_number(const json& j, const std::string& path, const std::string& key, double fallback,
                  bool required = false) {
    if (!j.contains(key)) {
        if (required)
            fail(path + "." + key, "missing required value");
        return fallback;
    }
    if (!j.at(key).is_number())
        fail(path + "." + key, "expected a number");
    return j.at(key).get<double>();
}

int get_int(const json& j, const std::string& path, const std::string& key, int fallback) {
    if (!j.contains(key))
        return fallback;
    if (!j.at(key).is_number_integer())
        fail(path + "." + key, "expected an integer");
    return j.at(key).get<int>();
}

std::string get_string(const json& j, const std::string& path, const std::string& key,
                       const std::string& fallback, bool required = false) {
    if (!j.contains(key)) {
        if (required)
            fail(path + "." + key, "missing required value");
        return fallback;
    }
    if (!j.at(key).is_string())
        fail(path + "." + key, "expected a string");
    return j.at(key).get<std::string>();
}

PhaseProperties parse_phase(const json& j, const std::string& path, const PhaseProperties& fallback) {
    expect_object(j, path);
    reject_unknown_keys(j, path, {"E_GPa", "nu", "rho"});
    PhaseProperties p;
    p.E = get_number(j, path, "E_GPa", fallback.E / 1e9) * 1e9;
    p.nu = get_number(j, path, "nu", fallback.nu);
    p.rho = get_number(j, path, "rho", fallback.rho);
    return p;
}

RunConfig parse_document(const json& doc) {
    expect_object(doc, "(root)");
    reject_unknown_keys(doc, "", {"geometry", "material", "mesh", "bc", "analysis", "output"});

    RunConfig cfg;

    if (!doc.contains("geometry"))
        fail("geometry", "missing required block");
    {
        const json& g = doc.at("geometry");
        expect_object(g, "geometry");
        reject_unknown_keys(g, "geometry", {"a", "b", "h", "psi_deg"});
        cfg.geometry.a = get_number(g, "geometry", "a", 0.0, true);
        cfg.geometry.b = get_number(g, "geometry", "b", 0.0, true);
        cfg.geometry.h = get_number(g, "geometry", "h", 0.0, true);
        const double psi_deg = get_number(g, "geometry", "psi_deg", 0.0);
        cfg.geometry.psi = psi_deg * std::acos(-1.0) / 180.0;
    }

    if (doc.contains("material")) {
        const json& m = doc.at("material");
        expect_object(m, "material");
        reject_unknown_keys(m, "material", {"ceramic", "metal", "gradient_index"});
        const MaterialPair defaults = MaterialPair::si3n4_sus304();
        if (m.contains("ceramic"))
            cfg.material.ceramic = parse_phase(m.at("ceramic"), "material.ceramic", defaults.ceramic);
        if (m.contains("metal"))
            cfg.material.metal = parse_phase(m.at("metal"), "material.metal", defaults.metal);
        cfg.material.gradient_index = get_number(m, "material", "gradient_index", 0.0);
    }

    if (doc.contains("mesh")) {
        const json& m = doc.at("mesh");
        expect_object(m, "mesh");
        reject_unknown_keys(m, "mesh", {"nex", "nez", "order"});
        cfg.mesh.nex = get_int(m, "mesh", "nex", cfg.mesh.nex);
        cfg.mesh.nez = get_int(m, "mesh", "nez", cfg.mesh.nez);
        cfg.mesh.order = get_int(m, "mesh", "order", cfg.mesh.order);
    }

    if (!doc.contains("bc"))
        fail("bc", "missing required value");
    if (!doc.at("bc").is_string())
        fail("bc", "expected a string of four letters from {S, C, F}");
    cfg.bc = BoundarySpec::parse(doc.at("bc").get<std::string>());

    if (!doc.contains("analysis"))
        fail("analysis", "missing required block");
    {
        const json& a = doc.at("analysis");
        expect_object(a, "analysis");
        reject_unknown_keys(a, "analysis", {"kind", "modes", "load", "kg_mode"});
        const std::string kind = get_string(a, "analysis", "kind", "", true);
        if (kind == "vibration")
            cfg.analysis.kind = AnalysisKind::Vibration;
        else if (kind == "buckling")
            cfg.analysis.kind = AnalysisKind::Buckling;
        else
            fail("analysis.kind", "expected 'vibration' or 'buckling'");
        cfg.analysis.modes = get_int(a, "analysis", "modes", cfg.analysis.modes);
        const std::string load = get_string(a, "analysis", "load", "uniaxial");
        if (load == "uniaxial")
            cfg.analysis.load = LoadCase::Uniaxial;
        else if (load == "biaxial")
            cfg.analysis.load = LoadCase::Biaxial;
        else
            fail("analysis.load", "expected 'uniaxial' or 'biaxial'");
        const std::string kg = get_string(a, "analysis", "kg_mode", "deflection-only");
        if (kg == "deflection-only")
            cfg.analysis.kg_mode = KgMode::DeflectionOnly;
        else if (kg == "all-dof")
            cfg.analysis.kg_mode = KgMode::AllDof;
        else
            fail("analysis.kg_mode", "expected 'deflection-only' or 'all-dof'");
    }

    if (doc.contains("output")) {
        const json& o = doc.at("output");
        expect_object(o, "output");
        reject_unknown_keys(o, "output", {"format", "path"});
        const std::string format = get_string(o, "output", "format", "csv");
        if (format == "csv")
            cfg.output.format = OutputFormat::Csv;
        else if (format == "json")
            cfg.output.format = OutputFormat::Json;
        else
            fail("output.format", "expected 'csv' or 'json'");
        cfg.output.path = get_string(o, "output", "path", "");
    }

    cfg.validate();
    return cfg;
}

} // namespace

void RunConfig::validate() const {
    geometry.validate();
    material.validate();
    if (mesh.nex < 1 || mesh.nez < 1)
        throw ConfigError("config: mesh.nex/nez must be >= 1");
    if (mesh.order < 2)
        throw ConfigError("config: mesh.order must be >= 2");
    if (analysis.modes < 1)
        throw ConfigError("config: analysis.modes must be >= 1");
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

RunConfig parse_config_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: JSON parse error: ") + e.what());
    }
    return parse_document(doc);
}

std::string to_string(AnalysisKind kind) {
    return kind == AnalysisKind::Vibration ? "vibration" : "buckling";
}

std::string to_string(LoadCase load) {
    return load == LoadCase::Uniaxial ? "uniaxial" : "biaxial";
}

std::string to_string(KgMode mode) {
    return mode == KgMode::DeflectionOnly ? "deflection-only" : "all-dof";
}

std::string to_string(OutputFormat format) {
    return format == OutputFormat::Csv ? "csv" : "json";
}

} // namespace sbplate
