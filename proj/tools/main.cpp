#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sbplate/analysis.hpp"
#include "sbplate/config.hpp"
#include "sbplate/validation.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitNumericalFailure = 3;

void apply_output_overrides(sbplate::RunConfig& cfg, const std::string& out,
                            const std::string& format) {
    if (!out.empty())
        cfg.output.path = out;
    if (!format.empty()) {
        if (format == "csv")
            cfg.output.format = sbplate::OutputFormat::Csv;
        else if (format == "json")
            cfg.output.format = sbplate::OutputFormat::Json;
        else
            throw sbplate::ConfigError("--format: expected 'csv' or 'json'");
    }
}

void write_text_output(const std::string& path, const std::function<void(std::ostream&)>& writer) {
    if (path.empty()) {
        writer(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw sbplate::ConfigError("--out: cannot open '" + path + "' for writing");
    writer(out);
}

std::vector<double> parse_value_list(const std::string& csv) {
    std::vector<double> values;
    std::istringstream in(csv);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            values.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw sbplate::ConfigError("--values: '" + item + "' is not a number");
        }
    }
    return values;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral scaled-boundary plate solver: free vibration and buckling of "
                 "in-plane graded plates"};
    app.require_subcommand(1);

    std::string config_path, out_path, format, param, values_csv, meshes_csv, dump_mesh,
        dump_modes;
    std::vector<std::string> table_ids;

    CLI::App* cmd_run = app.add_subcommand("run", "Run one analysis from a config file");
    cmd_run->add_option("--config", config_path, "JSON config file")->required();
    cmd_run->add_option("--out", out_path, "Output path (default: stdout)");
    cmd_run->add_option("--format", format, "Output format: csv | json");
    cmd_run->add_option("--dump-mesh", dump_mesh, "Also write the mesh nodes as CSV");
    cmd_run->add_option("--dump-modes", dump_modes, "Also write the mode shapes as CSV");

    CLI::App* cmd_sweep = app.add_subcommand("sweep", "Sweep one parameter");
    cmd_sweep->add_option("--config", config_path, "JSON config file")->required();
    cmd_sweep->add_option("--param", param, "Swept parameter: a_over_b | n | psi")->required();
    cmd_sweep->add_option("--values", values_csv, "Comma-separated values")->required();
    cmd_sweep->add_option("--out", out_path, "Output path (default: stdout)");

    CLI::App* cmd_converge = app.add_subcommand("converge", "Mesh refinement study");
    cmd_converge->add_option("--config", config_path, "JSON config file")->required();
    cmd_converge->add_option("--meshes", meshes_csv, "Comma-separated mesh sizes (default 2,4,8)");
    cmd_converge->add_option("--out", out_path, "Output path (default: stdout)");

    CLI::App* cmd_validate =
        app.add_subcommand("validate", "Compare against the embedded reference tables");
    cmd_validate->add_option("tables", table_ids, "Table ids T1..T5 (default: all)");
    cmd_validate->add_option("--out", out_path, "Also write the report as CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfigError;
    }

    try {
        if (cmd_run->parsed()) {
            sbplate::RunConfig cfg = sbplate::parse_config(config_path);
            apply_output_overrides(cfg, out_path, format);
            const sbplate::AnalysisResult result = sbplate::run_analysis(cfg);
            sbplate::emit_result(result);
            if (!dump_mesh.empty())
                write_text_output(dump_mesh,
                                  [&](std::ostream& o) { sbplate::write_mesh_csv(*result.mesh, o); });
            if (!dump_modes.empty())
                write_text_output(dump_modes,
                                  [&](std::ostream& o) { sbplate::write_modes_csv(result, o); });
            return kExitOk;
        }

        if (cmd_sweep->parsed()) {
            const sbplate::RunConfig cfg = sbplate::parse_config(config_path);
            const auto parameter = sbplate::parse_sweep_parameter(param);
            const std::vector<double> values = parse_value_list(values_csv);
            const sbplate::SweepResult result = sbplate::sweep(cfg, parameter, values);
            write_text_output(out_path,
                              [&](std::ostream& o) { sbplate::write_sweep_csv(result, o); });
            return kExitOk;
        }

        if (cmd_converge->parsed()) {
            const sbplate::RunConfig cfg = sbplate::parse_config(config_path);
            std::vector<int> meshes = {2, 4, 8};
            if (!meshes_csv.empty()) {
                meshes.clear();
                for (double v : parse_value_list(meshes_csv))
                    meshes.push_back(static_cast<int>(v));
            }
            const sbplate::ConvergenceResult result = sbplate::convergence_study(cfg, meshes);
            write_text_output(out_path,
                              [&](std::ostream& o) { sbplate::write_convergence_csv(result, o); });
            return kExitOk;
        }

        // validate
        const sbplate::ValidationReport report = sbplate::validate_tables(table_ids);
        sbplate::write_validation_text(report, std::cout);
        if (!out_path.empty())
            write_text_output(out_path,
                              [&](std::ostream& o) { sbplate::write_validation_csv(report, o); });
        return report.all_pass ? kExitOk : kExitValidationFailure;
    } catch (const sbplate::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumericalFailure;
    }
}
