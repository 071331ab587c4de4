#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "nuwalk/scenario.hpp"

namespace {

using namespace nuwalk;
using namespace nuwalk::scenario;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("--config", "cannot open \"" + path + "\"");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("--out", "cannot open \"" + path + "\" for writing");
    out << text;
}

struct SubcommandArgs {
    std::string config_path;
    std::string out_path;
    std::string format;
};

void add_common_options(CLI::App* cmd, SubcommandArgs& args) {
    cmd->add_option("--config", args.config_path, "JSON scenario configuration")
        ->required();
    cmd->add_option("--out", args.out_path, "output path (default: config output.path, else stdout)");
    cmd->add_option("--format", args.format, "csv or json (overrides config output.format)")
        ->check(CLI::IsMember({"csv", "json"}));
}

ScenarioConfig load_config(const SubcommandArgs& args, ScenarioKind expected,
                           const std::string& name) {
    ScenarioConfig config = parse_config(read_file(args.config_path));
    if (config.kind != expected)
        throw ConfigError("scenario", "config does not declare scenario \"" + name + "\"");
    if (!args.format.empty())
        config.output.format =
            args.format == "json" ? OutputFormat::json : OutputFormat::csv;
    if (!args.out_path.empty()) config.output.path = args.out_path;
    return config;
}

template <typename Result>
void write_result(const Result& result, const ScenarioConfig& config) {
    const std::string text =
        config.output.format == OutputFormat::json ? to_json(result) : to_csv(result);
    emit(text, config.output.path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nu-walk: discrete-time quantum walk simulator of neutrino flavor "
                 "oscillations in vacuum and matter"};
    app.require_subcommand(1);

    SubcommandArgs vacuum_args, matter_args, levels_args, compare_args, map_args;
    auto* vacuum_cmd = app.add_subcommand("vacuum", "three- or two-flavor vacuum oscillation run");
    add_common_options(vacuum_cmd, vacuum_args);
    auto* matter_cmd = app.add_subcommand("matter", "two-flavor run with a matter profile");
    add_common_options(matter_cmd, matter_args);
    auto* levels_cmd = app.add_subcommand("levels", "in-matter energy levels along the lattice");
    add_common_options(levels_cmd, levels_args);
    auto* compare_cmd = app.add_subcommand("compare", "lattice walk vs momentum-space oracle");
    add_common_options(compare_cmd, compare_args);
    auto* map_cmd = app.add_subcommand("map-experiment",
                                       "physical (dm2, E, L) to lattice parameters");
    add_common_options(map_cmd, map_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (vacuum_cmd->parsed()) {
            const ScenarioConfig config = load_config(vacuum_args, ScenarioKind::vacuum, "vacuum");
            write_result(run_vacuum(config), config);
        } else if (matter_cmd->parsed()) {
            const ScenarioConfig config = load_config(matter_args, ScenarioKind::matter, "matter");
            write_result(run_matter(config), config);
        } else if (levels_cmd->parsed()) {
            const ScenarioConfig config = load_config(levels_args, ScenarioKind::levels, "levels");
            write_result(run_levels(config), config);
        } else if (compare_cmd->parsed()) {
            const ScenarioConfig config =
                load_config(compare_args, ScenarioKind::compare, "compare");
            const CompareReport report = run_compare(config);
            write_result(report, config);
            if (!report.passed) {
                std::cerr << "compare: lattice and momentum oracle disagree (max deviation "
                          << format_number(report.max_deviation) << " > threshold "
                          << format_number(report.threshold) << ")\n";
                return 2;
            }
        } else if (map_cmd->parsed()) {
            const ScenarioConfig config =
                load_config(map_args, ScenarioKind::map_experiment, "map-experiment");
            MappedExperiment mapped =
                map_experiment(config.experiment->spec, config.experiment->target_steps);
            mapped.meta = config.echo;
            write_result(mapped, config);
        }
    } catch (const ConfigError& e) {
        std::cerr << "nu-walk: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "nu-walk: error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
