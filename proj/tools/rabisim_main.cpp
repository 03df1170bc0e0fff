// rabisim — antisymmetric Rabi spectroscopy simulator CLI.
// Subcommands: spectrum | heatmap | pulse | compare | verify.
// Exit codes: 0 success, 1 verification failure, 2 config error,
// 3 computation error.

#include "rabisim/commands.hpp"
#include "rabisim/errors.hpp"
#include "rabisim/presets.hpp"
#include "rabisim/verify.hpp"
#include "rabisim/version.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

namespace {

using rabisim::ConfigError;
using rabisim::RunConfig;

struct CommonOptions {
    std::string config_path;
    std::string preset;
    std::string out_path;
    std::string format;
    int threads = 0;
    std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config_path, "Config file (JSON)");
    cmd->add_option("--preset", opts.preset, "Named preset from presets/");
    cmd->add_option("--out", opts.out_path, "Output path (default: stdout)");
    cmd->add_option("--format", opts.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--threads", opts.threads, "Worker thread cap (0 = auto)");
    cmd->add_option("--set", opts.overrides,
                    "Override config fields, e.g. --set params.interaction=0.01");
}

RunConfig resolve_config(const CommonOptions& opts) {
    if (opts.config_path.empty() == opts.preset.empty()) {
        throw ConfigError("give exactly one of --config or --preset");
    }
    nlohmann::json doc;
    std::string preset_name;
    if (!opts.preset.empty()) {
        const std::string path = rabisim::find_preset_file(opts.preset);
        RunConfig preset = rabisim::load_config_file(path);
        preset_name = opts.preset;
        doc = rabisim::config_to_json(preset);
    } else {
        std::ifstream in(opts.config_path);
        if (!in) throw ConfigError("cannot open config '" + opts.config_path + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        try {
            doc = nlohmann::json::parse(buf.str());
        } catch (const nlohmann::json::parse_error& e) {
            throw ConfigError(std::string("config parse error: ") + e.what());
        }
    }
    for (const auto& assignment : opts.overrides) {
        rabisim::apply_override(doc, assignment);
    }
    RunConfig config = rabisim::config_from_json(doc);
    if (!preset_name.empty()) config.preset = preset_name;
    if (!opts.out_path.empty()) config.output_path = opts.out_path;
    if (!opts.format.empty()) {
        config.output_format = opts.format == "json"
                                   ? rabisim::OutputFormat::Json
                                   : rabisim::OutputFormat::Csv;
    }
    if (opts.threads > 0) config.threads = opts.threads;
    return config;
}

int run_protocol(const std::string& name, const CommonOptions& opts) {
    RunConfig config;
    try {
        config = resolve_config(opts);
        if (config.protocol != name) {
            throw ConfigError("config protocol '" + config.protocol +
                              "' does not match subcommand '" + name + "'");
        }
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    try {
        std::ostream* os = &std::cout;
        std::ofstream file;
        if (!config.output_path.empty()) {
            file.open(config.output_path, std::ios::binary);
            if (!file) {
                std::cerr << "cannot open output '" << config.output_path << "'\n";
                return 3;
            }
            os = &file;
        }
        rabisim::run_command(name, config, *os);
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "computation error: " << e.what() << "\n";
        return 3;
    }
}

int run_verify_cmd(const std::string& level_name, const CommonOptions& opts) {
    try {
        const auto level = level_name == "full" ? rabisim::VerifyLevel::Full
                                                : rabisim::VerifyLevel::Fast;
        const rabisim::VerifyReport report =
            rabisim::run_verify(level, opts.threads);
        rabisim::print_report(report, std::cout);
        if (!opts.out_path.empty()) {
            std::ofstream file(opts.out_path, std::ios::binary);
            if (!file) {
                std::cerr << "cannot open output '" << opts.out_path << "'\n";
                return 3;
            }
            if (opts.format == "json") {
                file << rabisim::report_to_json(report).dump(2) << "\n";
            } else {
                rabisim::print_report(report, file);
            }
        }
        return report.all_pass() ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "verify error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Antisymmetric Rabi spectroscopy simulator"};
    app.set_version_flag("--version", rabisim::kVersion);
    app.require_subcommand(1);

    std::map<std::string, CommonOptions> opts;
    for (const std::string name : {"spectrum", "heatmap", "pulse", "compare"}) {
        auto* cmd = app.add_subcommand(
            name, name == "spectrum"  ? "Detuning scan table"
                  : name == "heatmap" ? "Precision heatmap over two axes"
                  : name == "pulse"   ? "Pulse-imperfection scans"
                                      : "Rabi vs OAT-Ramsey comparison");
        add_common(cmd, opts[name]);
    }
    auto* verify_cmd =
        app.add_subcommand("verify", "Run the engine invariant suites");
    std::string level = "fast";
    verify_cmd->add_option("--level", level, "fast or full")
        ->check(CLI::IsMember({"fast", "full"}));
    CommonOptions verify_opts;
    verify_cmd->add_option("--out", verify_opts.out_path, "Report output path");
    verify_cmd->add_option("--format", verify_opts.format,
                           "Report format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    verify_cmd->add_option("--threads", verify_opts.threads,
                           "Worker thread cap (0 = auto)");

    auto* presets_cmd = app.add_subcommand("presets", "List available presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (presets_cmd->parsed()) {
        for (const auto& name : rabisim::list_presets()) {
            std::cout << name << "\n";
        }
        return 0;
    }
    if (verify_cmd->parsed()) return run_verify_cmd(level, verify_opts);
    for (const auto& [name, common] : opts) {
        if (app.get_subcommand(name)->parsed()) return run_protocol(name, common);
    }
    std::cerr << "no subcommand given\n";
    return 2;
}
