// config.hpp — run configuration: JSON schema, Hz/rad_s unit handling, and
// --set overrides. Frequencies are stored exactly as written in the config
// (with the units tag) and converted to rad/s only when the engine objects
// are built, so serialize/parse round-trips are field-exact.

#pragma once

#include "rabisim/protocols.hpp"
#include "rabisim/sweep.hpp"

#include <nlohmann/json_fwd.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace rabisim {

enum class OutputFormat { Csv, Json };

// One axis, either an explicit value list or a linspace.
struct GridSpec {
    std::string name;
    std::vector<double> values;  // wins when non-empty
    double start = 0.0;
    double stop = 0.0;
    int count = 0;

    std::vector<double> resolve() const;
    bool operator==(const GridSpec&) const = default;
};

struct PulseConfig {
    std::string mode = "ideal-rotation";  // or "physical-evolution"
    double epsilon = 0.0;
    double rabi_freq_pulse = 0.0;   // config units
    double interaction_pulse = 0.0; // config units
    bool operator==(const PulseConfig&) const = default;
};

struct InitialConfig {
    std::string kind = "antisymmetric";  // conventional|antisymmetric|custom|pulse
    double theta = 0.0;
    double phi = 0.0;
    PulseConfig pulse;
    bool operator==(const InitialConfig&) const = default;
};

struct ParamsConfig {
    int n_atoms = 0;
    double rabi_freq = 0.0;    // config units
    double detuning = 0.0;     // config units
    double interaction = 0.0;  // config units
    double duration = 0.0;     // seconds, always
    bool operator==(const ParamsConfig&) const = default;
};

struct RunConfig {
    std::string protocol;      // spectrum|heatmap|pulse|compare
    std::string units = "rad_s";  // or "hz"
    ParamsConfig params;
    InitialConfig initial;
    double sigma = 0.0;        // detection noise, Jz units (no conversion)
    GridSpec axis1;
    std::optional<GridSpec> axis2;
    std::array<double, 2> search_window{0.0, 0.0};  // pulse protocol, config units
    double fd_step = 0.0;      // config units; 0 -> engine default
    std::string output_path;   // empty -> stdout
    OutputFormat output_format = OutputFormat::Csv;
    std::string preset;        // provenance only
    int threads = 0;

    bool operator==(const RunConfig&) const = default;
};

// Parse/serialize. Parsing validates field types and enum values and throws
// ConfigError naming the offending field.
RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& config);

// Reads and parses a config file; parse errors report line numbers.
RunConfig load_config_file(const std::string& path);

// Applies one "dotted.path=value" override onto the raw JSON document; value
// is parsed as JSON when possible, else taken as a string.
void apply_override(nlohmann::json& doc, const std::string& assignment);

// --- resolution to engine objects (rad/s) ---

// 2*pi for "hz", 1 for "rad_s".
double frequency_scale(const RunConfig& config);

RabiParams resolved_params(const RunConfig& config);
InitialSpec resolved_initial(const RunConfig& config);
NoiseModel resolved_noise(const RunConfig& config);

// Converts frequency-like axes (delta/omega/chi/omega_pul) to rad/s;
// duration and epsilon axes pass through.
ScanAxis resolved_axis(const RunConfig& config, const GridSpec& spec);

std::pair<double, double> resolved_search_window(const RunConfig& config);
double resolved_fd_step(const RunConfig& config);  // 0 when unset

}  // namespace rabisim
