#include "rabisim/config.hpp"

#include "rabisim/errors.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace rabisim {

using nlohmann::json;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw ConfigError("config field '" + field + "': " + what);
}

double get_number(const json& j, const std::string& field, double fallback,
                  bool required = false) {
    if (!j.contains(field)) {
        if (required) fail(field, "missing");
        return fallback;
    }
    if (!j.at(field).is_number()) fail(field, "expected a number");
    return j.at(field).get<double>();
}

int get_int(const json& j, const std::string& field, int fallback,
            bool required = false) {
    if (!j.contains(field)) {
        if (required) fail(field, "missing");
        return fallback;
    }
    if (!j.at(field).is_number_integer()) fail(field, "expected an integer");
    return j.at(field).get<int>();
}

std::string get_string(const json& j, const std::string& field,
                       const std::string& fallback, bool required = false) {
    if (!j.contains(field)) {
        if (required) fail(field, "missing");
        return fallback;
    }
    if (!j.at(field).is_string()) fail(field, "expected a string");
    return j.at(field).get<std::string>();
}

GridSpec grid_from_json(const json& j, const std::string& path) {
    GridSpec g;
    g.name = get_string(j, "name", "", true);
    if (j.contains("values")) {
        if (!j.at("values").is_array()) fail(path + ".values", "expected an array");
        for (const auto& v : j.at("values")) {
            if (!v.is_number()) fail(path + ".values", "expected numbers");
            g.values.push_back(v.get<double>());
        }
    } else {
        g.start = get_number(j, "start", 0.0, true);
        g.stop = get_number(j, "stop", 0.0, true);
        g.count = get_int(j, "count", 0, true);
    }
    if (g.values.empty() && g.count <= 0) {
        fail(path, "grid is empty (no values and count <= 0)");
    }
    return g;
}

json grid_to_json(const GridSpec& g) {
    json j;
    j["name"] = g.name;
    if (!g.values.empty()) {
        j["values"] = g.values;
    } else {
        j["start"] = g.start;
        j["stop"] = g.stop;
        j["count"] = g.count;
    }
    return j;
}

}  // namespace

std::vector<double> GridSpec::resolve() const {
    if (!values.empty()) return values;
    if (count <= 0) throw ConfigError("grid '" + name + "' is empty");
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = start;
        return out;
    }
    for (int i = 0; i < count; ++i) {
        out[i] = start + (stop - start) * i / (count - 1.0);
    }
    return out;
}

RunConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");
    RunConfig c;
    c.protocol = get_string(j, "protocol", "", true);
    if (c.protocol != "spectrum" && c.protocol != "heatmap" &&
        c.protocol != "pulse" && c.protocol != "compare") {
        fail("protocol", "must be one of spectrum|heatmap|pulse|compare");
    }
    c.units = get_string(j, "units", "rad_s");
    if (c.units != "rad_s" && c.units != "hz") {
        fail("units", "must be 'rad_s' or 'hz'");
    }

    if (!j.contains("params") || !j.at("params").is_object()) {
        fail("params", "missing object");
    }
    const json& p = j.at("params");
    c.params.n_atoms = get_int(p, "n_atoms", 0, true);
    c.params.rabi_freq = get_number(p, "rabi_freq", 0.0, true);
    c.params.detuning = get_number(p, "detuning", 0.0);
    c.params.interaction = get_number(p, "interaction", 0.0);
    c.params.duration = get_number(p, "duration", 0.0);

    if (j.contains("initial")) {
        const json& ini = j.at("initial");
        if (!ini.is_object()) fail("initial", "expected an object");
        c.initial.kind = get_string(ini, "kind", "antisymmetric");
        if (c.initial.kind != "conventional" && c.initial.kind != "antisymmetric" &&
            c.initial.kind != "custom" && c.initial.kind != "pulse") {
            fail("initial.kind",
                 "must be one of conventional|antisymmetric|custom|pulse");
        }
        c.initial.theta = get_number(ini, "theta", 0.0);
        c.initial.phi = get_number(ini, "phi", 0.0);
        if (ini.contains("pulse")) {
            const json& pu = ini.at("pulse");
            if (!pu.is_object()) fail("initial.pulse", "expected an object");
            c.initial.pulse.mode = get_string(pu, "mode", "ideal-rotation");
            if (c.initial.pulse.mode != "ideal-rotation" &&
                c.initial.pulse.mode != "physical-evolution") {
                fail("initial.pulse.mode",
                     "must be 'ideal-rotation' or 'physical-evolution'");
            }
            c.initial.pulse.epsilon = get_number(pu, "epsilon", 0.0);
            c.initial.pulse.rabi_freq_pulse = get_number(pu, "rabi_freq_pulse", 0.0);
            c.initial.pulse.interaction_pulse =
                get_number(pu, "interaction_pulse", 0.0);
        }
    }

    if (j.contains("noise")) {
        if (!j.at("noise").is_object()) fail("noise", "expected an object");
        c.sigma = get_number(j.at("noise"), "sigma", 0.0);
    }

    if (!j.contains("grid") || !j.at("grid").is_object()) {
        fail("grid", "missing object");
    }
    const json& g = j.at("grid");
    if (!g.contains("axis1")) fail("grid.axis1", "missing");
    c.axis1 = grid_from_json(g.at("axis1"), "grid.axis1");
    if (g.contains("axis2")) {
        c.axis2 = grid_from_json(g.at("axis2"), "grid.axis2");
    }

    if (j.contains("search_window")) {
        const json& w = j.at("search_window");
        if (!w.is_array() || w.size() != 2 || !w[0].is_number() ||
            !w[1].is_number()) {
            fail("search_window", "expected [lo, hi]");
        }
        c.search_window = {w[0].get<double>(), w[1].get<double>()};
    }
    c.fd_step = get_number(j, "fd_step", 0.0);

    if (j.contains("output")) {
        const json& o = j.at("output");
        if (!o.is_object()) fail("output", "expected an object");
        c.output_path = get_string(o, "path", "");
        const std::string fmt = get_string(o, "format", "csv");
        if (fmt == "csv") {
            c.output_format = OutputFormat::Csv;
        } else if (fmt == "json") {
            c.output_format = OutputFormat::Json;
        } else {
            fail("output.format", "must be 'csv' or 'json'");
        }
    }
    c.preset = get_string(j, "preset", "");
    c.threads = get_int(j, "threads", 0);
    return c;
}

json config_to_json(const RunConfig& c) {
    json j;
    j["protocol"] = c.protocol;
    j["units"] = c.units;
    j["params"] = {{"n_atoms", c.params.n_atoms},
                   {"rabi_freq", c.params.rabi_freq},
                   {"detuning", c.params.detuning},
                   {"interaction", c.params.interaction},
                   {"duration", c.params.duration}};
    json ini;
    ini["kind"] = c.initial.kind;
    ini["theta"] = c.initial.theta;
    ini["phi"] = c.initial.phi;
    if (c.initial.kind == "pulse") {
        ini["pulse"] = {{"mode", c.initial.pulse.mode},
                        {"epsilon", c.initial.pulse.epsilon},
                        {"rabi_freq_pulse", c.initial.pulse.rabi_freq_pulse},
                        {"interaction_pulse", c.initial.pulse.interaction_pulse}};
    }
    j["initial"] = ini;
    j["noise"] = {{"sigma", c.sigma}};
    json grid;
    grid["axis1"] = grid_to_json(c.axis1);
    if (c.axis2) grid["axis2"] = grid_to_json(*c.axis2);
    j["grid"] = grid;
    if (c.protocol == "pulse") {
        j["search_window"] = {c.search_window[0], c.search_window[1]};
    }
    if (c.fd_step != 0.0) j["fd_step"] = c.fd_step;
    j["output"] = {{"path", c.output_path},
                   {"format", c.output_format == OutputFormat::Csv ? "csv" : "json"}};
    if (!c.preset.empty()) j["preset"] = c.preset;
    if (c.threads != 0) j["threads"] = c.threads;
    return j;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        // byte offset -> line number for the diagnostic
        std::size_t line = 1;
        for (std::size_t i = 0; i < std::min<std::size_t>(e.byte, text.size()); ++i) {
            if (text[i] == '\n') ++line;
        }
        throw ConfigError("parse error in '" + path + "' at line " +
                          std::to_string(line) + ": " + e.what());
    }
    return config_from_json(j);
}

void apply_override(json& doc, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ConfigError("override must look like key.path=value, got '" +
                          assignment + "'");
    }
    const std::string path = assignment.substr(0, eq);
    const std::string value = assignment.substr(eq + 1);

    json* node = &doc;
    std::size_t begin = 0;
    while (true) {
        const std::size_t dot = path.find('.', begin);
        const std::string key = path.substr(begin, dot - begin);
        if (key.empty()) throw ConfigError("bad override path '" + path + "'");
        if (dot == std::string::npos) {
            json parsed = json::parse(value, nullptr, false);
            (*node)[key] = parsed.is_discarded() ? json(value) : parsed;
            return;
        }
        node = &(*node)[key];
        begin = dot + 1;
    }
}

double frequency_scale(const RunConfig& config) {
    return config.units == "hz" ? kTwoPi : 1.0;
}

RabiParams resolved_params(const RunConfig& config) {
    const double s = frequency_scale(config);
    RabiParams p;
    p.n_atoms = config.params.n_atoms;
    p.rabi_freq = s * config.params.rabi_freq;
    p.detuning = s * config.params.detuning;
    p.interaction = s * config.params.interaction;
    p.duration = config.params.duration;
    p.validate();
    return p;
}

InitialSpec resolved_initial(const RunConfig& config) {
    const double s = frequency_scale(config);
    InitialSpec spec;
    if (config.initial.kind == "conventional") {
        spec.kind = InitialKind::Conventional;
    } else if (config.initial.kind == "antisymmetric") {
        spec.kind = InitialKind::Antisymmetric;
    } else if (config.initial.kind == "custom") {
        spec.kind = InitialKind::Custom;
        spec.theta = config.initial.theta;
        spec.phi = config.initial.phi;
    } else if (config.initial.kind == "pulse") {
        spec.kind = InitialKind::PulsePrepared;
        spec.pulse.mode = config.initial.pulse.mode == "physical-evolution"
                              ? PulseMode::PhysicalEvolution
                              : PulseMode::IdealRotation;
        spec.pulse.epsilon = config.initial.pulse.epsilon;
        spec.pulse.rabi_freq_pulse = s * config.initial.pulse.rabi_freq_pulse;
        spec.pulse.interaction_pulse = s * config.initial.pulse.interaction_pulse;
    } else {
        throw ConfigError("unknown initial kind '" + config.initial.kind + "'");
    }
    return spec;
}

NoiseModel resolved_noise(const RunConfig& config) {
    NoiseModel n;
    n.sigma = config.sigma;  // Jz units; no frequency conversion
    n.validate();
    return n;
}

ScanAxis resolved_axis(const RunConfig& config, const GridSpec& spec) {
    ScanAxis axis;
    axis.name = spec.name;
    axis.values = spec.resolve();
    const bool frequency_like = spec.name == "delta" || spec.name == "omega" ||
                                spec.name == "chi" || spec.name == "omega_pul";
    if (frequency_like) {
        const double s = frequency_scale(config);
        for (double& v : axis.values) v *= s;
    }
    axis.validate();
    return axis;
}

std::pair<double, double> resolved_search_window(const RunConfig& config) {
    const double s = frequency_scale(config);
    return {s * config.search_window[0], s * config.search_window[1]};
}

double resolved_fd_step(const RunConfig& config) {
    return frequency_scale(config) * config.fd_step;
}

}  // namespace rabisim
