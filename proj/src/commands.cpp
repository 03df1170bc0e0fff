#include "rabisim/commands.hpp"

#include "rabisim/analytic.hpp"
#include "rabisim/errors.hpp"
#include "rabisim/parallel.hpp"
#include "rabisim/presets.hpp"
#include "rabisim/version.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <limits>

namespace rabisim {

using nlohmann::json;

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

json meta_for(const RunConfig& config) {
    json meta;
    meta["engine_version"] = kVersion;
    meta["config"] = config_to_json(config);
    return meta;
}

ScanGrid make_grid(const RunConfig& config) {
    ScanGrid grid;
    grid.axis1 = resolved_axis(config, config.axis1);
    if (config.axis2) grid.axis2 = resolved_axis(config, *config.axis2);
    grid.base = resolved_params(config);
    grid.initial = resolved_initial(config);
    grid.noise = resolved_noise(config);
    return grid;
}

SweepOptions make_options(const RunConfig& config) {
    SweepOptions opts;
    opts.threads = config.threads;
    opts.fd_step = resolved_fd_step(config);
    return opts;
}

}  // namespace

void run_spectrum(const RunConfig& config, std::ostream& os) {
    const ScanGrid grid = make_grid(config);
    const SweepOptions opts = make_options(config);
    if (grid.axis1.name != "delta") {
        throw ConfigError("spectrum needs grid.axis1 named 'delta', got '" +
                          grid.axis1.name + "'");
    }
    if (config.output_format == OutputFormat::Csv) {
        write_spectrum_csv_header(os);
        scan_delta_streamed(grid, opts, [&](const SpectrumRow& row) {
            write_spectrum_csv_row(os, row);
        });
    } else {
        const SpectrumTable table = scan_delta(grid, opts);
        write_spectrum_json(os, table, meta_for(config));
    }
}

void run_heatmap(const RunConfig& config, std::ostream& os) {
    const ScanGrid grid = make_grid(config);
    if (!grid.axis2) throw ConfigError("heatmap needs grid.axis2");
    const HeatmapResult result = heatmap(grid, make_options(config));
    if (config.output_format == OutputFormat::Csv) {
        write_heatmap_csv(os, result);
    } else {
        write_heatmap_json(os, result, meta_for(config));
    }
}

void run_pulse(const RunConfig& config, std::ostream& os) {
    const ScanAxis axis = resolved_axis(config, config.axis1);
    const RabiParams params = resolved_params(config);
    const InitialSpec base_initial = resolved_initial(config);
    const auto window = resolved_search_window(config);
    if (!(window.first < window.second)) {
        throw ConfigError("pulse needs search_window = [lo, hi] with lo < hi");
    }
    if (base_initial.kind != InitialKind::PulsePrepared) {
        throw ConfigError("pulse protocol needs initial.kind = 'pulse'");
    }
    const bool omega_scan = axis.name == "omega_pul";
    if (!omega_scan && axis.name != "epsilon") {
        throw ConfigError("pulse scan axis must be 'epsilon' or 'omega_pul'");
    }
    if (omega_scan && base_initial.pulse.mode != PulseMode::PhysicalEvolution) {
        throw ConfigError(
            "omega_pul scans need initial.pulse.mode = 'physical-evolution'");
    }

    const DickeState target =
        coherent_state(0.5 * 3.14159265358979323846, 0.0, params.n_atoms);
    std::vector<PulseRow> rows(axis.values.size());
    parallel_for(axis.values.size(), config.threads, [&](std::size_t i) {
        InitialSpec initial = base_initial;
        if (omega_scan) {
            initial.pulse.rabi_freq_pulse = axis.values[i];
        } else {
            initial.pulse.epsilon = axis.values[i];
        }
        PulseRow row;
        row.x = axis.values[i];
        if (omega_scan) {
            PulseSpec at_resonance = initial.pulse;
            at_resonance.detuning = 0.0;
            const DickeState prepared = prepare_state(at_resonance, params.n_atoms);
            row.overlap =
                std::norm(target.amplitudes.dot(prepared.amplitudes));
            row.has_overlap = true;
        }
        row.delta_root = locate_antisymmetric_point(initial, params, window);
        rows[i] = row;
    });

    if (config.output_format == OutputFormat::Csv) {
        write_pulse_csv(os, rows);
    } else {
        write_pulse_json(os, rows, meta_for(config));
    }
}

void run_compare(const RunConfig& config, std::ostream& os) {
    const ScanAxis axis = resolved_axis(config, config.axis1);
    if (axis.name != "duration") {
        throw ConfigError("compare needs grid.axis1 named 'duration'");
    }
    const RabiParams base = resolved_params(config);
    const InitialSpec initial = resolved_initial(config);
    const NoiseModel noise = resolved_noise(config);
    const double sigma = noise.sigma;
    const int n = base.n_atoms;

    const double t_min = *std::min_element(axis.values.begin(), axis.values.end());
    if (!(t_min > 0.0)) throw ConfigError("compare durations must be > 0");
    const double fd = resolved_fd_step(config) > 0.0
                          ? resolved_fd_step(config)
                          : 1e-5 * std::max(base.rabi_freq,
                                            std::max(1.0 / t_min, 1.0));

    // Rabi side: the Hamiltonian is T-independent, so three propagators
    // (delta = 0, +-fd) cover the whole duration axis.
    auto prop_at = [&](double delta) {
        RabiParams p = base;
        p.detuning = delta;
        return diagonalize(build_hamiltonian(p, CouplingAxis::X));
    };
    const Propagator prop0 = prop_at(0.0);
    const Propagator prop_plus = prop_at(fd);
    const Propagator prop_minus = prop_at(-fd);
    const DickeState state = make_initial(initial, n, 0.0);

    // Ramsey side: T_p and the optimal rotation depend only on (chi, N).
    std::optional<RamseyContext> ramsey;
    double t_pulse = 0.0;
    if (base.interaction > 0.0) {
        const RamseyOatSpec probe = RamseyOatSpec::with_defaults(
            base.interaction, n, 2.0 * std::max(t_min, 1.0) +
                                     std::pow(3.0, 1.0 / 6.0) *
                                         std::pow(n, -2.0 / 3.0) /
                                         base.interaction);
        t_pulse = probe.squeezing_time;
        ramsey.emplace(probe);
    }

    std::vector<CompareRow> rows(axis.values.size());
    parallel_for(axis.values.size(), config.threads, [&](std::size_t i) {
        const double t = axis.values[i];
        CompareRow row;
        row.duration = t;
        const JzSignal center = signal_jz_at(state, prop0, t);
        const double plus = signal_jz_at(state, prop_plus, t).mean;
        const double minus = signal_jz_at(state, prop_minus, t).mean;
        row.rabi_sigma0 = fd_precision(center.variance, plus, minus, fd, n);
        row.rabi_noisy = fd_precision(center.variance + sigma * sigma, plus,
                                      minus, fd, n);
        if (ramsey && t > t_pulse) {
            const double t_r = t - t_pulse;
            row.ramsey_sigma0 = ramsey->evaluate(t_r, 0.0, NoiseModel{0.0}).precision;
            row.ramsey_noisy = ramsey->evaluate(t_r, 0.0, NoiseModel{sigma}).precision;
        } else {
            row.ramsey_sigma0 = row.ramsey_noisy = kNan;
        }
        row.sql = 1.0 / (std::sqrt(static_cast<double>(n)) * t);
        rows[i] = row;
    });

    if (config.output_format == OutputFormat::Csv) {
        write_compare_csv(os, rows);
    } else {
        write_compare_json(os, rows, meta_for(config));
    }
}

void run_command(const std::string& expected, const RunConfig& config,
                 std::ostream& os) {
    if (config.protocol != expected) {
        throw ConfigError("config protocol '" + config.protocol +
                          "' does not match subcommand '" + expected + "'");
    }
    if (expected == "spectrum") {
        run_spectrum(config, os);
    } else if (expected == "heatmap") {
        run_heatmap(config, os);
    } else if (expected == "pulse") {
        run_pulse(config, os);
    } else if (expected == "compare") {
        run_compare(config, os);
    } else {
        throw ConfigError("unknown protocol '" + expected + "'");
    }
}

}  // namespace rabisim
