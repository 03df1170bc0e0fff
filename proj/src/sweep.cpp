#include "rabisim/sweep.hpp"

#include "rabisim/analytic.hpp"
#include "rabisim/errors.hpp"
#include "rabisim/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rabisim {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

void apply_axis_value(RabiParams& params, const std::string& name, double value) {
    if (name == "delta") {
        params.detuning = value;
    } else if (name == "omega") {
        params.rabi_freq = value;
    } else if (name == "chi") {
        params.interaction = value;
    } else if (name == "duration") {
        params.duration = value;
    } else {
        throw std::invalid_argument("unknown scan axis '" + name + "'");
    }
}

bool grid_symmetric_about_zero(const std::vector<double>& v) {
    const std::size_t n = v.size();
    double scale = 1.0;
    for (double x : v) scale = std::max(scale, std::abs(x));
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(v[i] + v[n - 1 - i]) > 1e-12 * scale) return false;
    }
    return true;
}

}  // namespace

void ScanAxis::validate() const {
    if (name.empty()) throw std::invalid_argument("scan axis has no name");
    if (values.empty()) {
        throw std::invalid_argument("scan axis '" + name + "' has no values");
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("scan axis '" + name +
                                        "' has non-finite values");
        }
    }
    bool inc = true, dec = true;
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        if (!(values[i] < values[i + 1])) inc = false;
        if (!(values[i] > values[i + 1])) dec = false;
    }
    if (!inc && !dec) {
        throw std::invalid_argument("scan axis '" + name +
                                    "' must be strictly monotone");
    }
}

void ScanGrid::validate() const {
    axis1.validate();
    if (axis2) axis2->validate();
    base.validate();
    noise.validate();
}

void scan_delta_streamed(const ScanGrid& grid, const SweepOptions& opts,
                         const std::function<void(const SpectrumRow&)>& sink) {
    grid.validate();
    if (grid.axis1.name != "delta") {
        throw std::invalid_argument("scan_delta needs axis1 named 'delta'");
    }
    const int n_atoms = grid.base.n_atoms;
    const bool delta_dependent = grid.initial.depends_on_delta();
    std::optional<DickeState> fixed_state;
    if (!delta_dependent) {
        fixed_state = make_initial(grid.initial, n_atoms, 0.0);
    }

    const std::vector<double>& deltas = grid.axis1.values;
    const bool check_antisym = !delta_dependent &&
                               is_symmetric_state(*fixed_state) &&
                               grid_symmetric_about_zero(deltas);
    std::vector<double> means(deltas.size(), kNan);

    auto compute_row = [&](std::size_t i) {
        const double delta = deltas[i];
        RabiParams params = grid.base;
        params.detuning = delta;
        const double h = opts.fd_step > 0.0 ? opts.fd_step : default_fd_step(params);

        SpectrumRow row;
        row.delta = delta;
        try {
            auto mean_at = [&](double d) {
                RabiParams p = params;
                p.detuning = d;
                if (delta_dependent) {
                    return signal_jz(make_initial(grid.initial, n_atoms, d), p).mean;
                }
                return signal_jz(*fixed_state, p).mean;
            };
            const DickeState state =
                delta_dependent ? make_initial(grid.initial, n_atoms, delta)
                                : *fixed_state;
            const JzSignal center = signal_jz(state, params);
            row.mean_jz = center.mean;
            row.mean_jz_scaled = center.mean / n_atoms;
            row.var_jz = center.variance;
            row.var_jz_noisy = center.variance + grid.noise.sigma * grid.noise.sigma;
            const double plus = mean_at(delta + h);
            const double minus = mean_at(delta - h);
            row.slope = fd_slope(plus, minus, h);
            row.precision =
                fd_precision(row.var_jz_noisy, plus, minus, h, n_atoms);
        } catch (const ComputationError& e) {
            row.ok = false;
            row.error = e.what();
            row.mean_jz = row.mean_jz_scaled = row.var_jz = kNan;
            row.var_jz_noisy = row.slope = row.precision = kNan;
        }
        if (row.ok && std::abs(row.mean_jz_scaled) > 0.5 + 1e-9) {
            throw ComputationError("scaled signal out of bounds: " +
                                   std::to_string(row.mean_jz_scaled));
        }
        means[i] = row.mean_jz;
        return row;
    };

    // Chunked so large grids stream to the sink without residing in memory.
    const std::size_t chunk = 256;
    std::vector<SpectrumRow> buffer;
    for (std::size_t start = 0; start < deltas.size(); start += chunk) {
        const std::size_t count = std::min(chunk, deltas.size() - start);
        buffer.assign(count, SpectrumRow{});
        parallel_for(count, opts.threads,
                     [&](std::size_t k) { buffer[k] = compute_row(start + k); });
        for (const auto& row : buffer) sink(row);
    }

    if (check_antisym) {
        const std::size_t n = deltas.size();
        for (std::size_t i = 0; i < n; ++i) {
            const double a = means[i], b = means[n - 1 - i];
            if (std::isnan(a) || std::isnan(b)) continue;
            if (std::abs(a + b) > 1e-9 * n_atoms) {
                throw ComputationError(
                    "antisymmetry violated for symmetric initial state at delta=" +
                    std::to_string(deltas[i]));
            }
        }
    }
}

SpectrumTable scan_delta(const ScanGrid& grid, const SweepOptions& opts) {
    SpectrumTable table;
    table.rows.reserve(grid.axis1.values.size());
    scan_delta_streamed(grid, opts,
                        [&](const SpectrumRow& row) { table.rows.push_back(row); });
    return table;
}

HeatmapResult heatmap(const ScanGrid& grid, const SweepOptions& opts) {
    grid.validate();
    if (!grid.axis2) {
        throw std::invalid_argument("heatmap needs two scan axes");
    }
    const std::size_t n1 = grid.axis1.values.size();
    const std::size_t n2 = grid.axis2->values.size();

    HeatmapResult result;
    result.axis1 = grid.axis1;
    result.axis2 = *grid.axis2;
    result.precision.resize(static_cast<Eigen::Index>(n1),
                            static_cast<Eigen::Index>(n2));

    parallel_for(n1 * n2, opts.threads, [&](std::size_t idx) {
        const std::size_t i = idx / n2;
        const std::size_t j = idx % n2;
        RabiParams params = grid.base;
        params.detuning = 0.0;
        apply_axis_value(params, grid.axis1.name, grid.axis1.values[i]);
        apply_axis_value(params, grid.axis2->name, grid.axis2->values[j]);
        const double h = opts.fd_step > 0.0 ? opts.fd_step : default_fd_step(params);
        double cell;
        try {
            cell = precision_numeric(grid.initial, params, grid.noise, h);
        } catch (const ComputationError&) {
            cell = kNan;
        }
        result.precision(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            cell;
    });
    return result;
}

OptimalTime optimal_time(const RabiParams& base, const InitialSpec& initial,
                         std::pair<double, double> window,
                         const NoiseModel& noise, const SweepOptions& opts,
                         int grid_points) {
    base.validate();
    noise.validate();
    if (!(window.first > 0.0 && window.first < window.second &&
          std::isfinite(window.second))) {
        throw std::invalid_argument("optimal_time: window must satisfy 0 < lo < hi");
    }
    if (grid_points < 2) {
        throw std::invalid_argument("optimal_time: need at least 2 grid points");
    }

    const double h =
        opts.fd_step > 0.0
            ? opts.fd_step
            : 1e-5 * std::max(base.rabi_freq, std::max(1.0 / window.first, 1.0));

    // H is T-independent: three spectral decompositions serve the whole grid.
    auto propagator_at = [&](double delta) {
        RabiParams p = base;
        p.detuning = delta;
        return diagonalize(build_hamiltonian(p, CouplingAxis::X));
    };
    const Propagator prop0 = propagator_at(0.0);
    const Propagator prop_plus = propagator_at(h);
    const Propagator prop_minus = propagator_at(-h);
    const DickeState s0 = make_initial(initial, base.n_atoms, 0.0);
    const DickeState sp = initial.depends_on_delta()
                              ? make_initial(initial, base.n_atoms, h)
                              : s0;
    const DickeState sm = initial.depends_on_delta()
                              ? make_initial(initial, base.n_atoms, -h)
                              : s0;

    auto precision_at = [&](double t) {
        const JzSignal center = signal_jz_at(s0, prop0, t);
        const double plus = signal_jz_at(sp, prop_plus, t).mean;
        const double minus = signal_jz_at(sm, prop_minus, t).mean;
        return fd_precision(center.variance + noise.sigma * noise.sigma, plus,
                            minus, h, base.n_atoms);
    };

    std::vector<double> ts(grid_points), ps(grid_points);
    for (int i = 0; i < grid_points; ++i) {
        ts[i] = window.first +
                (window.second - window.first) * i / (grid_points - 1.0);
    }
    parallel_for(grid_points, opts.threads,
                 [&](std::size_t i) { ps[i] = precision_at(ts[i]); });

    int best = -1;
    for (int i = 0; i < grid_points; ++i) {
        if (!std::isfinite(ps[i])) continue;
        if (best < 0 || ps[i] < ps[best]) best = i;
    }
    if (best < 0) {
        throw NoOptimumError("precision diverged over the whole time window");
    }

    double lo = ts[std::max(0, best - 1)];
    double hi = ts[std::min(grid_points - 1, best + 1)];
    const double tol = 1e-3 * (ts[1] - ts[0]);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = precision_at(x1), f2 = precision_at(x2);
    while (hi - lo > tol) {
        if (f1 < f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = precision_at(x1);
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = precision_at(x2);
        }
    }
    OptimalTime result;
    result.t_opt = 0.5 * (lo + hi);
    result.precision = precision_at(result.t_opt);
    if (!std::isfinite(result.precision) || result.precision > ps[best]) {
        result.t_opt = ts[best];
        result.precision = ps[best];
    }
    return result;
}

}  // namespace rabisim
