#include "rabisim/protocols.hpp"

#include "rabisim/analytic.hpp"
#include "rabisim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace rabisim {

namespace {

constexpr double kPi = 3.14159265358979323846;

JzSignal jz_mean_var(const DickeState& state) {
    const Eigen::VectorXcd vz = apply_jz(state.n_atoms, state.amplitudes);
    JzSignal s;
    s.mean = state.amplitudes.dot(vz).real();
    s.variance = std::max(0.0, vz.squaredNorm() - s.mean * s.mean);
    return s;
}

DickeState apply_diagonal_phase(const DickeState& state, double chi, double delta,
                                double t) {
    const double j = state.j();
    Eigen::VectorXcd amps = state.amplitudes;
    for (int k = 0; k < amps.size(); ++k) {
        const double m = k - j;
        amps(k) *= std::polar(1.0, -(chi * m * m + delta * m) * t);
    }
    return DickeState::from_amplitudes(state.n_atoms, std::move(amps));
}

}  // namespace

void NoiseModel::validate() const {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("NoiseModel: sigma must be finite and >= 0");
    }
}

void PulseSpec::validate() const {
    if (!(std::isfinite(epsilon) && std::isfinite(rabi_freq_pulse) &&
          std::isfinite(interaction_pulse) && std::isfinite(detuning))) {
        throw std::invalid_argument("PulseSpec: fields must be finite");
    }
    if (mode == PulseMode::PhysicalEvolution && rabi_freq_pulse <= 0.0) {
        throw std::invalid_argument(
            "PulseSpec: physical-evolution mode requires rabi_freq_pulse > 0");
    }
}

DickeState prepare_state(const PulseSpec& spec, int n_atoms) {
    spec.validate();
    const DickeState all_down = coherent_state(kPi, 0.0, n_atoms);
    if (spec.mode == PulseMode::IdealRotation) {
        return rotate_about_y(all_down, 0.5 * (1.0 + spec.epsilon) * kPi);
    }
    RabiParams pulse_params;
    pulse_params.n_atoms = n_atoms;
    pulse_params.rabi_freq = spec.rabi_freq_pulse;
    pulse_params.detuning = spec.detuning;
    pulse_params.interaction = spec.interaction_pulse;
    pulse_params.duration = 0.0;
    const Propagator prop =
        diagonalize(build_hamiltonian(pulse_params, CouplingAxis::Y));
    const double t_pul = (1.0 + spec.epsilon) * 0.5 * kPi / spec.rabi_freq_pulse;
    return evolve(all_down, prop, t_pul);
}

DickeState make_initial(const InitialSpec& spec, int n_atoms, double delta) {
    switch (spec.kind) {
        case InitialKind::Conventional:
            return coherent_state(kPi, 0.0, n_atoms);
        case InitialKind::Antisymmetric:
            return coherent_state(0.5 * kPi, 0.0, n_atoms);
        case InitialKind::Custom:
            return coherent_state(spec.theta, spec.phi, n_atoms);
        case InitialKind::PulsePrepared: {
            PulseSpec pulse = spec.pulse;
            pulse.detuning = delta;
            return prepare_state(pulse, n_atoms);
        }
    }
    throw std::invalid_argument("make_initial: unknown initial kind");
}

RabiOutcome run_rabi(const DickeState& initial, const RabiParams& params,
                     const NoiseModel& noise) {
    noise.validate();
    const JzSignal sig = signal_jz(initial, params);
    RabiOutcome out;
    out.mean_jz = sig.mean;
    out.var_jz = sig.variance;
    out.var_jz_noisy = sig.variance + noise.sigma * noise.sigma;
    return out;
}

double default_fd_step(const RabiParams& params) {
    const double inv_t = params.duration > 0.0 ? 1.0 / params.duration : 0.0;
    return 1e-5 * std::max(params.rabi_freq, std::max(inv_t, 1.0));
}

double fd_slope(double mean_plus, double mean_minus, double fd_step) {
    return (mean_plus - mean_minus) / (2.0 * fd_step);
}

double fd_precision(double var_noisy, double mean_plus, double mean_minus,
                    double fd_step, int n_atoms) {
    const double slope = fd_slope(mean_plus, mean_minus, fd_step);
    const double noise_floor =
        64.0 * std::numeric_limits<double>::epsilon() *
        std::max(1.0, std::abs(mean_plus) + std::abs(mean_minus));
    if (std::abs(slope) < 1e-14 * n_atoms ||
        std::abs(mean_plus - mean_minus) <= noise_floor) {
        return kDiverged;
    }
    return std::sqrt(var_noisy) / std::abs(slope);
}

double precision_numeric(const DickeState& initial, const RabiParams& params,
                         const NoiseModel& noise, double fd_step) {
    if (!(fd_step > 0.0)) {
        throw std::invalid_argument("precision_numeric: fd_step must be > 0");
    }
    noise.validate();
    RabiParams p = params;
    const JzSignal center = signal_jz(initial, p);
    p.detuning = params.detuning + fd_step;
    const double plus = signal_jz(initial, p).mean;
    p.detuning = params.detuning - fd_step;
    const double minus = signal_jz(initial, p).mean;
    return fd_precision(center.variance + noise.sigma * noise.sigma, plus, minus,
                        fd_step, params.n_atoms);
}

double precision_numeric(const InitialSpec& initial, const RabiParams& params,
                         const NoiseModel& noise, double fd_step) {
    if (!initial.depends_on_delta()) {
        return precision_numeric(make_initial(initial, params.n_atoms, params.detuning),
                                 params, noise, fd_step);
    }
    if (!(fd_step > 0.0)) {
        throw std::invalid_argument("precision_numeric: fd_step must be > 0");
    }
    noise.validate();
    auto mean_at = [&](double delta) {
        RabiParams p = params;
        p.detuning = delta;
        return signal_jz(make_initial(initial, params.n_atoms, delta), p).mean;
    };
    RabiParams p = params;
    const JzSignal center =
        signal_jz(make_initial(initial, params.n_atoms, params.detuning), p);
    const double plus = mean_at(params.detuning + fd_step);
    const double minus = mean_at(params.detuning - fd_step);
    return fd_precision(center.variance + noise.sigma * noise.sigma, plus, minus,
                        fd_step, params.n_atoms);
}

double find_zero_crossing(const std::function<double(double)>& f,
                          std::pair<double, double> window, double tol,
                          int coarse_points) {
    if (!(window.first < window.second)) {
        throw std::invalid_argument("find_zero_crossing: window must be ordered");
    }
    if (coarse_points < 2) coarse_points = 2;

    std::vector<double> xs(coarse_points), fs(coarse_points);
    for (int i = 0; i < coarse_points; ++i) {
        xs[i] = window.first + (window.second - window.first) * i /
                                   (coarse_points - 1.0);
        fs[i] = f(xs[i]);
    }

    // Pick the sign-change bracket whose midpoint is closest to zero; the
    // oscillatory interacting spectra have many crossings and the
    // antisymmetric point is the one near resonance.
    int best = -1;
    double best_dist = 0.0;
    for (int i = 0; i + 1 < coarse_points; ++i) {
        if (fs[i] == 0.0) return xs[i];
        if (fs[i] * fs[i + 1] < 0.0) {
            const double mid = 0.5 * (xs[i] + xs[i + 1]);
            if (best < 0 || std::abs(mid) < best_dist) {
                best = i;
                best_dist = std::abs(mid);
            }
        }
    }
    if (fs[coarse_points - 1] == 0.0) return xs[coarse_points - 1];
    if (best < 0) {
        throw NoRootError("no sign change of the signal inside the window [" +
                          std::to_string(window.first) + ", " +
                          std::to_string(window.second) + "]");
    }

    double lo = xs[best], hi = xs[best + 1];
    double flo = fs[best];
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = f(mid);
        if (fmid == 0.0) return mid;
        if (flo * fmid < 0.0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fmid;
        }
    }
    return 0.5 * (lo + hi);
}

namespace {

double root_tolerance(const RabiParams& params) {
    return 1e-10 * std::max(params.rabi_freq, 1.0);
}

}  // namespace

double locate_antisymmetric_point(const DickeState& initial,
                                  const RabiParams& params,
                                  std::pair<double, double> window) {
    auto mean_at = [&](double delta) {
        RabiParams p = params;
        p.detuning = delta;
        return signal_jz(initial, p).mean;
    };
    return find_zero_crossing(mean_at, window, root_tolerance(params));
}

double locate_antisymmetric_point(const InitialSpec& initial,
                                  const RabiParams& params,
                                  std::pair<double, double> window) {
    if (!initial.depends_on_delta()) {
        return locate_antisymmetric_point(
            make_initial(initial, params.n_atoms, 0.0), params, window);
    }
    auto mean_at = [&](double delta) {
        RabiParams p = params;
        p.detuning = delta;
        return signal_jz(make_initial(initial, params.n_atoms, delta), p).mean;
    };
    return find_zero_crossing(mean_at, window, root_tolerance(params));
}

RamseyOatSpec RamseyOatSpec::with_defaults(double chi, int n_atoms,
                                           double total_time) {
    if (!(chi > 0.0)) {
        throw std::invalid_argument(
            "RamseyOatSpec: default squeezing time needs interaction > 0");
    }
    RamseyOatSpec spec;
    spec.interaction = chi;
    spec.n_atoms = n_atoms;
    spec.total_time = total_time;
    spec.squeezing_time =
        std::pow(3.0, 1.0 / 6.0) * std::pow(n_atoms, -2.0 / 3.0) / chi;
    spec.interrogation_time = total_time - spec.squeezing_time;
    spec.validate();
    return spec;
}

void RamseyOatSpec::validate() const {
    if (n_atoms < 1) {
        throw std::invalid_argument("RamseyOatSpec: n_atoms must be >= 1");
    }
    if (!(squeezing_time >= 0.0)) {
        throw std::invalid_argument("RamseyOatSpec: squeezing_time must be >= 0");
    }
    if (!(squeezing_time < total_time)) {
        throw std::invalid_argument("RamseyOatSpec: requires T_p < T");
    }
    if (!(interrogation_time > 0.0)) {
        throw std::invalid_argument("RamseyOatSpec: requires T_R > 0");
    }
    if (std::abs(squeezing_time + interrogation_time - total_time) >
        1e-9 * std::max(1.0, total_time)) {
        throw std::invalid_argument("RamseyOatSpec: T_p + T_R must equal T");
    }
}

double optimal_oat_rotation_angle(const DickeState& squeezed,
                                  const Propagator& jx_prop) {
    // At delta = 0 the phase-accumulation stage is the identity, so the
    // variance of the measured Jz is Var Jz of e^{-i(pi/2 - alpha)Jx}|sq>.
    auto measured_var = [&](double alpha) {
        return jz_mean_var(evolve(squeezed, jx_prop, 0.5 * kPi - alpha)).variance;
    };

    const int coarse = 256;
    int best = 0;
    double best_var = measured_var(0.0);
    for (int i = 1; i < coarse; ++i) {
        const double alpha = kPi * i / coarse;
        const double v = measured_var(alpha);
        if (v < best_var) {
            best_var = v;
            best = i;
        }
    }
    // golden-section refinement on the bracketing cells, pinned to 1e-4 rad
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = kPi * (best - 1) / coarse;
    double hi = kPi * (best + 1) / coarse;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = measured_var(x1), f2 = measured_var(x2);
    while (hi - lo > 1e-4) {
        if (f1 < f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = measured_var(x1);
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = measured_var(x2);
        }
    }
    double alpha = 0.5 * (lo + hi);
    if (alpha < 0.0) alpha += kPi;
    return alpha;
}

RamseyContext::RamseyContext(const RamseyOatSpec& spec) {
    spec.validate();
    n_atoms_ = spec.n_atoms;
    const DickeState input = coherent_state(0.5 * kPi, 0.0, spec.n_atoms);
    const DickeState squeezed =
        apply_diagonal_phase(input, spec.interaction, 0.0, spec.squeezing_time);
    jx_prop_ = diagonalize(build_operator(OperatorKind::Jx, spec.n_atoms));
    alpha_ = spec.rotation_angle ? *spec.rotation_angle
                                 : optimal_oat_rotation_angle(squeezed, jx_prop_);
    // e^{i alpha Jx}
    rotated_ = evolve(squeezed, jx_prop_, -alpha_);
}

JzSignal RamseyContext::measure(double interrogation_time, double delta) const {
    const DickeState accumulated =
        apply_diagonal_phase(rotated_, 0.0, delta, interrogation_time);
    // final pi/2 pulse along x: e^{-i(pi/2)Jx}
    return jz_mean_var(evolve(accumulated, jx_prop_, 0.5 * kPi));
}

RamseyOutcome RamseyContext::evaluate(double interrogation_time, double delta,
                                      const NoiseModel& noise) const {
    noise.validate();
    if (!(interrogation_time > 0.0)) {
        throw std::invalid_argument("RamseyContext: interrogation time must be > 0");
    }
    const JzSignal center = measure(interrogation_time, delta);
    const double h = 1e-5 / interrogation_time;
    const double plus = measure(interrogation_time, delta + h).mean;
    const double minus = measure(interrogation_time, delta - h).mean;

    RamseyOutcome out;
    out.mean_jz = center.mean;
    out.var_jz_noisy = center.variance + noise.sigma * noise.sigma;
    out.precision = fd_precision(out.var_jz_noisy, plus, minus, h, n_atoms_);
    return out;
}

RamseyOutcome ramsey_oat_reference(const RamseyOatSpec& spec, double delta,
                                   const NoiseModel& noise) {
    const RamseyContext ctx(spec);
    return ctx.evaluate(spec.interrogation_time, delta, noise);
}

}  // namespace rabisim
