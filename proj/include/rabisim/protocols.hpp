// protocols.hpp — full spectroscopy protocols: conventional and antisymmetric
// Rabi runs, imperfect pi/2 preparation, detection noise, finite-difference
// precision, antisymmetric-point location, and the OAT-Ramsey reference.

#pragma once

#include "rabisim/dynamics.hpp"

#include <functional>
#include <optional>
#include <utility>

namespace rabisim {

// Gaussian detection noise of strength sigma (in units of Jz, atoms/2),
// added in quadrature: Var J~z = Var Jz + sigma^2.
struct NoiseModel {
    double sigma = 0.0;

    void validate() const;
};

enum class PulseMode { IdealRotation, PhysicalEvolution };

// Preparation pulse for the |pi/2,0> input state.
// IdealRotation: apply e^{i((1+epsilon)/2) pi Jy} to |pi,0>.
// PhysicalEvolution: evolve |pi,0> under
//   H_pul = interaction_pulse*Jz^2 + detuning*Jz - rabi_freq_pulse*Jy
// for t_pul = (1+epsilon) * pi / (2 rabi_freq_pulse); detuning is the same
// detuning used in the subsequent interrogation.
struct PulseSpec {
    PulseMode mode = PulseMode::IdealRotation;
    double epsilon = 0.0;
    double rabi_freq_pulse = 0.0;
    double interaction_pulse = 0.0;
    double detuning = 0.0;

    void validate() const;
};

DickeState prepare_state(const PulseSpec& spec, int n_atoms);

// Initial-state selector used by protocols, sweeps, and the CLI.
enum class InitialKind { Conventional, Antisymmetric, Custom, PulsePrepared };

struct InitialSpec {
    InitialKind kind = InitialKind::Antisymmetric;
    double theta = 0.0;  // Custom only
    double phi = 0.0;
    PulseSpec pulse;     // PulsePrepared only

    // True when the produced state depends on the interrogation detuning
    // (physical-evolution pulses see delta during preparation).
    bool depends_on_delta() const {
        return kind == InitialKind::PulsePrepared &&
               pulse.mode == PulseMode::PhysicalEvolution;
    }
};

// Conventional -> |pi,0>, Antisymmetric -> |pi/2,0>, Custom -> |theta,phi>,
// PulsePrepared -> prepare_state with the pulse seeing `delta`.
DickeState make_initial(const InitialSpec& spec, int n_atoms, double delta);

struct RabiOutcome {
    double mean_jz = 0.0;
    double var_jz = 0.0;
    double var_jz_noisy = 0.0;  // var_jz + sigma^2
};

RabiOutcome run_rabi(const DickeState& initial, const RabiParams& params,
                     const NoiseModel& noise);

// Default finite-difference step for numeric slopes, 1e-5 * max(Omega, 1/T).
double default_fd_step(const RabiParams& params);

// sqrt(var_noisy) / |slope| with the slope from a central difference.
// Diverged (kDiverged) when |slope| < 1e-14 * N or when the mean difference
// sits at the floating-point noise floor of the two means, which is where
// exactly-symmetric signals land numerically.
double fd_precision(double var_noisy, double mean_plus, double mean_minus,
                    double fd_step, int n_atoms);

// The raw central-difference slope (no divergence handling).
double fd_slope(double mean_plus, double mean_minus, double fd_step);

// Measurement precision Delta omega0 = sqrt(Var Jz + sigma^2) / |slope| with
// the slope from a central difference over detuning +- fd_step. Returns
// kDiverged when |slope| < 1e-14 * N. When the initial state depends on the
// detuning, pass a factory via the InitialSpec overload instead.
double precision_numeric(const DickeState& initial, const RabiParams& params,
                         const NoiseModel& noise, double fd_step);

// Same, re-preparing the initial state at each probed detuning when needed.
double precision_numeric(const InitialSpec& initial, const RabiParams& params,
                         const NoiseModel& noise, double fd_step);

// Root of f on [window.first, window.second]: sign-bracketing on a coarse
// grid (the bracket closest to zero wins, which matters for oscillatory
// signals), then bisection to |delta| tolerance `tol`. Throws NoRootError
// when no sign change exists on the grid.
double find_zero_crossing(const std::function<double(double)>& f,
                          std::pair<double, double> window, double tol,
                          int coarse_points = 64);

// Antisymmetric point of the locking signal: the zero crossing of
// mean_jz(delta) for the given initial state. params.detuning is ignored.
// Tolerance 1e-10 * max(Omega, 1).
double locate_antisymmetric_point(const DickeState& initial,
                                  const RabiParams& params,
                                  std::pair<double, double> window);

// Re-prepares the state per probed detuning (pulse-prepared protocols).
double locate_antisymmetric_point(const InitialSpec& initial,
                                  const RabiParams& params,
                                  std::pair<double, double> window);

// Spin-squeezed Ramsey reference: |pi/2,0> -> e^{-i chi Jz^2 T_p} ->
// e^{i alpha Jx} -> e^{-i delta Jz T_R} -> e^{-i(pi/2) Jx} -> measure Jz.
struct RamseyOatSpec {
    double interaction = 0.0;     // chi (rad/s)
    int n_atoms = 0;
    double total_time = 0.0;      // T (s)
    double squeezing_time = 0.0;  // T_p (s)
    double interrogation_time = 0.0;  // T_R = T - T_p (s)
    std::optional<double> rotation_angle;  // alpha; optimized when absent

    // T_p = 3^(1/6) N^(-2/3) / chi (optimal OAT squeezing duration).
    static RamseyOatSpec with_defaults(double chi, int n_atoms, double total_time);

    void validate() const;
};

struct RamseyOutcome {
    double mean_jz = 0.0;
    double var_jz_noisy = 0.0;
    double precision = 0.0;  // kDiverged at zero slope
};

RamseyOutcome ramsey_oat_reference(const RamseyOatSpec& spec, double delta,
                                   const NoiseModel& noise);

// Precomputed stages for T-sweeps: the squeezed+rotated state and the Jx
// propagator are independent of T_R and delta.
class RamseyContext {
  public:
    explicit RamseyContext(const RamseyOatSpec& spec);

    RamseyOutcome evaluate(double interrogation_time, double delta,
                           const NoiseModel& noise) const;

    double rotation_angle() const { return alpha_; }

  private:
    JzSignal measure(double interrogation_time, double delta) const;

    int n_atoms_;
    double alpha_;
    DickeState rotated_;    // after squeezing and e^{i alpha Jx}
    Propagator jx_prop_;    // for the final pi/2 pulse
};

// Rotation angle minimizing the variance of the measured Jz at delta = 0
// (coarse scan over [0, pi) plus golden-section refinement to 1e-4 rad).
double optimal_oat_rotation_angle(const DickeState& squeezed,
                                  const Propagator& jx_prop);

}  // namespace rabisim
