#include "rabisim/protocols.hpp"

#include "rabisim/analytic.hpp"
#include "rabisim/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace rabisim;

namespace {

constexpr double kPi = 3.14159265358979323846;

RabiParams params_of(int n, double omega, double delta, double chi, double t) {
    RabiParams p;
    p.n_atoms = n;
    p.rabi_freq = omega;
    p.detuning = delta;
    p.interaction = chi;
    p.duration = t;
    return p;
}

}  // namespace

TEST_CASE("run_rabi: conventional peak, antisymmetric null, noise additivity") {
    const int n = 100;
    const auto conventional = coherent_state(kPi, 0.0, n);
    const auto r1 = run_rabi(conventional, params_of(n, 1.0, 0.0, 0.0, kPi),
                             NoiseModel{});
    CHECK(r1.mean_jz == doctest::Approx(50.0));

    const auto antisym = coherent_state(0.5 * kPi, 0.0, n);
    const auto r2 = run_rabi(antisym, params_of(n, 2.2, 0.0, 0.013, 1.7),
                             NoiseModel{});
    CHECK(std::abs(r2.mean_jz) < 1e-10);

    const auto r3 = run_rabi(antisym, params_of(n, 1.0, 0.2, 0.0, kPi),
                             NoiseModel{10.0});
    CHECK(r3.var_jz_noisy == doctest::Approx(r3.var_jz + 100.0));
}

TEST_CASE("prepare_state: ideal epsilon=0 is exactly |pi/2,0>") {
    PulseSpec spec;
    spec.mode = PulseMode::IdealRotation;
    const auto prepared = prepare_state(spec, 100);
    const auto target = coherent_state(0.5 * kPi, 0.0, 100);
    CHECK((prepared.amplitudes - target.amplitudes).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("prepare_state: physical pulse at Omega_pul = N^2 chi_pul") {
    const int n = 100;
    PulseSpec spec;
    spec.mode = PulseMode::PhysicalEvolution;
    spec.interaction_pulse = 1.0;
    spec.rabi_freq_pulse = static_cast<double>(n) * n;  // N^2 chi
    spec.detuning = 0.0;
    const auto prepared = prepare_state(spec, n);
    const auto target = coherent_state(0.5 * kPi, 0.0, n);
    const double overlap = std::norm(target.amplitudes.dot(prepared.amplitudes));
    CHECK(overlap > 0.99);

    spec.rabi_freq_pulse = 0.0;
    CHECK_THROWS_AS(prepare_state(spec, n), std::invalid_argument);
}

TEST_CASE("pulse-error averaging restores antisymmetry") {
    const int n = 60;
    const double epsilon = 0.1;
    const auto params = params_of(n, 1.0, 0.0, 0.4 * kPi / (n * kPi), kPi);
    PulseSpec plus;
    plus.epsilon = epsilon;
    PulseSpec minus;
    minus.epsilon = -epsilon;
    const auto s_plus = prepare_state(plus, n);
    const auto s_minus = prepare_state(minus, n);
    auto averaged = [&](double delta) {
        RabiParams p = params;
        p.detuning = delta;
        return 0.5 * (signal_jz(s_plus, p).mean + signal_jz(s_minus, p).mean);
    };
    for (double delta : {0.08, 0.31, 0.9}) {
        CHECK(std::abs(averaged(delta) + averaged(-delta)) < 1e-9);
    }
}

TEST_CASE("precision_numeric: SQL point, diverged point, sub-SQL point") {
    const int n = 100;
    const auto antisym = coherent_state(0.5 * kPi, 0.0, n);
    const auto p1 = params_of(n, 1.0, 0.0, 0.0, kPi);
    const double got =
        precision_numeric(antisym, p1, NoiseModel{}, default_fd_step(p1));
    const double expected = 1.0 / (2.0 * std::sqrt(100.0));
    CHECK(std::abs(got - expected) < 1e-4 * expected);

    const auto conventional = coherent_state(kPi, 0.0, n);
    CHECK(is_diverged(precision_numeric(conventional, p1, NoiseModel{},
                                        default_fd_step(p1))));

    const auto p3 = params_of(n, 3.0 * kPi, 0.0, 6.0 * kPi / n, 1.0);
    const double sub_sql =
        precision_numeric(antisym, p3, NoiseModel{}, default_fd_step(p3));
    CHECK(sub_sql < 1.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("locate_antisymmetric_point: perfect input locks to zero") {
    const int n = 40;
    const auto antisym = coherent_state(0.5 * kPi, 0.0, n);
    for (double chi : {0.0, 0.01, 0.05}) {
        const auto params = params_of(n, 1.0, 0.0, chi, kPi);
        const double root =
            locate_antisymmetric_point(antisym, params, {-0.4, 0.4});
        CHECK(std::abs(root) < 1e-9);
    }
}

TEST_CASE("locate_antisymmetric_point: no sign change raises NoRootError") {
    const int n = 40;
    const auto antisym = coherent_state(0.5 * kPi, 0.0, n);
    const auto params = params_of(n, 1.0, 0.0, 0.0, kPi);
    CHECK_THROWS_AS(locate_antisymmetric_point(antisym, params, {2.0, 3.0}),
                    NoRootError);
}

TEST_CASE("pulse shift is small and odd in epsilon") {
    const int n = 100;
    const auto params = params_of(n, 1.0, 0.0, 0.4 * kPi / (n * kPi), kPi);
    InitialSpec initial;
    initial.kind = InitialKind::PulsePrepared;
    initial.pulse.epsilon = 0.05;
    const double root_plus =
        locate_antisymmetric_point(initial, params, {-0.2, 0.2});
    initial.pulse.epsilon = -0.05;
    const double root_minus =
        locate_antisymmetric_point(initial, params, {-0.2, 0.2});
    CHECK(root_plus != 0.0);
    CHECK(std::abs(root_plus + root_minus) < 0.1 * std::abs(root_plus));
}

TEST_CASE("ramsey chi->0 limit reproduces the textbook fringe") {
    const int n = 50;
    RamseyOatSpec spec;
    spec.interaction = 0.0;
    spec.n_atoms = n;
    spec.total_time = 2.0;
    spec.squeezing_time = 0.0;
    spec.interrogation_time = 2.0;
    spec.rotation_angle = 0.0;
    const RamseyContext ctx(spec);
    for (double delta : {-0.4, 0.0, 0.3, 1.0}) {
        const auto out = ctx.evaluate(spec.interrogation_time, delta, NoiseModel{});
        CHECK(out.mean_jz ==
              doctest::Approx(0.5 * n * std::sin(delta * spec.interrogation_time))
                  .epsilon(1e-9));
    }
    // coherent-state Ramsey at max slope: 1/(sqrt(N) T_R)
    const auto at_zero = ctx.evaluate(spec.interrogation_time, 0.0, NoiseModel{});
    CHECK(at_zero.precision ==
          doctest::Approx(1.0 / (std::sqrt(static_cast<double>(n)) *
                                 spec.interrogation_time))
              .epsilon(1e-6));
}

TEST_CASE("squeezing plus optimal rotation beats the coherent readout noise") {
    const int n = 100;
    const auto spec = RamseyOatSpec::with_defaults(2.0 / n, n, 10.0);
    const RamseyContext ctx(spec);
    const auto out = ctx.evaluate(spec.interrogation_time, 0.0, NoiseModel{});
    // squeezed readout variance below the coherent N/4
    CHECK(out.var_jz_noisy < 0.25 * n);
    CHECK(out.precision <
          1.0 / (std::sqrt(static_cast<double>(n)) * spec.interrogation_time));
}

TEST_CASE("ramsey spec validation") {
    CHECK_THROWS_AS(RamseyOatSpec::with_defaults(2.0 / 100, 100, 0.1),
                    std::invalid_argument);  // T_p >= T
    RamseyOatSpec bad;
    bad.n_atoms = 10;
    bad.total_time = 1.0;
    bad.squeezing_time = 1.5;
    bad.interrogation_time = -0.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    CHECK_THROWS_AS(NoiseModel{-1.0}.validate(), std::invalid_argument);
}
