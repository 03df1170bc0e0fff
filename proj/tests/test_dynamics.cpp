#include "rabisim/dynamics.hpp"

#include "oracle_expm.hpp"
#include "rabisim/analytic.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

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

TEST_CASE("hamiltonian with Omega=0 is diagonal chi m^2 + delta m") {
    const auto h = build_hamiltonian(params_of(2, 0.0, 2.0, 3.0, 0.0),
                                     CouplingAxis::X);
    CHECK(h.structure == OperatorStructure::Diagonal);
    CHECK(h.matrix(0, 0).real() == doctest::Approx(1.0));   // m=-1: 3-2
    CHECK(h.matrix(1, 1).real() == doctest::Approx(0.0));
    CHECK(h.matrix(2, 2).real() == doctest::Approx(5.0));   // m=+1: 3+2
}

TEST_CASE("single-spin x Hamiltonian is (Omega/2) sigma_x") {
    const auto h = build_hamiltonian(params_of(1, 1.0, 0.0, 0.0, 0.0),
                                     CouplingAxis::X);
    CHECK(h.structure == OperatorStructure::TridiagonalRealSymmetric);
    CHECK(h.matrix(0, 1).real() == doctest::Approx(0.5));
    CHECK(h.matrix(1, 0).real() == doctest::Approx(0.5));
}

TEST_CASE("y-axis Hamiltonian is -Omega Jy") {
    const auto h = build_hamiltonian(params_of(2, 1.0, 0.0, 0.0, 0.0),
                                     CouplingAxis::Y);
    CHECK(h.structure == OperatorStructure::TridiagonalHermitian);
    const auto jy = build_operator(OperatorKind::Jy, 2);
    CHECK((h.matrix + jy.matrix).cwiseAbs().maxCoeff() < 1e-15);
    // entries are +-i/sqrt(2)
    CHECK(h.matrix(1, 0).imag() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(h.matrix(0, 1).imag() == doctest::Approx(-1.0 / std::sqrt(2.0)));
}

TEST_CASE("diagonalize sorts a diagonal Hamiltonian") {
    const auto h = build_hamiltonian(params_of(2, 0.0, 2.0, 3.0, 0.0),
                                     CouplingAxis::X);
    const auto p = diagonalize(h);
    CHECK(p.eigenvalues(0) == doctest::Approx(0.0));
    CHECK(p.eigenvalues(1) == doctest::Approx(1.0));
    CHECK(p.eigenvalues(2) == doctest::Approx(5.0));
    // permuted identity eigenvectors
    CHECK(std::abs(p.eigenvectors(1, 0)) == doctest::Approx(1.0));
    CHECK(std::abs(p.eigenvectors(0, 1)) == doctest::Approx(1.0));
    CHECK(std::abs(p.eigenvectors(2, 2)) == doctest::Approx(1.0));
}

TEST_CASE("diagonalize: sigma_x/2 eigenvalues are -1/2, +1/2") {
    const auto p = diagonalize(
        build_hamiltonian(params_of(1, 1.0, 0.0, 0.0, 0.0), CouplingAxis::X));
    CHECK(p.eigenvalues(0) == doctest::Approx(-0.5));
    CHECK(p.eigenvalues(1) == doctest::Approx(0.5));
}

TEST_CASE("propagator reconstructs the Hamiltonian and is unitary") {
    const auto h = build_hamiltonian(
        params_of(100, kPi, 0.3, 0.4 * kPi / 100.0, 0.0), CouplingAxis::X);
    const auto p = diagonalize(h);
    const Eigen::MatrixXcd rec =
        p.eigenvectors * p.eigenvalues.cast<Complex>().asDiagonal() *
        p.eigenvectors.adjoint();
    CHECK((rec - h.matrix).norm() / h.matrix.norm() < 1e-10);
    const Eigen::MatrixXcd gram = p.eigenvectors.adjoint() * p.eigenvectors;
    CHECK((gram - Eigen::MatrixXcd::Identity(101, 101)).cwiseAbs().maxCoeff() <
          1e-12);
}

TEST_CASE("evolve at t=0 is the identity") {
    const auto psi = coherent_state(1.1, 0.4, 12);
    const auto p = diagonalize(
        build_hamiltonian(params_of(12, 1.0, 0.5, 0.1, 0.0), CouplingAxis::X));
    const auto out = evolve(psi, p, 0.0);
    CHECK((out.amplitudes - psi.amplitudes).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("resonant pi pulse inverts the population") {
    const int n = 8;
    const double omega = 2.0;
    const auto psi = coherent_state(kPi, 0.0, n);
    const auto p = diagonalize(
        build_hamiltonian(params_of(n, omega, 0.0, 0.0, 0.0), CouplingAxis::X));
    const auto out = evolve(psi, p, kPi / omega);
    const auto jz = build_operator(OperatorKind::Jz, n);
    CHECK(expectation(jz, out) == doctest::Approx(0.5 * n).epsilon(1e-10));
}

TEST_CASE("evolve matches the chi=0 closed form") {
    // <Jz(T)> = 25 (1 - cos(sqrt(2) pi)) for |pi/2,0>, N=100, Omega=delta=1
    const int n = 100;
    const auto psi = coherent_state(0.5 * kPi, 0.0, n);
    const auto sig = signal_jz(psi, params_of(n, 1.0, 1.0, 0.0, kPi));
    const double expected = 25.0 * (1.0 - std::cos(std::sqrt(2.0) * kPi));
    CHECK(std::abs(sig.mean - expected) < 1e-9);
    CHECK(sig.mean == doctest::Approx(31.656).epsilon(1e-4));
}

TEST_CASE("signal_jz vanishes at resonance for the symmetric input") {
    const auto psi = coherent_state(0.5 * kPi, 0.0, 30);
    for (double chi : {0.0, 0.05, 0.2}) {
        const auto sig = signal_jz(psi, params_of(30, 1.3, 0.0, chi, 2.7));
        CHECK(std::abs(sig.mean) < 1e-10);
    }
}

TEST_CASE("full transfer at the conventional peak has zero variance") {
    const auto psi = coherent_state(kPi, 0.0, 20);
    const auto sig = signal_jz(psi, params_of(20, 1.0, 0.0, 0.0, kPi));
    CHECK(sig.mean == doctest::Approx(10.0));
    CHECK(sig.variance == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("eigendecomposition propagator agrees with the expm oracle") {
    const int n = 100;
    const auto params = params_of(n, kPi, 0.5, 0.4 * kPi / n, 1.0);
    const auto psi = coherent_state(0.5 * kPi, 0.0, n);
    const auto h = build_hamiltonian(params, CouplingAxis::X);
    const auto numeric = signal_jz(psi, params);

    const Eigen::VectorXcd ref = rabisim::testing::evolve_expm(
        h.matrix, params.duration, psi.amplitudes);
    const auto ref_state = DickeState::from_amplitudes(n, ref / ref.norm());
    const Eigen::VectorXcd vz = apply_jz(n, ref_state.amplitudes);
    const double ref_mean = ref_state.amplitudes.dot(vz).real();
    const double ref_var = vz.squaredNorm() - ref_mean * ref_mean;

    CHECK(std::abs(numeric.mean - ref_mean) < 1e-9);
    CHECK(std::abs(numeric.variance - ref_var) < 1e-8);
}

TEST_CASE("pulse orientation: -Omega Jy evolution maps |pi,0> to |pi/2,0>") {
    const int n = 14;
    const double omega = 3.0;
    const auto p = diagonalize(
        build_hamiltonian(params_of(n, omega, 0.0, 0.0, 0.0), CouplingAxis::Y));
    const auto rotated = evolve(coherent_state(kPi, 0.0, n), p,
                                0.5 * kPi / omega);
    const auto target = coherent_state(0.5 * kPi, 0.0, n);
    CHECK((rotated.amplitudes - target.amplitudes).cwiseAbs().maxCoeff() < 1e-12);
    // and rotate_about_y with +pi/2 is the same map
    const auto direct = rotate_about_y(coherent_state(kPi, 0.0, n), 0.5 * kPi);
    CHECK((direct.amplitudes - target.amplitudes).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("unitarity and composition over random parameters") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + static_cast<int>(u(rng) * 25);
        const auto params =
            params_of(n, 3.0 * u(rng), 2.0 * (u(rng) - 0.5), u(rng) - 0.5, 0.0);
        const auto p = diagonalize(build_hamiltonian(params, CouplingAxis::X));
        const auto psi = coherent_state(kPi * u(rng), 2 * kPi * u(rng), n);
        const double t1 = 3.0 * u(rng), t2 = 3.0 * u(rng);
        const auto once = evolve(psi, p, t1 + t2);
        const auto twice = evolve(evolve(psi, p, t1), p, t2);
        CHECK(std::abs(once.amplitudes.norm() - 1.0) < 1e-12);
        CHECK((once.amplitudes - twice.amplitudes).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("interaction-picture coefficient symmetry (symmetric input)") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = 2 + static_cast<int>(u(rng) * 18);
        Eigen::VectorXcd c(n + 1);
        for (int k = 0; k <= n / 2; ++k) {
            const Complex v(u(rng) - 0.5, u(rng) - 0.5);
            c(k) = v;
            c(n - k) = v;
        }
        c /= c.norm();
        const auto psi = DickeState::from_amplitudes(n, c);

        const double omega = 3.0 * u(rng);
        const double delta = 2.0 * (u(rng) - 0.5);
        const double chi = u(rng) - 0.5;
        const double t = 3.0 * u(rng);
        const auto fwd = evolve(
            psi,
            diagonalize(build_hamiltonian(params_of(n, omega, delta, chi, 0.0),
                                          CouplingAxis::X)),
            t);
        const auto bwd = evolve(
            psi,
            diagonalize(build_hamiltonian(params_of(n, omega, -delta, chi, 0.0),
                                          CouplingAxis::X)),
            t);
        const double j = 0.5 * n;
        double worst = 0.0;
        for (int k = 0; k <= n; ++k) {
            const double m = k - j;
            const Complex ci_fwd =
                fwd.amplitudes(k) * std::polar(1.0, (chi * m * m + delta * m) * t);
            const Complex ci_bwd = bwd.amplitudes(n - k) *
                                   std::polar(1.0, (chi * m * m - delta * (-m)) * t);
            worst = std::max(worst, std::abs(ci_fwd - ci_bwd));
        }
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("spectrum antisymmetry for symmetric inputs, any chi") {
    const int n = 24;
    const auto psi = coherent_state(0.5 * kPi, 0.0, n);
    for (double chi : {0.0, 0.03, 0.21}) {
        for (double delta : {0.17, 0.6, 1.9}) {
            const auto plus = signal_jz(psi, params_of(n, 1.1, delta, chi, 2.3));
            const auto minus = signal_jz(psi, params_of(n, 1.1, -delta, chi, 2.3));
            CHECK(std::abs(plus.mean + minus.mean) < 1e-9);
        }
    }
}

TEST_CASE("conventional spectrum is even in delta when chi = 0") {
    const int n = 24;
    const auto psi = coherent_state(kPi, 0.0, n);
    for (double delta : {0.3, 1.1}) {
        const auto plus = signal_jz(psi, params_of(n, 1.0, delta, 0.0, kPi));
        const auto minus = signal_jz(psi, params_of(n, 1.0, -delta, 0.0, kPi));
        CHECK(std::abs(plus.mean - minus.mean) < 1e-9);
    }
}

TEST_CASE("evolve rejects dimension mismatch; params validate") {
    const auto p = diagonalize(
        build_hamiltonian(params_of(4, 1.0, 0.0, 0.0, 0.0), CouplingAxis::X));
    CHECK_THROWS_AS(evolve(coherent_state(1.0, 0.0, 5), p, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(params_of(0, 1.0, 0.0, 0.0, 1.0).validate(),
                    std::invalid_argument);
    CHECK_THROWS_AS(params_of(4, -1.0, 0.0, 0.0, 1.0).validate(),
                    std::invalid_argument);
    CHECK_THROWS_AS(params_of(4, 1.0, 0.0, 0.0, -1.0).validate(),
                    std::invalid_argument);
}
