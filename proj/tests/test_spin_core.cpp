#include "rabisim/spin_core.hpp"

#include <doctest.h>

#include <cmath>

using namespace rabisim;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("jz matrix for N=2 is diag(-1, 0, +1)") {
    const auto jz = build_operator(OperatorKind::Jz, 2);
    CHECK(jz.structure == OperatorStructure::Diagonal);
    CHECK(jz.matrix(0, 0).real() == doctest::Approx(-1.0));
    CHECK(jz.matrix(1, 1).real() == doctest::Approx(0.0));
    CHECK(jz.matrix(2, 2).real() == doctest::Approx(1.0));
    CHECK(jz.matrix(0, 1) == Complex(0.0, 0.0));
}

TEST_CASE("jx for a single spin is sigma_x / 2") {
    const auto jx = build_operator(OperatorKind::Jx, 1);
    CHECK(jx.structure == OperatorStructure::TridiagonalRealSymmetric);
    CHECK(jx.matrix(0, 1).real() == doctest::Approx(0.5));
    CHECK(jx.matrix(1, 0).real() == doctest::Approx(0.5));
    CHECK(jx.matrix(0, 0) == Complex(0.0, 0.0));
}

TEST_CASE("j+ for N=2 has ladder elements sqrt(2), sqrt(2)") {
    const auto jp = build_operator(OperatorKind::JPlus, 2);
    CHECK(jp.structure == OperatorStructure::Ladder);
    // lambda_+(-1) and lambda_+(0) for J=1, connecting m -> m+1
    CHECK(jp.matrix(1, 0).real() == doctest::Approx(std::sqrt(2.0)));
    CHECK(jp.matrix(2, 1).real() == doctest::Approx(std::sqrt(2.0)));
    CHECK(jp.matrix(0, 1) == Complex(0.0, 0.0));
    const auto jm = build_operator(OperatorKind::JMinus, 2);
    CHECK((jp.matrix - jm.matrix.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("build_operator rejects n_atoms = 0") {
    CHECK_THROWS_AS(build_operator(OperatorKind::Jz, 0), std::invalid_argument);
}

TEST_CASE("commutation relations [Ji, Jj] = i eps_ijk Jk for N = 1..20") {
    for (int n = 1; n <= 20; ++n) {
        const auto jx = build_operator(OperatorKind::Jx, n).matrix;
        const auto jy = build_operator(OperatorKind::Jy, n).matrix;
        const auto jz = build_operator(OperatorKind::Jz, n).matrix;
        const Complex i(0.0, 1.0);
        CHECK((jx * jy - jy * jx - i * jz).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((jy * jz - jz * jy - i * jx).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((jz * jx - jx * jz - i * jy).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("all-down coherent state puts full weight on m = -J") {
    const auto s = coherent_state(kPi, 0.0, 4);
    CHECK(std::abs(s.amplitudes(0)) == doctest::Approx(1.0));
    for (int k = 1; k <= 4; ++k) CHECK(std::abs(s.amplitudes(k)) < 1e-15);
}

TEST_CASE("binomial profile of |pi/2,0> for N=2") {
    const auto s = coherent_state(0.5 * kPi, 0.0, 2);
    CHECK(s.amplitudes(0).real() == doctest::Approx(0.5));
    CHECK(s.amplitudes(1).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(s.amplitudes(2).real() == doctest::Approx(0.5));
}

TEST_CASE("coherent state Bloch vector and mirror symmetry") {
    const int n = 100;
    const auto s = coherent_state(0.5 * kPi, 0.5 * kPi, n);
    const auto jx = build_operator(OperatorKind::Jx, n);
    const auto jy = build_operator(OperatorKind::Jy, n);
    const auto jz = build_operator(OperatorKind::Jz, n);
    CHECK(std::abs(expectation(jy, s) - 50.0) < 1e-10);
    CHECK(std::abs(expectation(jx, s)) < 1e-10);
    CHECK(std::abs(expectation(jz, s)) < 1e-10);

    CHECK(is_symmetric_state(coherent_state(0.5 * kPi, 0.0, 11), 1e-12));
    CHECK_FALSE(is_symmetric_state(coherent_state(0.4 * kPi, 0.0, 11)));
}

TEST_CASE("expectation matches the textbook coherent-state values") {
    const int n = 100;
    const auto jz = build_operator(OperatorKind::Jz, n);
    const auto jx = build_operator(OperatorKind::Jx, n);
    const auto jz2 = build_operator(OperatorKind::Jz2, n);
    CHECK(expectation(jz, coherent_state(kPi, 0.0, n)) == doctest::Approx(-50.0));
    CHECK(expectation(jx, coherent_state(0.5 * kPi, 0.0, n)) ==
          doctest::Approx(50.0));
    // Delta Jz^2 = N/4 for the x-polarized SCS, and <Jz> = 0
    CHECK(expectation(jz2, coherent_state(0.5 * kPi, 0.0, n)) ==
          doctest::Approx(25.0));
}

TEST_CASE("expectation rejects dimension mismatch and ladder operators") {
    const auto jz = build_operator(OperatorKind::Jz, 4);
    const auto s = coherent_state(kPi, 0.0, 5);
    CHECK_THROWS_AS(expectation(jz, s), std::invalid_argument);
    const auto jp = build_operator(OperatorKind::JPlus, 5);
    CHECK_THROWS_AS(expectation(jp, s), std::invalid_argument);
}

TEST_CASE("moments of the all-down state") {
    const int n = 10;
    const auto m = moments(coherent_state(kPi, 0.0, n));
    CHECK(m.mean_jz == doctest::Approx(-5.0));
    CHECK(m.mean_jz2 == doctest::Approx(25.0));
    CHECK(std::abs(m.mean_anti_xy) < 1e-12);
    CHECK(std::abs(m.mean_anti_yz) < 1e-12);
    CHECK(std::abs(m.mean_anti_xz) < 1e-12);
}

TEST_CASE("moments of |pi/2,0> for N=100") {
    const auto m = moments(coherent_state(0.5 * kPi, 0.0, 100));
    CHECK(m.mean_jx == doctest::Approx(50.0));
    CHECK(m.mean_jx2 == doctest::Approx(2500.0));
    CHECK(m.mean_jy2 == doctest::Approx(25.0));
    CHECK(m.mean_jz2 == doctest::Approx(25.0));
    CHECK(std::abs(m.mean_jy) < 1e-12);
    CHECK(std::abs(m.mean_jz) < 1e-12);
}

TEST_CASE("Casimir identity across a theta/phi grid") {
    for (int n : {1, 2, 7, 60}) {
        const double casimir = 0.25 * n * (n + 2.0);
        for (double theta : {0.1, 1.0, 2.0, 3.0}) {
            for (double phi : {0.0, 1.0, 4.0}) {
                const auto m = moments(coherent_state(theta, phi, n));
                CHECK(std::abs(m.mean_jx2 + m.mean_jy2 + m.mean_jz2 - casimir) <
                      1e-9 * std::max(1.0, casimir));
            }
        }
    }
}

TEST_CASE("from_amplitudes validates length and norm") {
    Eigen::VectorXcd bad_len(3);
    bad_len << 1.0, 0.0, 0.0;
    CHECK_THROWS_AS(DickeState::from_amplitudes(3, bad_len),
                    std::invalid_argument);
    Eigen::VectorXcd bad_norm(4);
    bad_norm << 0.5, 0.5, 0.5, 0.6;
    CHECK_THROWS_AS(DickeState::from_amplitudes(3, bad_norm),
                    std::invalid_argument);
}
