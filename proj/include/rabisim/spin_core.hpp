// spin_core.hpp — Dicke-basis collective spin algebra: states, operator
// matrices, expectation values, and first/second moment extraction.
//
// Basis convention (fixed; slope signs depend on it): the symmetric subspace
// of N spin-1/2 particles is spanned by |J, m> with J = N/2 and
// m = -J, -J+1, ..., +J, stored at integer offset k = m + J in {0, ..., N}.
// The all-down state |down...down> sits at m = -J, so <Jz> = -N/2 there.
// Spin-J normalization throughout: Jz|J,m> = m|J,m>, eigenvalues in
// [-N/2, N/2].

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>

namespace rabisim {

using Complex = std::complex<double>;

enum class OperatorKind { Jx, Jy, Jz, Jz2, JPlus, JMinus };

enum class OperatorStructure {
    Diagonal,
    TridiagonalRealSymmetric,
    TridiagonalHermitian,
    GeneralHermitian,
    Ladder,  // J+ / J-: tridiagonal but not Hermitian
};

std::string to_string(OperatorStructure s);

// Ladder matrix elements: J+|J,m> = lambda_plus(J,m)|J,m+1>,
// J-|J,m> = lambda_minus(J,m)|J,m-1>.
inline double lambda_plus(double j, double m) {
    return std::sqrt((j - m) * (j + m + 1.0));
}
inline double lambda_minus(double j, double m) {
    return std::sqrt((j + m) * (j - m + 1.0));
}

// Normalized state in the maximal-J (Dicke) subspace.
struct DickeState {
    int n_atoms = 0;
    Eigen::VectorXcd amplitudes;  // C_m at index k = m + J, length N+1

    int dim() const { return n_atoms + 1; }
    double j() const { return 0.5 * n_atoms; }
    double m_of(int k) const { return static_cast<double>(k) - j(); }

    // Validates length and normalization (1e-12) before constructing.
    static DickeState from_amplitudes(int n_atoms, Eigen::VectorXcd amps);
};

// Hermitian (or ladder) collective operator as a dense matrix with a
// structure tag that selects specialized eigensolvers.
struct CollectiveOperator {
    int n_atoms = 0;
    Eigen::MatrixXcd matrix;
    OperatorStructure structure = OperatorStructure::GeneralHermitian;

    int dim() const { return n_atoms + 1; }
};

// First and second moments of the collective spin in a given state.
// Anticommutator means <{Ji,Jj}> = <JiJj + JjJi>.
struct SpinMoments {
    double mean_jx = 0, mean_jy = 0, mean_jz = 0;
    double mean_jx2 = 0, mean_jy2 = 0, mean_jz2 = 0;
    double mean_anti_xy = 0, mean_anti_yz = 0, mean_anti_xz = 0;
};

// Operator factory. Jz, Jz2 are diagonal; Jx is real symmetric tridiagonal;
// Jy is Hermitian tridiagonal with imaginary off-diagonals; J+/J- carry the
// Ladder tag and are exempt from the hermiticity invariant.
CollectiveOperator build_operator(OperatorKind kind, int n_atoms);

// Spin coherent state |theta, phi>: the product state
// (cos(theta/2)|up> + e^{i phi} sin(theta/2)|down>)^(x)N expanded in the
// Dicke basis. theta = pi gives all weight on m = -J (all atoms down);
// theta = pi/2, phi = 0 gives the real binomial profile with C_m = C_{-m}.
// Amplitudes are computed in log space so large N stays stable.
DickeState coherent_state(double theta, double phi, int n_atoms);

// <psi|A|psi> for Hermitian A; asserts the imaginary residue is below
// 1e-10 and discards it.
double expectation(const CollectiveOperator& op, const DickeState& state);

// All nine moments in one pass over the state (matrix-free ladder action).
// Asserts the Casimir identity <Jx^2>+<Jy^2>+<Jz^2> = J(J+1) to 1e-9
// (relative for large N) and the Cauchy-Schwarz bounds.
SpinMoments moments(const DickeState& state);

// Matrix-free application of the basic operators to an amplitude vector.
Eigen::VectorXcd apply_jx(int n_atoms, const Eigen::VectorXcd& c);
Eigen::VectorXcd apply_jy(int n_atoms, const Eigen::VectorXcd& c);
Eigen::VectorXcd apply_jz(int n_atoms, const Eigen::VectorXcd& c);

// Max-abs deviation from Hermiticity, scaled check helper.
bool is_hermitian(const Eigen::MatrixXcd& m, double tol = 1e-12);

// True when the amplitudes satisfy C_m = C_{-m} within tol (the condition
// that makes the Rabi spectrum antisymmetric).
bool is_symmetric_state(const DickeState& state, double tol = 1e-9);

}  // namespace rabisim
