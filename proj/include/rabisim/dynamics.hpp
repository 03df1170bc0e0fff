// dynamics.hpp — rotating-frame Rabi Hamiltonians and exact propagation of
// Dicke states via Hermitian eigendecomposition.
//
// Sign conventions (pinned by tests): forward evolution is e^{-iHt}; the
// pulse Hamiltonian couples with -Omega*Jy so that evolving |pi,0> for
// t = pi/(2 Omega) lands on |pi/2,0> = e^{i(pi/2)Jy}|pi,0>.

#pragma once

#include "rabisim/spin_core.hpp"

#include <Eigen/Dense>

namespace rabisim {

// Physical parameter bundle, all frequencies angular (rad/s), hbar = 1.
struct RabiParams {
    int n_atoms = 0;
    double rabi_freq = 0.0;    // Omega >= 0
    double detuning = 0.0;     // delta = omega0 - omega, any sign
    double interaction = 0.0;  // chi, any sign
    double duration = 0.0;     // T in seconds, >= 0

    void validate() const;
};

enum class CouplingAxis { X, Y };

// H = chi*Jz^2 + delta*Jz + Omega*Jx (axis X, the Rabi interrogation)
// or  chi*Jz^2 + delta*Jz - Omega*Jy (axis Y, the pi/2 preparation pulse).
// params.duration is ignored here.
CollectiveOperator build_hamiltonian(const RabiParams& params, CouplingAxis axis);

// Spectral form of a Hamiltonian: H = V diag(lambda) V^dag, eigenvalues
// ascending. Immutable; one decomposition serves any number of evolution
// times, which is what makes T-sweeps cheap.
struct Propagator {
    int n_atoms = 0;
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXcd eigenvectors;  // unitary, columns

    int dim() const { return n_atoms + 1; }
};

// Dispatches on the structure tag: diagonal matrices are sorted directly,
// real symmetric tridiagonals use the specialized solver, everything else
// goes through the complex self-adjoint solver. A deterministic
// random-vector residual check guards against solver failure.
Propagator diagonalize(const CollectiveOperator& h);

// |psi(t)> = V e^{-i lambda t} V^dag |psi>. Negative t evolves backward.
DickeState evolve(const DickeState& state, const Propagator& prop, double t);

struct JzSignal {
    double mean = 0.0;
    double variance = 0.0;
};

// Mean and variance of Jz after evolving `initial` under the axis-X
// Hamiltonian for params.duration.
JzSignal signal_jz(const DickeState& initial, const RabiParams& params);

// Same but against a pre-diagonalized Hamiltonian (hot path for sweeps).
JzSignal signal_jz_at(const DickeState& initial, const Propagator& prop, double t);

// e^{+i angle J_axis}|psi> helpers (rotations used by state preparation and
// the Ramsey reference protocol).
DickeState rotate_about_x(const DickeState& state, double angle);
DickeState rotate_about_y(const DickeState& state, double angle);

}  // namespace rabisim
