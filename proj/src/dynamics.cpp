#include "rabisim/dynamics.hpp"

#include "rabisim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rabisim {

void RabiParams::validate() const {
    if (n_atoms < 1) {
        throw std::invalid_argument("RabiParams: n_atoms must be >= 1");
    }
    if (!(std::isfinite(rabi_freq) && std::isfinite(detuning) &&
          std::isfinite(interaction) && std::isfinite(duration))) {
        throw std::invalid_argument("RabiParams: fields must be finite");
    }
    if (rabi_freq < 0.0) {
        throw std::invalid_argument("RabiParams: rabi_freq must be >= 0");
    }
    if (duration < 0.0) {
        throw std::invalid_argument("RabiParams: duration must be >= 0");
    }
}

CollectiveOperator build_hamiltonian(const RabiParams& params, CouplingAxis axis) {
    params.validate();
    const int dim = params.n_atoms + 1;
    const double j = 0.5 * params.n_atoms;

    CollectiveOperator h;
    h.n_atoms = params.n_atoms;
    h.matrix = Eigen::MatrixXcd::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) {
        const double m = k - j;
        h.matrix(k, k) = params.interaction * m * m + params.detuning * m;
    }
    if (params.rabi_freq == 0.0) {
        h.structure = OperatorStructure::Diagonal;
        return h;
    }
    for (int k = 0; k + 1 < dim; ++k) {
        const double lam = lambda_plus(j, k - j);
        if (axis == CouplingAxis::X) {
            const double v = 0.5 * params.rabi_freq * lam;
            h.matrix(k + 1, k) = v;
            h.matrix(k, k + 1) = v;
        } else {
            // -Omega*Jy: sub-diagonal +i lam Omega/2, super -i lam Omega/2.
            const double v = 0.5 * params.rabi_freq * lam;
            h.matrix(k + 1, k) = Complex(0.0, +v);
            h.matrix(k, k + 1) = Complex(0.0, -v);
        }
    }
    h.structure = (axis == CouplingAxis::X)
                      ? OperatorStructure::TridiagonalRealSymmetric
                      : OperatorStructure::TridiagonalHermitian;
    return h;
}

namespace {

// Deterministic unit vector for the post-decomposition residual check.
Eigen::VectorXcd probe_vector(int dim) {
    Eigen::VectorXcd v(dim);
    std::uint64_t x = 0x9e3779b97f4a7c15ull;
    for (int k = 0; k < dim; ++k) {
        x ^= x << 13; x ^= x >> 7; x ^= x << 17;
        const double re = static_cast<double>(x >> 11) * 0x1.0p-53 - 0.5;
        x ^= x << 13; x ^= x >> 7; x ^= x << 17;
        const double im = static_cast<double>(x >> 11) * 0x1.0p-53 - 0.5;
        v(k) = Complex(re, im);
    }
    v /= v.norm();
    return v;
}

void check_residual(const CollectiveOperator& h, const Propagator& p) {
    const Eigen::VectorXcd v = probe_vector(p.dim());
    const Eigen::VectorXcd hv = h.matrix * v;
    const Eigen::VectorXcd rec =
        p.eigenvectors *
        (p.eigenvalues.cast<Complex>().asDiagonal() * (p.eigenvectors.adjoint() * v));
    const double scale =
        std::max(1.0, p.eigenvalues.cwiseAbs().maxCoeff());
    const double resid = (hv - rec).norm();
    if (!(resid <= 1e-10 * scale)) {
        throw ComputationError(
            "eigendecomposition residual " + std::to_string(resid) +
            " exceeds tolerance (dim=" + std::to_string(p.dim()) +
            ", |lambda|max=" + std::to_string(scale) + ")");
    }
}

}  // namespace

Propagator diagonalize(const CollectiveOperator& h) {
    if (h.structure == OperatorStructure::Ladder) {
        throw std::invalid_argument("diagonalize requires a Hermitian operator");
    }
    const int dim = h.dim();
    Propagator p;
    p.n_atoms = h.n_atoms;

    switch (h.structure) {
        case OperatorStructure::Diagonal: {
            Eigen::VectorXd d(dim);
            for (int k = 0; k < dim; ++k) d(k) = h.matrix(k, k).real();
            std::vector<int> order(dim);
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(),
                             [&](int a, int b) { return d(a) < d(b); });
            p.eigenvalues.resize(dim);
            p.eigenvectors = Eigen::MatrixXcd::Zero(dim, dim);
            for (int i = 0; i < dim; ++i) {
                p.eigenvalues(i) = d(order[i]);
                p.eigenvectors(order[i], i) = 1.0;
            }
            break;
        }
        case OperatorStructure::TridiagonalRealSymmetric: {
            Eigen::VectorXd diag(dim), sub(dim - 1);
            for (int k = 0; k < dim; ++k) diag(k) = h.matrix(k, k).real();
            for (int k = 0; k + 1 < dim; ++k) sub(k) = h.matrix(k + 1, k).real();
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
            solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
            if (solver.info() != Eigen::Success) {
                throw ComputationError("tridiagonal eigensolver failed, dim=" +
                                       std::to_string(dim));
            }
            p.eigenvalues = solver.eigenvalues();
            p.eigenvectors = solver.eigenvectors().cast<Complex>();
            break;
        }
        default: {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.matrix);
            if (solver.info() != Eigen::Success) {
                throw ComputationError("hermitian eigensolver failed, dim=" +
                                       std::to_string(dim));
            }
            p.eigenvalues = solver.eigenvalues();
            p.eigenvectors = solver.eigenvectors();
            break;
        }
    }
    check_residual(h, p);
    return p;
}

DickeState evolve(const DickeState& state, const Propagator& prop, double t) {
    if (state.n_atoms != prop.n_atoms) {
        throw std::invalid_argument("evolve: state/propagator dimension mismatch");
    }
    if (!std::isfinite(t)) {
        throw std::invalid_argument("evolve: time must be finite");
    }
    Eigen::VectorXcd coeff = prop.eigenvectors.adjoint() * state.amplitudes;
    for (int k = 0; k < coeff.size(); ++k) {
        coeff(k) *= std::polar(1.0, -prop.eigenvalues(k) * t);
    }
    Eigen::VectorXcd out = prop.eigenvectors * coeff;
    return DickeState::from_amplitudes(state.n_atoms, std::move(out));
}

JzSignal signal_jz(const DickeState& initial, const RabiParams& params) {
    params.validate();
    const Propagator prop = diagonalize(build_hamiltonian(params, CouplingAxis::X));
    return signal_jz_at(initial, prop, params.duration);
}

JzSignal signal_jz_at(const DickeState& initial, const Propagator& prop, double t) {
    const DickeState final_state = evolve(initial, prop, t);
    const Eigen::VectorXcd vz = apply_jz(final_state.n_atoms, final_state.amplitudes);
    JzSignal out;
    out.mean = final_state.amplitudes.dot(vz).real();
    const double second = vz.squaredNorm();
    double var = second - out.mean * out.mean;
    // tiny negative values are cancellation noise
    if (var < 0.0) {
        if (var < -1e-9 * std::max(1.0, second)) {
            throw ComputationError("negative Jz variance " + std::to_string(var));
        }
        var = 0.0;
    }
    out.variance = var;
    return out;
}

namespace {

DickeState rotate_about(const DickeState& state, OperatorKind axis, double angle) {
    const Propagator prop = diagonalize(build_operator(axis, state.n_atoms));
    // e^{+i angle J} = e^{-i J (-angle)}
    return evolve(state, prop, -angle);
}

}  // namespace

DickeState rotate_about_x(const DickeState& state, double angle) {
    return rotate_about(state, OperatorKind::Jx, angle);
}

DickeState rotate_about_y(const DickeState& state, double angle) {
    return rotate_about(state, OperatorKind::Jy, angle);
}

}  // namespace rabisim
