#include "rabisim/spin_core.hpp"

#include <cmath>
#include <stdexcept>

namespace rabisim {

namespace {

void require_atoms(int n_atoms) {
    if (n_atoms < 1) {
        throw std::invalid_argument("n_atoms must be >= 1, got " +
                                    std::to_string(n_atoms));
    }
}

}  // namespace

std::string to_string(OperatorStructure s) {
    switch (s) {
        case OperatorStructure::Diagonal: return "diagonal";
        case OperatorStructure::TridiagonalRealSymmetric:
            return "tridiagonal-real-symmetric";
        case OperatorStructure::TridiagonalHermitian:
            return "tridiagonal-hermitian";
        case OperatorStructure::GeneralHermitian: return "general-hermitian";
        case OperatorStructure::Ladder: return "ladder";
    }
    return "unknown";
}

DickeState DickeState::from_amplitudes(int n_atoms, Eigen::VectorXcd amps) {
    require_atoms(n_atoms);
    if (amps.size() != n_atoms + 1) {
        throw std::invalid_argument(
            "amplitude vector length " + std::to_string(amps.size()) +
            " does not match N+1 = " + std::to_string(n_atoms + 1));
    }
    const double norm2 = amps.squaredNorm();
    if (std::abs(norm2 - 1.0) > 1e-12) {
        throw std::invalid_argument("state not normalized: sum|C_m|^2 = " +
                                    std::to_string(norm2));
    }
    DickeState s;
    s.n_atoms = n_atoms;
    s.amplitudes = std::move(amps);
    return s;
}

CollectiveOperator build_operator(OperatorKind kind, int n_atoms) {
    require_atoms(n_atoms);
    const int dim = n_atoms + 1;
    const double j = 0.5 * n_atoms;

    CollectiveOperator op;
    op.n_atoms = n_atoms;
    op.matrix = Eigen::MatrixXcd::Zero(dim, dim);

    switch (kind) {
        case OperatorKind::Jz:
            for (int k = 0; k < dim; ++k) op.matrix(k, k) = k - j;
            op.structure = OperatorStructure::Diagonal;
            break;
        case OperatorKind::Jz2:
            for (int k = 0; k < dim; ++k) {
                const double m = k - j;
                op.matrix(k, k) = m * m;
            }
            op.structure = OperatorStructure::Diagonal;
            break;
        case OperatorKind::Jx:
            for (int k = 0; k + 1 < dim; ++k) {
                const double lam = lambda_plus(j, k - j);
                op.matrix(k + 1, k) = 0.5 * lam;
                op.matrix(k, k + 1) = 0.5 * lam;
            }
            op.structure = OperatorStructure::TridiagonalRealSymmetric;
            break;
        case OperatorKind::Jy:
            // Jy = (J+ - J-)/(2i): sub-diagonal -i lam/2, super +i lam/2.
            for (int k = 0; k + 1 < dim; ++k) {
                const double lam = lambda_plus(j, k - j);
                op.matrix(k + 1, k) = Complex(0.0, -0.5 * lam);
                op.matrix(k, k + 1) = Complex(0.0, +0.5 * lam);
            }
            op.structure = OperatorStructure::TridiagonalHermitian;
            break;
        case OperatorKind::JPlus:
            for (int k = 0; k + 1 < dim; ++k) {
                op.matrix(k + 1, k) = lambda_plus(j, k - j);
            }
            op.structure = OperatorStructure::Ladder;
            break;
        case OperatorKind::JMinus:
            for (int k = 0; k + 1 < dim; ++k) {
                op.matrix(k, k + 1) = lambda_minus(j, k + 1 - j);
            }
            op.structure = OperatorStructure::Ladder;
            break;
    }

    if (op.structure != OperatorStructure::Ladder && !is_hermitian(op.matrix)) {
        throw std::logic_error("built operator is not Hermitian");
    }
    return op;
}

DickeState coherent_state(double theta, double phi, int n_atoms) {
    require_atoms(n_atoms);
    if (!std::isfinite(theta) || !std::isfinite(phi)) {
        throw std::invalid_argument("theta/phi must be finite");
    }
    const int dim = n_atoms + 1;
    const double c = std::cos(0.5 * theta);  // amplitude on |up>, exponent k
    const double s = std::sin(0.5 * theta);  // amplitude on |down>, exponent N-k
    const double log_c = std::log(std::abs(c));
    const double log_s = std::log(std::abs(s));
    const double sign_c = (c < 0.0) ? -1.0 : 1.0;
    const double sign_s = (s < 0.0) ? -1.0 : 1.0;

    Eigen::VectorXcd amps(dim);
    const double lg_n = std::lgamma(n_atoms + 1.0);
    for (int k = 0; k < dim; ++k) {
        if ((k > 0 && c == 0.0) || (k < n_atoms && s == 0.0)) {
            amps(k) = 0.0;
            continue;
        }
        const double log_binom =
            0.5 * (lg_n - std::lgamma(k + 1.0) - std::lgamma(n_atoms - k + 1.0));
        const double mag = std::exp(log_binom + (k > 0 ? k * log_c : 0.0) +
                                    (k < n_atoms ? (n_atoms - k) * log_s : 0.0));
        const double sign =
            ((k % 2) ? sign_c : 1.0) * (((n_atoms - k) % 2) ? sign_s : 1.0);
        // e^{i phi (J - m)} = e^{i phi (N - k)}
        amps(k) = sign * mag * std::polar(1.0, phi * (n_atoms - k));
    }
    amps /= amps.norm();
    return DickeState::from_amplitudes(n_atoms, std::move(amps));
}

double expectation(const CollectiveOperator& op, const DickeState& state) {
    if (op.n_atoms != state.n_atoms) {
        throw std::invalid_argument("operator/state dimension mismatch: N=" +
                                    std::to_string(op.n_atoms) + " vs N=" +
                                    std::to_string(state.n_atoms));
    }
    if (op.structure == OperatorStructure::Ladder) {
        throw std::invalid_argument("expectation requires a Hermitian operator");
    }
    const Complex val = state.amplitudes.dot(op.matrix * state.amplitudes);
    if (std::abs(val.imag()) > 1e-10 * std::max(1.0, std::abs(val))) {
        throw std::runtime_error("expectation has non-real residue " +
                                 std::to_string(val.imag()));
    }
    return val.real();
}

Eigen::VectorXcd apply_jx(int n_atoms, const Eigen::VectorXcd& c) {
    const int dim = n_atoms + 1;
    const double j = 0.5 * n_atoms;
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
    for (int k = 0; k < dim; ++k) {
        Complex v = 0.0;
        if (k > 0) v += 0.5 * lambda_plus(j, (k - 1) - j) * c(k - 1);
        if (k + 1 < dim) v += 0.5 * lambda_plus(j, k - j) * c(k + 1);
        out(k) = v;
    }
    return out;
}

Eigen::VectorXcd apply_jy(int n_atoms, const Eigen::VectorXcd& c) {
    const int dim = n_atoms + 1;
    const double j = 0.5 * n_atoms;
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
    for (int k = 0; k < dim; ++k) {
        Complex v = 0.0;
        if (k > 0) v += Complex(0.0, -0.5 * lambda_plus(j, (k - 1) - j)) * c(k - 1);
        if (k + 1 < dim) v += Complex(0.0, +0.5 * lambda_plus(j, k - j)) * c(k + 1);
        out(k) = v;
    }
    return out;
}

Eigen::VectorXcd apply_jz(int n_atoms, const Eigen::VectorXcd& c) {
    const int dim = n_atoms + 1;
    const double j = 0.5 * n_atoms;
    Eigen::VectorXcd out(dim);
    for (int k = 0; k < dim; ++k) out(k) = (k - j) * c(k);
    return out;
}

SpinMoments moments(const DickeState& state) {
    const auto& c = state.amplitudes;
    const Eigen::VectorXcd vx = apply_jx(state.n_atoms, c);
    const Eigen::VectorXcd vy = apply_jy(state.n_atoms, c);
    const Eigen::VectorXcd vz = apply_jz(state.n_atoms, c);

    SpinMoments m;
    m.mean_jx = c.dot(vx).real();
    m.mean_jy = c.dot(vy).real();
    m.mean_jz = c.dot(vz).real();
    m.mean_jx2 = vx.squaredNorm();
    m.mean_jy2 = vy.squaredNorm();
    m.mean_jz2 = vz.squaredNorm();
    m.mean_anti_xy = 2.0 * vx.dot(vy).real();
    m.mean_anti_yz = 2.0 * vy.dot(vz).real();
    m.mean_anti_xz = 2.0 * vx.dot(vz).real();

    const double j = state.j();
    const double casimir = j * (j + 1.0);
    const double sum2 = m.mean_jx2 + m.mean_jy2 + m.mean_jz2;
    if (std::abs(sum2 - casimir) > 1e-9 * std::max(1.0, casimir)) {
        throw std::runtime_error("Casimir identity violated: sum of second "
                                 "moments = " + std::to_string(sum2) +
                                 ", J(J+1) = " + std::to_string(casimir));
    }
    const double slack = 1e-9 * std::max(1.0, casimir);
    if (m.mean_jx * m.mean_jx > m.mean_jx2 + slack ||
        m.mean_jy * m.mean_jy > m.mean_jy2 + slack ||
        m.mean_jz * m.mean_jz > m.mean_jz2 + slack) {
        throw std::runtime_error("Cauchy-Schwarz bound violated in moments");
    }
    return m;
}

bool is_hermitian(const Eigen::MatrixXcd& m, double tol) {
    if (m.rows() != m.cols()) return false;
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

bool is_symmetric_state(const DickeState& state, double tol) {
    const auto& c = state.amplitudes;
    const int n = state.n_atoms;
    for (int k = 0; k <= n / 2; ++k) {
        if (std::abs(c(k) - c(n - k)) > tol) return false;
    }
    return true;
}

}  // namespace rabisim
