// oracle_expm.hpp — test-only matrix exponential by scaling-and-squaring
// with a Taylor kernel. Independent of the eigendecomposition propagator it
// cross-checks; never used in the main path.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>

namespace rabisim::testing {

inline Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a) {
    const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();  // inf-norm
    int squarings = 0;
    Eigen::MatrixXcd scaled = a;
    if (norm > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
        scaled /= std::pow(2.0, squarings);
    }
    const int dim = static_cast<int>(a.rows());
    Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(dim, dim);
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(dim, dim);
    for (int k = 1; k <= 40; ++k) {
        term = (term * scaled) / static_cast<double>(k);
        result += term;
        if (term.cwiseAbs().maxCoeff() < 1e-18) break;
    }
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

// e^{-iHt} psi via the oracle.
inline Eigen::VectorXcd evolve_expm(const Eigen::MatrixXcd& h, double t,
                                    const Eigen::VectorXcd& psi) {
    const std::complex<double> minus_i(0.0, -1.0);
    return expm(minus_i * t * h) * psi;
}

}  // namespace rabisim::testing
