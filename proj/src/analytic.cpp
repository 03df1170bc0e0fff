#include "rabisim/analytic.hpp"

#include "rabisim/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace rabisim {

namespace {

// Building blocks regular at xi -> 0:
//   A = (1 - cos(xi T)) / xi^2          -> T^2/2
//   B = sin(xi T) / xi                  -> T
//   D = (T B - 2 A) / xi^2              -> -T^4/12
//   E = (T cos(xi T) - B) / xi^2        -> -T^3/3
// Everything else is assembled from these:
//   X  = Omega delta A,     Y  = Omega B,        Z = 1 - Omega^2 A
//   X' = Omega (A + delta^2 D),  Y' = delta Omega E,  Z' = -delta Omega^2 D
// (Z' re-derived from Z; the u^2-level cancellations in D and E force the
// series branch below u ~ 0.05.)
struct Blocks {
    double a, b, c, d, e;
};

Blocks blocks(double omega, double delta, double t) {
    const double xi2 = omega * omega + delta * delta;
    const double xi = std::sqrt(xi2);
    const double u = xi * t;
    Blocks bl{};
    bl.c = std::cos(u);
    if (u < 0.05) {
        const double t2 = t * t;
        const double u2 = u * u;
        bl.a = t2 * (0.5 - u2 / 24.0 + u2 * u2 / 720.0 - u2 * u2 * u2 / 40320.0);
        bl.b = t * (1.0 - u2 / 6.0 + u2 * u2 / 120.0 - u2 * u2 * u2 / 5040.0);
        bl.d = t2 * t2 * (-1.0 / 12.0 + u2 / 180.0 - u2 * u2 / 6720.0);
        bl.e = t * t2 * (-1.0 / 3.0 + u2 / 30.0 - u2 * u2 / 840.0);
    } else {
        const double s = std::sin(u);
        bl.a = (1.0 - bl.c) / xi2;
        bl.b = s / xi;
        bl.d = (t * bl.b - 2.0 * bl.a) / xi2;
        bl.e = (t * bl.c - bl.b) / xi2;
    }
    return bl;
}

void check_inputs(double omega, double delta, double t) {
    if (!(std::isfinite(omega) && std::isfinite(delta) && std::isfinite(t))) {
        throw std::invalid_argument("xyz: inputs must be finite");
    }
}

}  // namespace

XyzCoefficients xyz(double omega, double delta, double t) {
    check_inputs(omega, delta, t);
    const Blocks bl = blocks(omega, delta, t);
    XyzCoefficients out;
    out.x_coef = omega * delta * bl.a;
    out.y_coef = omega * bl.b;
    out.z_coef = 1.0 - omega * omega * bl.a;
    out.x_slope = omega * (bl.a + delta * delta * bl.d);
    out.y_slope = delta * omega * bl.e;
    out.z_slope = -delta * omega * omega * bl.d;
    return out;
}

double jz_mean_analytic(const SpinMoments& m0, double omega, double delta, double t) {
    const XyzCoefficients k = xyz(omega, delta, t);
    return k.x_coef * m0.mean_jx + k.y_coef * m0.mean_jy + k.z_coef * m0.mean_jz;
}

double jz_var_analytic(const SpinMoments& m0, double omega, double delta, double t) {
    const XyzCoefficients k = xyz(omega, delta, t);
    const double x = k.x_coef, y = k.y_coef, z = k.z_coef;
    const double second = x * x * m0.mean_jx2 + y * y * m0.mean_jy2 +
                          z * z * m0.mean_jz2 + x * y * m0.mean_anti_xy +
                          y * z * m0.mean_anti_yz + x * z * m0.mean_anti_xz;
    const double mean = x * m0.mean_jx + y * m0.mean_jy + z * m0.mean_jz;
    double var = second - mean * mean;
    if (var < 0.0) {
        if (var < -1e-9 * std::max(1.0, std::abs(second))) {
            throw ComputationError("analytic variance negative: " +
                                   std::to_string(var));
        }
        var = 0.0;
    }
    return var;
}

double jz_slope_analytic(const SpinMoments& m0, double omega, double delta, double t) {
    const XyzCoefficients k = xyz(omega, delta, t);
    return k.x_slope * m0.mean_jx + k.y_slope * m0.mean_jy + k.z_slope * m0.mean_jz;
}

double precision_analytic(const SpinMoments& m0, double omega, double delta, double t) {
    const double slope = jz_slope_analytic(m0, omega, delta, t);
    const double scale = std::max({1.0, std::abs(m0.mean_jx),
                                   std::abs(m0.mean_jy), std::abs(m0.mean_jz)});
    if (std::abs(slope) < 1e-14 * scale) return kDiverged;
    return std::sqrt(jz_var_analytic(m0, omega, delta, t)) / std::abs(slope);
}

XyzSeriesSums xyz_series(double omega, double delta, double t,
                         int max_order, double tol) {
    check_inputs(omega, delta, t);
    const double q = -(omega * omega + delta * delta) * t * t;

    XyzSeriesSums sums;
    sums.z = 1.0;  // z_0 / 0!
    // running terms x_{2k}/(2k)!, y_{2k-1}/(2k-1)!, z_{2k}/(2k)! for k = 1
    double tx = 0.5 * omega * delta * t * t;  // x_2 = Omega delta T^2
    double ty = omega * t;                    // y_1 = Omega T
    double tz = -0.5 * omega * omega * t * t; // z_2 = -(Omega T)^2
    int order = 1;
    for (int k = 1; 2 * k <= max_order; ++k) {
        sums.x += tx;
        sums.y += ty;
        sums.z += tz;
        order = 2 * k;
        if (std::abs(tx) < tol && std::abs(ty) < tol && std::abs(tz) < tol) break;
        const double even = (2.0 * k + 1.0) * (2.0 * k + 2.0);
        const double odd = (2.0 * k) * (2.0 * k + 1.0);
        tx *= q / even;
        tz *= q / even;
        ty *= q / odd;
    }
    sums.terms = order;
    return sums;
}

}  // namespace rabisim
