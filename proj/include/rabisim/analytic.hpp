// analytic.hpp — closed-form chi = 0 solutions of the Rabi signal and their
// detuning derivatives. Exact oracle for the numeric propagator and fast path.
//
// With xi = sqrt(Omega^2 + delta^2) the Heisenberg map of Jz after time T is
//   Jz(T) = X Jx + Y Jy + Z Jz,
//   X = Omega delta / xi^2 * (1 - cos(xi T))   (odd in delta)
//   Y = Omega sin(xi T) / xi                   (even)
//   Z = (delta^2 + Omega^2 cos(xi T)) / xi^2   (even)
// so <Jz(T)> = X <Jx>_0 + Y <Jy>_0 + Z <Jz>_0 for any initial state, and the
// second moment follows from squaring the map. (X, Y, Z) is the bottom row of
// an SO(3) rotation: X^2 + Y^2 + Z^2 = 1 identically.
//
// Degenerate limit xi*T -> 0 is evaluated by series so X -> 0, Y -> Omega*T,
// Z -> 1 without 0/0.

#pragma once

#include "rabisim/spin_core.hpp"

#include <limits>

namespace rabisim {

// Marker for diverged measurement precision (zero signal slope). Kept as a
// value, not an exception, so sweep tables can record it.
inline constexpr double kDiverged = std::numeric_limits<double>::infinity();

inline bool is_diverged(double precision) {
    return precision == std::numeric_limits<double>::infinity();
}

struct XyzCoefficients {
    double x_coef = 0, y_coef = 0, z_coef = 0;     // X, Y, Z (dimensionless)
    double x_slope = 0, y_slope = 0, z_slope = 0;  // d/d delta, units of time
};

// Coefficients and their delta-derivatives at (Omega, delta, T).
XyzCoefficients xyz(double omega, double delta, double t);

// <Jz(T)> = X <Jx>_0 + Y <Jy>_0 + Z <Jz>_0. Valid for chi = 0 only, which is
// why no chi parameter exists here.
double jz_mean_analytic(const SpinMoments& m0, double omega, double delta, double t);

// Var Jz(T) from the squared Heisenberg map (needs second moments and
// anticommutators of the initial state). Clamps cancellation noise in
// (-1e-9, 0) to zero; anything more negative signals a moments bug.
double jz_var_analytic(const SpinMoments& m0, double omega, double delta, double t);

// d<Jz(T)>/d delta = X' <Jx>_0 + Y' <Jy>_0 + Z' <Jz>_0.
double jz_slope_analytic(const SpinMoments& m0, double omega, double delta, double t);

// Delta-estimation precision sqrt(Var Jz)/|slope|; kDiverged at zero slope.
double precision_analytic(const SpinMoments& m0, double omega, double delta, double t);

// Partial sums of the commutator-series recursion
//   x_{2k+2} = -(Omega^2+delta^2) T^2 x_{2k}   (x_2 = Omega delta T^2)
//   y_{2k+1} = -(Omega^2+delta^2) T^2 y_{2k-1} (y_1 = Omega T)
//   z_{2k+2} = -(Omega^2+delta^2) T^2 z_{2k}   (z_0 = 1, z_2 = -(Omega T)^2)
// divided by the factorials. Test-only convergence cross-check for X, Y, Z.
struct XyzSeriesSums {
    double x = 0, y = 0, z = 0;
    int terms = 0;  // highest order summed
};

XyzSeriesSums xyz_series(double omega, double delta, double t,
                         int max_order = 400, double tol = 5e-16);

}  // namespace rabisim
