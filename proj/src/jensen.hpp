#pragma once

#include "torus_grid.hpp"

#include <span>

namespace bohr::detail {

/// Floor applied to |F| wherever log|F| is taken pointwise.
inline constexpr double kLogClamp = 1e-14;

/// Roots of c_0 + c_1 z + ... + c_m z^m after trimming leading coefficients
/// that are negligible relative to the largest one. `lead` receives the
/// leading coefficient that was kept.
std::vector<Complex> polynomial_roots(std::vector<Complex> coeffs, Complex& lead);

/// Exact Poisson-Jensen integral of log|P| over the circle for a one-variable
/// polynomial given by coefficients c_0..c_m:
///   int P_zeta log|P| dm = log|lead| + sum_{|z|>=1} log|zeta - z| + sum_{|z|<1} log|1 - conj(z) zeta|.
/// Returns -infinity when every coefficient vanishes.
double circle_log_integral(std::span<const Complex> coeffs, Complex zeta);

/// int_{T^k} P_zeta(w) log|F(w)| dm_k(w).
/// The innermost variable (axis k-1) is integrated exactly by the formula above;
/// the remaining k-1 axes use the `nodes`-point trapezoid rule, weighted by the
/// Poisson kernels of zeta_1..zeta_{k-1}. zeta may be shorter than k.
/// Slices on which F vanishes identically contribute log(kLogClamp).
double poisson_log_modulus(const LaurentPolynomial& f, std::span<const Complex> zeta, int nodes);

} // namespace bohr::detail
