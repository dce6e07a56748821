#pragma once

namespace bohr {

/// Hurwitz zeta sum_{n>=0} (n + a)^{-s} for s > 1, a > 0, by Euler-Maclaurin
/// summation in extended precision. Accurate for very large a as well.
long double hurwitz_zeta(long double s, long double a);

/// Riemann zeta for s > 1.
inline long double riemann_zeta(long double s) { return hurwitz_zeta(s, 1.0L); }

} // namespace bohr
