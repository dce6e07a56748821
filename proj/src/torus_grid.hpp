#pragma once

#include "bohr/dirichlet.hpp"

#include <Eigen/Core>

#include <vector>

namespace bohr::detail {

/// A monomial with a dense exponent vector; exponents may be negative.
struct LaurentTerm {
  std::vector<int> exponents;
  Complex coef;
};

/// Laurent polynomial in the first `vars` torus variables.
struct LaurentPolynomial {
  int vars = 0;
  std::vector<LaurentTerm> terms;

  int min_exponent(int axis) const;
  int max_exponent(int axis) const;
};

LaurentPolynomial to_laurent(const LiftedPolynomial& f, int vars);
LaurentPolynomial to_laurent(const std::vector<std::pair<SignedMultiIndex, Complex>>& table, int vars);

/// omega^m = exp(2 pi i m / n) for m = 0..n-1.
std::vector<Complex> roots_of_unity(int n);

/// Values of f at every node of the n^vars grid; axis 0 varies slowest.
Eigen::ArrayXcd synthesize(const LaurentPolynomial& f, int n);

/// Per-axis exponent range [lo, hi].
struct ExponentBox {
  std::vector<int> lo;
  std::vector<int> hi;

  std::size_t size() const;
  int extent(int axis) const { return hi[axis] - lo[axis] + 1; }
  /// Row-major position of the exponent vector e (must lie in the box).
  std::size_t offset(const std::vector<int>& e) const;
};

/// Coefficients (1/n^k) sum_w v(w) conj(w^e) for every e in the box, row-major
/// over the box. Each one-axis sum is a pairwise reduction over the n nodes.
Eigen::ArrayXcd analyze(const Eigen::ArrayXcd& values, int vars, int n, const ExponentBox& box);

/// Coordinates of node `flat` (axis 0 slowest).
void node_coordinates(std::size_t flat, int vars, int n, const std::vector<Complex>& roots, std::vector<Complex>& w);

} // namespace bohr::detail
