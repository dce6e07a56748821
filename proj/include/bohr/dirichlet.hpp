#pragma once

#include "bohr/multi_index.hpp"

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace bohr {

using Complex = std::complex<double>;

/// A Dirichlet polynomial sum_n a_n n^{-s}. Zero coefficients are dropped on
/// construction, so equality is exact map equality.
class DirichletSeries {
public:
  using Terms = std::map<std::uint64_t, Complex>;

  DirichletSeries() = default;
  DirichletSeries(std::initializer_list<std::pair<const std::uint64_t, Complex>> terms);
  explicit DirichletSeries(Terms terms);

  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Complex coefficient(std::uint64_t n) const;
  /// Largest n with a nonzero coefficient, 0 for the empty series.
  std::uint64_t max_index() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

  friend bool operator==(const DirichletSeries&, const DirichletSeries&) = default;

private:
  Terms terms_;
};

/// A polynomial in finitely many of the variables zeta_1, zeta_2, ...
/// (an element of the polynomial ring on the infinite polydisk).
class LiftedPolynomial {
public:
  using Monomials = std::map<MultiIndex, Complex>;

  LiftedPolynomial() = default;
  LiftedPolynomial(std::initializer_list<std::pair<const MultiIndex, Complex>> monomials);
  explicit LiftedPolynomial(Monomials monomials);

  static LiftedPolynomial constant(Complex c);
  /// zeta_j
  static LiftedPolynomial variable(std::uint32_t j);

  const Monomials& monomials() const { return monomials_; }
  bool is_zero() const { return monomials_.empty(); }
  std::size_t size() const { return monomials_.size(); }
  Complex coefficient(const MultiIndex& alpha) const;
  Complex constant_term() const { return coefficient(MultiIndex{}); }

  /// Highest variable index that appears, 0 for constants.
  std::uint32_t max_variable() const;
  /// Largest total degree |alpha|.
  std::int64_t degree() const;
  /// Largest exponent of variable j over all monomials.
  std::uint32_t axis_degree(std::uint32_t j) const;

  friend LiftedPolynomial operator+(const LiftedPolynomial& a, const LiftedPolynomial& b);
  friend LiftedPolynomial operator-(const LiftedPolynomial& a, const LiftedPolynomial& b);
  friend LiftedPolynomial operator*(const LiftedPolynomial& a, const LiftedPolynomial& b);
  friend LiftedPolynomial operator*(Complex s, const LiftedPolynomial& a);

  friend bool operator==(const LiftedPolynomial&, const LiftedPolynomial&) = default;

private:
  Monomials monomials_;
};

/// A point of D_1^infty with finite support: coordinates beyond size() are 0.
class PolydiskPoint {
public:
  PolydiskPoint() = default;
  /// Throws DomainError unless every |zeta_j| < 1.
  explicit PolydiskPoint(std::vector<Complex> coords);

  std::span<const Complex> coords() const { return coords_; }
  std::size_t size() const { return coords_.size(); }
  Complex operator[](std::size_t j) const { return j < coords_.size() ? coords_[j] : Complex{}; }

private:
  std::vector<Complex> coords_;
};

/// Prime-exponent multi-index alpha(n). Throws DomainError for n = 0,
/// OverflowError for n >= 2^63.
MultiIndex factorize(std::uint64_t n);

/// prod_j p_j^{alpha_j}, the inverse of factorize. Throws OverflowError when
/// the product leaves [1, 2^63).
std::uint64_t index_of(const MultiIndex& alpha);

/// Bohr lift: a_n n^{-s} -> a_n zeta^{alpha(n)}.
LiftedPolynomial lift(const DirichletSeries& q);
/// Inverse of lift.
DirichletSeries unlift(const LiftedPolynomial& f);

/// Keeps the monomials in the first k variables (indices in the semigroup
/// generated by the first k primes).
LiftedPolynomial abschnitt(const LiftedPolynomial& f, std::uint32_t k);
DirichletSeries abschnitt(const DirichletSeries& f, std::uint32_t k);

/// f_sigma(s) = f(s + sigma): a_n -> a_n n^{-sigma}.
DirichletSeries vertical_shift(const DirichletSeries& f, double sigma);

/// sum_alpha c_alpha zeta^alpha, coordinates beyond zeta.size() read as 0.
Complex evaluate_lift(const LiftedPolynomial& f, std::span<const Complex> zeta);
inline Complex evaluate_lift(const LiftedPolynomial& f, const PolydiskPoint& zeta)
{
  return evaluate_lift(f, zeta.coords());
}

/// f(sigma + i t) = sum_n a_n n^{-sigma} e^{-i t log n}.
Complex evaluate_line(const DirichletSeries& f, double sigma, double t);

/// (p_1^{-s}, ..., p_k^{-s}) at s = sigma + i t, the point where the lift of a
/// series supported on the first k primes reproduces f(s).
std::vector<Complex> prime_point(std::uint32_t k, double sigma, double t);

/// Dirichlet convolution. Throws OverflowError if some product m*n >= 2^63.
DirichletSeries multiply(const DirichletSeries& f, const DirichletSeries& g);
inline LiftedPolynomial multiply(const LiftedPolynomial& f, const LiftedPolynomial& g) { return f * g; }

} // namespace bohr
