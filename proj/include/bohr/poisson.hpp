#pragma once

#include "bohr/dirichlet.hpp"
#include "bohr/torus.hpp"

#include <span>
#include <type_traits>
#include <vector>

namespace bohr {

/// A point of the polydisk with finite support, used as the pole of the
/// Poisson kernel P_zeta(w) = prod_j (1 - |zeta_j|^2) / |zeta_j - w_j|^2.
class PoissonPoint {
public:
  PoissonPoint() = default;
  explicit PoissonPoint(PolydiskPoint zeta) : zeta_(std::move(zeta)) {}
  explicit PoissonPoint(std::vector<Complex> coords) : zeta_(std::move(coords)) {}

  const PolydiskPoint& point() const { return zeta_; }
  std::span<const Complex> coords() const { return zeta_.coords(); }
  std::size_t size() const { return zeta_.size(); }

  /// sup of the kernel: prod_j (1 + |zeta_j|) / (1 - |zeta_j|).
  double kernel_sup() const;
  /// Nodes per axis after which the kernel's Fourier tail on axis j drops
  /// below tol (|zeta_j|^N <= tol).
  int degree_hint(std::size_t j, double tol) const;

private:
  PolydiskPoint zeta_;
};

/// P_zeta(w). Coordinates outside the support of zeta contribute 1; w must
/// cover that support.
double kernel_eval(const PoissonPoint& zeta, std::span<const Complex> w);

/// Haar quadrature of P_zeta * boundary on the grid. Coordinates of zeta beyond
/// the grid's variables are ignored since the boundary does not depend on them.
double poisson_integral_real(const TorusFunction& boundary, const PoissonPoint& zeta, const QuadratureGrid& g);
Complex poisson_integral_complex(const ComplexTorusFunction& boundary, const PoissonPoint& zeta,
                                 const QuadratureGrid& g);

/// Dispatches on the boundary's return type (real or complex).
template <class F>
auto poisson_integral(const F& boundary, const PoissonPoint& zeta, const QuadratureGrid& g)
{
  using R = std::decay_t<std::invoke_result_t<const F&, std::span<const Complex>>>;
  if constexpr (std::is_same_v<R, Complex>)
    return poisson_integral_complex(boundary, zeta, g);
  else
    return poisson_integral_real(boundary, zeta, g);
}

struct GapReport {
  double value = 0.0;
  /// Change against the half-resolution grid.
  double error = 0.0;
  /// Set when log|F(zeta)| = -infinity; value is then +infinity.
  bool infinite = false;
};

/// int P_zeta log|F| dm - log|F(zeta)|; nonnegative up to quadrature error.
/// The last variable is integrated exactly by the Poisson-Jensen formula.
/// Throws DomainError for F = 0.
GapReport jensen_gap(const LiftedPolynomial& f, const PoissonPoint& zeta, const QuadratureGrid& g);
GapReport jensen_gap(const LiftedPolynomial& f, const PoissonPoint& zeta);

struct OuterReport {
  double gamma = 0.0;
  double error = 0.0;
  bool infinite = false;
  bool outer = false;
  double tol = 1e-6;
};

/// Gamma F = int log|F| dm - log|F(0)| with the outer classification
/// Gamma F <= tol + error. F(0) = 0 gives an infinite gap, not outer.
/// Throws DomainError for F = 0.
OuterReport outer_gap(const LiftedPolynomial& f, double tol = 1e-6);
OuterReport outer_gap(const LiftedPolynomial& f, const QuadratureGrid& g, double tol = 1e-6);
bool is_outer(const LiftedPolynomial& f, double tol = 1e-6);

} // namespace bohr
