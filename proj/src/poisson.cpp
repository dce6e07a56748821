#include "bohr/poisson.hpp"

#include "bohr/errors.hpp"
#include "jensen.hpp"
#include "torus_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bohr {

double PoissonPoint::kernel_sup() const
{
  double s = 1.0;
  for (const Complex& z : zeta_.coords()) {
    const double r = std::abs(z);
    s *= (1.0 + r) / (1.0 - r);
  }
  return s;
}

int PoissonPoint::degree_hint(std::size_t j, double tol) const
{
  const double r = std::abs(zeta_[j]);
  if (r == 0.0)
    return 1;
  return static_cast<int>(std::ceil(std::log(tol) / std::log(r)));
}

double kernel_eval(const PoissonPoint& zeta, std::span<const Complex> w)
{
  const auto z = zeta.coords();
  double k = 1.0;
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (z[j] == Complex{})
      continue;
    if (j >= w.size())
      throw DomainError("torus point does not cover the support of zeta");
    k *= (1.0 - std::norm(z[j])) / std::norm(z[j] - w[j]);
  }
  return k;
}

namespace {

PoissonPoint truncate(const PoissonPoint& zeta, int vars)
{
  const auto c = zeta.coords();
  const std::size_t n = std::min(c.size(), static_cast<std::size_t>(vars));
  return PoissonPoint(std::vector<Complex>(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(n)));
}

} // namespace

double poisson_integral_real(const TorusFunction& boundary, const PoissonPoint& zeta, const QuadratureGrid& g)
{
  const PoissonPoint z = truncate(zeta, g.vars());
  return haar_integral([&](std::span<const Complex> w) { return kernel_eval(z, w) * boundary(w); }, g);
}

Complex poisson_integral_complex(const ComplexTorusFunction& boundary, const PoissonPoint& zeta,
                                 const QuadratureGrid& g)
{
  const PoissonPoint z = truncate(zeta, g.vars());
  const double re =
      haar_integral([&](std::span<const Complex> w) { return kernel_eval(z, w) * boundary(w).real(); }, g);
  const double im =
      haar_integral([&](std::span<const Complex> w) { return kernel_eval(z, w) * boundary(w).imag(); }, g);
  return {re, im};
}

namespace {

/// int P_zeta log|F| dm with its half-grid error.
std::pair<double, double> poisson_log(const LiftedPolynomial& f, std::span<const Complex> zeta, int nodes)
{
  const int vars = static_cast<int>(f.max_variable());
  const auto laurent = detail::to_laurent(f, vars);
  const std::size_t used = std::min(zeta.size(), static_cast<std::size_t>(vars));
  const auto z = zeta.first(used);
  const double value = detail::poisson_log_modulus(laurent, z, nodes);
  const double error =
      vars <= 1 ? 0.0 : std::abs(value - detail::poisson_log_modulus(laurent, z, std::max(1, nodes / 2)));
  return {value, error};
}

int log_nodes(const LiftedPolynomial& f, const PoissonPoint& zeta, const QuadratureGrid& g)
{
  const int vars = static_cast<int>(f.max_variable());
  if (vars <= 1)
    return 1;
  // The exact last axis leaves vars - 1 trapezoid axes.
  static constexpr int kOuterLadder[] = {1, 1024, 128, 32};
  int n = vars - 1 < 4 ? kOuterLadder[vars - 1] : 16;
  for (std::size_t j = 0; j + 1 < static_cast<std::size_t>(vars) && j < zeta.size(); ++j)
    n = std::max(n, zeta.degree_hint(j, 1e-13));
  for (std::uint32_t j = 1; j < static_cast<std::uint32_t>(vars); ++j)
    n = std::max(n, 2 * static_cast<int>(f.axis_degree(j)) + 1);
  return std::max(n, g.nodes_per_axis());
}

} // namespace

GapReport jensen_gap(const LiftedPolynomial& f, const PoissonPoint& zeta, const QuadratureGrid& g)
{
  if (f.is_zero())
    throw DomainError("jensen_gap: F is identically zero");
  GapReport r;
  const double at = std::abs(evaluate_lift(f, zeta.point()));
  if (at == 0.0) {
    r.value = std::numeric_limits<double>::infinity();
    r.infinite = true;
    return r;
  }
  const auto [integral, error] = poisson_log(f, zeta.coords(), log_nodes(f, zeta, g));
  r.value = integral - std::log(at);
  r.error = error;
  return r;
}

GapReport jensen_gap(const LiftedPolynomial& f, const PoissonPoint& zeta)
{
  return jensen_gap(f, zeta, QuadratureGrid(0, 1));
}

OuterReport outer_gap(const LiftedPolynomial& f, const QuadratureGrid& g, double tol)
{
  if (f.is_zero())
    throw DomainError("outer_gap: F is identically zero");
  const GapReport gap = jensen_gap(f, PoissonPoint{}, g);
  OuterReport r;
  r.gamma = gap.value;
  r.error = gap.error;
  r.infinite = gap.infinite;
  r.tol = tol;
  r.outer = !gap.infinite && gap.value <= tol + gap.error;
  return r;
}

OuterReport outer_gap(const LiftedPolynomial& f, double tol) { return outer_gap(f, QuadratureGrid(0, 1), tol); }

bool is_outer(const LiftedPolynomial& f, double tol) { return outer_gap(f, tol).outer; }

} // namespace bohr
