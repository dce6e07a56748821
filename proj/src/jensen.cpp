#include "jensen.hpp"

#include "bohr/errors.hpp"
#include "bohr/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace bohr::detail {

std::vector<Complex> polynomial_roots(std::vector<Complex> coeffs, Complex& lead)
{
  double scale = 0.0;
  for (const Complex& c : coeffs)
    scale = std::max(scale, std::abs(c));
  while (!coeffs.empty() && std::abs(coeffs.back()) <= 1e-14 * scale)
    coeffs.pop_back();
  lead = coeffs.empty() ? Complex{} : coeffs.back();
  std::vector<Complex> roots;
  if (coeffs.size() <= 1)
    return roots;

  // Exact zeros at the origin.
  std::size_t shift = 0;
  while (coeffs[shift] == Complex{})
    ++shift;
  roots.assign(shift, Complex{});
  const std::size_t m = coeffs.size() - 1 - shift;
  if (m == 0)
    return roots;
  if (m == 1) {
    roots.push_back(-coeffs[shift] / coeffs[shift + 1]);
    return roots;
  }
  if (m == 2) {
    const Complex a = coeffs[shift + 2], b = coeffs[shift + 1], c = coeffs[shift];
    const Complex disc = std::sqrt(b * b - 4.0 * a * c);
    // Pick the sign that avoids cancellation, then use Vieta for the other root.
    const Complex q = -0.5 * (std::real(std::conj(b) * disc) >= 0.0 ? b + disc : b - disc);
    if (q == Complex{}) {
      roots.push_back(0.0);
      roots.push_back(0.0);
    } else {
      roots.push_back(q / a);
      roots.push_back(c / q);
    }
    return roots;
  }
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t i = 1; i < m; ++i)
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  for (std::size_t i = 0; i < m; ++i)
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(m - 1)) = -coeffs[shift + i] / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  const Eigen::VectorXcd ev = solver.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    roots.push_back(ev[i]);
  return roots;
}

double circle_log_integral(std::span<const Complex> coeffs, Complex zeta)
{
  Complex lead;
  const auto roots = polynomial_roots(std::vector<Complex>(coeffs.begin(), coeffs.end()), lead);
  if (lead == Complex{})
    return -std::numeric_limits<double>::infinity();
  double s = std::log(std::abs(lead));
  for (const Complex& z : roots) {
    if (std::abs(z) >= 1.0)
      s += std::log(std::abs(zeta - z));
    else
      s += std::log(std::abs(1.0 - std::conj(z) * zeta));
  }
  return s;
}

double poisson_log_modulus(const LaurentPolynomial& f, std::span<const Complex> zeta, int nodes)
{
  const int k = f.vars;
  if (f.terms.empty())
    throw DomainError("log|F| is not integrable for F = 0");
  if (k == 0)
    return std::log(std::max(std::abs(f.terms.front().coef), kLogClamp));

  const int last = k - 1;
  const int lo = f.min_exponent(last);
  const int hi = f.max_exponent(last);
  const int outer_vars = k - 1;
  const std::size_t outer_nodes = [&] {
    std::size_t s = 1;
    for (int a = 0; a < outer_vars; ++a)
      s *= static_cast<std::size_t>(nodes);
    return s;
  }();
  const auto roots = roots_of_unity(nodes);
  const Complex zeta_last = static_cast<std::size_t>(last) < zeta.size() ? zeta[last] : Complex{};

  std::vector<double> weighted(outer_nodes);
  parallel_for(outer_nodes, [&](std::size_t begin, std::size_t end) {
    std::vector<Complex> w(outer_vars);
    std::vector<int> idx(outer_vars);
    std::vector<Complex> slice(static_cast<std::size_t>(hi - lo + 1));
    for (std::size_t node = begin; node < end; ++node) {
      std::size_t rest = node;
      for (int a = outer_vars - 1; a >= 0; --a) {
        idx[a] = static_cast<int>(rest % nodes);
        w[a] = roots[idx[a]];
        rest /= nodes;
      }
      std::fill(slice.begin(), slice.end(), Complex{});
      for (const auto& t : f.terms) {
        Complex c = t.coef;
        for (int a = 0; a < outer_vars; ++a) {
          const int e = t.exponents[a];
          if (e != 0) {
            const long long m = (static_cast<long long>(idx[a]) * e) % nodes;
            c *= roots[static_cast<std::size_t>(m < 0 ? m + nodes : m)];
          }
        }
        slice[static_cast<std::size_t>(t.exponents[last] - lo)] += c;
      }
      double v = circle_log_integral(slice, zeta_last);
      if (!std::isfinite(v))
        v = std::log(kLogClamp);
      double kernel = 1.0;
      for (int a = 0; a < outer_vars && static_cast<std::size_t>(a) < zeta.size(); ++a) {
        const double r2 = std::norm(zeta[a]);
        kernel *= (1.0 - r2) / std::norm(zeta[a] - w[a]);
      }
      weighted[node] = kernel * v;
    }
  });
  return pairwise_sum(std::span<const double>(weighted)) / static_cast<double>(outer_nodes);
}

} // namespace bohr::detail
