#include "torus_grid.hpp"

#include "bohr/errors.hpp"
#include "bohr/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bohr::detail {

int LaurentPolynomial::min_exponent(int axis) const
{
  int m = 0;
  for (const auto& t : terms)
    m = std::min(m, t.exponents[axis]);
  return m;
}

int LaurentPolynomial::max_exponent(int axis) const
{
  int m = 0;
  for (const auto& t : terms)
    m = std::max(m, t.exponents[axis]);
  return m;
}

LaurentPolynomial to_laurent(const LiftedPolynomial& f, int vars)
{
  if (static_cast<int>(f.max_variable()) > vars)
    throw DomainError("polynomial uses more variables than the grid provides");
  LaurentPolynomial out;
  out.vars = vars;
  for (const auto& [alpha, c] : f.monomials()) {
    LaurentTerm t{std::vector<int>(vars, 0), c};
    for (const auto& [p, e] : alpha.entries())
      t.exponents[p - 1] = static_cast<int>(e);
    out.terms.push_back(std::move(t));
  }
  return out;
}

LaurentPolynomial to_laurent(const std::vector<std::pair<SignedMultiIndex, Complex>>& table, int vars)
{
  LaurentPolynomial out;
  out.vars = vars;
  for (const auto& [alpha, c] : table) {
    if (static_cast<int>(alpha.max_position()) > vars)
      throw DomainError("weight uses more variables than the grid provides");
    LaurentTerm t{std::vector<int>(vars, 0), c};
    for (const auto& [p, e] : alpha.entries())
      t.exponents[p - 1] = e;
    out.terms.push_back(std::move(t));
  }
  return out;
}

std::vector<Complex> roots_of_unity(int n)
{
  std::vector<Complex> r(n);
  for (int m = 0; m < n; ++m)
    r[m] = std::polar(1.0, 2.0 * std::numbers::pi * m / n);
  return r;
}

std::size_t ExponentBox::size() const
{
  std::size_t s = 1;
  for (std::size_t a = 0; a < lo.size(); ++a)
    s *= static_cast<std::size_t>(hi[a] - lo[a] + 1);
  return s;
}

std::size_t ExponentBox::offset(const std::vector<int>& e) const
{
  std::size_t off = 0;
  for (std::size_t a = 0; a < lo.size(); ++a)
    off = off * static_cast<std::size_t>(hi[a] - lo[a] + 1) + static_cast<std::size_t>(e[a] - lo[a]);
  return off;
}

namespace {

int mod(long long a, int n)
{
  const long long r = a % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

// Replaces axis `axis` of a row-major array (extent `from` along it) by the
// n-point synthesis sum_e x[e] omega^{i (lo + e)}.
Eigen::ArrayXcd expand_axis(const Eigen::ArrayXcd& in, const std::vector<std::size_t>& shape, int axis, int lo,
                            int n, const std::vector<Complex>& roots)
{
  std::size_t outer = 1, inner = 1;
  for (int a = 0; a < axis; ++a)
    outer *= shape[a];
  for (std::size_t a = axis + 1; a < shape.size(); ++a)
    inner *= shape[a];
  const std::size_t from = shape[axis];
  Eigen::ArrayXcd out = Eigen::ArrayXcd::Zero(static_cast<Eigen::Index>(outer * n * inner));
  parallel_for(outer * n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t oi = begin; oi < end; ++oi) {
      const std::size_t o = oi / n;
      const int i = static_cast<int>(oi % n);
      Complex* dst = out.data() + (o * n + i) * inner;
      for (std::size_t e = 0; e < from; ++e) {
        const Complex w = roots[mod(static_cast<long long>(i) * (lo + static_cast<long long>(e)), n)];
        const Complex* src = in.data() + (o * from + e) * inner;
        const double wr = w.real(), wi = w.imag();
        for (std::size_t q = 0; q < inner; ++q) {
          const double sr = src[q].real(), si = src[q].imag();
          dst[q] += Complex(wr * sr - wi * si, wr * si + wi * sr);
        }
      }
    }
  });
  return out;
}

// Replaces axis `axis` (n nodes) by coefficients for exponents lo..lo+to-1.
Eigen::ArrayXcd contract_axis(const Eigen::ArrayXcd& in, const std::vector<std::size_t>& shape, int axis, int lo,
                              int to, int n, const std::vector<Complex>& roots)
{
  std::size_t outer = 1, inner = 1;
  for (int a = 0; a < axis; ++a)
    outer *= shape[a];
  for (std::size_t a = axis + 1; a < shape.size(); ++a)
    inner *= shape[a];
  Eigen::ArrayXcd out(static_cast<Eigen::Index>(outer * to * inner));
  parallel_for(outer * inner, [&](std::size_t begin, std::size_t end) {
    std::vector<Complex> column(n), products(n);
    for (std::size_t oq = begin; oq < end; ++oq) {
      const std::size_t o = oq / inner;
      const std::size_t q = oq % inner;
      for (int i = 0; i < n; ++i)
        column[i] = in[static_cast<Eigen::Index>((o * n + i) * inner + q)];
      for (int e = 0; e < to; ++e) {
        for (int i = 0; i < n; ++i)
          products[i] = column[i] * roots[mod(-static_cast<long long>(i) * (lo + e), n)];
        out[static_cast<Eigen::Index>((o * to + e) * inner + q)] =
            pairwise_sum(std::span<const Complex>(products)) / static_cast<double>(n);
      }
    }
  });
  return out;
}

} // namespace

Eigen::ArrayXcd synthesize(const LaurentPolynomial& f, int n)
{
  const int k = f.vars;
  const auto roots = roots_of_unity(n);
  ExponentBox box;
  for (int a = 0; a < k; ++a) {
    box.lo.push_back(f.min_exponent(a));
    box.hi.push_back(f.max_exponent(a));
  }
  Eigen::ArrayXcd data = Eigen::ArrayXcd::Zero(static_cast<Eigen::Index>(box.size()));
  for (const auto& t : f.terms)
    data[static_cast<Eigen::Index>(box.offset(t.exponents))] += t.coef;

  std::vector<std::size_t> shape(k);
  for (int a = 0; a < k; ++a)
    shape[a] = static_cast<std::size_t>(box.extent(a));
  // Expand the last axis first: the arrays grow as late as possible.
  for (int a = k - 1; a >= 0; --a) {
    data = expand_axis(data, shape, a, box.lo[a], n, roots);
    shape[a] = static_cast<std::size_t>(n);
  }
  return data;
}

Eigen::ArrayXcd analyze(const Eigen::ArrayXcd& values, int vars, int n, const ExponentBox& box)
{
  const auto roots = roots_of_unity(n);
  std::vector<std::size_t> shape(vars, static_cast<std::size_t>(n));
  Eigen::ArrayXcd data = values;
  for (int a = 0; a < vars; ++a) {
    data = contract_axis(data, shape, a, box.lo[a], box.extent(a), n, roots);
    shape[a] = static_cast<std::size_t>(box.extent(a));
  }
  return data;
}

void node_coordinates(std::size_t flat, int vars, int n, const std::vector<Complex>& roots, std::vector<Complex>& w)
{
  w.resize(vars);
  for (int a = vars - 1; a >= 0; --a) {
    w[a] = roots[flat % n];
    flat /= n;
  }
}

} // namespace bohr::detail
