#include "bohr/dirichlet.hpp"

#include "bohr/errors.hpp"
#include "bohr/primes.hpp"
#include "primes_detail.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bohr {

namespace {

constexpr std::uint64_t kIndexBound = std::uint64_t{1} << 63;

template <class Map>
Map drop_zeros(Map m)
{
  std::erase_if(m, [](const auto& kv) { return kv.second == Complex{}; });
  return m;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b)
{
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out) || out >= kIndexBound)
    throw OverflowError("index product " + std::to_string(a) + " * " + std::to_string(b) +
                        " does not fit below 2^63");
  return out;
}

} // namespace

DirichletSeries::DirichletSeries(std::initializer_list<std::pair<const std::uint64_t, Complex>> terms)
    : DirichletSeries(Terms(terms))
{}

DirichletSeries::DirichletSeries(Terms terms)
{
  if (!terms.empty() && terms.begin()->first == 0)
    throw DomainError("Dirichlet series indices start at n = 1");
  terms_ = drop_zeros(std::move(terms));
}

Complex DirichletSeries::coefficient(std::uint64_t n) const
{
  const auto it = terms_.find(n);
  return it == terms_.end() ? Complex{} : it->second;
}

LiftedPolynomial::LiftedPolynomial(std::initializer_list<std::pair<const MultiIndex, Complex>> monomials)
    : LiftedPolynomial(Monomials(monomials))
{}

LiftedPolynomial::LiftedPolynomial(Monomials monomials) : monomials_(drop_zeros(std::move(monomials))) {}

LiftedPolynomial LiftedPolynomial::constant(Complex c) { return LiftedPolynomial({{MultiIndex{}, c}}); }

LiftedPolynomial LiftedPolynomial::variable(std::uint32_t j) { return LiftedPolynomial({{MultiIndex::unit(j), 1.0}}); }

Complex LiftedPolynomial::coefficient(const MultiIndex& alpha) const
{
  const auto it = monomials_.find(alpha);
  return it == monomials_.end() ? Complex{} : it->second;
}

std::uint32_t LiftedPolynomial::max_variable() const
{
  std::uint32_t k = 0;
  for (const auto& [alpha, c] : monomials_)
    k = std::max(k, alpha.max_position());
  return k;
}

std::int64_t LiftedPolynomial::degree() const
{
  std::int64_t d = 0;
  for (const auto& [alpha, c] : monomials_)
    d = std::max(d, alpha.total_degree());
  return d;
}

std::uint32_t LiftedPolynomial::axis_degree(std::uint32_t j) const
{
  std::uint32_t d = 0;
  for (const auto& [alpha, c] : monomials_)
    d = std::max(d, alpha[j]);
  return d;
}

LiftedPolynomial operator+(const LiftedPolynomial& a, const LiftedPolynomial& b)
{
  LiftedPolynomial::Monomials m = a.monomials_;
  for (const auto& [alpha, c] : b.monomials_)
    m[alpha] += c;
  return LiftedPolynomial(std::move(m));
}

LiftedPolynomial operator-(const LiftedPolynomial& a, const LiftedPolynomial& b)
{
  return a + Complex(-1.0) * b;
}

LiftedPolynomial operator*(const LiftedPolynomial& a, const LiftedPolynomial& b)
{
  LiftedPolynomial::Monomials m;
  for (const auto& [alpha, x] : a.monomials_)
    for (const auto& [beta, y] : b.monomials_)
      m[alpha + beta] += x * y;
  return LiftedPolynomial(std::move(m));
}

LiftedPolynomial operator*(Complex s, const LiftedPolynomial& a)
{
  LiftedPolynomial::Monomials m;
  for (const auto& [alpha, c] : a.monomials_)
    m.emplace(alpha, s * c);
  return LiftedPolynomial(std::move(m));
}

PolydiskPoint::PolydiskPoint(std::vector<Complex> coords) : coords_(std::move(coords))
{
  for (const Complex& z : coords_)
    if (!(std::abs(z) < 1.0))
      throw DomainError("polydisk coordinates must satisfy |zeta_j| < 1");
}

MultiIndex factorize(std::uint64_t n)
{
  if (n == 0)
    throw DomainError("factorize: n must be positive");
  if (n >= kIndexBound)
    throw OverflowError("factorize: n = " + std::to_string(n) + " is not below 2^63");

  // Trial division needs primes up to sqrt(n), capped by the sieve.
  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n))) + 1;
  const auto table = detail::primes_up_to(std::min(std::max<std::uint64_t>(root, 2), kSieveCap));

  std::vector<MultiIndex::Entry> entries;
  std::uint64_t m = n;
  std::uint32_t position = 0;
  for (const std::uint32_t p32 : table->primes) {
    ++position;
    const std::uint64_t p = p32;
    if (p * p > m)
      break;
    if (m % p != 0)
      continue;
    std::uint32_t e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    entries.emplace_back(position, e);
  }
  if (m > 1) {
    // m is prime unless sqrt(n) outran the sieve.
    if (m > kSieveCap)
      throw ResourceError("factorize: " + std::to_string(n) + " has a prime factor beyond the sieve capacity");
    entries.emplace_back(static_cast<std::uint32_t>(prime_position(m)), 1);
  }
  return MultiIndex(std::move(entries));
}

std::uint64_t index_of(const MultiIndex& alpha)
{
  if (alpha.is_zero())
    return 1;
  const auto table = detail::primes_count_at_least(alpha.max_position());
  std::uint64_t n = 1;
  for (const auto& [position, exponent] : alpha.entries()) {
    const std::uint64_t p = table->primes[position - 1];
    for (std::uint32_t e = 0; e < exponent; ++e)
      n = checked_mul(n, p);
  }
  return n;
}

LiftedPolynomial lift(const DirichletSeries& q)
{
  LiftedPolynomial::Monomials m;
  for (const auto& [n, a] : q.terms())
    m.emplace(factorize(n), a);
  return LiftedPolynomial(std::move(m));
}

DirichletSeries unlift(const LiftedPolynomial& f)
{
  DirichletSeries::Terms t;
  for (const auto& [alpha, c] : f.monomials())
    t.emplace(index_of(alpha), c);
  return DirichletSeries(std::move(t));
}

LiftedPolynomial abschnitt(const LiftedPolynomial& f, std::uint32_t k)
{
  LiftedPolynomial::Monomials m;
  for (const auto& [alpha, c] : f.monomials())
    if (alpha.supported_in(k))
      m.emplace(alpha, c);
  return LiftedPolynomial(std::move(m));
}

DirichletSeries abschnitt(const DirichletSeries& f, std::uint32_t k)
{
  DirichletSeries::Terms t;
  for (const auto& [n, a] : f.terms())
    if (factorize(n).supported_in(k))
      t.emplace(n, a);
  return DirichletSeries(std::move(t));
}

DirichletSeries vertical_shift(const DirichletSeries& f, double sigma)
{
  DirichletSeries::Terms t;
  for (const auto& [n, a] : f.terms())
    t.emplace(n, a * std::exp(-sigma * std::log(static_cast<double>(n))));
  return DirichletSeries(std::move(t));
}

Complex evaluate_lift(const LiftedPolynomial& f, std::span<const Complex> zeta)
{
  Complex sum{};
  for (const auto& [alpha, c] : f.monomials()) {
    Complex term = c;
    for (const auto& [position, exponent] : alpha.entries()) {
      const Complex z = position <= zeta.size() ? zeta[position - 1] : Complex{};
      Complex power = 1.0;
      for (std::uint32_t e = 0; e < exponent; ++e)
        power *= z;
      term *= power;
    }
    sum += term;
  }
  return sum;
}

Complex evaluate_line(const DirichletSeries& f, double sigma, double t)
{
  Complex sum{};
  for (const auto& [n, a] : f.terms()) {
    const double log_n = std::log(static_cast<double>(n));
    sum += a * std::exp(-sigma * log_n) * std::polar(1.0, -t * log_n);
  }
  return sum;
}

std::vector<Complex> prime_point(std::uint32_t k, double sigma, double t)
{
  std::vector<Complex> zeta;
  zeta.reserve(k);
  for (std::uint32_t j = 1; j <= k; ++j) {
    const double log_p = std::log(static_cast<double>(nth_prime(j)));
    zeta.push_back(std::exp(-sigma * log_p) * std::polar(1.0, -t * log_p));
  }
  return zeta;
}

DirichletSeries multiply(const DirichletSeries& f, const DirichletSeries& g)
{
  DirichletSeries::Terms t;
  for (const auto& [m, a] : f.terms())
    for (const auto& [n, b] : g.terms())
      t[checked_mul(m, n)] += a * b;
  return DirichletSeries(std::move(t));
}

} // namespace bohr
