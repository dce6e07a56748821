#include "bohr/seqfactor.hpp"

#include "bohr/special.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace bohr {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

/// R(k) = sum_{n > k} |a_n| for k = 0..N, Kahan-compensated from the back.
std::vector<long double> tails(const SummableSeq& a)
{
  std::vector<long double> r(a.size() + 1, 0.0L);
  long double sum = 0.0L, comp = 0.0L;
  for (std::size_t n = a.size(); n-- > 0;) {
    const long double y = static_cast<long double>(std::abs(a[n])) - comp;
    const long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    r[n] = sum;
  }
  return r;
}

/// sum_{n > j} n^{-2}
long double tail2(long double j) { return hurwitz_zeta(2.0L, j + 1.0L); }
/// sum_{n > j} n^{-3/2}
long double tail32(long double j) { return hurwitz_zeta(1.5L, j + 1.0L); }

/// Smallest integer j >= from with c T(j) < bound (T decreasing).
long double first_below(long double c, long double bound, long double from)
{
  if (c * tail2(from) < bound)
    return from;
  long double lo = from, step = 1.0L, hi = from + step;
  while (!(c * tail2(hi) < bound)) {
    lo = hi;
    step *= 2.0L;
    hi = from + step;
  }
  while (hi - lo > 1.0L) {
    const long double mid = std::floor(lo + (hi - lo) / 2.0L);
    if (mid <= lo || mid >= hi)
      break;
    if (c * tail2(mid) < bound)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

long double kahan_block(const SummableSeq& a, std::size_t begin, std::size_t end)
{
  long double sum = 0.0L, comp = 0.0L;
  for (std::size_t n = begin; n < end; ++n) {
    const long double y = static_cast<long double>(std::abs(a[n])) - comp;
    const long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

} // namespace

FactorizationResult factorize_l1(const SummableSeq& a)
{
  FactorizationResult r;
  const std::size_t n = a.size();
  r.b = a;
  r.c.assign(n, 1.0);
  r.lambda.assign(n, 1.0);
  const auto tail = tails(a);
  r.total = tail[0];
  if (r.total == 0.0L)
    return r;
  const long double c = 6.0L * r.total / (kPi * kPi);

  // k belongs to the ladder when it equals k_s for the first j = s reaching it.
  std::vector<long double> s_values;
  long double s_floor = 1.0L;
  for (std::size_t k = 1; k <= n; ++k) {
    if (a[k - 1] == Complex{})
      continue;
    const long double s = first_below(c, tail[k - 1], s_floor);
    if (tail[k] <= c * tail2(s)) {
      r.breakpoints.push_back(k);
      s_values.push_back(s);
      s_floor = s + 1.0L;
    }
  }
  r.truncated = true;

  for (std::size_t i = 0; i < r.breakpoints.size(); ++i) {
    FactorBlock block;
    block.begin = r.breakpoints[i];
    block.end = i + 1 < r.breakpoints.size() ? r.breakpoints[i + 1] : n;
    block.s = s_values[i];
    block.lambda = static_cast<double>(std::sqrt(block.s + 1.0L));
    r.blocks.push_back(block);
    const double inv = 1.0 / block.lambda;
    for (std::size_t m = block.begin; m < block.end; ++m) {
      r.lambda[m] = block.lambda;
      r.c[m] = inv;
      r.b[m] = a[m] * block.lambda;
    }
  }
  return r;
}

bool FactorizationReport::passed() const
{
  return std::all_of(checks.begin(), checks.end(), [](const FactorCheck& c) { return c.passed; });
}

FactorizationReport verify_factorization(const SummableSeq& a, const FactorizationResult& r)
{
  FactorizationReport rep;
  rep.checks[0].name = "reconstruction";
  rep.checks[1].name = "block_monotone";
  rep.checks[2].name = "block_bound";
  rep.checks[3].name = "l1_chain";
  auto fail = [](FactorCheck& check, std::string what) {
    if (check.passed)
      check.detail = std::move(what);
    check.passed = false;
  };

  const std::size_t n = a.size();
  if (r.b.size() != n || r.c.size() != n || r.lambda.size() != n) {
    for (auto& check : rep.checks)
      fail(check, "length mismatch");
    return rep;
  }

  // (i) b_n c_n = a_n and lambda_n c_n = 1.
  for (std::size_t m = 0; m < n; ++m) {
    const double err = std::abs(r.b[m] * r.c[m] - a[m]) / std::max(std::abs(a[m]), 1e-300);
    const double inv = std::abs(r.lambda[m] * r.c[m] - 1.0);
    rep.checks[0].worst = std::max({rep.checks[0].worst, err, inv});
    if (err > 1e-15 || inv > 1e-15)
      fail(rep.checks[0], "index " + std::to_string(m + 1));
  }

  const long double A = kahan_block(a, 0, n);
  const long double c = 6.0L * A / (kPi * kPi);
  const auto& blocks = r.blocks;

  // (ii) c is 1 up to k_{s_1}, then 1/sqrt(s_j + 1) on each block, strictly decreasing.
  const std::size_t head_end = blocks.empty() ? n : blocks.front().begin;
  for (std::size_t m = 0; m < head_end; ++m)
    if (r.c[m] != 1.0)
      fail(rep.checks[1], "head index " + std::to_string(m + 1));
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const double expected = 1.0 / static_cast<double>(std::sqrt(blocks[i].s + 1.0L));
    for (std::size_t m = blocks[i].begin; m < blocks[i].end; ++m)
      if (r.c[m] != expected)
        fail(rep.checks[1], "block " + std::to_string(i + 1) + " index " + std::to_string(m + 1));
    if (i > 0 && !(expected < 1.0 / static_cast<double>(std::sqrt(blocks[i - 1].s + 1.0L))))
      fail(rep.checks[1], "block " + std::to_string(i + 1) + " does not decrease");
    if (i > 0 && !(blocks[i].s > blocks[i - 1].s))
      fail(rep.checks[1], "s not increasing at block " + std::to_string(i + 1));
  }

  // (iii) sum over block j <= c (T(s_j) - T(s_{j+2})), T(infinity) = 0.
  std::vector<long double> block_sums(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    block_sums[i] = kahan_block(a, blocks[i].begin, blocks[i].end);
    const long double far = i + 2 < blocks.size() ? tail2(blocks[i + 2].s) : 0.0L;
    const long double bound = c * (tail2(blocks[i].s) - far);
    const long double ratio = bound > 0.0L ? block_sums[i] / bound : (block_sums[i] > 0.0L ? INFINITY : 0.0L);
    rep.checks[2].worst = std::max(rep.checks[2].worst, static_cast<double>(ratio));
    if (block_sums[i] > bound * (1.0L + 1e-12L))
      fail(rep.checks[2], "block " + std::to_string(i + 1));
  }

  // (iv) L1 <= L2 <= L3 <= L4 and sum |b| <= head + L4.
  rep.head = kahan_block(a, 0, head_end);
  for (std::size_t m = head_end; m < n; ++m)
    rep.l1 += static_cast<long double>(std::abs(r.b[m]));
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const long double far2 = i + 2 < blocks.size() ? tail2(blocks[i + 2].s) : 0.0L;
    const long double far32 = i + 2 < blocks.size() ? tail32(blocks[i + 2].s) : 0.0L;
    rep.l2 += std::sqrt(blocks[i].s + 1.0L) * c * (tail2(blocks[i].s) - far2);
    rep.l3 += c * (tail32(blocks[i].s) - far32);
  }
  rep.l4 = 2.0L * c * riemann_zeta(1.5L);
  for (std::size_t m = 0; m < n; ++m)
    rep.b_total += static_cast<long double>(std::abs(r.b[m]));
  const long double slack = 1.0L + 1e-12L;
  const long double chain[] = {rep.l1, rep.l2, rep.l3, rep.l4};
  for (int i = 0; i < 3; ++i) {
    if (chain[i] > chain[i + 1] * slack)
      fail(rep.checks[3], "L" + std::to_string(i + 1) + " > L" + std::to_string(i + 2));
    if (chain[i + 1] > 0.0L)
      rep.checks[3].worst = std::max(rep.checks[3].worst, static_cast<double>(chain[i] / chain[i + 1]));
  }
  if (rep.b_total > (rep.head + rep.l4) * slack)
    fail(rep.checks[3], "sum |b| exceeds head + L4");
  return rep;
}

FactorizationResult corrupt_block(FactorizationResult r, const SummableSeq& a, std::size_t block)
{
  if (block >= r.blocks.size())
    return r;
  auto& bl = r.blocks[block];
  bl.lambda *= 0.5;
  for (std::size_t m = bl.begin; m < bl.end; ++m) {
    r.lambda[m] = bl.lambda;
    r.b[m] = a[m] * bl.lambda;
  }
  return r;
}

std::string format_ladder_value(long double s)
{
  char buf[64];
  if (s < 18446744073709551616.0L)
    std::snprintf(buf, sizeof buf, "%llu", static_cast<unsigned long long>(s));
  else
    std::snprintf(buf, sizeof buf, "%.21Lg", s);
  return buf;
}

} // namespace bohr
