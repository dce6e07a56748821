#include "bohr/primes.hpp"

#include "bohr/errors.hpp"
#include "primes_detail.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace bohr::detail {

namespace {

std::vector<std::uint32_t> simple_sieve(std::uint64_t limit)
{
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i])
      continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t m = i * i; m <= limit; m += i)
      composite[m] = true;
  }
  return primes;
}

// Appends the primes in (from, to] using the base primes already in `primes`.
void extend_segmented(std::vector<std::uint32_t>& primes, std::uint64_t from, std::uint64_t to)
{
  constexpr std::uint64_t kSegment = std::uint64_t{1} << 20;
  std::vector<char> mark;
  for (std::uint64_t lo = from + 1; lo <= to; lo += kSegment) {
    const std::uint64_t hi = std::min(to, lo + kSegment - 1);
    mark.assign(hi - lo + 1, 0);
    for (const std::uint32_t p32 : primes) {
      const std::uint64_t p = p32;
      if (p * p > hi)
        break;
      std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
      for (std::uint64_t m = start; m <= hi; m += p)
        mark[m - lo] = 1;
    }
    for (std::uint64_t n = lo; n <= hi; ++n)
      if (!mark[n - lo] && n >= 2)
        primes.push_back(static_cast<std::uint32_t>(n));
  }
}

struct TableState {
  std::mutex mutex;
  std::shared_ptr<const PrimeData> data;
};

TableState& state()
{
  static TableState s;
  return s;
}

std::shared_ptr<PrimeData> grow(const PrimeData* old, std::uint64_t limit)
{
  auto next = std::make_shared<PrimeData>();
  if (old == nullptr) {
    next->primes = simple_sieve(limit);
  } else {
    next->primes = old->primes;
    extend_segmented(next->primes, old->limit, limit);
  }
  next->limit = limit;
  return next;
}

} // namespace

std::shared_ptr<const PrimeData> primes_up_to(std::uint64_t limit)
{
  if (limit > kSieveCap)
    throw ResourceError("prime table request up to " + std::to_string(limit) +
                        " exceeds the sieve capacity " + std::to_string(kSieveCap));
  TableState& s = state();
  std::lock_guard lock(s.mutex);
  if (s.data && s.data->limit >= limit)
    return s.data;
  std::uint64_t target = s.data ? s.data->limit : (std::uint64_t{1} << 16);
  while (target < limit)
    target *= 2;
  target = std::min(target, kSieveCap);
  s.data = grow(s.data.get(), target);
  return s.data;
}

std::shared_ptr<const PrimeData> primes_count_at_least(std::uint64_t count)
{
  auto data = primes_up_to(std::uint64_t{1} << 16);
  while (data->primes.size() < count) {
    if (data->limit >= kSieveCap)
      throw ResourceError("prime position " + std::to_string(count) +
                          " exceeds the sieve capacity " + std::to_string(kSieveCap));
    data = primes_up_to(std::min(kSieveCap, data->limit * 2));
  }
  return data;
}

} // namespace bohr::detail

namespace bohr {

std::uint64_t nth_prime(std::uint64_t j)
{
  if (j == 0)
    throw DomainError("prime positions start at 1");
  const auto data = detail::primes_count_at_least(j);
  return data->primes[j - 1];
}

std::uint64_t prime_position(std::uint64_t p)
{
  const auto data = detail::primes_up_to(std::max<std::uint64_t>(p, 2));
  const auto it = std::lower_bound(data->primes.begin(), data->primes.end(), p);
  if (it == data->primes.end() || *it != p)
    throw DomainError(std::to_string(p) + " is not prime");
  return static_cast<std::uint64_t>(it - data->primes.begin()) + 1;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
  __extension__ using wide = unsigned __int128;
  return static_cast<std::uint64_t>(static_cast<wide>(a) * b % m);
}

namespace {

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m)
{
  std::uint64_t r = 1;
  b %= m;
  while (e > 0) {
    if (e & 1)
      r = mul_mod(r, b, m);
    b = mul_mod(b, b, m);
    e >>= 1;
  }
  return r;
}

} // namespace

bool is_prime(std::uint64_t n)
{
  if (n < 2)
    return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0)
      return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are a proven witness set for n < 2^64.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1)
      continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness)
      return false;
  }
  return true;
}

std::uint64_t sieve_limit()
{
  return detail::primes_up_to(0)->limit;
}

} // namespace bohr
