#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace bohr {

/// Worker count used by the node-parallel loops. Defaults to 1.
void set_num_threads(int n);
int num_threads();

/// Runs body(begin, end) over a static partition of [0, n).
/// Results must be written to disjoint slots; reductions happen afterwards.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

/// Fixed-order pairwise reduction. The tree shape depends only on the length,
/// so sums are bit-identical for any thread count.
template <class T>
T pairwise_sum(std::span<const T> x)
{
  constexpr std::size_t kLeaf = 8;
  if (x.size() <= kLeaf) {
    T s{};
    for (const T& v : x)
      s += v;
    return s;
  }
  const std::size_t half = x.size() / 2;
  return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

} // namespace bohr
