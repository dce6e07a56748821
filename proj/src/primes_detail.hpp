#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace bohr::detail {

/// Immutable snapshot of the sieve. Growing the table publishes a new
/// snapshot; readers keep theirs alive through the shared_ptr.
struct PrimeData {
  std::uint64_t limit = 0;
  std::vector<std::uint32_t> primes;
};

std::shared_ptr<const PrimeData> primes_up_to(std::uint64_t limit);
std::shared_ptr<const PrimeData> primes_count_at_least(std::uint64_t count);

} // namespace bohr::detail
