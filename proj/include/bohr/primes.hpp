#pragma once

#include <cstdint>

namespace bohr {

/// Largest integer the lazily grown sieve will cover. Prime factors and
/// prime positions beyond this raise ResourceError.
inline constexpr std::uint64_t kSieveCap = std::uint64_t{1} << 28;

/// The j-th prime, 1-based: nth_prime(1) == 2.
std::uint64_t nth_prime(std::uint64_t j);

/// Position of the prime p in the sequence of primes (prime_position(97) == 25).
/// Throws DomainError if p is not prime.
std::uint64_t prime_position(std::uint64_t p);

/// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime(std::uint64_t n);

/// a * b mod m without overflow.
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);

/// Current sieve limit (for diagnostics).
std::uint64_t sieve_limit();

} // namespace bohr
