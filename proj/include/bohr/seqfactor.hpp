#pragma once

#include "bohr/dirichlet.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace bohr {

/// A finitely supported sequence a_1..a_N (the tail is identically zero).
using SummableSeq = std::vector<Complex>;

/// One block (begin, end] of the ladder carrying the multiplier sqrt(s + 1).
struct FactorBlock {
  std::size_t begin = 0;
  std::size_t end = 0;
  /// s_j; may exceed the 64-bit range for rapidly decaying inputs.
  long double s = 0.0L;
  double lambda = 1.0;
};

/// a = b c with b in l^1 and c -> 0, from the ladder
/// k_j = min{k : sum_{n<=k} |a_n| >= (6A/pi^2) sum_{n<=j} n^{-2}}.
struct FactorizationResult {
  SummableSeq b;
  std::vector<double> c;
  std::vector<double> lambda;
  /// k_{s_1} < k_{s_2} < ... (1-based indices).
  std::vector<std::size_t> breakpoints;
  std::vector<FactorBlock> blocks;
  /// A = sum |a_n|.
  long double total = 0.0L;
  /// The input ends before the ladder does; the last block stands for the
  /// whole infinite tail.
  bool truncated = false;
};

/// Entries up to k_{s_1} get lambda = 1; block (k_{s_j}, k_{s_{j+1}}] gets
/// sqrt(s_j + 1), and the final partial block keeps sqrt(s_J + 1).
FactorizationResult factorize_l1(const SummableSeq& a);

struct FactorCheck {
  std::string name;
  bool passed = true;
  /// Worst violation ratio or error seen.
  double worst = 0.0;
  /// Empty when passed, otherwise the first failing block or index.
  std::string detail;
};

struct FactorizationReport {
  /// (i) exact reconstruction, (ii) block-constant decreasing c,
  /// (iii) per-block bound, (iv) the l^1 bound chain for b.
  std::array<FactorCheck, 4> checks;
  /// sum_{n > k_{s_1}} |b_n|
  long double l1 = 0.0L;
  /// sum_j sqrt(s_j + 1) (6A/pi^2) sum_{s_j < n <= s_{j+2}} n^{-2}
  long double l2 = 0.0L;
  /// (6A/pi^2) sum_j sum_{s_j < n <= s_{j+2}} n^{-3/2}
  long double l3 = 0.0L;
  /// (12A/pi^2) zeta(3/2)
  long double l4 = 0.0L;
  /// sum_{n <= k_{s_1}} |a_n|
  long double head = 0.0L;
  long double b_total = 0.0L;
  bool passed() const;
};

FactorizationReport verify_factorization(const SummableSeq& a, const FactorizationResult& r);

/// Negative control: halves lambda on block `block` and rebuilds b from it,
/// leaving c untouched.
FactorizationResult corrupt_block(FactorizationResult r, const SummableSeq& a, std::size_t block);

/// Decimal rendering of s (exact below 2^64).
std::string format_ladder_value(long double s);

} // namespace bohr
