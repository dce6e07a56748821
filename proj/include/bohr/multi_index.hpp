#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace bohr {

/// Finitely supported exponent sequence, stored as (position, exponent) pairs
/// with strictly increasing positions (1-based) and no zero exponents. The
/// empty index is alpha = 0.
///
/// `Exponent` is unsigned for power-series monomials and signed for the
/// characters e_alpha with negative entries that index Fourier coefficients.
template <class Exponent>
class BasicMultiIndex {
public:
  using exponent_type = Exponent;
  using Entry = std::pair<std::uint32_t, Exponent>;

  BasicMultiIndex() = default;
  BasicMultiIndex(std::initializer_list<Entry> entries);
  explicit BasicMultiIndex(std::vector<Entry> entries);

  static BasicMultiIndex unit(std::uint32_t position, Exponent exponent = 1);

  const std::vector<Entry>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }
  std::size_t support_size() const { return entries_.size(); }

  /// Exponent at `position`, zero when absent.
  Exponent operator[](std::uint32_t position) const;

  /// Sum of |alpha_j|.
  std::int64_t total_degree() const;
  /// Sum of j * |alpha_j|; the exponent of r picked up under radial dilation.
  std::int64_t weighted_degree() const;
  /// Largest position in the support, 0 for alpha = 0.
  std::uint32_t max_position() const { return entries_.empty() ? 0 : entries_.back().first; }

  /// True when every position is <= k.
  bool supported_in(std::uint32_t k) const { return max_position() <= k; }

  BasicMultiIndex& operator+=(const BasicMultiIndex& other);
  friend BasicMultiIndex operator+(BasicMultiIndex a, const BasicMultiIndex& b) { return a += b; }

  friend auto operator<=>(const BasicMultiIndex&, const BasicMultiIndex&) = default;
  friend bool operator==(const BasicMultiIndex&, const BasicMultiIndex&) = default;

  std::string to_string() const;

private:
  std::vector<Entry> entries_;
};

using MultiIndex = BasicMultiIndex<std::uint32_t>;
using SignedMultiIndex = BasicMultiIndex<std::int32_t>;

SignedMultiIndex to_signed(const MultiIndex& alpha);
SignedMultiIndex operator-(const SignedMultiIndex& alpha);
/// beta - alpha as a signed index.
SignedMultiIndex difference(const MultiIndex& beta, const MultiIndex& alpha);

extern template class BasicMultiIndex<std::uint32_t>;
extern template class BasicMultiIndex<std::int32_t>;

} // namespace bohr
