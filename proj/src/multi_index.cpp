#include "bohr/multi_index.hpp"

#include "bohr/errors.hpp"

#include <cstdlib>
#include <limits>
#include <type_traits>

namespace bohr {

template <class Exponent>
BasicMultiIndex<Exponent>::BasicMultiIndex(std::initializer_list<Entry> entries)
    : BasicMultiIndex(std::vector<Entry>(entries))
{}

template <class Exponent>
BasicMultiIndex<Exponent>::BasicMultiIndex(std::vector<Entry> entries) : entries_(std::move(entries))
{
  std::uint32_t previous = 0;
  for (const auto& [position, exponent] : entries_) {
    if (position <= previous)
      throw DomainError("multi-index positions must be positive and strictly increasing");
    if (exponent == 0)
      throw DomainError("multi-index entries must have nonzero exponents");
    previous = position;
  }
}

template <class Exponent>
BasicMultiIndex<Exponent> BasicMultiIndex<Exponent>::unit(std::uint32_t position, Exponent exponent)
{
  return BasicMultiIndex({{position, exponent}});
}

template <class Exponent>
Exponent BasicMultiIndex<Exponent>::operator[](std::uint32_t position) const
{
  for (const auto& [p, e] : entries_) {
    if (p == position)
      return e;
    if (p > position)
      break;
  }
  return 0;
}

template <class Exponent>
std::int64_t BasicMultiIndex<Exponent>::total_degree() const
{
  std::int64_t d = 0;
  for (const auto& [p, e] : entries_)
    d += std::llabs(static_cast<long long>(e));
  return d;
}

template <class Exponent>
std::int64_t BasicMultiIndex<Exponent>::weighted_degree() const
{
  std::int64_t d = 0;
  for (const auto& [p, e] : entries_)
    d += static_cast<std::int64_t>(p) * std::llabs(static_cast<long long>(e));
  return d;
}

template <class Exponent>
BasicMultiIndex<Exponent>& BasicMultiIndex<Exponent>::operator+=(const BasicMultiIndex& other)
{
  std::vector<Entry> merged;
  merged.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      merged.push_back(*a++);
    } else if (a == entries_.end() || b->first < a->first) {
      merged.push_back(*b++);
    } else {
      const auto sum = static_cast<std::int64_t>(a->second) + static_cast<std::int64_t>(b->second);
      if (sum > std::numeric_limits<Exponent>::max() || sum < std::numeric_limits<Exponent>::min())
        throw OverflowError("multi-index exponent overflow");
      if (sum != 0)
        merged.emplace_back(a->first, static_cast<Exponent>(sum));
      ++a;
      ++b;
    }
  }
  entries_ = std::move(merged);
  return *this;
}

template <class Exponent>
std::string BasicMultiIndex<Exponent>::to_string() const
{
  std::string s = "{";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i)
      s += ",";
    s += "(" + std::to_string(entries_[i].first) + "," + std::to_string(entries_[i].second) + ")";
  }
  return s + "}";
}

template class BasicMultiIndex<std::uint32_t>;
template class BasicMultiIndex<std::int32_t>;

SignedMultiIndex to_signed(const MultiIndex& alpha)
{
  std::vector<SignedMultiIndex::Entry> out;
  out.reserve(alpha.support_size());
  for (const auto& [p, e] : alpha.entries()) {
    if (e > static_cast<std::uint32_t>(std::numeric_limits<std::int32_t>::max()))
      throw OverflowError("exponent does not fit a signed multi-index");
    out.emplace_back(p, static_cast<std::int32_t>(e));
  }
  return SignedMultiIndex(std::move(out));
}

SignedMultiIndex operator-(const SignedMultiIndex& alpha)
{
  std::vector<SignedMultiIndex::Entry> out;
  out.reserve(alpha.support_size());
  for (const auto& [p, e] : alpha.entries())
    out.emplace_back(p, -e);
  return SignedMultiIndex(std::move(out));
}

SignedMultiIndex difference(const MultiIndex& beta, const MultiIndex& alpha)
{
  return to_signed(beta) + (-to_signed(alpha));
}

} // namespace bohr
