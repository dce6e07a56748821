#include "bohr/series_json.hpp"

#include "bohr/errors.hpp"

#include <limits>
#include <string>

namespace bohr {

using nlohmann::json;

namespace {

Complex complex_from(const json& item)
{
  const double re = item.value("re", 0.0);
  const double im = item.value("im", 0.0);
  return {re, im};
}

template <class MI>
MI multi_index_from(const json& j)
{
  using Exponent = typename MI::exponent_type;
  if (!j.is_array())
    throw DomainError("alpha must be an array of [position, exponent] pairs");
  std::vector<typename MI::Entry> entries;
  for (const json& pair : j) {
    if (!pair.is_array() || pair.size() != 2)
      throw DomainError("alpha entries must be [position, exponent] pairs");
    const auto position = pair[0].get<std::int64_t>();
    const auto exponent = pair[1].get<std::int64_t>();
    if (position < 1 || position > std::numeric_limits<std::uint32_t>::max())
      throw DomainError("alpha position out of range: " + std::to_string(position));
    if (exponent < std::numeric_limits<Exponent>::min() || exponent > std::numeric_limits<Exponent>::max())
      throw DomainError("alpha exponent out of range: " + std::to_string(exponent));
    entries.emplace_back(static_cast<std::uint32_t>(position), static_cast<Exponent>(exponent));
  }
  return MI(std::move(entries));
}

template <class MI>
json multi_index_to(const MI& alpha)
{
  json out = json::array();
  for (const auto& [p, e] : alpha.entries())
    out.push_back({p, e});
  return out;
}

} // namespace

json to_json(const MultiIndex& alpha) { return multi_index_to(alpha); }
json to_json(const SignedMultiIndex& alpha) { return multi_index_to(alpha); }
MultiIndex index_from_json(const json& j) { return multi_index_from<MultiIndex>(j); }
SignedMultiIndex signed_index_from_json(const json& j) { return multi_index_from<SignedMultiIndex>(j); }

json to_json(const DirichletSeries& f)
{
  json terms = json::array();
  for (const auto& [n, a] : f.terms())
    terms.push_back({{"n", n}, {"re", a.real()}, {"im", a.imag()}});
  return {{"terms", terms}};
}

json to_json(const LiftedPolynomial& f)
{
  json monomials = json::array();
  for (const auto& [alpha, c] : f.monomials())
    monomials.push_back({{"alpha", to_json(alpha)}, {"re", c.real()}, {"im", c.imag()}});
  return {{"monomials", monomials}};
}

DirichletSeries series_from_json(const json& j)
{
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
    throw DomainError("series JSON needs a \"terms\" array");
  DirichletSeries::Terms terms;
  for (const json& item : j["terms"]) {
    const json& n_json = item.at("n");
    if (n_json.is_number_integer() && !n_json.is_number_unsigned() && n_json.get<std::int64_t>() < 0)
      throw DomainError("series index n must be positive");
    if (!n_json.is_number_integer())
      throw DomainError("series index n must be an integer");
    const auto n = n_json.get<std::uint64_t>();
    if (n >= (std::uint64_t{1} << 63))
      throw OverflowError("series index n = " + std::to_string(n) + " is not below 2^63");
    if (n == 0)
      throw DomainError("series index n must be positive");
    if (!terms.emplace(n, complex_from(item)).second)
      throw DomainError("duplicate series index n = " + std::to_string(n));
  }
  return DirichletSeries(std::move(terms));
}

LiftedPolynomial polynomial_from_json(const json& j)
{
  if (!j.is_object() || !j.contains("monomials") || !j["monomials"].is_array())
    throw DomainError("polynomial JSON needs a \"monomials\" array");
  LiftedPolynomial::Monomials monomials;
  for (const json& item : j["monomials"]) {
    MultiIndex alpha = index_from_json(item.at("alpha"));
    const std::string key = alpha.to_string();
    if (!monomials.emplace(std::move(alpha), complex_from(item)).second)
      throw DomainError("duplicate monomial " + key);
  }
  return LiftedPolynomial(std::move(monomials));
}

} // namespace bohr
