#pragma once

#include "bohr/dirichlet.hpp"

#include <json.hpp>

namespace bohr {

// Series:      {"terms":[{"n":6,"re":3.0,"im":0.0}, ...]}
// Polynomial:  {"monomials":[{"alpha":[[1,2],[2,1]],"re":1.0,"im":0.0}, ...]}
// alpha pairs are [position, exponent]; duplicate keys are rejected.

nlohmann::json to_json(const DirichletSeries& f);
nlohmann::json to_json(const LiftedPolynomial& f);

DirichletSeries series_from_json(const nlohmann::json& j);
LiftedPolynomial polynomial_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SignedMultiIndex& alpha);
nlohmann::json to_json(const MultiIndex& alpha);
SignedMultiIndex signed_index_from_json(const nlohmann::json& j);
MultiIndex index_from_json(const nlohmann::json& j);

} // namespace bohr
