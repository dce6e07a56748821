#pragma once

#include "bohr/szego.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace bohr::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kInputError = 2 };

// {"type":"modulus_power","p":2,"h":{"monomials":[...]}}
// {"type":"fourier","coefficients":[{"alpha":[[1,1],[2,-1]],"re":0.5,"im":0}, ...]}
WeightSpec weight_from_json(const nlohmann::json& j);

/// Parses "re,im;re,im;..." (imaginary parts optional).
std::vector<Complex> parse_point(const std::string& text);

/// Runs one invocation; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace bohr::cli
