#pragma once

#include "vis/scalar.hpp"

#include <map>
#include <string>

namespace vis {

using ParamMap = std::map<std::string, long>;

// Arithmetic over Q with + - * /, comparisons, && ||, min, max, floor.
// Comparisons and logic give 0 or 1. Throws DatasetError on malformed input or unknown names.
Rational evaluate(const std::string& expression, const ParamMap& params);
long evaluate_integer(const std::string& expression, const ParamMap& params);
bool evaluate_condition(const std::string& expression, const ParamMap& params);

std::string format_params(const ParamMap& params);

} // namespace vis
