#pragma once

#include "vis/expr.hpp"
#include "vis/lie.hpp"

#include <string>

namespace vis {

// Invariant fingerprint of a reductive real Lie algebra written as a sum of classical pieces,
// e.g. "s(u(i,j)+u(p-i,q-j))", "so*(2*n)+R", "sp(n,R)", "gl(p,R)+gl(n-p,R)".
// Arguments are expressions in the parameters. Throws UnsupportedRow for exceptional names and
// DatasetError for malformed labels.
Fingerprint label_fingerprint(const std::string& label, const ParamMap& params);

// Label with parameters substituted, e.g. "so(2,1)".
std::string instantiate_label(const std::string& label, const ParamMap& params);

bool is_exceptional_label(const std::string& label);

} // namespace vis
