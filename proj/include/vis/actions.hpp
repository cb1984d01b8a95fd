#pragma once

#include "vis/numeric.hpp"

#include <string>
#include <vector>

namespace vis {

// Named actions the certifier knows how to build, e.g. "sl2R:K", "sp2R:GL2R", "su6:Sp3".
struct ActionSpec {
  std::string id;
  std::string kind;  // symmetric-subgroup | diagonal | diagonal-conjugate | unipotent | compact
  std::string group, subgroup, space;
};

const std::vector<ActionSpec>& action_registry();

// Throws UnsupportedFamily for unknown ids; exceptional prefixes (e6:, e7:) are reported as such.
ActionModel build_action(const std::string& id);

// The row record with this id ("table2/row26", "table3/su") from the default dataset.
TableRow dataset_row(const std::string& id);

} // namespace vis
