#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "svcrisk/model.hpp"

namespace svcrisk::fixtures {

/// Names of the bundled model documents.
std::vector<std::string> names();

/// Document text of a bundled model. Throws InvalidArgument for unknown names.
std::string_view document(std::string_view name);

/// Loaded and validated bundled model.
CombinedModel load(std::string_view name);

// 18-state reference scenario: 16 exploit states on 7 service nodes, 25 vectors, 14 vulnerabilities.
CombinedModel paper_fixture();
// Six-state combination example: two disjoint attack paths over three network nodes.
CombinedModel fig1_toy();
// Nine-state metrics example with i, j, k grouped to node "n".
CombinedModel appendix_toy();

}  // namespace svcrisk::fixtures
