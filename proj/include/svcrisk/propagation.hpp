#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "svcrisk/combiner.hpp"
#include "svcrisk/model.hpp"

namespace svcrisk {

struct PropagationResult {
  std::map<std::string, double, NaturalLess> state_prob;  // P(i)
  std::map<std::string, double, NaturalLess> edge_prob;   // P(i,j), keyed by vector id
  std::vector<std::string> topo_order;

  double state(std::string_view id) const;
  double edge(std::string_view vector_id) const;
};

/// States in topological order; ties broken by natural id order. Throws CycleDetected.
std::vector<std::string> topological_order(const AttackGraph& graph);

/// P(Start) = 1; P(i,j) = P(i) * p(i,j); P(i) = 1 - prod over inbound vectors of (1 - P(j,i)).
PropagationResult propagate(const CombinedModel& model, const std::vector<ResolvedVector>& resolved);

using AttackPath = std::vector<std::string>;  // vector ids from Start

/// Every Start->to path whose vectors all have p_overall > 0, in lexicographic vector-id order.
std::vector<AttackPath> feasible_paths(const CombinedModel& model,
                                       const std::vector<ResolvedVector>& resolved,
                                       std::string_view to);

}  // namespace svcrisk
