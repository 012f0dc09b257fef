#pragma once

#include <string>
#include <vector>

#include "svcrisk/model.hpp"
#include "svcrisk/reliability.hpp"

namespace svcrisk {

struct ResolvedVector {
  std::string vector;
  std::string source;
  std::string target;
  std::string vulnerability;
  double p_net = 1.0;
  double p_exploit = 0.0;  // catalog exploitability times the vector's exploit scale
  double p_overall = 0.0;  // p_net * p_exploit
  double impact = 0.0;

  friend bool operator==(const ResolvedVector&, const ResolvedVector&) = default;
};

/// Places every Exploit state on its service node and derives entry/exit nodes.
/// Throws UngroupedState or UnknownServiceNode.
CombinedModel combine(AttackGraph attack, NetworkGraph net, ServiceGrouping grouping);

/// Recomputes entry_nodes/exit_nodes and state services of an existing model from its grouping.
CombinedModel recombine(CombinedModel model);

/// True when the vector needs no network traversal: it leaves Start, enters an End state, or
/// stays on one service node.
bool is_local_vector(const CombinedModel& model, const AttackVector& vector);

/// One entry per attack vector in model order. Throws MissingReliabilityEntry.
std::vector<ResolvedVector> resolve_vectors(const CombinedModel& model,
                                            const ReliabilityTable& table);

/// The bare attack graph reading: p_net = 1 for every vector.
std::vector<ResolvedVector> resolve_bare(const CombinedModel& model);

}  // namespace svcrisk
