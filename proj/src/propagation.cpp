#include "svcrisk/propagation.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace svcrisk {

double PropagationResult::state(std::string_view id) const {
  auto it = state_prob.find(id);
  if (it == state_prob.end()) throw Error(ErrorCode::UnknownState, "unknown state " + std::string(id));
  return it->second;
}

double PropagationResult::edge(std::string_view vector_id) const {
  auto it = edge_prob.find(vector_id);
  if (it == edge_prob.end()) {
    throw Error(ErrorCode::UnknownState, "unknown vector " + std::string(vector_id));
  }
  return it->second;
}

std::vector<std::string> topological_order(const AttackGraph& graph) {
  std::unordered_map<std::string, std::size_t> indegree;
  std::unordered_map<std::string, std::vector<std::string>> out;
  for (const auto& s : graph.states) indegree[s.id] = 0;
  for (const auto& v : graph.vectors) {
    if (!indegree.contains(v.source)) throw Error(ErrorCode::UnknownState, "unknown state " + v.source);
    if (!indegree.contains(v.target)) throw Error(ErrorCode::UnknownState, "unknown state " + v.target);
    ++indegree[v.target];
    out[v.source].push_back(v.target);
  }
  std::set<std::string, NaturalLess> ready;
  for (const auto& [id, d] : indegree) {
    if (d == 0) ready.insert(id);
  }
  std::vector<std::string> order;
  while (!ready.empty()) {
    std::string id = *ready.begin();
    ready.erase(ready.begin());
    for (const auto& next : out[id]) {
      if (--indegree[next] == 0) ready.insert(next);
    }
    order.push_back(std::move(id));
  }
  if (order.size() != graph.states.size()) {
    throw Error(ErrorCode::CycleDetected, "attack graph contains a cycle");
  }
  return order;
}

PropagationResult propagate(const CombinedModel& model, const std::vector<ResolvedVector>& resolved) {
  PropagationResult result;
  result.topo_order = topological_order(model.attack);

  std::unordered_map<std::string, std::vector<const ResolvedVector*>> inbound;
  for (const auto& r : resolved) inbound[r.target].push_back(&r);

  for (const auto& id : result.topo_order) {
    const auto* state = model.attack.find_state(id);
    double p = 0.0;
    if (state->kind == StateKind::Start) {
      p = 1.0;
    } else {
      double miss = 1.0;
      for (const auto* r : inbound[id]) miss *= 1.0 - result.edge_prob.at(r->vector);
      p = 1.0 - miss;
    }
    result.state_prob[id] = p;
    for (const auto& r : resolved) {
      if (r.source == id) result.edge_prob[r.vector] = p * r.p_overall;
    }
  }
  return result;
}

std::vector<AttackPath> feasible_paths(const CombinedModel& model,
                                       const std::vector<ResolvedVector>& resolved,
                                       std::string_view to) {
  topological_order(model.attack);  // rejects cycles
  if (model.attack.find_state(to) == nullptr) {
    throw Error(ErrorCode::UnknownState, "unknown state " + std::string(to));
  }
  const auto* start = model.attack.start();
  if (start == nullptr) return {};

  std::unordered_map<std::string, std::vector<const ResolvedVector*>> outbound;
  for (const auto& r : resolved) {
    if (r.p_overall > 0.0) outbound[r.source].push_back(&r);
  }
  for (auto& [_, list] : outbound) {
    std::sort(list.begin(), list.end(), [](const auto* a, const auto* b) {
      return NaturalLess{}(a->vector, b->vector);
    });
  }

  std::vector<AttackPath> paths;
  AttackPath current;
  auto walk = [&](auto&& self, const std::string& at) -> void {
    if (at == to) {
      paths.push_back(current);
      return;
    }
    for (const auto* r : outbound[at]) {
      current.push_back(r->vector);
      self(self, r->target);
      current.pop_back();
    }
  };
  walk(walk, start->id);
  return paths;
}

}  // namespace svcrisk
