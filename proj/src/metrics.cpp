#include "svcrisk/metrics.hpp"

#include <algorithm>
#include <deque>

namespace svcrisk {

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::Reach: return "reach_probability";
    case Metric::Expected: return "expected_impact";
    case Metric::Cumulative: return "cumulative_impact";
    case Metric::Inbound: return "inbound";
    case Metric::Outbound: return "outbound";
    case Metric::NodeWise: return "node_wise";
  }
  return "reach_probability";
}

Metric parse_metric(std::string_view text) {
  for (Metric m : kAllMetrics) {
    if (to_string(m) == text) return m;
  }
  if (text == "P") return Metric::Reach;
  if (text == "E") return Metric::Expected;
  if (text == "CE") return Metric::Cumulative;
  if (text == "C_IN") return Metric::Inbound;
  if (text == "C_OUT") return Metric::Outbound;
  if (text == "C_NODE") return Metric::NodeWise;
  throw Error(ErrorCode::InvalidArgument, "unknown metric '" + std::string(text) + "'");
}

const ValueMap& values(const MetricsReport& report, Metric metric) {
  switch (metric) {
    case Metric::Reach: return report.reach_probability;
    case Metric::Expected: return report.expected_impact;
    case Metric::Cumulative: return report.cumulative_impact;
    case Metric::Inbound: return report.inbound;
    case Metric::Outbound: return report.outbound;
    case Metric::NodeWise: return report.node_wise;
  }
  return report.reach_probability;
}

ValueMap& values(MetricsReport& report, Metric metric) {
  return const_cast<ValueMap&>(values(static_cast<const MetricsReport&>(report), metric));
}

ImpactAnalysis::ImpactAnalysis(const CombinedModel& model,
                               const std::vector<ResolvedVector>& resolved,
                               const PropagationResult& prop)
    : model_(model), resolved_(resolved), prop_(prop) {
  const auto* start = model_.attack.start();
  if (start == nullptr) return;
  std::deque<std::string> queue{start->id};
  forward_.insert(start->id);
  while (!queue.empty()) {
    const std::string at = queue.front();
    queue.pop_front();
    for (const auto& r : resolved_) {
      if (r.source == at && r.p_overall > 0.0 && forward_.insert(r.target).second) {
        queue.push_back(r.target);
      }
    }
  }
}

const AttackState& ImpactAnalysis::state_ref(std::string_view id) const {
  const auto* s = model_.attack.find_state(id);
  if (s == nullptr) throw Error(ErrorCode::UnknownState, "unknown state " + std::string(id));
  return *s;
}

const std::vector<std::string>& ImpactAnalysis::members(std::string_view node) const {
  const auto* g = model_.group(node);
  if (g == nullptr) throw Error(ErrorCode::UnknownNode, "no grouping for node " + std::string(node));
  return *g;
}

double ImpactAnalysis::vector_impact(const ResolvedVector& r) const {
  return prop_.edge(r.vector) * r.impact;
}

double ImpactAnalysis::expected_impact(std::string_view state) const {
  state_ref(state);
  double sum = 0.0;
  for (const auto& r : resolved_) {
    if (r.target == state) sum += vector_impact(r);
  }
  return sum;
}

IdSet ImpactAnalysis::predecessors(std::string_view state) const {
  state_ref(state);
  IdSet out;
  for (const auto& r : resolved_) {
    if (r.target == state) out.insert(r.source);
  }
  return out;
}

// States that reach any of targets over feasible vectors, targets included.
IdSet ImpactAnalysis::backward_feasible(const std::vector<std::string>& targets) const {
  IdSet seen(targets.begin(), targets.end());
  std::deque<std::string> queue(targets.begin(), targets.end());
  while (!queue.empty()) {
    const std::string at = queue.front();
    queue.pop_front();
    for (const auto& r : resolved_) {
      if (r.target == at && r.p_overall > 0.0 && seen.insert(r.source).second) {
        queue.push_back(r.source);
      }
    }
  }
  return seen;
}

IdSet ImpactAnalysis::feasible_ancestors(std::string_view state) const {
  state_ref(state);
  IdSet out;
  if (!forward_.contains(state)) return out;
  for (const auto& id : backward_feasible({std::string(state)})) {
    if (id != state && forward_.contains(id)) out.insert(id);
  }
  return out;
}

IdSet ImpactAnalysis::inbound_sources(std::string_view node) const {
  const auto& g = members(node);
  std::vector<std::string> reached;
  for (const auto& id : g) {
    if (forward_.contains(id)) reached.push_back(id);
  }
  IdSet out;
  for (const auto& id : backward_feasible(reached)) {
    if (forward_.contains(id) && std::find(g.begin(), g.end(), id) == g.end()) out.insert(id);
  }
  return out;
}

IdSet ImpactAnalysis::successors(std::string_view node) const {
  const auto& g = members(node);
  IdSet out;
  for (const auto& r : resolved_) {
    if (std::find(g.begin(), g.end(), r.source) != g.end()) out.insert(r.target);
  }
  out.insert(g.begin(), g.end());
  return out;
}

double ImpactAnalysis::cumulative_impact(std::string_view state) const {
  double sum = expected_impact(state);
  for (const auto& id : feasible_ancestors(state)) sum += expected_impact(id);
  return sum;
}

double ImpactAnalysis::inbound(std::string_view node) const {
  const auto& g = members(node);
  double sum = 0.0;
  for (const auto& i : inbound_sources(node)) {
    double term = expected_impact(i);
    for (const auto& r : resolved_) {
      if (r.source == i && std::find(g.begin(), g.end(), r.target) != g.end()) {
        term += vector_impact(r);
      }
    }
    sum += term;
  }
  return sum;
}

double ImpactAnalysis::outbound(std::string_view node) const {
  const auto& g = members(node);
  const IdSet d = successors(node);
  double sum = 0.0;
  for (const auto& r : resolved_) {
    if (std::find(g.begin(), g.end(), r.source) != g.end() && d.contains(r.target)) {
      sum += vector_impact(r);
    }
  }
  return inbound(node) + sum;
}

double ImpactAnalysis::node_wise(std::string_view node) const {
  IdSet g(members(node).begin(), members(node).end());
  double sum = 0.0;
  for (const auto& id : g) sum += expected_impact(id);
  return sum;
}

std::vector<std::string> ImpactAnalysis::inbound_vectors(std::string_view node) const {
  const auto& g = members(node);
  const IdSet c = inbound_sources(node);
  std::vector<std::string> out;
  for (const auto& r : resolved_) {
    const bool into_c = c.contains(r.target);
    const bool c_to_g = c.contains(r.source) && std::find(g.begin(), g.end(), r.target) != g.end();
    if (into_c || c_to_g) out.push_back(r.vector);
  }
  std::sort(out.begin(), out.end(), NaturalLess{});
  return out;
}

std::vector<std::string> ImpactAnalysis::outbound_vectors(std::string_view node) const {
  const auto& g = members(node);
  std::vector<std::string> out = inbound_vectors(node);
  for (const auto& r : resolved_) {
    if (std::find(g.begin(), g.end(), r.source) != g.end()) out.push_back(r.vector);
  }
  std::sort(out.begin(), out.end(), NaturalLess{});
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> ImpactAnalysis::node_vectors(std::string_view node) const {
  const auto& g = members(node);
  std::vector<std::string> out;
  for (const auto& r : resolved_) {
    if (std::find(g.begin(), g.end(), r.target) != g.end()) out.push_back(r.vector);
  }
  std::sort(out.begin(), out.end(), NaturalLess{});
  return out;
}

MetricsReport ImpactAnalysis::report() const {
  MetricsReport out;
  for (const auto& s : model_.attack.states) {
    out.reach_probability[s.id] = prop_.state(s.id);
    out.expected_impact[s.id] = expected_impact(s.id);
  }
  for (const auto& s : model_.attack.states) {
    double sum = out.expected_impact.at(s.id);
    for (const auto& id : feasible_ancestors(s.id)) sum += out.expected_impact.at(id);
    out.cumulative_impact[s.id] = sum;
  }
  for (const auto& [node, _] : model_.grouping) {
    out.inbound[node] = inbound(node);
    out.outbound[node] = outbound(node);
    out.node_wise[node] = node_wise(node);
  }
  return out;
}

double expected_impact(const PropagationResult& prop, const std::vector<ResolvedVector>& resolved,
                       std::string_view state) {
  prop.state(state);
  double sum = 0.0;
  for (const auto& r : resolved) {
    if (r.target == state) sum += prop.edge(r.vector) * r.impact;
  }
  return sum;
}

double cumulative_impact(const PropagationResult& prop, const std::vector<ResolvedVector>& resolved,
                         const CombinedModel& model, std::string_view state) {
  return ImpactAnalysis(model, resolved, prop).cumulative_impact(state);
}

double inbound_impact(const PropagationResult& prop, const std::vector<ResolvedVector>& resolved,
                      const CombinedModel& model, std::string_view node) {
  return ImpactAnalysis(model, resolved, prop).inbound(node);
}

double outbound_impact(const PropagationResult& prop, const std::vector<ResolvedVector>& resolved,
                       const CombinedModel& model, std::string_view node) {
  return ImpactAnalysis(model, resolved, prop).outbound(node);
}

double node_wise_impact(const PropagationResult& prop, const std::vector<ResolvedVector>& resolved,
                        const CombinedModel& model, std::string_view node) {
  return ImpactAnalysis(model, resolved, prop).node_wise(node);
}

MetricsReport compute_metrics(const CombinedModel& model,
                              const std::vector<ResolvedVector>& resolved) {
  const PropagationResult prop = propagate(model, resolved);
  return ImpactAnalysis(model, resolved, prop).report();
}

}  // namespace svcrisk
