#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "svcrisk/combiner.hpp"
#include "svcrisk/model.hpp"
#include "svcrisk/propagation.hpp"

namespace svcrisk {

using ValueMap = std::map<std::string, double, NaturalLess>;

struct MetricsReport {
  ValueMap reach_probability;  // P(i)
  ValueMap expected_impact;    // E[I_i]
  ValueMap cumulative_impact;  // CE[I_i]
  ValueMap inbound;            // C_IN(n)
  ValueMap outbound;           // C_OUT(n)
  ValueMap node_wise;          // C_NODE(n)

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

enum class Metric { Reach, Expected, Cumulative, Inbound, Outbound, NodeWise };

inline constexpr Metric kAllMetrics[] = {Metric::Reach,   Metric::Expected, Metric::Cumulative,
                                         Metric::Inbound, Metric::Outbound, Metric::NodeWise};

std::string_view to_string(Metric metric);
Metric parse_metric(std::string_view text);
const ValueMap& values(const MetricsReport& report, Metric metric);
ValueMap& values(MetricsReport& report, Metric metric);

// Metric evaluation over one propagated model. Holds references: the model, resolved vectors and
// propagation result must outlive the analysis.
class ImpactAnalysis {
 public:
  ImpactAnalysis(const CombinedModel& model, const std::vector<ResolvedVector>& resolved,
                 const PropagationResult& prop);

  double expected_impact(std::string_view state) const;
  double cumulative_impact(std::string_view state) const;
  double inbound(std::string_view node) const;
  double outbound(std::string_view node) const;
  double node_wise(std::string_view node) const;

  // A(i): immediate predecessors of i.
  IdSet predecessors(std::string_view state) const;
  // B(i): states on feasible Start->i paths, i excluded.
  IdSet feasible_ancestors(std::string_view state) const;
  // C(n): states outside G_n on feasible paths to any G_n state.
  IdSet inbound_sources(std::string_view node) const;
  // D(n): immediate successors of G_n states, G_n members included.
  IdSet successors(std::string_view node) const;

  // Vectors whose expected impact P(i,j) * I(i,j) is part of the metric for node n.
  std::vector<std::string> inbound_vectors(std::string_view node) const;
  std::vector<std::string> outbound_vectors(std::string_view node) const;
  std::vector<std::string> node_vectors(std::string_view node) const;

  MetricsReport report() const;

 private:
  const std::vector<std::string>& members(std::string_view node) const;
  const AttackState& state_ref(std::string_view id) const;
  double vector_impact(const ResolvedVector& r) const;
  IdSet backward_feasible(const std::vector<std::string>& targets) const;

  const CombinedModel& model_;
  const std::vector<ResolvedVector>& resolved_;
  const PropagationResult& prop_;
  IdSet forward_;  // states feasibly reachable from Start
};

double expected_impact(const PropagationResult& prop, const std::vector<ResolvedVector>& resolved,
                       std::string_view state);
double cumulative_impact(const PropagationResult& prop, const std::vector<ResolvedVector>& resolved,
                         const CombinedModel& model, std::string_view state);
double inbound_impact(const PropagationResult& prop, const std::vector<ResolvedVector>& resolved,
                      const CombinedModel& model, std::string_view node);
double outbound_impact(const PropagationResult& prop, const std::vector<ResolvedVector>& resolved,
                       const CombinedModel& model, std::string_view node);
double node_wise_impact(const PropagationResult& prop, const std::vector<ResolvedVector>& resolved,
                        const CombinedModel& model, std::string_view node);

/// Full metrics for a model whose vectors are already resolved.
MetricsReport compute_metrics(const CombinedModel& model, const std::vector<ResolvedVector>& resolved);

}  // namespace svcrisk
