#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "svcrisk/combiner.hpp"
#include "svcrisk/metrics.hpp"
#include "svcrisk/model.hpp"
#include "svcrisk/reliability.hpp"

namespace svcrisk {

inline constexpr double kDefaultMonitorFactor = 0.2;

struct FixVulnerability {
  std::string vulnerability;
  friend bool operator==(const FixVulnerability&, const FixVulnerability&) = default;
};

struct MonitorNode {
  std::string node;
  double factor = kDefaultMonitorFactor;
  friend bool operator==(const MonitorNode&, const MonitorNode&) = default;
};

struct SetAllLinkWeights {
  double weight = 1.0;
  friend bool operator==(const SetAllLinkWeights&, const SetAllLinkWeights&) = default;
};

struct SetLinkWeight {
  std::string a;
  std::string b;
  double weight = 1.0;
  friend bool operator==(const SetLinkWeight&, const SetLinkWeight&) = default;
};

using ScenarioAction = std::variant<FixVulnerability, MonitorNode, SetAllLinkWeights, SetLinkWeight>;

/// Short label such as "fix:CVE-2008-0015", "monitor:2@0.2", "weights:0.6", "weight:1-2@0.5".
std::string describe(const ScenarioAction& action);

/// Throws UnknownVulnerability, UnknownNode, UnknownEdge or InvalidArgument for the first bad action.
void check_actions(const CombinedModel& model, const std::vector<ScenarioAction>& actions);

/// New model with the actions applied in order; the input is not modified.
CombinedModel apply(const CombinedModel& model, const std::vector<ScenarioAction>& actions);

struct Evaluation {
  MetricsReport metrics;
  ReliabilityTable table;
  std::vector<ResolvedVector> resolved;
};

/// Full pipeline: reliability table for the needed pairs, vector resolution, propagation, metrics.
Evaluation evaluate(const CombinedModel& model, const EngineConfig& engine);

struct MetricChange {
  Metric metric = Metric::Reach;
  std::string subject;
  double before = 0.0;
  double after = 0.0;
  // (after - before) / before with 0/0 -> 0. Empty when before is 0 and after is not (anomaly).
  std::optional<double> relative;

  friend bool operator==(const MetricChange&, const MetricChange&) = default;
};

std::optional<double> relative_change(double before, double after);

struct DeltaReport {
  std::vector<ScenarioAction> actions;
  EngineConfig engine;
  bool used_fallback = false;
  MetricsReport baseline;
  MetricsReport scenario;
  std::vector<MetricChange> changes;  // by metric, then subject
  // Unweighted mean relative change over grouped nodes for the node metrics; anomalies skipped.
  std::map<Metric, double> node_mean;

  const MetricChange* change(Metric metric, std::string_view subject) const;
  bool has_anomaly() const;

  friend bool operator==(const DeltaReport&, const DeltaReport&) = default;
};

/// Compares two reports subject by subject.
DeltaReport compare(const MetricsReport& baseline, const MetricsReport& scenario);

/// Delta of the actions against a precomputed baseline for the same engine.
DeltaReport delta(const CombinedModel& model, const MetricsReport& baseline,
                  const std::vector<ScenarioAction>& actions, const EngineConfig& engine);

DeltaReport delta(const CombinedModel& model, const std::vector<ScenarioAction>& actions,
                  const EngineConfig& engine);

enum class SweepAxis { Vulnerabilities, Nodes, Weights };

std::string_view to_string(SweepAxis axis);
SweepAxis parse_sweep_axis(std::string_view text);

struct SweepPoint {
  std::string value;
  DeltaReport report;

  friend bool operator==(const SweepPoint&, const SweepPoint&) = default;
};

struct SweepRequest {
  SweepAxis axis = SweepAxis::Vulnerabilities;
  // Vulnerability ids, node ids, or weights as decimal text. Empty means every vulnerability,
  // every grouped node, or the default weight set respectively.
  std::vector<std::string> values;
  double factor = kDefaultMonitorFactor;  // for the Nodes axis
  std::vector<ScenarioAction> base_actions;  // applied before each point's own action
  std::optional<Metric> metric;              // keep only this metric's changes when set
};

/// Default weight set of the link-weight study.
std::vector<double> default_sweep_weights();

/// Actions realizing one sweep point.
std::vector<ScenarioAction> sweep_actions(const SweepRequest& request, const std::string& value);

/// Expands empty request values to the axis defaults.
std::vector<std::string> sweep_values(const CombinedModel& model, const SweepRequest& request);

/// One DeltaReport per axis value against the shared baseline, in axis-value order.
std::vector<SweepPoint> sweep(const CombinedModel& model, const SweepRequest& request,
                              const EngineConfig& engine);

/// Same as above with a precomputed baseline.
std::vector<SweepPoint> sweep(const CombinedModel& model, const MetricsReport& baseline,
                              const SweepRequest& request, const EngineConfig& engine);

/// Decimal text of a weight or factor as used in labels and sweep values ("0.2", "1").
std::string format_number(double value);

}  // namespace svcrisk
