#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "svcrisk/metrics.hpp"
#include "svcrisk/model.hpp"
#include "svcrisk/reliability.hpp"
#include "svcrisk/scenario.hpp"

namespace svcrisk {

// Which studies an analysis bundle runs. A disengaged section is skipped; an empty list means
// "every vulnerability" / "every grouped node" / the default weight set.
struct ScenarioPlan {
  std::optional<std::vector<std::string>> fixes = std::vector<std::string>{};
  std::optional<std::vector<std::string>> monitors = std::vector<std::string>{};
  double monitor_factor = kDefaultMonitorFactor;
  std::optional<std::vector<double>> weights = std::vector<double>{};
  bool fixes_per_weight = false;     // repeat the fix study at every weight
  bool monitors_per_weight = false;  // repeat the monitoring study at every weight

  static ScenarioPlan baseline_only();
  static ScenarioPlan full();  // everything, including the per-weight studies
};

struct WeightedSweep {
  double weight = 1.0;
  std::vector<SweepPoint> points;

  friend bool operator==(const WeightedSweep&, const WeightedSweep&) = default;
};

struct AnalysisBundle {
  EngineConfig engine;
  bool used_fallback = false;
  double monitor_factor = kDefaultMonitorFactor;
  std::vector<std::string> end_states;
  MetricsReport baseline;
  std::optional<std::vector<SweepPoint>> fixes;
  std::optional<std::vector<SweepPoint>> monitors;
  std::optional<std::vector<SweepPoint>> weights;
  std::vector<WeightedSweep> fixes_by_weight;
  std::vector<WeightedSweep> monitors_by_weight;

  friend bool operator==(const AnalysisBundle&, const AnalysisBundle&) = default;
};

/// Throws before any computation when the plan references unknown ids or bad values.
void check_plan(const CombinedModel& model, const ScenarioPlan& plan);

AnalysisBundle analysis_bundle(const CombinedModel& model, const EngineConfig& engine,
                               const ScenarioPlan& plan);

enum class FigureKind {
  NodeWise,         // C_NODE per node
  StateCumulative,  // CE per state
  Inbound,          // C_IN per node
  Outbound,         // C_OUT per node
  FixInbound,       // relative change of C_IN per fixed vulnerability, per node, plus mean
  FixOutbound,
  FixEnd,           // relative change of CE at the end state(s) per fixed vulnerability
  MonitorInbound,
  MonitorOutbound,
  MonitorEnd,
  WeightCumulative,  // CE per state at each weight
  WeightFixEnd,      // FixEnd repeated per weight
  WeightMonitorEnd,
};

std::string_view to_string(FigureKind kind);
FigureKind parse_figure_kind(std::string_view text);

struct SeriesPoint {
  std::string category;
  std::string group;
  double value = 0.0;

  friend bool operator==(const SeriesPoint&, const SeriesPoint&) = default;
};

struct ChartSeries {
  FigureKind figure = FigureKind::NodeWise;
  std::vector<SeriesPoint> points;
};

/// Label of the explicit average bar in node-delta figures.
inline constexpr std::string_view kMeanGroup = "mean";

/// Grouped-bar projection of a bundle section; every value is copied from the bundle.
/// Throws MissingSection when the section was not computed or is empty.
ChartSeries chart_series(const AnalysisBundle& bundle, FigureKind figure);

nlohmann::ordered_json to_json(const AnalysisBundle& bundle);
nlohmann::ordered_json to_json(const ChartSeries& series);
std::string write_bundle(const AnalysisBundle& bundle);

ScenarioPlan plan_from_json(const nlohmann::json& doc);

}  // namespace svcrisk
