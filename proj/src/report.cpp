#include "svcrisk/report.hpp"

#include "svcrisk/graph_io.hpp"

namespace svcrisk {

using nlohmann::json;
using nlohmann::ordered_json;

ScenarioPlan ScenarioPlan::baseline_only() {
  ScenarioPlan plan;
  plan.fixes.reset();
  plan.monitors.reset();
  plan.weights.reset();
  return plan;
}

ScenarioPlan ScenarioPlan::full() {
  ScenarioPlan plan;
  plan.fixes_per_weight = true;
  plan.monitors_per_weight = true;
  return plan;
}

namespace {

SweepRequest fix_request(const ScenarioPlan& plan) {
  SweepRequest r;
  r.axis = SweepAxis::Vulnerabilities;
  r.values = plan.fixes.value_or(std::vector<std::string>{});
  return r;
}

SweepRequest monitor_request(const ScenarioPlan& plan) {
  SweepRequest r;
  r.axis = SweepAxis::Nodes;
  r.values = plan.monitors.value_or(std::vector<std::string>{});
  r.factor = plan.monitor_factor;
  return r;
}

std::vector<double> plan_weights(const ScenarioPlan& plan) {
  if (!plan.weights || plan.weights->empty()) return default_sweep_weights();
  return *plan.weights;
}

SweepRequest weight_request(const ScenarioPlan& plan) {
  SweepRequest r;
  r.axis = SweepAxis::Weights;
  for (double w : plan_weights(plan)) r.values.push_back(format_number(w));
  return r;
}

void check_request(const CombinedModel& model, const SweepRequest& request) {
  for (const auto& value : sweep_values(model, request)) {
    check_actions(model, sweep_actions(request, value));
  }
}

std::vector<WeightedSweep> per_weight(const CombinedModel& model, const EngineConfig& engine,
                                      const ScenarioPlan& plan, SweepRequest request,
                                      bool& used_fallback) {
  std::vector<WeightedSweep> out;
  for (double w : plan_weights(plan)) {
    request.base_actions = {SetAllLinkWeights{w}};
    WeightedSweep ws{w, sweep(model, request, engine)};
    for (const auto& p : ws.points) used_fallback = used_fallback || p.report.used_fallback;
    out.push_back(std::move(ws));
  }
  return out;
}

}  // namespace

void check_plan(const CombinedModel& model, const ScenarioPlan& plan) {
  if (plan.fixes) check_request(model, fix_request(plan));
  if (plan.monitors || plan.monitors_per_weight) check_request(model, monitor_request(plan));
  if (plan.weights || plan.fixes_per_weight || plan.monitors_per_weight) {
    check_request(model, weight_request(plan));
  }
}

AnalysisBundle analysis_bundle(const CombinedModel& model, const EngineConfig& engine,
                               const ScenarioPlan& plan) {
  check_plan(model, plan);
  AnalysisBundle bundle;
  bundle.engine = engine;
  bundle.monitor_factor = plan.monitor_factor;
  bundle.end_states = model.attack.end_ids();

  const Evaluation base = evaluate(model, engine);
  bundle.baseline = base.metrics;
  bundle.used_fallback = base.table.used_fallback();

  auto note = [&](const std::vector<SweepPoint>& points) {
    for (const auto& p : points) bundle.used_fallback = bundle.used_fallback || p.report.used_fallback;
  };
  if (plan.fixes) {
    bundle.fixes = sweep(model, base.metrics, fix_request(plan), engine);
    note(*bundle.fixes);
  }
  if (plan.monitors) {
    bundle.monitors = sweep(model, base.metrics, monitor_request(plan), engine);
    note(*bundle.monitors);
  }
  if (plan.weights) {
    bundle.weights = sweep(model, base.metrics, weight_request(plan), engine);
    note(*bundle.weights);
  }
  if (plan.fixes_per_weight) {
    bundle.fixes_by_weight = per_weight(model, engine, plan, fix_request(plan), bundle.used_fallback);
  }
  if (plan.monitors_per_weight) {
    bundle.monitors_by_weight =
        per_weight(model, engine, plan, monitor_request(plan), bundle.used_fallback);
  }
  return bundle;
}

std::string_view to_string(FigureKind kind) {
  switch (kind) {
    case FigureKind::NodeWise: return "node_wise";
    case FigureKind::StateCumulative: return "state_cumulative";
    case FigureKind::Inbound: return "inbound";
    case FigureKind::Outbound: return "outbound";
    case FigureKind::FixInbound: return "fix_inbound";
    case FigureKind::FixOutbound: return "fix_outbound";
    case FigureKind::FixEnd: return "fix_end";
    case FigureKind::MonitorInbound: return "monitor_inbound";
    case FigureKind::MonitorOutbound: return "monitor_outbound";
    case FigureKind::MonitorEnd: return "monitor_end";
    case FigureKind::WeightCumulative: return "weight_cumulative";
    case FigureKind::WeightFixEnd: return "weight_fix_end";
    case FigureKind::WeightMonitorEnd: return "weight_monitor_end";
  }
  return "node_wise";
}

FigureKind parse_figure_kind(std::string_view text) {
  for (int k = 0; k <= static_cast<int>(FigureKind::WeightMonitorEnd); ++k) {
    if (to_string(static_cast<FigureKind>(k)) == text) return static_cast<FigureKind>(k);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown figure '" + std::string(text) + "'");
}

namespace {

[[noreturn]] void missing(FigureKind figure) {
  throw Error(ErrorCode::MissingSection,
              "bundle has no data for figure " + std::string(to_string(figure)));
}

const std::vector<SweepPoint>& section(const std::optional<std::vector<SweepPoint>>& s,
                                       FigureKind figure) {
  if (!s || s->empty()) missing(figure);
  return *s;
}

void baseline_series(ChartSeries& out, const ValueMap& values, Metric metric) {
  for (const auto& [subject, value] : values) {
    out.points.push_back({subject, std::string(to_string(metric)), value});
  }
}

// One category per sweep point, one bar per node, then the stored mean.
void node_delta_series(ChartSeries& out, const std::vector<SweepPoint>& points, Metric metric) {
  for (const auto& p : points) {
    for (const auto& c : p.report.changes) {
      if (c.metric == metric && c.relative) out.points.push_back({p.value, c.subject, *c.relative});
    }
    if (auto it = p.report.node_mean.find(metric); it != p.report.node_mean.end()) {
      out.points.push_back({p.value, std::string(kMeanGroup), it->second});
    }
  }
}

void end_delta_series(ChartSeries& out, const std::vector<SweepPoint>& points,
                      const std::vector<std::string>& ends, const std::string& prefix) {
  for (const auto& p : points) {
    for (const auto& end : ends) {
      const auto* c = p.report.change(Metric::Cumulative, end);
      if (c == nullptr || !c->relative) continue;
      std::string group = prefix;
      if (ends.size() > 1 || prefix.empty()) group += prefix.empty() ? end : "/" + end;
      out.points.push_back({p.value, group, *c->relative});
    }
  }
}

void weighted_end_series(ChartSeries& out, const std::vector<WeightedSweep>& sweeps,
                         const std::vector<std::string>& ends, FigureKind figure) {
  if (sweeps.empty()) missing(figure);
  for (const auto& ws : sweeps) end_delta_series(out, ws.points, ends, format_number(ws.weight));
}

}  // namespace

ChartSeries chart_series(const AnalysisBundle& bundle, FigureKind figure) {
  ChartSeries out;
  out.figure = figure;
  switch (figure) {
    case FigureKind::NodeWise:
      baseline_series(out, bundle.baseline.node_wise, Metric::NodeWise);
      break;
    case FigureKind::StateCumulative:
      baseline_series(out, bundle.baseline.cumulative_impact, Metric::Cumulative);
      break;
    case FigureKind::Inbound: baseline_series(out, bundle.baseline.inbound, Metric::Inbound); break;
    case FigureKind::Outbound: baseline_series(out, bundle.baseline.outbound, Metric::Outbound); break;
    case FigureKind::FixInbound:
      node_delta_series(out, section(bundle.fixes, figure), Metric::Inbound);
      break;
    case FigureKind::FixOutbound:
      node_delta_series(out, section(bundle.fixes, figure), Metric::Outbound);
      break;
    case FigureKind::FixEnd:
      end_delta_series(out, section(bundle.fixes, figure), bundle.end_states, "");
      break;
    case FigureKind::MonitorInbound:
      node_delta_series(out, section(bundle.monitors, figure), Metric::Inbound);
      break;
    case FigureKind::MonitorOutbound:
      node_delta_series(out, section(bundle.monitors, figure), Metric::Outbound);
      break;
    case FigureKind::MonitorEnd:
      end_delta_series(out, section(bundle.monitors, figure), bundle.end_states, "");
      break;
    case FigureKind::WeightCumulative:
      for (const auto& p : section(bundle.weights, figure)) {
        for (const auto& [state, value] : p.report.scenario.cumulative_impact) {
          out.points.push_back({state, p.value, value});
        }
      }
      break;
    case FigureKind::WeightFixEnd:
      weighted_end_series(out, bundle.fixes_by_weight, bundle.end_states, figure);
      break;
    case FigureKind::WeightMonitorEnd:
      weighted_end_series(out, bundle.monitors_by_weight, bundle.end_states, figure);
      break;
  }
  if (out.points.empty()) missing(figure);
  return out;
}

ordered_json to_json(const ChartSeries& series) {
  ordered_json out;
  out["figure"] = std::string(to_string(series.figure));
  ordered_json points = ordered_json::array();
  for (const auto& p : series.points) {
    ordered_json o;
    o["category"] = p.category;
    o["group"] = p.group;
    o["value"] = decimal(p.value);
    points.push_back(std::move(o));
  }
  out["points"] = std::move(points);
  return out;
}

namespace {

ordered_json weighted_json(const std::vector<WeightedSweep>& sweeps, SweepAxis axis) {
  ordered_json out = ordered_json::array();
  for (const auto& ws : sweeps) {
    ordered_json o;
    o["weight"] = decimal(ws.weight);
    o["sweep"] = to_json(ws.points, axis);
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace

ordered_json to_json(const AnalysisBundle& bundle) {
  ordered_json out;
  out["kind"] = "bundle";
  out["engine"] = to_json(bundle.engine);
  out["used_fallback"] = bundle.used_fallback;
  out["monitor_factor"] = decimal(bundle.monitor_factor);
  out["end_states"] = bundle.end_states;
  out["baseline"] = to_json(bundle.baseline);
  if (bundle.fixes) out["fixes"] = to_json(*bundle.fixes, SweepAxis::Vulnerabilities);
  if (bundle.monitors) out["monitors"] = to_json(*bundle.monitors, SweepAxis::Nodes);
  if (bundle.weights) out["weights"] = to_json(*bundle.weights, SweepAxis::Weights);
  if (!bundle.fixes_by_weight.empty()) {
    out["fixes_by_weight"] = weighted_json(bundle.fixes_by_weight, SweepAxis::Vulnerabilities);
  }
  if (!bundle.monitors_by_weight.empty()) {
    out["monitors_by_weight"] = weighted_json(bundle.monitors_by_weight, SweepAxis::Nodes);
  }
  return out;
}

std::string write_bundle(const AnalysisBundle& bundle) { return to_json(bundle).dump(2) + "\n"; }

ScenarioPlan plan_from_json(const json& doc) {
  ScenarioPlan plan = ScenarioPlan::baseline_only();
  if (!doc.is_object()) throw ParseError("scenario plan must be an object", 0, 0);
  auto strings = [](const json& list, const char* what) {
    if (!list.is_array()) throw ParseError(std::string(what) + " must be an array", 0, 0);
    std::vector<std::string> out;
    for (const auto& v : list) {
      if (!v.is_string()) throw ParseError(std::string(what) + " entries must be strings", 0, 0);
      out.push_back(v.get<std::string>());
    }
    return out;
  };
  if (auto it = doc.find("fixes"); it != doc.end()) plan.fixes = strings(*it, "fixes");
  if (auto it = doc.find("monitors"); it != doc.end()) plan.monitors = strings(*it, "monitors");
  if (auto it = doc.find("monitor_factor"); it != doc.end()) {
    plan.monitor_factor = read_decimal(*it, "monitor_factor");
  }
  if (auto it = doc.find("weights"); it != doc.end()) {
    if (!it->is_array()) throw ParseError("weights must be an array", 0, 0);
    std::vector<double> ws;
    for (const auto& w : *it) ws.push_back(read_decimal(w, "weights"));
    plan.weights = ws;
  }
  if (auto it = doc.find("fixes_per_weight"); it != doc.end()) plan.fixes_per_weight = it->get<bool>();
  if (auto it = doc.find("monitors_per_weight"); it != doc.end()) {
    plan.monitors_per_weight = it->get<bool>();
  }
  return plan;
}

}  // namespace svcrisk
