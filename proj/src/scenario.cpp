#include "svcrisk/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <future>
#include <thread>

namespace svcrisk {

std::string format_number(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

namespace {

double parse_number(const std::string& text) {
  double out = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw Error(ErrorCode::InvalidArgument, "not a number: '" + text + "'");
  }
  return out;
}

bool in_unit(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

struct Describe {
  std::string operator()(const FixVulnerability& a) const { return "fix:" + a.vulnerability; }
  std::string operator()(const MonitorNode& a) const {
    return "monitor:" + a.node + "@" + format_number(a.factor);
  }
  std::string operator()(const SetAllLinkWeights& a) const {
    return "weights:" + format_number(a.weight);
  }
  std::string operator()(const SetLinkWeight& a) const {
    return "weight:" + a.a + "-" + a.b + "@" + format_number(a.weight);
  }
};

struct Check {
  const CombinedModel& model;
  void operator()(const FixVulnerability& a) const {
    if (model.attack.find_vulnerability(a.vulnerability) == nullptr) {
      throw Error(ErrorCode::UnknownVulnerability, "unknown vulnerability " + a.vulnerability);
    }
  }
  void operator()(const MonitorNode& a) const {
    if (model.group(a.node) == nullptr) {
      throw Error(ErrorCode::UnknownNode, "node " + a.node + " hosts no attack states");
    }
    if (!in_unit(a.factor)) {
      throw Error(ErrorCode::InvalidArgument, "monitoring factor must lie in [0, 1]");
    }
  }
  void operator()(const SetAllLinkWeights& a) const {
    if (!in_unit(a.weight)) throw Error(ErrorCode::InvalidArgument, "link weight must lie in [0, 1]");
  }
  void operator()(const SetLinkWeight& a) const {
    if (model.network.find_edge(a.a, a.b) == nullptr) {
      throw Error(ErrorCode::UnknownEdge, "no network edge " + a.a + "-" + a.b);
    }
    if (!in_unit(a.weight)) throw Error(ErrorCode::InvalidArgument, "link weight must lie in [0, 1]");
  }
};

struct Apply {
  CombinedModel& model;
  void operator()(const FixVulnerability& a) const {
    for (auto& v : model.attack.vectors) {
      if (v.vulnerability == a.vulnerability) v.exploit_scale = 0.0;
    }
  }
  void operator()(const MonitorNode& a) const {
    const auto& g = *model.group(a.node);
    auto inside = [&](const std::string& id) { return std::find(g.begin(), g.end(), id) != g.end(); };
    for (auto& v : model.attack.vectors) {
      if (inside(v.source) != inside(v.target)) v.exploit_scale *= a.factor;
    }
  }
  void operator()(const SetAllLinkWeights& a) const {
    for (auto& e : model.network.edges) e.weight = a.weight;
  }
  void operator()(const SetLinkWeight& a) const {
    for (auto& e : model.network.edges) {
      if ((e.a == a.a && e.b == a.b) || (e.a == a.b && e.b == a.a)) e.weight = a.weight;
    }
  }
};

}  // namespace

std::string describe(const ScenarioAction& action) { return std::visit(Describe{}, action); }

void check_actions(const CombinedModel& model, const std::vector<ScenarioAction>& actions) {
  for (const auto& a : actions) std::visit(Check{model}, a);
}

CombinedModel apply(const CombinedModel& model, const std::vector<ScenarioAction>& actions) {
  check_actions(model, actions);
  CombinedModel out = model;
  for (const auto& a : actions) std::visit(Apply{out}, a);
  return out;
}

Evaluation evaluate(const CombinedModel& model, const EngineConfig& engine) {
  Evaluation out;
  out.table = reliability_table(model.network, needed_pairs(model), engine);
  out.resolved = resolve_vectors(model, out.table);
  out.metrics = compute_metrics(model, out.resolved);
  return out;
}

std::optional<double> relative_change(double before, double after) {
  if (before == 0.0) {
    if (after == 0.0) return 0.0;
    return std::nullopt;
  }
  return (after - before) / before;
}

const MetricChange* DeltaReport::change(Metric metric, std::string_view subject) const {
  auto it = std::find_if(changes.begin(), changes.end(), [&](const MetricChange& c) {
    return c.metric == metric && c.subject == subject;
  });
  return it == changes.end() ? nullptr : &*it;
}

bool DeltaReport::has_anomaly() const {
  return std::any_of(changes.begin(), changes.end(),
                     [](const MetricChange& c) { return !c.relative.has_value(); });
}

DeltaReport compare(const MetricsReport& baseline, const MetricsReport& scenario) {
  DeltaReport out;
  out.baseline = baseline;
  out.scenario = scenario;
  for (Metric m : kAllMetrics) {
    const auto& before = values(baseline, m);
    const auto& after = values(scenario, m);
    IdSet subjects;
    for (const auto& [k, _] : before) subjects.insert(k);
    for (const auto& [k, _] : after) subjects.insert(k);
    for (const auto& s : subjects) {
      MetricChange c;
      c.metric = m;
      c.subject = s;
      if (auto it = before.find(s); it != before.end()) c.before = it->second;
      if (auto it = after.find(s); it != after.end()) c.after = it->second;
      c.relative = relative_change(c.before, c.after);
      out.changes.push_back(std::move(c));
    }
  }
  for (Metric m : {Metric::Inbound, Metric::Outbound, Metric::NodeWise}) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& c : out.changes) {
      if (c.metric == m && c.relative) {
        sum += *c.relative;
        ++count;
      }
    }
    out.node_mean[m] = count == 0 ? 0.0 : sum / static_cast<double>(count);
  }
  return out;
}

DeltaReport delta(const CombinedModel& model, const MetricsReport& baseline,
                  const std::vector<ScenarioAction>& actions, const EngineConfig& engine) {
  const CombinedModel changed = apply(model, actions);
  const Evaluation eval = evaluate(changed, engine);
  DeltaReport out = compare(baseline, eval.metrics);
  out.actions = actions;
  out.engine = engine;
  out.used_fallback = eval.table.used_fallback();
  return out;
}

DeltaReport delta(const CombinedModel& model, const std::vector<ScenarioAction>& actions,
                  const EngineConfig& engine) {
  check_actions(model, actions);
  const Evaluation base = evaluate(model, engine);
  DeltaReport out = delta(model, base.metrics, actions, engine);
  out.used_fallback = out.used_fallback || base.table.used_fallback();
  return out;
}

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Vulnerabilities: return "vulns";
    case SweepAxis::Nodes: return "nodes";
    case SweepAxis::Weights: return "weights";
  }
  return "vulns";
}

SweepAxis parse_sweep_axis(std::string_view text) {
  if (text == "vulns" || text == "vulnerabilities") return SweepAxis::Vulnerabilities;
  if (text == "nodes") return SweepAxis::Nodes;
  if (text == "weights") return SweepAxis::Weights;
  throw Error(ErrorCode::InvalidArgument, "unknown sweep axis '" + std::string(text) + "'");
}

std::vector<double> default_sweep_weights() { return {0.2, 0.4, 0.6, 0.8, 1.0}; }

std::vector<ScenarioAction> sweep_actions(const SweepRequest& request, const std::string& value) {
  std::vector<ScenarioAction> actions = request.base_actions;
  switch (request.axis) {
    case SweepAxis::Vulnerabilities: actions.emplace_back(FixVulnerability{value}); break;
    case SweepAxis::Nodes: actions.emplace_back(MonitorNode{value, request.factor}); break;
    case SweepAxis::Weights: actions.emplace_back(SetAllLinkWeights{parse_number(value)}); break;
  }
  return actions;
}

std::vector<std::string> sweep_values(const CombinedModel& model, const SweepRequest& request) {
  if (!request.values.empty()) return request.values;
  std::vector<std::string> out;
  switch (request.axis) {
    case SweepAxis::Vulnerabilities:
      for (const auto& v : model.attack.catalog) out.push_back(v.id);
      break;
    case SweepAxis::Nodes:
      for (const auto& [node, _] : model.grouping) out.push_back(node);
      break;
    case SweepAxis::Weights:
      for (double w : default_sweep_weights()) out.push_back(format_number(w));
      break;
  }
  return out;
}

std::vector<SweepPoint> sweep(const CombinedModel& model, const MetricsReport& baseline,
                              const SweepRequest& request, const EngineConfig& engine) {
  const std::vector<std::string> points = sweep_values(model, request);
  std::vector<std::vector<ScenarioAction>> plans;
  for (const auto& value : points) {
    plans.push_back(sweep_actions(request, value));
    check_actions(model, plans.back());
  }

  std::vector<SweepPoint> out(points.size());
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t first = 0; first < points.size(); first += workers) {
    std::vector<std::future<DeltaReport>> batch;
    const std::size_t last = std::min(points.size(), first + workers);
    for (std::size_t k = first; k < last; ++k) {
      batch.push_back(std::async(workers == 1 ? std::launch::deferred : std::launch::async,
                                 [&, k] { return delta(model, baseline, plans[k], engine); }));
    }
    for (std::size_t k = first; k < last; ++k) {
      out[k].value = points[k];
      out[k].report = batch[k - first].get();
      if (request.metric) {
        std::erase_if(out[k].report.changes,
                      [&](const MetricChange& c) { return c.metric != *request.metric; });
      }
    }
  }
  return out;
}

std::vector<SweepPoint> sweep(const CombinedModel& model, const SweepRequest& request,
                              const EngineConfig& engine) {
  for (const auto& value : sweep_values(model, request)) {
    check_actions(model, sweep_actions(request, value));
  }
  // the baseline already carries the shared base actions, so each point differs only by its own
  const Evaluation base = evaluate(apply(model, request.base_actions), engine);
  auto out = sweep(model, base.metrics, request, engine);
  if (base.table.used_fallback()) {
    for (auto& p : out) p.report.used_fallback = true;
  }
  return out;
}

}  // namespace svcrisk
