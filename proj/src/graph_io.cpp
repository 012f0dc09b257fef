#include "svcrisk/graph_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "svcrisk/combiner.hpp"
#include "svcrisk/cvss.hpp"

namespace svcrisk {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

// Parse context: the source text (for locating keys in messages) and the strictness setting.
struct Reader {
  std::string_view text;
  bool strict = true;

  [[noreturn]] void fail(const std::string& message, std::string_view near_key = {}) const {
    std::size_t offset = std::string_view::npos;
    if (!near_key.empty()) offset = text.find("\"" + std::string(near_key) + "\"");
    if (offset == std::string_view::npos) throw ParseError(message, 0, 0);
    auto [line, column] = line_column(text, offset);
    throw ParseError(message, line, column);
  }

  const json& require(const json& obj, const char* key, const std::string& where) const {
    auto it = obj.find(key);
    if (it == obj.end()) fail(where + ": missing field '" + key + "'");
    return *it;
  }

  std::string string_field(const json& obj, const char* key, const std::string& where) const {
    const json& v = require(obj, key, where);
    if (!v.is_string()) fail(where + ": field '" + key + "' must be a string", key);
    return v.get<std::string>();
  }

  // Known keys are consumed by the caller; anything else is an error or kept verbatim.
  Extras extras(const json& obj, std::initializer_list<std::string_view> known,
                const std::string& where) const {
    if (!obj.is_object()) fail(where + " must be an object");
    Extras out;
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      bool is_known = false;
      for (auto k : known) is_known = is_known || it.key() == k;
      if (is_known) continue;
      if (strict) fail(where + ": unknown field '" + it.key() + "'", it.key());
      out[it.key()] = it.value().dump();
    }
    return out;
  }
};

double parse_decimal_text(const std::string& text, std::string_view what) {
  double out = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [end, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || end != last || text.empty()) {
    throw ParseError(std::string(what) + ": not a decimal number: '" + text + "'", 0, 0);
  }
  return out;
}

Vulnerability read_vulnerability(const Reader& r, const json& v, const std::string& where) {
  Vulnerability out;
  out.extras = r.extras(v, {"id", "cvss_vector", "exploitability", "impact", "scale"}, where);
  out.id = r.string_field(v, "id", where);
  const std::string label = where + " (" + out.id + ")";

  double scale = 1.0;
  if (auto it = v.find("scale"); it != v.end()) {
    if (!it->is_string()) r.fail(label + ": scale must be a string", "scale");
    const auto flag = it->get<std::string>();
    if (flag == "cvss10") {
      scale = 10.0;
    } else if (flag != "unit") {
      r.fail(label + ": scale must be \"unit\" or \"cvss10\"", "scale");
    }
  }

  std::optional<double> exploitability;
  std::optional<double> impact;
  try {
    if (auto it = v.find("exploitability"); it != v.end()) {
      exploitability = read_decimal(*it, label + " exploitability") / scale;
    }
    if (auto it = v.find("impact"); it != v.end()) impact = read_decimal(*it, label + " impact");
  } catch (const ParseError& e) {
    r.fail(e.what(), out.id);
  }

  if (auto it = v.find("cvss_vector"); it != v.end()) {
    if (!it->is_string()) r.fail(label + ": cvss_vector must be a string", "cvss_vector");
    try {
      out.cvss = cvss::parse_vector(it->get<std::string>());
    } catch (const ParseError& e) {
      r.fail(label + ": " + e.what(), out.id);
    }
    const double e = cvss::exploitability(*out.cvss);
    const double i = cvss::impact(*out.cvss);
    if (exploitability && std::abs(*exploitability - e) > kScoreTolerance) {
      throw Error(ErrorCode::ScoreMismatch,
                  label + ": exploitability " + decimal(*exploitability) +
                      " disagrees with CVSS vector value " + decimal(e));
    }
    if (impact && std::abs(*impact - i) > kScoreTolerance) {
      throw Error(ErrorCode::ScoreMismatch, label + ": impact " + decimal(*impact) +
                                                " disagrees with CVSS vector value " + decimal(i));
    }
    out.exploitability = exploitability.value_or(e);
    out.impact = impact.value_or(i);
  } else {
    if (!exploitability || !impact) {
      r.fail(label + ": needs either cvss_vector or both exploitability and impact", out.id);
    }
    out.exploitability = *exploitability;
    out.impact = *impact;
  }
  return out;
}

std::vector<Vulnerability> read_catalog(const Reader& r, const json& list, const std::string& where) {
  if (!list.is_array()) r.fail(where + " must be an array", "vulnerabilities");
  std::vector<Vulnerability> out;
  for (std::size_t k = 0; k < list.size(); ++k) {
    out.push_back(read_vulnerability(r, list[k], where + "[" + std::to_string(k) + "]"));
  }
  return out;
}

StateKind read_kind(const Reader& r, const std::string& text, const std::string& where) {
  if (text == "start") return StateKind::Start;
  if (text == "end") return StateKind::End;
  if (text == "exploit") return StateKind::Exploit;
  r.fail(where + ": kind must be start, end or exploit", "kind");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void put_extras(ordered_json& obj, const Extras& extras) {
  for (const auto& [k, raw] : extras) obj[k] = ordered_json::parse(raw);
}

}  // namespace

std::string decimal(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

double read_decimal(const json& value, std::string_view what) {
  if (value.is_string()) return parse_decimal_text(value.get<std::string>(), what);
  if (value.is_number()) return value.get<double>();
  throw ParseError(std::string(what) + ": expected a decimal string", 0, 0);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t offset = e.byte == 0 ? 0 : e.byte - 1;
    auto [line, column] = line_column(text, offset);
    throw ParseError(std::string("malformed document: ") + e.what(), line, column);
  }
}

CombinedModel parse_model(std::string_view text, const LoadOptions& options) {
  const Reader r{text, options.strict};
  const json doc = parse_json(text);
  CombinedModel model;
  model.extras = r.extras(doc,
                          {"schema_version", "vulnerabilities", "vulnerabilities_ref",
                           "attack_states", "attack_vectors", "network_nodes", "network_edges",
                           "grouping"},
                          "document");

  const std::string version = r.string_field(doc, "schema_version", "document");
  if (version.empty() || version.substr(0, version.find('.')) != "1") {
    r.fail("unsupported schema_version '" + version + "'", "schema_version");
  }

  if (auto it = doc.find("vulnerabilities"); it != doc.end()) {
    model.attack.catalog = read_catalog(r, *it, "vulnerabilities");
  }
  if (auto it = doc.find("vulnerabilities_ref"); it != doc.end()) {
    if (!it->is_string()) r.fail("vulnerabilities_ref must be a string", "vulnerabilities_ref");
    const auto path = options.base_directory / it->get<std::string>();
    const std::string sub = read_file(path);
    const Reader sr{sub, options.strict};
    json subdoc = parse_json(sub);
    if (subdoc.is_object()) {
      sr.extras(subdoc, {"vulnerabilities"}, path.filename().string());
      subdoc = sr.require(subdoc, "vulnerabilities", path.filename().string());
    }
    for (auto& v : read_catalog(sr, subdoc, path.filename().string())) {
      model.attack.catalog.push_back(std::move(v));
    }
  }

  const json& states = r.require(doc, "attack_states", "document");
  if (!states.is_array()) r.fail("attack_states must be an array", "attack_states");
  for (std::size_t k = 0; k < states.size(); ++k) {
    const std::string where = "attack_states[" + std::to_string(k) + "]";
    const json& s = states[k];
    AttackState state;
    state.extras = r.extras(s, {"id", "kind", "service"}, where);
    state.id = r.string_field(s, "id", where);
    state.kind = s.contains("kind") ? read_kind(r, r.string_field(s, "kind", where), where)
                                    : StateKind::Exploit;
    if (s.contains("service")) state.service = r.string_field(s, "service", where);
    model.attack.states.push_back(std::move(state));
  }

  const json& vectors = r.require(doc, "attack_vectors", "document");
  if (!vectors.is_array()) r.fail("attack_vectors must be an array", "attack_vectors");
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    const std::string where = "attack_vectors[" + std::to_string(k) + "]";
    const json& v = vectors[k];
    AttackVector vec;
    vec.extras = r.extras(v, {"id", "source", "target", "vulnerability", "exploit_scale"}, where);
    vec.id = r.string_field(v, "id", where);
    vec.source = r.string_field(v, "source", where);
    vec.target = r.string_field(v, "target", where);
    vec.vulnerability = r.string_field(v, "vulnerability", where);
    if (auto it = v.find("exploit_scale"); it != v.end()) {
      try {
        vec.exploit_scale = read_decimal(*it, where + " exploit_scale");
      } catch (const ParseError& e) {
        r.fail(e.what(), "exploit_scale");
      }
    }
    model.attack.vectors.push_back(std::move(vec));
  }

  if (auto it = doc.find("network_nodes"); it != doc.end()) {
    if (!it->is_array()) r.fail("network_nodes must be an array", "network_nodes");
    for (const auto& n : *it) {
      if (!n.is_string()) r.fail("network_nodes entries must be strings", "network_nodes");
      model.network.nodes.push_back(n.get<std::string>());
    }
  }
  if (auto it = doc.find("network_edges"); it != doc.end()) {
    if (!it->is_array()) r.fail("network_edges must be an array", "network_edges");
    for (std::size_t k = 0; k < it->size(); ++k) {
      const std::string where = "network_edges[" + std::to_string(k) + "]";
      const json& e = (*it)[k];
      NetworkEdge edge;
      edge.extras = r.extras(e, {"a", "b", "weight"}, where);
      edge.a = r.string_field(e, "a", where);
      edge.b = r.string_field(e, "b", where);
      try {
        edge.weight = read_decimal(r.require(e, "weight", where), where + " weight");
      } catch (const ParseError& err) {
        r.fail(err.what(), "weight");
      }
      model.network.edges.push_back(std::move(edge));
    }
  }

  if (auto it = doc.find("grouping"); it != doc.end()) {
    if (!it->is_object()) r.fail("grouping must be an object", "grouping");
    for (auto g = it->begin(); g != it->end(); ++g) {
      if (!g.value().is_array()) r.fail("grouping entries must be arrays", g.key());
      auto& members = model.grouping[g.key()];
      for (const auto& id : g.value()) {
        if (!id.is_string()) r.fail("grouping members must be state ids", g.key());
        members.push_back(id.get<std::string>());
      }
    }
  }
  return model;
}

CombinedModel load_model(std::string_view text, const LoadOptions& options,
                         std::vector<Violation>* warnings) {
  CombinedModel model = parse_model(text, options);
  auto violations = validate(model);
  if (has_errors(violations)) {
    std::string message = "model failed validation:";
    for (const auto& v : violations) {
      if (v.severity == Severity::Error) message += "\n  " + describe(v);
    }
    throw Error(ErrorCode::ValidationError, message, std::move(violations));
  }
  if (warnings != nullptr) {
    for (auto& v : violations) warnings->push_back(std::move(v));
  }
  return recombine(std::move(model));
}

CombinedModel load_model_file(const std::filesystem::path& path, bool strict,
                              std::vector<Violation>* warnings) {
  LoadOptions options;
  options.strict = strict;
  options.base_directory = path.parent_path();
  return load_model(read_file(path), options, warnings);
}

std::string write_model(const CombinedModel& model) {
  ordered_json doc;
  doc["schema_version"] = std::string(kSchemaVersion);

  ordered_json vulns = ordered_json::array();
  for (const auto& v : model.attack.catalog) {
    ordered_json o;
    o["id"] = v.id;
    if (v.cvss) o["cvss_vector"] = cvss::to_string(*v.cvss);
    o["exploitability"] = decimal(v.exploitability);
    o["impact"] = decimal(v.impact);
    o["scale"] = "unit";
    put_extras(o, v.extras);
    vulns.push_back(std::move(o));
  }
  doc["vulnerabilities"] = std::move(vulns);

  ordered_json states = ordered_json::array();
  for (const auto& s : model.attack.states) {
    ordered_json o;
    o["id"] = s.id;
    o["kind"] = std::string(to_string(s.kind));
    put_extras(o, s.extras);
    states.push_back(std::move(o));
  }
  doc["attack_states"] = std::move(states);

  ordered_json vectors = ordered_json::array();
  for (const auto& v : model.attack.vectors) {
    ordered_json o;
    o["id"] = v.id;
    o["source"] = v.source;
    o["target"] = v.target;
    o["vulnerability"] = v.vulnerability;
    if (v.exploit_scale != 1.0) o["exploit_scale"] = decimal(v.exploit_scale);
    put_extras(o, v.extras);
    vectors.push_back(std::move(o));
  }
  doc["attack_vectors"] = std::move(vectors);

  doc["network_nodes"] = model.network.nodes;
  ordered_json edges = ordered_json::array();
  for (const auto& e : model.network.edges) {
    ordered_json o;
    o["a"] = e.a;
    o["b"] = e.b;
    o["weight"] = decimal(e.weight);
    put_extras(o, e.extras);
    edges.push_back(std::move(o));
  }
  doc["network_edges"] = std::move(edges);

  ordered_json grouping = ordered_json::object();
  for (const auto& [node, members] : model.grouping) grouping[node] = members;
  doc["grouping"] = std::move(grouping);
  put_extras(doc, model.extras);
  return doc.dump(2) + "\n";
}

ReportFormat parse_report_format(std::string_view text) {
  if (text == "rows" || text == "csv") return ReportFormat::Rows;
  if (text == "structured" || text == "json") return ReportFormat::Structured;
  throw Error(ErrorCode::InvalidArgument, "unknown report format '" + std::string(text) + "'");
}

namespace {

std::string fixed6(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  if (std::string_view(buf) == "-0.000000") return "0.000000";
  return buf;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string relative_text(const std::optional<double>& relative) {
  return relative ? fixed6(*relative) : "anomaly";
}

void delta_rows(std::ostringstream& out, const DeltaReport& report, const std::string& prefix) {
  for (const auto& c : report.changes) {
    out << prefix << to_string(c.metric) << ',' << csv_field(c.subject) << ',' << fixed6(c.after)
        << ',' << relative_text(c.relative) << '\n';
  }
}

ordered_json value_map_json(const ValueMap& values) {
  ordered_json out = ordered_json::object();
  for (const auto& [k, v] : values) out[k] = decimal(v);
  return out;
}

ValueMap value_map_from_json(const json& doc, std::string_view what) {
  if (!doc.is_object()) throw ParseError(std::string(what) + " must be an object", 0, 0);
  ValueMap out;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    out[it.key()] = read_decimal(it.value(), what);
  }
  return out;
}

const json& field(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(std::string("missing field '") + key + "'", 0, 0);
  return *it;
}

std::string string_of(const json& doc, const char* key) {
  const json& v = field(doc, key);
  if (!v.is_string()) throw ParseError(std::string("field '") + key + "' must be a string", 0, 0);
  return v.get<std::string>();
}

}  // namespace

ordered_json to_json(const MetricsReport& report) {
  ordered_json out;
  out["kind"] = "metrics";
  for (Metric m : kAllMetrics) out[std::string(to_string(m))] = value_map_json(values(report, m));
  return out;
}

MetricsReport metrics_from_json(const json& doc) {
  MetricsReport out;
  for (Metric m : kAllMetrics) {
    const std::string key(to_string(m));
    if (auto it = doc.find(key); it != doc.end()) values(out, m) = value_map_from_json(*it, key);
  }
  return out;
}

ordered_json to_json(const ScenarioAction& action) {
  ordered_json out;
  std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, FixVulnerability>) {
          out["type"] = "fix";
          out["vulnerability"] = a.vulnerability;
        } else if constexpr (std::is_same_v<T, MonitorNode>) {
          out["type"] = "monitor";
          out["node"] = a.node;
          out["factor"] = decimal(a.factor);
        } else if constexpr (std::is_same_v<T, SetAllLinkWeights>) {
          out["type"] = "set_all_weights";
          out["weight"] = decimal(a.weight);
        } else {
          out["type"] = "set_weight";
          out["a"] = a.a;
          out["b"] = a.b;
          out["weight"] = decimal(a.weight);
        }
      },
      action);
  return out;
}

ordered_json to_json(const std::vector<ScenarioAction>& actions) {
  ordered_json out = ordered_json::array();
  for (const auto& a : actions) out.push_back(to_json(a));
  return out;
}

ScenarioAction action_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("scenario action must be an object", 0, 0);
  const std::string type = string_of(doc, "type");
  if (type == "fix") return FixVulnerability{string_of(doc, "vulnerability")};
  if (type == "monitor") {
    MonitorNode a{string_of(doc, "node")};
    if (auto it = doc.find("factor"); it != doc.end()) a.factor = read_decimal(*it, "factor");
    return a;
  }
  if (type == "set_all_weights") return SetAllLinkWeights{read_decimal(field(doc, "weight"), "weight")};
  if (type == "set_weight") {
    return SetLinkWeight{string_of(doc, "a"), string_of(doc, "b"),
                         read_decimal(field(doc, "weight"), "weight")};
  }
  throw ParseError("unknown scenario action type '" + type + "'", 0, 0);
}

std::vector<ScenarioAction> actions_from_json(const json& doc) {
  const json* list = &doc;
  if (doc.is_object()) list = &field(doc, "actions");
  if (!list->is_array()) throw ParseError("actions must be an array", 0, 0);
  std::vector<ScenarioAction> out;
  for (const auto& a : *list) out.push_back(action_from_json(a));
  return out;
}

ordered_json to_json(const EngineConfig& engine) {
  ordered_json out;
  out["kind"] = std::string(to_string(engine.kind));
  out["exact_limit"] = engine.exact_limit;
  out["samples"] = engine.samples;
  out["seed"] = engine.seed;
  out["mc_fallback"] = engine.mc_fallback;
  out["path_max_length"] = engine.path_max_length;
  out["key"] = engine_key(engine);
  return out;
}

EngineConfig engine_from_json(const json& doc) {
  EngineConfig out;
  if (!doc.is_object()) return out;
  try {
    if (auto it = doc.find("kind"); it != doc.end()) out.kind = parse_engine_kind(it->get<std::string>());
    if (auto it = doc.find("exact_limit"); it != doc.end()) out.exact_limit = it->get<std::size_t>();
    if (auto it = doc.find("samples"); it != doc.end()) out.samples = it->get<std::uint64_t>();
    if (auto it = doc.find("seed"); it != doc.end()) out.seed = it->get<std::uint64_t>();
    if (auto it = doc.find("mc_fallback"); it != doc.end()) out.mc_fallback = it->get<bool>();
    if (auto it = doc.find("path_max_length"); it != doc.end()) {
      out.path_max_length = it->get<std::size_t>();
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad engine parameters: ") + e.what(), 0, 0);
  }
  return out;
}

ordered_json to_json(const std::vector<Violation>& violations) {
  ordered_json out = ordered_json::array();
  for (const auto& v : violations) {
    ordered_json o;
    o["severity"] = std::string(to_string(v.severity));
    o["kind"] = std::string(to_string(v.kind));
    o["subject"] = v.subject;
    o["detail"] = v.detail;
    out.push_back(std::move(o));
  }
  return out;
}

ordered_json to_json(const DeltaReport& report) {
  ordered_json out;
  out["kind"] = "delta";
  out["actions"] = to_json(report.actions);
  out["engine"] = to_json(report.engine);
  out["used_fallback"] = report.used_fallback;
  out["baseline"] = to_json(report.baseline);
  out["scenario"] = to_json(report.scenario);
  ordered_json changes = ordered_json::array();
  for (const auto& c : report.changes) {
    ordered_json o;
    o["metric"] = std::string(to_string(c.metric));
    o["subject"] = c.subject;
    o["before"] = decimal(c.before);
    o["after"] = decimal(c.after);
    o["relative_change"] = c.relative ? ordered_json(decimal(*c.relative)) : ordered_json(nullptr);
    changes.push_back(std::move(o));
  }
  out["changes"] = std::move(changes);
  ordered_json means = ordered_json::object();
  for (const auto& [m, v] : report.node_mean) means[std::string(to_string(m))] = decimal(v);
  out["node_mean"] = std::move(means);
  return out;
}

DeltaReport delta_from_json(const json& doc) {
  DeltaReport out;
  out.actions = actions_from_json(field(doc, "actions"));
  out.engine = engine_from_json(field(doc, "engine"));
  out.used_fallback = field(doc, "used_fallback").get<bool>();
  out.baseline = metrics_from_json(field(doc, "baseline"));
  out.scenario = metrics_from_json(field(doc, "scenario"));
  for (const auto& c : field(doc, "changes")) {
    MetricChange change;
    change.metric = parse_metric(string_of(c, "metric"));
    change.subject = string_of(c, "subject");
    change.before = read_decimal(field(c, "before"), "before");
    change.after = read_decimal(field(c, "after"), "after");
    const json& rel = field(c, "relative_change");
    if (!rel.is_null()) change.relative = read_decimal(rel, "relative_change");
    out.changes.push_back(std::move(change));
  }
  const json& means = field(doc, "node_mean");
  for (auto it = means.begin(); it != means.end(); ++it) {
    out.node_mean[parse_metric(it.key())] = read_decimal(it.value(), "node_mean");
  }
  return out;
}

ordered_json to_json(const std::vector<SweepPoint>& sweep, SweepAxis axis) {
  ordered_json out;
  out["kind"] = "sweep";
  out["axis"] = std::string(to_string(axis));
  ordered_json points = ordered_json::array();
  for (const auto& p : sweep) {
    ordered_json o;
    o["value"] = p.value;
    o["report"] = to_json(p.report);
    points.push_back(std::move(o));
  }
  out["points"] = std::move(points);
  return out;
}

std::string write_report(const MetricsReport& report, ReportFormat format) {
  if (format == ReportFormat::Structured) return to_json(report).dump(2) + "\n";
  std::ostringstream out;
  out << "metric,subject,value\n";
  for (Metric m : kAllMetrics) {
    for (const auto& [subject, value] : values(report, m)) {
      out << to_string(m) << ',' << csv_field(subject) << ',' << fixed6(value) << '\n';
    }
  }
  return out.str();
}

std::string write_report(const DeltaReport& report, ReportFormat format) {
  if (format == ReportFormat::Structured) return to_json(report).dump(2) + "\n";
  std::ostringstream out;
  out << "metric,subject,value,relative_change\n";
  delta_rows(out, report, "");
  return out.str();
}

std::string write_report(const std::vector<SweepPoint>& sweep, SweepAxis axis, ReportFormat format) {
  if (format == ReportFormat::Structured) return to_json(sweep, axis).dump(2) + "\n";
  std::ostringstream out;
  out << "point,metric,subject,value,relative_change\n";
  for (const auto& p : sweep) delta_rows(out, p.report, csv_field(p.value) + ",");
  return out.str();
}

MetricsReport read_metrics_report(std::string_view text) { return metrics_from_json(parse_json(text)); }

DeltaReport read_delta_report(std::string_view text) { return delta_from_json(parse_json(text)); }

std::vector<SweepPoint> read_sweep_report(std::string_view text) {
  const json doc = parse_json(text);
  std::vector<SweepPoint> out;
  for (const auto& p : field(doc, "points")) {
    out.push_back({string_of(p, "value"), delta_from_json(field(p, "report"))});
  }
  return out;
}

}  // namespace svcrisk
