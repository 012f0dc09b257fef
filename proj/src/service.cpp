#include "svcrisk/service.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "httplib.h"
#include "svcrisk/graph_io.hpp"
#include "svcrisk/report.hpp"

namespace svcrisk {

using nlohmann::json;
using nlohmann::ordered_json;

std::string model_id(const CombinedModel& model) {
  const std::string text = write_model(model);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::InvalidArgument, "SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

ModelStore::ModelStore(std::optional<std::filesystem::path> directory)
    : directory_(std::move(directory)) {
  if (directory_) std::filesystem::create_directories(*directory_);
}

std::pair<std::string, bool> ModelStore::put(const CombinedModel& model) {
  std::string id = model_id(model);
  std::unique_lock lock(mutex_);
  if (models_.contains(id)) return {id, false};
  models_.emplace(id, std::make_shared<const CombinedModel>(model));
  if (directory_) {
    const auto final_path = *directory_ / (id + ".json");
    const auto temp_path = *directory_ / (id + ".json.tmp");
    {
      std::ofstream out(temp_path, std::ios::binary);
      out << write_model(model);
    }
    std::filesystem::rename(temp_path, final_path);
  }
  return {id, true};
}

std::shared_ptr<const CombinedModel> ModelStore::get(const std::string& id) const {
  {
    std::shared_lock lock(mutex_);
    if (auto it = models_.find(id); it != models_.end()) return it->second;
  }
  if (!directory_ || id.find_first_not_of("0123456789abcdef") != std::string::npos) return nullptr;
  const auto path = *directory_ / (id + ".json");
  if (!std::filesystem::exists(path)) return nullptr;
  auto model = std::make_shared<const CombinedModel>(load_model_file(path));
  std::unique_lock lock(mutex_);
  return models_.emplace(id, std::move(model)).first->second;
}

namespace {

Response json_response(int status, const ordered_json& body) {
  return {status, body.dump(2) + "\n", "application/json"};
}

Response error_response(int status, std::string_view code, const std::string& message,
                        const std::vector<Violation>& violations = {}) {
  ordered_json body;
  body["error"] = std::string(code);
  body["message"] = message;
  if (!violations.empty()) body["violations"] = to_json(violations);
  return json_response(status, body);
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ExactLimitExceeded: return 422;
    case ErrorCode::MissingSection: return 404;
    default: return 400;
  }
}

Response from_error(const Error& e) {
  if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
    ordered_json body;
    body["error"] = "ParseError";
    body["message"] = pe->what();
    body["line"] = pe->line();
    body["column"] = pe->column();
    return json_response(400, body);
  }
  return error_response(status_for(e.code()), to_string(e.code()), e.what(), e.violations());
}

std::uint64_t query_number(const std::map<std::string, std::string>& query, const char* key,
                           std::uint64_t fallback) {
  auto it = query.find(key);
  if (it == query.end()) return fallback;
  std::uint64_t out = 0;
  const auto& text = it->second;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw Error(ErrorCode::InvalidArgument, std::string("query parameter ") + key +
                                                " must be a non-negative integer");
  }
  return out;
}

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < path.size()) {
    const std::size_t next = path.find('/', pos);
    const std::size_t end = next == std::string_view::npos ? path.size() : next;
    if (end > pos) out.emplace_back(path.substr(pos, end - pos));
    pos = end + 1;
  }
  return out;
}

ordered_json reliability_json(const ReliabilityTable& table) {
  ordered_json out = ordered_json::array();
  for (const auto& [pair, entry] : table.entries()) {
    ordered_json o;
    o["a"] = pair.first;
    o["b"] = pair.second;
    o["probability"] = decimal(entry.probability);
    o["standard_error"] = decimal(entry.standard_error);
    o["engine"] = std::string(to_string(entry.engine));
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace

EngineConfig engine_from_query(const std::map<std::string, std::string>& query) {
  EngineConfig engine;
  if (auto it = query.find("engine"); it != query.end()) engine.kind = parse_engine_kind(it->second);
  engine.exact_limit = query_number(query, "exact_limit", engine.exact_limit);
  engine.samples = query_number(query, "samples", engine.samples);
  engine.seed = query_number(query, "seed", engine.seed);
  engine.path_max_length = query_number(query, "max_length", engine.path_max_length);
  if (auto it = query.find("fallback"); it != query.end()) {
    engine.mc_fallback = it->second == "1" || it->second == "true";
  }
  if (engine.samples == 0) throw Error(ErrorCode::InvalidArgument, "samples must be positive");
  return engine;
}

Service::Service(ServiceOptions options)
    : options_(std::move(options)), store_(options_.store_directory) {}

Response Service::handle(const Request& request) {
  try {
    const auto parts = split_path(request.path);
    if (parts.size() == 1 && parts[0] == "health") {
      if (request.method != "GET") return error_response(405, "MethodNotAllowed", "use GET");
      ordered_json body;
      body["status"] = "ok";
      return json_response(200, body);
    }
    if (parts.size() == 1 && parts[0] == "models") {
      if (request.method != "PUT" && request.method != "POST") {
        return error_response(405, "MethodNotAllowed", "use PUT");
      }
      return put_model(request);
    }
    if (parts.size() == 3 && parts[0] == "models") {
      const std::string& id = parts[1];
      const std::string& action = parts[2];
      if (action == "baseline" && request.method == "GET") return get_baseline(id, request);
      if (action == "scenario" && request.method == "POST") return post_scenario(id, request);
      if (action == "bundle" && request.method == "GET") return get_bundle(id, request);
      if (action == "baseline" || action == "scenario" || action == "bundle") {
        return error_response(405, "MethodNotAllowed", "method not allowed on " + request.path);
      }
    }
    return error_response(404, "NotFound", "no route for " + request.path);
  } catch (const Error& e) {
    return from_error(e);
  } catch (const std::exception& e) {
    return error_response(500, "InternalError", e.what());
  }
}

Response Service::put_model(const Request& request) {
  LoadOptions load;
  load.strict = !options_.lenient;
  std::vector<Violation> warnings;
  const CombinedModel model = load_model(request.body, load, &warnings);
  auto [id, created] = store_.put(model);
  ordered_json body;
  body["id"] = id;
  body["created"] = created;
  body["warnings"] = to_json(warnings);
  return json_response(created ? 201 : 200, body);
}

std::shared_ptr<const Evaluation> Service::baseline(const std::string& id,
                                                    const CombinedModel& model,
                                                    const EngineConfig& engine) {
  const auto key = std::make_pair(id, engine_key(engine));
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = baselines_.find(key); it != baselines_.end()) return it->second;
  }
  auto eval = std::make_shared<const Evaluation>(evaluate(model, engine));
  std::lock_guard lock(cache_mutex_);
  return baselines_.emplace(key, std::move(eval)).first->second;
}

Response Service::get_baseline(const std::string& id, const Request& request) {
  const auto model = store_.get(id);
  if (!model) return error_response(404, "UnknownModel", "no model with id " + id);
  const EngineConfig engine = engine_from_query(request.query);
  const auto eval = baseline(id, *model, engine);
  ordered_json body;
  body["model"] = id;
  body["engine"] = to_json(engine);
  body["used_fallback"] = eval->table.used_fallback();
  body["metrics"] = to_json(eval->metrics);
  body["reliability"] = reliability_json(eval->table);
  return json_response(200, body);
}

Response Service::post_scenario(const std::string& id, const Request& request) {
  const auto model = store_.get(id);
  if (!model) return error_response(404, "UnknownModel", "no model with id " + id);
  const json doc = request.body.empty() ? json::object() : parse_json(request.body);
  EngineConfig engine = engine_from_query(request.query);
  if (doc.is_object() && doc.contains("engine")) engine = engine_from_json(doc["engine"]);
  const auto actions = (doc.is_object() && !doc.contains("actions")) ? std::vector<ScenarioAction>{}
                                                                      : actions_from_json(doc);
  check_actions(*model, actions);
  const auto base = baseline(id, *model, engine);
  DeltaReport report = delta(*model, base->metrics, actions, engine);
  report.used_fallback = report.used_fallback || base->table.used_fallback();
  ordered_json body = to_json(report);
  body["model"] = id;
  return json_response(200, body);
}

Response Service::get_bundle(const std::string& id, const Request& request) {
  const auto model = store_.get(id);
  if (!model) return error_response(404, "UnknownModel", "no model with id " + id);
  const EngineConfig engine = engine_from_query(request.query);
  ScenarioPlan plan;
  if (auto it = request.query.find("plan"); it != request.query.end()) {
    if (it->second == "full") {
      plan = ScenarioPlan::full();
    } else if (it->second == "baseline") {
      plan = ScenarioPlan::baseline_only();
    } else if (it->second != "default") {
      throw Error(ErrorCode::InvalidArgument, "plan must be default, full or baseline");
    }
  }
  if (auto it = request.query.find("factor"); it != request.query.end()) {
    plan.monitor_factor = read_decimal(json(it->second), "factor");
  }
  ordered_json body = to_json(analysis_bundle(*model, engine, plan));
  body["model"] = id;
  return json_response(200, body);
}

int port_from_environment(int fallback) {
  const char* value = std::getenv("SVCRISK_PORT");
  if (value == nullptr) return fallback;
  int port = 0;
  const std::string_view text(value);
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), port);
  if (ec != std::errc{} || end != text.data() + text.size() || port <= 0 || port > 65535) {
    return fallback;
  }
  return port;
}

void serve(Service& service, const std::string& host, int port) {
  httplib::Server server;
  auto forward = [&service](const httplib::Request& req, httplib::Response& res) {
    Request request;
    request.method = req.method;
    request.path = req.path;
    for (const auto& [k, v] : req.params) request.query[k] = v;
    request.body = req.body;
    const Response response = service.handle(request);
    res.status = response.status;
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_content(response.body, response.content_type);
  };
  server.Get(R"(/.*)", forward);
  server.Put(R"(/.*)", forward);
  server.Post(R"(/.*)", forward);
  server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, PUT, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
  if (!server.bind_to_port(host, port)) {
    throw Error(ErrorCode::InvalidArgument,
                "cannot bind " + host + ":" + std::to_string(port));
  }
  server.listen_after_bind();
}

}  // namespace svcrisk
