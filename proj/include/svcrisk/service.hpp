#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>

#include "svcrisk/model.hpp"
#include "svcrisk/scenario.hpp"

namespace svcrisk {

/// Hex SHA-256 of the canonical model document.
std::string model_id(const CombinedModel& model);

// Content-addressed, insert-only model store with optional directory persistence.
class ModelStore {
 public:
  explicit ModelStore(std::optional<std::filesystem::path> directory = std::nullopt);

  /// Returns the id and whether the model was new.
  std::pair<std::string, bool> put(const CombinedModel& model);
  std::shared_ptr<const CombinedModel> get(const std::string& id) const;

 private:
  std::optional<std::filesystem::path> directory_;
  mutable std::shared_mutex mutex_;
  mutable std::map<std::string, std::shared_ptr<const CombinedModel>> models_;
};

struct Request {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct Response {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

struct ServiceOptions {
  std::optional<std::filesystem::path> store_directory;
  bool lenient = false;  // accept unknown document fields on upload
};

// Transport-independent request handler; the HTTP binding only forwards to handle().
class Service {
 public:
  explicit Service(ServiceOptions options = {});

  Response handle(const Request& request);

 private:
  Response put_model(const Request& request);
  Response get_baseline(const std::string& id, const Request& request);
  Response post_scenario(const std::string& id, const Request& request);
  Response get_bundle(const std::string& id, const Request& request);
  std::shared_ptr<const Evaluation> baseline(const std::string& id, const CombinedModel& model,
                                             const EngineConfig& engine);

  ServiceOptions options_;
  ModelStore store_;
  std::mutex cache_mutex_;
  std::map<std::pair<std::string, std::string>, std::shared_ptr<const Evaluation>> baselines_;
};

/// Engine parameters from query values: engine, exact_limit, samples, seed, fallback, max_length.
EngineConfig engine_from_query(const std::map<std::string, std::string>& query);

/// Blocks serving HTTP until the process is stopped. Throws InvalidArgument if binding fails.
void serve(Service& service, const std::string& host, int port);

/// Port from the SVCRISK_PORT environment variable, else fallback.
int port_from_environment(int fallback);

}  // namespace svcrisk
