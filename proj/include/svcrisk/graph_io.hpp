#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "svcrisk/metrics.hpp"
#include "svcrisk/model.hpp"
#include "svcrisk/reliability.hpp"
#include "svcrisk/scenario.hpp"

namespace svcrisk {

inline constexpr std::string_view kSchemaVersion = "1.0";

struct LoadOptions {
  bool strict = true;                   // unknown fields are errors; lenient mode keeps them
  std::filesystem::path base_directory;  // resolves "vulnerabilities_ref"
};

/// Parses a model document without validating it. Throws ParseError or ScoreMismatch.
CombinedModel parse_model(std::string_view text, const LoadOptions& options = {});

/// Parses, validates and combines. Throws ParseError, ValidationError (carrying the violations),
/// ScoreMismatch. Warnings are appended to `warnings` when given.
CombinedModel load_model(std::string_view text, const LoadOptions& options = {},
                         std::vector<Violation>* warnings = nullptr);

/// Reads a file and loads it; the file's directory resolves relative references.
CombinedModel load_model_file(const std::filesystem::path& path, bool strict = true,
                              std::vector<Violation>* warnings = nullptr);

/// Canonical document text: fixed key order, numbers as shortest round-trip decimal strings.
std::string write_model(const CombinedModel& model);

enum class ReportFormat { Rows, Structured };

ReportFormat parse_report_format(std::string_view text);

std::string write_report(const MetricsReport& report, ReportFormat format);
std::string write_report(const DeltaReport& report, ReportFormat format);
std::string write_report(const std::vector<SweepPoint>& sweep, SweepAxis axis, ReportFormat format);

MetricsReport read_metrics_report(std::string_view text);
DeltaReport read_delta_report(std::string_view text);
std::vector<SweepPoint> read_sweep_report(std::string_view text);

/// Decimal text used for every number in documents; parses back to the identical double.
std::string decimal(double value);
/// Accepts a decimal string or a JSON number.
double read_decimal(const nlohmann::json& value, std::string_view what);

nlohmann::ordered_json to_json(const MetricsReport& report);
nlohmann::ordered_json to_json(const DeltaReport& report);
nlohmann::ordered_json to_json(const std::vector<SweepPoint>& sweep, SweepAxis axis);
nlohmann::ordered_json to_json(const ScenarioAction& action);
nlohmann::ordered_json to_json(const std::vector<ScenarioAction>& actions);
nlohmann::ordered_json to_json(const EngineConfig& engine);
nlohmann::ordered_json to_json(const std::vector<Violation>& violations);

MetricsReport metrics_from_json(const nlohmann::json& doc);
DeltaReport delta_from_json(const nlohmann::json& doc);
ScenarioAction action_from_json(const nlohmann::json& doc);
/// Accepts a bare array of actions or an object with an "actions" array.
std::vector<ScenarioAction> actions_from_json(const nlohmann::json& doc);
/// Missing fields keep their defaults.
EngineConfig engine_from_json(const nlohmann::json& doc);

/// Parses JSON text, mapping syntax errors to ParseError with line and column.
nlohmann::json parse_json(std::string_view text);

}  // namespace svcrisk
