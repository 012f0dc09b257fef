#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "svcrisk/fixtures.hpp"
#include "svcrisk/graph_io.hpp"
#include "svcrisk/report.hpp"
#include "svcrisk/scenario.hpp"
#include "svcrisk/service.hpp"

namespace svcrisk::cli {
namespace {

namespace fs = std::filesystem;

struct EngineFlags {
  std::string kind = "exact";
  std::size_t exact_limit = 24;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  bool fallback = false;
  std::size_t max_length = 8;

  void add(CLI::App& app) {
    app.add_option("--engine", kind, "Reliability engine")
        ->check(CLI::IsMember({"exact", "mc", "path"}))
        ->capture_default_str();
    app.add_option("--exact-limit", exact_limit, "Largest link count for the exact engine")
        ->capture_default_str();
    app.add_option("--samples", samples, "Monte Carlo samples")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--seed", seed, "Monte Carlo seed")->capture_default_str();
    app.add_flag("--fallback", fallback, "Fall back to Monte Carlo above the exact limit");
    app.add_option("--max-length", max_length, "Longest path for the path engine")
        ->capture_default_str();
  }

  EngineConfig config() const {
    EngineConfig c;
    c.kind = parse_engine_kind(kind);
    c.exact_limit = exact_limit;
    c.samples = samples;
    c.seed = seed;
    c.mc_fallback = fallback;
    c.path_max_length = max_length;
    return c;
  }
};

struct OutputFlags {
  std::string format = "rows";
  std::string path = "-";

  void add(CLI::App& app, const std::string& default_format = "rows") {
    format = default_format;
    app.add_option("--out", format, "Report format")
        ->check(CLI::IsMember({"rows", "structured"}))
        ->capture_default_str();
    app.add_option("-o,--output", path, "Output file, - for standard output")->capture_default_str();
  }
};

std::string read_stream(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// A model argument is a file path, "-" for standard input, or the name of a bundled fixture.
CombinedModel load_argument(const std::string& arg, bool lenient, std::vector<Violation>* warnings) {
  if (arg == "-") {
    LoadOptions options;
    options.strict = !lenient;
    return load_model(read_stream(std::cin), options, warnings);
  }
  if (!fs::exists(arg)) {
    const auto names = fixtures::names();
    if (std::find(names.begin(), names.end(), arg) != names.end()) {
      LoadOptions options;
      options.strict = !lenient;
      return load_model(fixtures::document(arg), options, warnings);
    }
  }
  return load_model_file(arg, !lenient, warnings);
}

// Writes to a temporary sibling and renames it into place, so a failed run leaves no partial file.
void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path == "-") {
    out << text;
    out.flush();
    return;
  }
  const fs::path target(path);
  fs::path temp = target;
  temp += ".tmp";
  {
    std::ofstream file(temp, std::ios::binary | std::ios::trunc);
    if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write " + temp.string());
    file << text;
    file.flush();
    if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write " + temp.string());
  }
  fs::rename(temp, target);
}

std::vector<std::string> split_values(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& item : raw) {
    std::stringstream in(item);
    std::string part;
    while (std::getline(in, part, ',')) {
      if (!part.empty()) out.push_back(part);
    }
  }
  return out;
}

double parse_unit(const std::string& text, const char* what) {
  double value = 0.0;
  try {
    std::size_t used = 0;
    value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be a number: " + text);
  }
  return value;
}

bool is_model_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::ValidationError:
    case ErrorCode::ScoreMismatch:
    case ErrorCode::UngroupedState:
    case ErrorCode::UnknownServiceNode:
    case ErrorCode::CycleDetected:
    case ErrorCode::ExactLimitExceeded:
      return true;
    default:
      return false;
  }
}

void print_violations(const std::vector<Violation>& violations, std::ostream& err) {
  for (const auto& v : violations) err << describe(v) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Service-centric attack impact analysis over attack and network graphs", "svcrisk"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  bool lenient = false;
  app.add_flag("--lenient", lenient, "Keep unknown document fields instead of rejecting them");

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "Check a model document");
  std::string validate_model;
  validate_cmd->add_option("model", validate_model, "Model file, - or bundled fixture name")
      ->required();

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "Baseline metrics of a model");
  std::string analyze_model;
  std::optional<double> analyze_weight;
  EngineFlags analyze_engine;
  OutputFlags analyze_out;
  analyze_cmd->add_option("model", analyze_model, "Model file, - or bundled fixture name")->required();
  analyze_cmd->add_option("--weights", analyze_weight, "Set every link weight first")
      ->check(CLI::Range(0.0, 1.0));
  analyze_engine.add(*analyze_cmd);
  analyze_out.add(*analyze_cmd);

  // scenario
  auto* scenario_cmd = app.add_subcommand("scenario", "Relative change under mitigation actions");
  std::string scenario_model;
  std::vector<std::string> fixes;
  std::vector<std::string> monitors;
  double factor = kDefaultMonitorFactor;
  std::optional<double> set_weights;
  std::string actions_file;
  EngineFlags scenario_engine;
  OutputFlags scenario_out;
  scenario_cmd->add_option("model", scenario_model, "Model file, - or bundled fixture name")
      ->required();
  scenario_cmd->add_option("--fix", fixes, "Fix a vulnerability (repeatable)");
  scenario_cmd->add_option("--monitor", monitors, "Monitor a node (repeatable)");
  scenario_cmd->add_option("--factor", factor, "Monitoring factor f")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  scenario_cmd->add_option("--set-weights", set_weights, "Set every link weight")
      ->check(CLI::Range(0.0, 1.0));
  scenario_cmd->add_option("--actions", actions_file, "Scenario document with an actions list");
  scenario_engine.add(*scenario_cmd);
  scenario_out.add(*scenario_cmd);

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "One scenario per axis value against a shared baseline");
  std::string sweep_model;
  std::string axis;
  std::vector<std::string> sweep_values_raw;
  double sweep_factor = kDefaultMonitorFactor;
  std::optional<double> sweep_weight;
  std::string sweep_metric;
  EngineFlags sweep_engine;
  OutputFlags sweep_out;
  sweep_cmd->add_option("model", sweep_model, "Model file, - or bundled fixture name")->required();
  sweep_cmd->add_option("--axis", axis, "Sweep axis")
      ->required()
      ->check(CLI::IsMember({"vulns", "nodes", "weights"}));
  sweep_cmd->add_option("--values", sweep_values_raw, "Axis values, comma separated (default: all)");
  sweep_cmd->add_option("--factor", sweep_factor, "Monitoring factor for the nodes axis")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  sweep_cmd->add_option("--weights", sweep_weight, "Set every link weight before sweeping")
      ->check(CLI::Range(0.0, 1.0));
  sweep_cmd->add_option("--metric", sweep_metric, "Keep only this metric's rows");
  sweep_engine.add(*sweep_cmd);
  sweep_out.add(*sweep_cmd);

  // bundle
  auto* bundle_cmd = app.add_subcommand("bundle", "Baseline plus fix, monitoring and weight studies");
  std::string bundle_model;
  bool bundle_full = false;
  double bundle_factor = kDefaultMonitorFactor;
  EngineFlags bundle_engine;
  std::string bundle_path = "-";
  bundle_cmd->add_option("model", bundle_model, "Model file, - or bundled fixture name")->required();
  bundle_cmd->add_flag("--full", bundle_full, "Also repeat the fix and monitoring studies per weight");
  bundle_cmd->add_option("--factor", bundle_factor, "Monitoring factor")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  bundle_engine.add(*bundle_cmd);
  bundle_cmd->add_option("-o,--output", bundle_path, "Output file, - for standard output");

  // serve
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  int port = port_from_environment(8080);
  std::string host = "127.0.0.1";
  std::string store;
  serve_cmd->add_option("--port", port, "Port (default from SVCRISK_PORT, else 8080)")
      ->check(CLI::Range(1, 65535))
      ->capture_default_str();
  serve_cmd->add_option("--host", host, "Bind address")->capture_default_str();
  serve_cmd->add_option("--store", store, "Directory persisting uploaded models");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    std::vector<Violation> warnings;
    if (validate_cmd->parsed()) {
      try {
        load_argument(validate_model, lenient, &warnings);
      } catch (const Error& e) {
        if (!e.violations().empty()) {
          print_violations(e.violations(), err);
        } else {
          err << "error: " << e.what() << '\n';
        }
        return kExitInvalidModel;
      }
      print_violations(warnings, err);
      out << "valid\n";
      return kExitOk;
    }

    if (analyze_cmd->parsed()) {
      CombinedModel model = load_argument(analyze_model, lenient, &warnings);
      if (analyze_weight) model = apply(model, {SetAllLinkWeights{*analyze_weight}});
      const Evaluation eval = evaluate(model, analyze_engine.config());
      emit(write_report(eval.metrics, parse_report_format(analyze_out.format)), analyze_out.path, out);
      return kExitOk;
    }

    if (scenario_cmd->parsed()) {
      const CombinedModel model = load_argument(scenario_model, lenient, &warnings);
      std::vector<ScenarioAction> actions;
      if (!actions_file.empty()) {
        std::ifstream in(actions_file, std::ios::binary);
        if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + actions_file);
        actions = actions_from_json(parse_json(read_stream(in)));
      }
      if (set_weights) actions.emplace_back(SetAllLinkWeights{*set_weights});
      for (const auto& v : fixes) actions.emplace_back(FixVulnerability{v});
      for (const auto& n : monitors) actions.emplace_back(MonitorNode{n, factor});
      const DeltaReport report = delta(model, actions, scenario_engine.config());
      emit(write_report(report, parse_report_format(scenario_out.format)), scenario_out.path, out);
      return kExitOk;
    }

    if (sweep_cmd->parsed()) {
      const CombinedModel model = load_argument(sweep_model, lenient, &warnings);
      SweepRequest request;
      request.axis = parse_sweep_axis(axis);
      request.values = split_values(sweep_values_raw);
      request.factor = sweep_factor;
      if (request.axis == SweepAxis::Weights) {
        for (const auto& v : request.values) parse_unit(v, "weight");
      }
      if (sweep_weight) request.base_actions.emplace_back(SetAllLinkWeights{*sweep_weight});
      if (!sweep_metric.empty()) request.metric = parse_metric(sweep_metric);
      const auto points = sweep(model, request, sweep_engine.config());
      emit(write_report(points, request.axis, parse_report_format(sweep_out.format)), sweep_out.path,
           out);
      return kExitOk;
    }

    if (bundle_cmd->parsed()) {
      const CombinedModel model = load_argument(bundle_model, lenient, &warnings);
      ScenarioPlan plan = bundle_full ? ScenarioPlan::full() : ScenarioPlan{};
      plan.monitor_factor = bundle_factor;
      emit(write_bundle(analysis_bundle(model, bundle_engine.config(), plan)), bundle_path, out);
      return kExitOk;
    }

    if (serve_cmd->parsed()) {
      ServiceOptions options;
      options.lenient = lenient;
      if (!store.empty()) options.store_directory = store;
      Service service(options);
      err << "listening on " << host << ':' << port << '\n';
      serve(service, host, port);
      return kExitOk;
    }
  } catch (const Error& e) {
    if (!e.violations().empty()) print_violations(e.violations(), err);
    if (const auto* pe = dynamic_cast<const ParseError*>(&e); pe != nullptr && pe->line() > 0) {
      err << "error: line " << pe->line() << ", column " << pe->column() << ": " << e.what() << '\n';
    } else {
      err << "error: " << e.what() << '\n';
    }
    return is_model_error(e.code()) ? kExitInvalidModel : kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace svcrisk::cli
