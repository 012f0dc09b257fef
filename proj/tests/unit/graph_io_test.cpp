#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "random_models.hpp"
#include "svcrisk/error.hpp"
#include "svcrisk/fixtures.hpp"
#include "svcrisk/graph_io.hpp"

using namespace svcrisk;
using nlohmann::json;

namespace {

json fig1_doc() { return json::parse(fixtures::document("fig1_toy")); }

ErrorCode load_error(const std::string& text, LoadOptions options = {}) {
  try {
    load_model(text, options);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "document loaded";
  return ErrorCode::InvalidArgument;
}

std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("svcrisk_io_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST(ModelDocument, RoundTripIsIdentity) {
  for (const auto& name : fixtures::names()) {
    const auto model = fixtures::load(name);
    const auto text = write_model(model);
    const auto again = load_model(text);
    EXPECT_EQ(again, model) << name;
    EXPECT_EQ(write_model(again), text) << name;
  }
}

TEST(ModelDocument, RandomModelsRoundTripBitForBit) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 100; ++round) {
    const auto model = gen::random_model(rng, 8, 4);
    const auto text = write_model(model);
    const auto again = parse_model(text);
    EXPECT_EQ(recombine(again), model) << text;
  }
}

TEST(ModelDocument, DecimalStringsRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, 0.99968, 6.442977, 1e-300, 0.0, 10.00085}) {
    EXPECT_EQ(read_decimal(json(decimal(v)), "v"), v);
  }
  EXPECT_EQ(read_decimal(json(0.5), "v"), 0.5);
  EXPECT_THROW(read_decimal(json("abc"), "v"), Error);
  EXPECT_THROW(read_decimal(json(true), "v"), Error);
}

TEST(ModelDocument, ScoresDefaultFromTheCvssVector) {
  const auto model = fixtures::fig1_toy();
  const auto* v = model.attack.find_vulnerability("TOY-1");
  ASSERT_NE(v, nullptr);
  EXPECT_NEAR(v->exploitability, 0.99968, 5e-6);
  EXPECT_NEAR(v->impact, 6.442977, 5e-6);
}

TEST(ModelDocument, ScoreMismatchIsRejected) {
  auto doc = fig1_doc();
  doc["vulnerabilities"][0]["impact"] = "9.5";
  EXPECT_EQ(load_error(doc.dump()), ErrorCode::ScoreMismatch);
}

TEST(ModelDocument, StrictAndLenientUnknownFields) {
  auto doc = fig1_doc();
  doc["attack_states"][1]["owner"] = "ops";
  doc["comment"] = "x";
  EXPECT_EQ(load_error(doc.dump()), ErrorCode::ParseError);
  LoadOptions lenient;
  lenient.strict = false;
  const auto model = load_model(doc.dump(), lenient);
  EXPECT_EQ(model.attack.find_state("S2")->extras.at("owner"), "\"ops\"");
  const auto again = json::parse(write_model(model));
  EXPECT_EQ(again["comment"], "x");
  EXPECT_EQ(again["attack_states"][1]["owner"], "ops");
}

TEST(ModelDocument, SyntaxErrorsCarryPosition) {
  try {
    load_model("{\n  \"schema_version\": \"1.0\",\n  oops\n}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_GT(e.column(), 0u);
  }
}

TEST(ModelDocument, SchemaVersionAndMissingSections) {
  auto doc = fig1_doc();
  doc["schema_version"] = "2.0";
  EXPECT_EQ(load_error(doc.dump()), ErrorCode::ParseError);
  doc = fig1_doc();
  doc.erase("attack_vectors");
  EXPECT_EQ(load_error(doc.dump()), ErrorCode::ParseError);
}

TEST(ModelDocument, ValidationErrorsListEveryViolation) {
  auto doc = fig1_doc();
  doc["attack_vectors"][0]["target"] = "S1";
  doc["network_edges"][0]["weight"] = "1.5";
  try {
    load_model(doc.dump());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ValidationError);
    EXPECT_GE(e.violations().size(), 2u);
  }
}

TEST(ModelDocument, WarningsAreReported) {
  auto doc = fig1_doc();
  doc["attack_states"].push_back({{"id", "S7"}});
  doc["grouping"]["3"].push_back("S7");
  std::vector<Violation> warnings;
  load_model(doc.dump(), {}, &warnings);
  ASSERT_FALSE(warnings.empty());
  for (const auto& w : warnings) EXPECT_EQ(w.severity, Severity::Warning);
}

TEST(ModelDocument, VulnerabilityCatalogByReference) {
  auto doc = fig1_doc();
  const auto dir = temp_dir("ref");
  {
    std::ofstream out(dir / "catalog.json");
    out << json{{"vulnerabilities", doc["vulnerabilities"]}}.dump();
  }
  doc.erase("vulnerabilities");
  doc["vulnerabilities_ref"] = "catalog.json";
  {
    std::ofstream out(dir / "model.json");
    out << doc.dump();
  }
  const auto model = load_model_file(dir / "model.json");
  EXPECT_EQ(model.attack.catalog, fixtures::fig1_toy().attack.catalog);
  EXPECT_THROW(load_model_file(dir / "absent.json"), Error);
}

TEST(Reports, MetricsRoundTrip) {
  const auto eval = evaluate(fixtures::paper_fixture(), {});
  const auto text = write_report(eval.metrics, ReportFormat::Structured);
  EXPECT_EQ(read_metrics_report(text), eval.metrics);
}

TEST(Reports, DeltaRoundTripKeepsAnomalies) {
  MetricsReport before, after;
  before.inbound = {{"1", 0.0}, {"2", 2.0}};
  after.inbound = {{"1", 0.5}, {"2", 1.0}};
  auto d = compare(before, after);
  d.actions = {FixVulnerability{"V"}, MonitorNode{"2", 0.3}, SetAllLinkWeights{0.4},
               SetLinkWeight{"1", "2", 0.5}};
  const auto text = write_report(d, ReportFormat::Structured);
  EXPECT_EQ(read_delta_report(text), d);
  const auto rows = write_report(d, ReportFormat::Rows);
  EXPECT_NE(rows.find("inbound,1,0.500000,anomaly\n"), std::string::npos);
  EXPECT_NE(rows.find("inbound,2,1.000000,-0.500000\n"), std::string::npos);
}

TEST(Reports, SweepRoundTrip) {
  SweepRequest req;
  req.axis = SweepAxis::Weights;
  req.values = {"0.5", "1"};
  const auto points = sweep(fixtures::fig1_toy(), req, {});
  EXPECT_EQ(read_sweep_report(write_report(points, req.axis, ReportFormat::Structured)), points);
  const auto rows = write_report(points, req.axis, ReportFormat::Rows);
  EXPECT_EQ(rows.rfind("point,metric,subject,value,relative_change\n", 0), 0u);
  EXPECT_NE(rows.find("\n0.5,reach_probability,S1,1.000000,0.000000\n"), std::string::npos);
}

TEST(Reports, RowsHaveNoNegativeZero) {
  MetricsReport before, after;
  before.reach_probability = {{"a", 1.0}};
  after.reach_probability = {{"a", 1.0 - 1e-12}};
  const auto rows = write_report(compare(before, after), ReportFormat::Rows);
  EXPECT_EQ(rows.find("-0.000000"), std::string::npos);
}

TEST(Reports, EngineAndActionsJson) {
  EngineConfig e;
  e.kind = EngineKind::MonteCarlo;
  e.samples = 77;
  e.seed = 3;
  e.mc_fallback = true;
  EXPECT_EQ(engine_from_json(json::parse(to_json(e).dump())), e);
  EXPECT_EQ(engine_from_json(json::object()), EngineConfig{});
  const auto actions = actions_from_json(json::parse(
      R"([{"type":"fix","vulnerability":"X"},{"type":"monitor","node":"2"}])"));
  ASSERT_EQ(actions.size(), 2u);
  EXPECT_EQ(std::get<MonitorNode>(actions[1]).factor, kDefaultMonitorFactor);
  EXPECT_THROW(actions_from_json(json::parse(R"([{"type":"patch"}])")), Error);
  EXPECT_THROW(actions_from_json(json::parse(R"({"list":[]})")), Error);
  EXPECT_EQ(parse_report_format("rows"), ReportFormat::Rows);
  EXPECT_THROW(parse_report_format("xml"), Error);
}
