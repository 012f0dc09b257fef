#include <gtest/gtest.h>

#include "svcrisk/error.hpp"
#include "svcrisk/fixtures.hpp"
#include "svcrisk/graph_io.hpp"
#include "svcrisk/report.hpp"

using namespace svcrisk;

namespace {

const AnalysisBundle& full_bundle() {
  static const AnalysisBundle bundle = [] {
    ScenarioPlan plan = ScenarioPlan::full();
    plan.weights = std::vector<double>{0.6, 1.0};
    return analysis_bundle(fixtures::paper_fixture(), {}, plan);
  }();
  return bundle;
}

}  // namespace

TEST(Bundle, SectionsFollowThePlan) {
  const auto& b = full_bundle();
  const auto model = fixtures::paper_fixture();
  ASSERT_TRUE(b.fixes && b.monitors && b.weights);
  EXPECT_EQ(b.fixes->size(), model.attack.catalog.size());
  EXPECT_EQ(b.monitors->size(), model.grouping.size());
  EXPECT_EQ(b.weights->size(), 2u);
  EXPECT_EQ(b.fixes_by_weight.size(), 2u);
  EXPECT_EQ(b.monitors_by_weight.size(), 2u);
  EXPECT_EQ(b.end_states, (std::vector<std::string>{"S18"}));

  const auto base = analysis_bundle(model, {}, ScenarioPlan::baseline_only());
  EXPECT_FALSE(base.fixes || base.monitors || base.weights);
  EXPECT_EQ(base.baseline, b.baseline);
}

TEST(Bundle, PointsEqualStandaloneDeltas) {
  const auto& b = full_bundle();
  const auto model = fixtures::paper_fixture();
  const auto& fix = b.fixes->front();
  EXPECT_EQ(fix.report.scenario, delta(model, {FixVulnerability{fix.value}}, {}).scenario);
  const auto& per_weight = b.fixes_by_weight.front();
  EXPECT_EQ(per_weight.weight, 0.6);
  const auto& p = per_weight.points.back();
  EXPECT_EQ(p.report.scenario,
            delta(model, {SetAllLinkWeights{0.6}, FixVulnerability{p.value}}, {}).scenario);
}

TEST(Bundle, BadPlansFailBeforeComputing) {
  ScenarioPlan plan;
  plan.fixes = std::vector<std::string>{"CVE-1999-0000"};
  EXPECT_THROW(analysis_bundle(fixtures::paper_fixture(), {}, plan), Error);
  plan = ScenarioPlan{};
  plan.weights = std::vector<double>{1.5};
  EXPECT_THROW(analysis_bundle(fixtures::paper_fixture(), {}, plan), Error);
  plan = ScenarioPlan{};
  plan.monitors = std::vector<std::string>{"11"};
  EXPECT_THROW(analysis_bundle(fixtures::paper_fixture(), {}, plan), Error);
}

TEST(Charts, ValuesAreCopiedFromTheBundle) {
  const auto& b = full_bundle();
  const auto nodes = chart_series(b, FigureKind::NodeWise);
  ASSERT_EQ(nodes.points.size(), b.baseline.node_wise.size());
  for (const auto& p : nodes.points) EXPECT_EQ(p.value, b.baseline.node_wise.at(p.category));

  const auto fix_in = chart_series(b, FigureKind::FixInbound);
  for (const auto& p : fix_in.points) {
    const SweepPoint* point = nullptr;
    for (const auto& s : *b.fixes) {
      if (s.value == p.category) point = &s;
    }
    ASSERT_NE(point, nullptr);
    if (p.group == kMeanGroup) {
      EXPECT_EQ(p.value, point->report.node_mean.at(Metric::Inbound));
    } else {
      EXPECT_EQ(p.value, *point->report.change(Metric::Inbound, p.group)->relative);
    }
  }

  const auto end = chart_series(b, FigureKind::MonitorEnd);
  EXPECT_EQ(end.points.size(), b.monitors->size());
  for (const auto& p : end.points) EXPECT_EQ(p.group, "S18");

  const auto wfix = chart_series(b, FigureKind::WeightFixEnd);
  EXPECT_EQ(wfix.points.size(), 2 * b.fixes->size());
  EXPECT_EQ(wfix.points.front().group, "0.6");

  const auto wce = chart_series(b, FigureKind::WeightCumulative);
  EXPECT_EQ(wce.points.size(), 2 * b.baseline.cumulative_impact.size());
}

TEST(Charts, MissingSections) {
  const auto base = analysis_bundle(fixtures::fig1_toy(), {}, ScenarioPlan::baseline_only());
  EXPECT_NO_THROW(chart_series(base, FigureKind::StateCumulative));
  for (FigureKind f : {FigureKind::FixEnd, FigureKind::MonitorInbound, FigureKind::WeightCumulative,
                       FigureKind::WeightMonitorEnd}) {
    try {
      chart_series(base, f);
      FAIL() << to_string(f);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::MissingSection);
    }
  }
}

TEST(Charts, FigureNamesRoundTrip) {
  for (int k = 0; k <= static_cast<int>(FigureKind::WeightMonitorEnd); ++k) {
    const auto f = static_cast<FigureKind>(k);
    EXPECT_EQ(parse_figure_kind(to_string(f)), f);
  }
  EXPECT_THROW(parse_figure_kind("pie"), Error);
}

TEST(Bundle, JsonShape) {
  const auto& b = full_bundle();
  const auto doc = nlohmann::json::parse(write_bundle(b));
  EXPECT_EQ(doc["kind"], "bundle");
  EXPECT_EQ(doc["end_states"], nlohmann::json::array({"S18"}));
  EXPECT_EQ(doc["fixes_by_weight"].size(), 2u);
  EXPECT_EQ(metrics_from_json(doc["baseline"]), b.baseline);
  const auto plan = plan_from_json(nlohmann::json::parse(R"({"fixes":[],"weights":[0.5]})"));
  EXPECT_TRUE(plan.fixes && plan.fixes->empty());
  EXPECT_FALSE(plan.monitors.has_value());
  EXPECT_EQ(*plan.weights, std::vector<double>{0.5});
}
