#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "random_models.hpp"
#include "svcrisk/error.hpp"
#include "svcrisk/fixtures.hpp"
#include "svcrisk/metrics.hpp"

using namespace svcrisk;

namespace {

struct Analyzed {
  CombinedModel model;
  std::vector<ResolvedVector> resolved;
  PropagationResult prop;
  Analyzed(CombinedModel m) : model(std::move(m)), resolved(resolve_bare(model)), prop(propagate(model, resolved)) {}
  ImpactAnalysis analysis() const { return ImpactAnalysis(model, resolved, prop); }
};

}  // namespace

TEST(Appendix, SetsMatchTheWorkedExample) {
  Analyzed a(fixtures::appendix_toy());
  const auto ia = a.analysis();
  EXPECT_EQ(ia.predecessors("j"), (IdSet{"c", "i"}));
  EXPECT_EQ(ia.feasible_ancestors("j"), (IdSet{"a", "b", "c", "i"}));
  EXPECT_EQ(ia.inbound_sources("n"), (IdSet{"a", "b", "c"}));
  EXPECT_EQ(ia.successors("n"), (IdSet{"i", "j", "k", "x", "y"}));
  EXPECT_EQ(ia.inbound_vectors("n"), (std::vector<std::string>{"v_a_b", "v_a_c", "v_b_i", "v_c_j"}));
  EXPECT_EQ(ia.outbound_vectors("n"),
            (std::vector<std::string>{"v_a_b", "v_a_c", "v_b_i", "v_c_j", "v_i_j", "v_i_k", "v_j_x",
                                      "v_k_y"}));
  EXPECT_EQ(ia.node_vectors("n"), (std::vector<std::string>{"v_b_i", "v_c_j", "v_i_j", "v_i_k"}));
}

TEST(Appendix, Values) {
  Analyzed a(fixtures::appendix_toy());
  const auto r = a.analysis().report();
  EXPECT_EQ(r.expected_impact.at("j"), 24.0);
  EXPECT_EQ(r.expected_impact.at("z"), 768.0);
  EXPECT_EQ(r.cumulative_impact.at("i"), 5.0);
  EXPECT_EQ(r.cumulative_impact.at("j"), 31.0);
  EXPECT_EQ(r.cumulative_impact.at("z"), 1023.0);
  EXPECT_EQ(r.inbound.at("n"), 15.0);
  EXPECT_EQ(r.outbound.at("n"), 255.0);
  EXPECT_EQ(r.node_wise.at("n"), 60.0);
  EXPECT_EQ(r.inbound.at("nx"), 95.0);
  EXPECT_EQ(r.outbound.at("ny"), 677.0);
}

TEST(Metrics, StartHasNoImpactAndUnknownSubjectsThrow) {
  Analyzed a(fixtures::fig1_toy());
  const auto ia = a.analysis();
  EXPECT_EQ(ia.expected_impact("S1"), 0.0);
  EXPECT_EQ(ia.cumulative_impact("S1"), 0.0);
  EXPECT_THROW(ia.expected_impact("S99"), Error);
  EXPECT_THROW(ia.inbound("99"), Error);
}

TEST(Metrics, FreeFunctionsAgreeWithTheAnalysis) {
  Analyzed a(fixtures::paper_fixture());
  const auto ia = a.analysis();
  for (const auto& s : a.model.attack.states) {
    EXPECT_EQ(expected_impact(a.prop, a.resolved, s.id), ia.expected_impact(s.id));
    EXPECT_EQ(cumulative_impact(a.prop, a.resolved, a.model, s.id), ia.cumulative_impact(s.id));
  }
  for (const auto& [node, _] : a.model.grouping) {
    EXPECT_EQ(inbound_impact(a.prop, a.resolved, a.model, node), ia.inbound(node));
    EXPECT_EQ(outbound_impact(a.prop, a.resolved, a.model, node), ia.outbound(node));
    EXPECT_EQ(node_wise_impact(a.prop, a.resolved, a.model, node), ia.node_wise(node));
  }
  EXPECT_EQ(compute_metrics(a.model, a.resolved), ia.report());
}

TEST(Metrics, ZeroProbabilityVectorsLeaveTheFeasibleSets) {
  auto model = fixtures::appendix_toy();
  for (auto& v : model.attack.vectors) {
    if (v.id == "v_a_b") v.exploit_scale = 0.0;
  }
  Analyzed a(model);
  const auto ia = a.analysis();
  EXPECT_EQ(ia.feasible_ancestors("j"), (IdSet{"a", "c"}));
  EXPECT_EQ(ia.inbound_sources("n"), (IdSet{"a", "c"}));
  EXPECT_EQ(ia.expected_impact("b"), 0.0);
  EXPECT_EQ(ia.expected_impact("i"), 0.0);
}

TEST(Metrics, AgreeWithPathEnumerationOnRandomModels) {
  std::mt19937_64 rng(1234);
  for (int round = 0; round < 300; ++round) {
    const int states = std::uniform_int_distribution<int>(3, 9)(rng);
    auto model = gen::random_model(rng, states, 4);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (auto& v : model.attack.vectors) {
      if (unit(rng) < 0.15) v.exploit_scale = 0.0;
    }
    Analyzed a(model);
    const auto ia = a.analysis();
    const auto edges = oracle::edges_of(a.resolved);
    for (const auto& s : a.model.attack.states) {
      const double e = oracle::expected(edges, "S1", s.id);
      const double ce = oracle::cumulative(edges, "S1", s.id);
      EXPECT_NEAR(ia.expected_impact(s.id), e, 1e-9 * (1 + e));
      EXPECT_NEAR(ia.cumulative_impact(s.id), ce, 1e-9 * (1 + ce)) << "round " << round << " " << s.id;
    }
    for (const auto& [node, members] : a.model.grouping) {
      const std::set<std::string> g(members.begin(), members.end());
      const double in = oracle::inbound(edges, "S1", g);
      const double out = oracle::outbound(edges, "S1", g);
      const double nw = oracle::node_wise(edges, "S1", g);
      EXPECT_NEAR(ia.inbound(node), in, 1e-9 * (1 + in)) << "round " << round << " node " << node;
      EXPECT_NEAR(ia.outbound(node), out, 1e-9 * (1 + out));
      EXPECT_NEAR(ia.node_wise(node), nw, 1e-9 * (1 + nw));
      EXPECT_LE(ia.inbound(node), ia.outbound(node) + 1e-12);
    }
  }
}

TEST(Metrics, NamesRoundTrip) {
  for (Metric m : kAllMetrics) EXPECT_EQ(parse_metric(to_string(m)), m);
  EXPECT_THROW(parse_metric("risk"), Error);
}
