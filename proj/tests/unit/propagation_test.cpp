#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "random_models.hpp"
#include "svcrisk/error.hpp"
#include "svcrisk/fixtures.hpp"
#include "svcrisk/propagation.hpp"

using namespace svcrisk;

TEST(TopologicalOrder, NaturalTieBreak) {
  const auto model = fixtures::fig1_toy();
  EXPECT_EQ(topological_order(model.attack),
            (std::vector<std::string>{"S1", "S2", "S3", "S4", "S5", "S6"}));
  const auto appendix = fixtures::appendix_toy();
  EXPECT_EQ(topological_order(appendix.attack),
            (std::vector<std::string>{"a", "b", "c", "i", "j", "k", "x", "y", "z"}));
}

TEST(TopologicalOrder, CycleIsReported) {
  auto model = fixtures::fig1_toy();
  model.attack.vectors.push_back({"back", "S3", "S2", "TOY-1", 1.0, {}});
  try {
    topological_order(model.attack);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CycleDetected);
  }
}

TEST(Propagate, ChainAndNoisyOr) {
  const auto model = fixtures::appendix_toy();
  const auto prop = propagate(model, resolve_bare(model));
  for (const auto& s : model.attack.states) EXPECT_EQ(prop.state(s.id), 1.0) << s.id;

  auto toy = fixtures::fig1_toy();
  const auto rs = resolve_bare(toy);
  const auto p = propagate(toy, rs);
  auto pe = [&](const char* id) {
    for (const auto& r : rs) {
      if (r.vector == id) return r.p_overall;
    }
    return -1.0;
  };
  EXPECT_EQ(p.state("S1"), 1.0);
  EXPECT_EQ(p.state("S2"), pe("E1"));
  EXPECT_EQ(p.state("S3"), pe("E1") * pe("E2"));
  EXPECT_EQ(p.edge("E6"), p.state("S3") * pe("E6"));
  const double miss = (1.0 - p.edge("E5")) * (1.0 - p.edge("E6"));
  EXPECT_DOUBLE_EQ(p.state("S6"), 1.0 - miss);
  EXPECT_THROW(p.state("nope"), Error);
}

TEST(Propagate, MatchesRecursiveDefinitionOnRandomModels) {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 300; ++round) {
    const auto model = gen::random_model(rng, std::uniform_int_distribution<int>(3, 10)(rng), 5);
    const auto rs = resolve_bare(model);
    const auto prop = propagate(model, rs);
    const auto edges = oracle::edges_of(rs);
    for (const auto& s : model.attack.states) {
      EXPECT_NEAR(prop.state(s.id), oracle::reach(edges, "S1", s.id), 1e-12);
      EXPECT_GE(prop.state(s.id), 0.0);
      EXPECT_LE(prop.state(s.id), 1.0);
    }
  }
}

TEST(FeasiblePaths, SkipsZeroProbabilityVectors) {
  auto model = fixtures::fig1_toy();
  auto rs = resolve_bare(model);
  auto paths = feasible_paths(model, rs, "S6");
  EXPECT_EQ(paths, (std::vector<AttackPath>{{"E1", "E2", "E6"}, {"E3", "E4", "E5"}}));
  model.attack.vectors[3].exploit_scale = 0.0;  // E4
  rs = resolve_bare(model);
  paths = feasible_paths(model, rs, "S6");
  EXPECT_EQ(paths, (std::vector<AttackPath>{{"E1", "E2", "E6"}}));
}

TEST(FeasiblePaths, AppendixPathCount) {
  const auto model = fixtures::appendix_toy();
  EXPECT_EQ(feasible_paths(model, resolve_bare(model), "z").size(), 3u);
}
