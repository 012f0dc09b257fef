#include <gtest/gtest.h>

#include "svcrisk/combiner.hpp"
#include "svcrisk/error.hpp"
#include "svcrisk/fixtures.hpp"
#include "svcrisk/scenario.hpp"

using namespace svcrisk;

namespace {

const ResolvedVector& by_id(const std::vector<ResolvedVector>& rs, const std::string& id) {
  for (const auto& r : rs) {
    if (r.vector == id) return r;
  }
  throw std::out_of_range(id);
}

}  // namespace

TEST(Combine, EntryAndExitNodes) {
  const auto model = fixtures::fig1_toy();
  EXPECT_EQ(model.entry_nodes, (IdSet{"1"}));
  EXPECT_EQ(model.exit_nodes, (IdSet{"2", "3"}));
  EXPECT_EQ(*model.service_of("S4"), "1");
  EXPECT_EQ(model.service_of("S1"), nullptr);
  EXPECT_EQ(model.service_of("S6"), nullptr);
}

TEST(Combine, RejectsUngroupedStatesAndUnknownNodes) {
  auto model = fixtures::fig1_toy();
  auto grouping = model.grouping;
  grouping["3"].clear();
  try {
    combine(model.attack, model.network, grouping);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UngroupedState);
  }
  grouping = model.grouping;
  grouping["9"] = {"S5"};
  grouping.erase("3");
  try {
    combine(model.attack, model.network, grouping);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownServiceNode);
  }
}

TEST(Combine, LocalVectors) {
  const auto model = fixtures::fig1_toy();
  const auto& g = model.attack;
  EXPECT_TRUE(is_local_vector(model, *g.find_vector("E1")));   // from Start
  EXPECT_FALSE(is_local_vector(model, *g.find_vector("E2")));  // node 1 -> node 2
  EXPECT_FALSE(is_local_vector(model, *g.find_vector("E4")));  // node 1 -> node 3
  EXPECT_TRUE(is_local_vector(model, *g.find_vector("E6")));   // into End
}

TEST(Resolve, NetworkFactorOnlyOnCrossNodeVectors) {
  const auto model = apply(fixtures::fig1_toy(), {SetAllLinkWeights{0.5}});
  const auto table = reliability_table(model.network, needed_pairs(model), {});
  const auto rs = resolve_vectors(model, table);
  ASSERT_EQ(rs.size(), model.attack.vectors.size());
  const double triangle = 0.5 + 0.5 * 0.25;
  EXPECT_EQ(by_id(rs, "E2").p_net, triangle);
  EXPECT_EQ(by_id(rs, "E4").p_net, triangle);
  for (const char* id : {"E1", "E3", "E5", "E6"}) EXPECT_EQ(by_id(rs, id).p_net, 1.0) << id;
  for (const auto& r : rs) {
    const auto& v = *model.attack.find_vulnerability(r.vulnerability);
    EXPECT_EQ(r.p_exploit, v.exploitability);
    EXPECT_EQ(r.p_overall, r.p_net * r.p_exploit);
    EXPECT_EQ(r.impact, v.impact);
  }
}

TEST(Resolve, ExploitScaleMultipliesExploitability) {
  auto model = fixtures::fig1_toy();
  model.attack.vectors[1].exploit_scale = 0.25;
  const auto rs = resolve_bare(model);
  const auto& v = *model.attack.find_vulnerability(model.attack.vectors[1].vulnerability);
  EXPECT_EQ(rs[1].p_exploit, 0.25 * v.exploitability);
}

TEST(Resolve, UnitWeightsReproduceTheBareGraph) {
  for (const auto& name : fixtures::names()) {
    const auto model = apply(fixtures::load(name), {SetAllLinkWeights{1.0}});
    const auto table = reliability_table(model.network, needed_pairs(model), {});
    EXPECT_EQ(resolve_vectors(model, table), resolve_bare(model)) << name;
  }
}

TEST(Resolve, MissingTableEntryIsAnError) {
  const auto model = fixtures::fig1_toy();
  try {
    resolve_vectors(model, ReliabilityTable{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingReliabilityEntry);
  }
}
