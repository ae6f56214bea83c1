#include <gtest/gtest.h>

#include <limits>
#include <numeric>

#include "joinopt/exact.hpp"
#include "joinopt/heuristics.hpp"
#include "test_support.hpp"

namespace joinopt {
namespace {

void expect_valid_plan(const Plan& p, const QueryGraph& g, const CostModel& model) {
  ASSERT_TRUE(p);
  EXPECT_EQ(p.relations(), g.all());
  EXPECT_EQ(p.join_count(), g.size() - 1);
  const auto again = recompute_costs(p, g, model);
  EXPECT_EQ(again.cost, p.cost());
  EXPECT_EQ(again.cardinality, p.cardinality());
  const auto check = [&](const auto& self, const Plan& node) -> void {
    if (node.is_leaf()) return;
    EXPECT_TRUE(is_ccp_pair(node.left().relations(), node.right().relations(), g));
    self(self, node.left());
    self(self, node.right());
  };
  check(check, p);
}

TEST(Goo, TwoRelations) {
  const QueryGraph g({{"a", 10, 1}, {"b", 20, 1}}, {{0, 1, 0.5}});
  const Plan p = goo(g);
  EXPECT_EQ(p.join_count(), 1U);
}

TEST(Goo, JoinsSmallestResultFirst) {
  // R0-R1 yields 1000 * 1000 * 1e-5 = 10 rows, R1-R2 yields 1000 * 10 * 0.5 = 5000.
  const QueryGraph g({{"a", 1000, 1}, {"b", 1000, 1}, {"c", 10, 1}}, {{0, 1, 1e-5}, {1, 2, 0.5}});
  const Plan p = goo(g);
  const Plan& first = p.left().is_leaf() ? p.right() : p.left();
  EXPECT_EQ(first.relations(), RelSet::of(3, {0, 1}));
}

TEST(Goo, NeverBeatsOptimum) {
  for (const auto& c : testing::mixed_suite(60, 2, 12, 41)) {
    const Plan p = goo(c.graph, c.model);
    expect_valid_plan(p, c.graph, c.model);
    EXPECT_GE(p.cost(), oracle_optimal(c.graph, c.model).cost()) << c.label;
  }
}

TEST(Idp2, ExactWhenSmall) {
  for (const auto& c : testing::mixed_suite(40, 2, 12, 42)) {
    const auto r = idp2(c.graph, 12, c.model);
    expect_valid_plan(r.plan, c.graph, c.model);
    EXPECT_EQ(r.plan.cost(), oracle_optimal(c.graph, c.model).cost()) << c.label;
  }
}

TEST(Idp2, NeverWorseThanGoo) {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const auto g = testing::shape(Topology::kSnowflake, 30, seed);
    for (std::size_t k : {2U, 5U, 10U}) {
      const CostModel model(seed % 2 ? CostKind::kCout : CostKind::kHashJoin);
      const auto r = idp2(g, k, model);
      expect_valid_plan(r.plan, g, model);
      EXPECT_LE(r.plan.cost(), goo(g, model).cost()) << seed << " k=" << k;
    }
  }
}

TEST(Idp2, LargerKDoesNotWorsenMeanCost) {
  for (auto kind : {CostKind::kCout, CostKind::kHashJoin}) {
    const CostModel model(kind);
    double previous = std::numeric_limits<double>::infinity();
    for (std::size_t k : {5U, 10U, 15U}) {
      double sum = 0.0;
      for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const auto g = testing::shape(Topology::kSnowflake, 30, seed);
        sum += idp2(g, k, model).plan.cost() / goo(g, model).cost();
      }
      EXPECT_LE(sum / 100.0, previous) << to_string(kind) << " k=" << k;
      previous = sum / 100.0;
    }
  }
}

TEST(Idp2, RejectsTinyK) {
  EXPECT_THROW(idp2(testing::shape(Topology::kChain, 4), 1), ContractViolation);
  EXPECT_THROW(uniondp(testing::shape(Topology::kChain, 4), 1), ContractViolation);
}

TEST(UnionDp, ExactWhenSmall) {
  for (const auto& c : testing::mixed_suite(40, 2, 12, 43)) {
    const auto r = uniondp(c.graph, 12, c.model);
    expect_valid_plan(r.plan, c.graph, c.model);
    EXPECT_EQ(r.plan.cost(), oracle_optimal(c.graph, c.model).cost()) << c.label;
  }
}

TEST(UnionDp, LargeQueriesGiveValidPlans) {
  for (auto t : {Topology::kSnowflake, Topology::kStar, Topology::kChain, Topology::kRandomWalk}) {
    const auto g = testing::shape(t, 40, 3);
    const CostModel model;
    const auto r = uniondp(g, 6, model);
    expect_valid_plan(r.plan, g, model);
  }
}

TEST(UnionDp, TimeoutThrows) {
  const auto g = testing::shape(Topology::kSnowflake, 200, 3);
  EXPECT_THROW(uniondp(g, 15, CostModel(), {.timeout = std::chrono::milliseconds(0)}), TimeoutError);
}

TEST(Idp2, TimeoutStillReturnsCompletePlan) {
  const auto g = testing::shape(Topology::kSnowflake, 60, 3);
  const auto r = idp2(g, 10, CostModel(), {.timeout = std::chrono::milliseconds(0)});
  EXPECT_TRUE(r.stats.timed_out);
  expect_valid_plan(r.plan, g, CostModel());
}

TEST(PartitionPhase, PartitionsAreBoundedAndConnected) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto g = seed % 2 ? testing::random_connected(20 + seed % 13, seed, 0.15)
                            : testing::shape(Topology::kRandomWalk, 20 + seed % 13, seed);
    const CostModel model;
    const auto cg = CompositeGraph::from_query(g, model);
    const std::size_t k = 2 + seed % 9;
    const auto parts = partition_phase(cg, k, model);
    std::vector<bool> seen(g.size(), false);
    EXPECT_LT(parts.size(), g.size());
    for (const auto& part : parts) {
      EXPECT_LE(part.size(), k);
      SmallRelSet s;
      for (auto v : part) {
        EXPECT_FALSE(seen[v]);
        seen[v] = true;
        s.insert(v);
      }
      EXPECT_TRUE(is_connected(s, g));
    }
    EXPECT_TRUE(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }));
  }
}

TEST(PartitionPhase, PrefersSmallUnionsThenLightEdges) {
  // chain a-b-c-d; the middle edge is cheapest, so with k = 2 it pairs b,c first
  const QueryGraph g({{"a", 100, 1}, {"b", 10, 1}, {"c", 10, 1}, {"d", 100, 1}}, {{0, 1, 0.1}, {1, 2, 0.1}, {2, 3, 0.1}});
  const CostModel model;
  const auto parts = partition_phase(CompositeGraph::from_query(g, model), 2, model);
  const std::vector<std::vector<std::size_t>> expected{{0}, {1, 2}, {3}};
  EXPECT_EQ(parts, expected);
}

TEST(Contract, MergesParallelEdges) {
  const QueryGraph g({{"a", 10, 1}, {"b", 10, 1}, {"c", 10, 1}, {"d", 10, 1}},
                     {{0, 1, 0.5}, {0, 2, 0.1}, {1, 3, 0.2}, {2, 3, 0.5}});
  const CostModel model;
  const auto cg = CompositeGraph::from_query(g, model);
  const std::vector<std::vector<std::size_t>> parts{{0, 1}, {2, 3}};
  std::vector<Plan> plans{model.make_join(cg.node(0).plan, cg.node(1).plan, g),
                          model.make_join(cg.node(2).plan, cg.node(3).plan, g)};
  const auto contracted = contract(cg, parts, plans);
  ASSERT_EQ(contracted.size(), 2U);
  ASSERT_EQ(contracted.edges().size(), 1U);
  EXPECT_DOUBLE_EQ(contracted.edges()[0].selectivity, 0.02);

  const std::vector<std::vector<std::size_t>> one{{0, 1}};
  const auto single = contract(contracted, one, {model.make_join(plans[0], plans[1], g)});
  EXPECT_EQ(single.size(), 1U);
  EXPECT_TRUE(single.edges().empty());
}

TEST(Contract, RejectsBadPartitions) {
  const auto g = testing::shape(Topology::kChain, 3);
  const CostModel model;
  const auto cg = CompositeGraph::from_query(g, model);
  EXPECT_THROW(contract(cg, {{0, 1}}, {cg.node(0).plan}), ContractViolation);
}

TEST(UnionFind, Basics) {
  UnionFind uf(6);
  EXPECT_EQ(uf.find(3), 3U);
  uf.unite(0, 1);
  uf.unite(2, 3);
  uf.unite(1, 3);
  EXPECT_EQ(uf.find(0), uf.find(2));
  EXPECT_EQ(uf.find(uf.find(0)), uf.find(0));
  EXPECT_EQ(uf.size_of(3), 4U);
  EXPECT_EQ(uf.members(1), RelSet::of(6, {0, 1, 2, 3}));
  EXPECT_EQ(uf.size_of(4) + uf.size_of(5) + uf.size_of(0), 6U);
}

TEST(Heuristics, Deterministic) {
  const auto g = testing::shape(Topology::kSnowflake, 50, 17);
  EXPECT_EQ(goo(g).to_string(), goo(g).to_string());
  EXPECT_EQ(idp2(g, 8).plan.to_string(), idp2(g, 8).plan.to_string());
  EXPECT_EQ(uniondp(g, 8).plan.to_string(), uniondp(g, 8, CostModel(), {.workers = 4}).plan.to_string());
}

}  // namespace
}  // namespace joinopt
