#include <gtest/gtest.h>

#include <bit>
#include <map>
#include <set>

#include "joinopt/query_graph.hpp"
#include "test_support.hpp"

namespace joinopt {
namespace {

using testing::eight_vertex_tree;
using testing::four_block_graph;
using testing::labels;

TEST(QueryGraph, RejectsBadInput) {
  const std::vector<RelationInfo> two{{"a", 10, 1}, {"b", 10, 1}};
  EXPECT_THROW(QueryGraph(two, {}), ValidationError);  // disconnected
  EXPECT_THROW(QueryGraph(two, {{0, 0, 0.5}}), ValidationError);
  EXPECT_THROW(QueryGraph(two, {{1, 0, 0.5}}), ValidationError);
  EXPECT_THROW(QueryGraph(two, {{0, 2, 0.5}}), ValidationError);
  EXPECT_THROW(QueryGraph(two, {{0, 1, 0.0}}), ValidationError);
  EXPECT_THROW(QueryGraph(two, {{0, 1, 1.5}}), ValidationError);
  EXPECT_THROW(QueryGraph(two, {{0, 1, 0.5}, {0, 1, 0.5}}), ValidationError);
  EXPECT_THROW(QueryGraph({{"a", 0.5, 1}, {"b", 10, 1}}, {{0, 1, 0.5}}), ValidationError);
  EXPECT_THROW(QueryGraph({{"a", 10, 0}, {"b", 10, 1}}, {{0, 1, 0.5}}), ValidationError);
  EXPECT_THROW(QueryGraph({}, {}), ValidationError);
  EXPECT_NO_THROW(QueryGraph({{"a", 10, 1}}, {}));
}

TEST(QueryGraph, AdjacencyIsSymmetricAndEdgesSorted) {
  const auto g = four_block_graph();
  for (std::size_t u = 0; u < g.size(); ++u) {
    EXPECT_FALSE(g.adjacency(u).contains(u));
    for (auto v : g.adjacency(u)) EXPECT_TRUE(g.adjacency(v).contains(u));
  }
  for (std::size_t i = 1; i < g.edges().size(); ++i)
    EXPECT_LT(std::pair(g.edges()[i - 1].u, g.edges()[i - 1].v), std::pair(g.edges()[i].u, g.edges()[i].v));
  EXPECT_FALSE(g.is_tree());
  EXPECT_TRUE(eight_vertex_tree().is_tree());
  EXPECT_TRUE(g.edge_between(8, 4).has_value());
  EXPECT_FALSE(g.edge_between(0, 8).has_value());
}

TEST(Neighbors, FourBlockGraph) {
  const auto g = four_block_graph();
  EXPECT_EQ(neighbors(labels({4}), g), labels({1, 3, 5}));
  EXPECT_EQ(neighbors(SmallRelSet{}, g), SmallRelSet{});
  EXPECT_EQ(neighbors(SmallRelSet::prefix(9), g), SmallRelSet{});
  EXPECT_EQ(neighbors(g.all(), g), g.empty_set());
}

TEST(Grow, FourBlockGraph) {
  const auto g = four_block_graph();
  EXPECT_EQ(grow(labels({1, 2, 3}), labels({1, 2, 3, 4, 5, 9}), g), labels({1, 2, 3, 4, 5, 9}));
  EXPECT_EQ(grow(labels({6}), labels({6, 7, 8}), g), labels({6, 7, 8}));
  const auto s = labels({2, 3, 7});
  EXPECT_EQ(grow(s, s, g), s);
  EXPECT_THROW(grow(SmallRelSet{}, labels({1}), g), ContractViolation);
  EXPECT_THROW(grow(labels({1}), labels({2}), g), ContractViolation);

  const RelSet wide = grow(RelSet::from_small(labels({6}), 9), RelSet::from_small(labels({6, 7, 8}), 9), g);
  EXPECT_EQ(wide.to_small(), labels({6, 7, 8}));
}

TEST(Grow, StaysInsideRestrictionAndIsMonotone) {
  const auto g = four_block_graph();
  const auto all = SmallRelSet::prefix(9).bits();
  for (std::uint64_t r = 1; r <= all; r += 7) {
    const SmallRelSet restriction(r);
    for (std::uint64_t a = r; a != 0; a = (a - 1) & r) {
      const SmallRelSet source(a);
      const auto reached = grow(source, restriction, g);
      EXPECT_TRUE(reached.is_subset_of(restriction));
      const SmallRelSet bigger = source | restriction.lowest_singleton();
      EXPECT_TRUE(reached.is_subset_of(grow(bigger, restriction, g)));
    }
  }
}

TEST(IsConnected, Examples) {
  EXPECT_TRUE(is_connected(labels({1, 2, 4}), eight_vertex_tree()));
  EXPECT_FALSE(is_connected(labels({1, 6}), four_block_graph()));
  EXPECT_FALSE(is_connected(SmallRelSet{}, four_block_graph()));
  for (std::size_t v = 0; v < 9; ++v) EXPECT_TRUE(is_connected(SmallRelSet::singleton(v), four_block_graph()));
}

TEST(IsCcpPair, EightVertexTree) {
  const auto g = eight_vertex_tree();
  EXPECT_TRUE(is_ccp_pair(labels({1, 2, 4}), labels({5, 6}), g));
  EXPECT_FALSE(is_ccp_pair(labels({1, 2, 4}), labels({6, 7, 8}), g));
  EXPECT_FALSE(is_ccp_pair(labels({5, 6}), labels({5, 6}), g));
  EXPECT_TRUE(is_ccp_pair(RelSet::from_small(labels({1, 2, 4}), 8), RelSet::from_small(labels({5, 6}), 8), g));
}

TEST(IsCcpPair, AgreesWithDirectCheck) {
  const auto g = testing::random_connected(8, 7, 0.3);
  for (std::uint64_t a = 1; a < 256; ++a)
    for (std::uint64_t b = 1; b < 256; ++b) {
      bool linked = false;
      for (const auto& e : g.edges())
        linked |= (((a >> e.u) & 1U) && ((b >> e.v) & 1U)) || (((a >> e.v) & 1U) && ((b >> e.u) & 1U));
      const bool expected = (a & b) == 0 && is_connected(SmallRelSet(a), g) && is_connected(SmallRelSet(b), g) && linked;
      ASSERT_EQ(is_ccp_pair(SmallRelSet(a), SmallRelSet(b), g), expected) << a << " " << b;
    }
}

std::set<std::uint64_t> block_bits(const BlockList& blocks) {
  std::set<std::uint64_t> out;
  for (auto b : blocks) out.insert(b.bits());
  return out;
}

TEST(FindBlocks, FourBlockGraph) {
  const auto blocks = find_blocks(SmallRelSet::prefix(9), four_block_graph());
  const std::set<std::uint64_t> expected{labels({1, 2, 3, 4}).bits(), labels({4, 5}).bits(), labels({5, 9}).bits(),
                                         labels({6, 7, 8, 9}).bits()};
  EXPECT_EQ(block_bits(blocks), expected);
}

TEST(FindBlocks, BlocksChainThroughCutVertices) {
  const auto blocks = find_blocks(SmallRelSet::prefix(9), four_block_graph());
  // {1,2,3,4} - 4 - {4,5} - 5 - {5,9} - 9 - {6,7,8,9}
  std::map<std::size_t, int> membership;
  for (auto b : blocks)
    for (auto v : b) ++membership[v];
  for (std::size_t label : {4, 5, 9}) EXPECT_EQ(membership[label - 1], 2);
  for (std::size_t label : {1, 2, 3, 6, 7, 8}) EXPECT_EQ(membership[label - 1], 1);
}

TEST(FindBlocks, TreeEdgesAndCliqueAndSingleton) {
  const auto tree = eight_vertex_tree();
  const auto blocks = find_blocks(SmallRelSet::prefix(8), tree);
  EXPECT_EQ(blocks.size(), tree.edges().size());
  for (auto b : blocks) {
    ASSERT_EQ(b.count(), 2U);
    EXPECT_TRUE(tree.edge_between(b.lowest(), (b - b.lowest_singleton()).lowest()).has_value());
  }
  const auto clique = testing::shape(Topology::kClique, 7);
  EXPECT_EQ(block_bits(find_blocks(SmallRelSet::prefix(7), clique)), std::set<std::uint64_t>{0x7F});
  EXPECT_EQ(find_blocks(labels({3}), tree).size(), 1U);
  EXPECT_THROW(find_blocks(labels({1, 6}), four_block_graph()), ContractViolation);
}

// Blocks by definition: maximal vertex sets whose induced subgraph stays
// connected after deleting any single vertex (or a single edge).
TEST(FindBlocks, MatchesBruteForceOnRandomSubsets) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto g = testing::random_connected(9, seed, 0.25);
    for (std::uint64_t s = 1; s < 512; ++s) {
      const SmallRelSet set(s);
      if (!is_connected(set, g)) continue;
      const auto blocks = find_blocks(set, g);

      std::set<std::uint64_t> expected;
      const auto nonseparable = [&](std::uint64_t b) {
        if (std::popcount(b) == 2) return neighbors(SmallRelSet(b & (~b + 1)), g).intersects(SmallRelSet(b));
        if (!is_connected(SmallRelSet(b), g)) return false;
        for (auto v : SmallRelSet(b))
          if (!is_connected(SmallRelSet(b) - SmallRelSet::singleton(v), g)) return false;
        return true;
      };
      std::vector<std::uint64_t> candidates;
      for (std::uint64_t b = s; b != 0; b = (b - 1) & s)
        if (std::popcount(b) >= 2 && nonseparable(b)) candidates.push_back(b);
      for (auto b : candidates) {
        bool maximal = true;
        for (auto c : candidates) maximal &= !(c != b && (b & ~c) == 0);
        if (maximal) expected.insert(b);
      }
      if (set.count() == 1) expected.insert(s);
      ASSERT_EQ(block_bits(blocks), expected) << "seed " << seed << " set " << to_string(set);
    }
  }
}

}  // namespace
}  // namespace joinopt
