#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "joinopt/cost_model.hpp"
#include "joinopt/query_graph.hpp"
#include "joinopt/workload.hpp"

namespace joinopt::testing {

/// Graph from 1-based vertex labels; label i becomes index i-1.
QueryGraph labeled_graph(std::size_t n, std::initializer_list<std::pair<std::size_t, std::size_t>> edges);
SmallRelSet labels(std::initializer_list<std::size_t> ids);

/// Nine vertices, four blocks {1,2,3,4} {4,5} {5,9} {6,7,8,9}.
QueryGraph four_block_graph();
/// Eight-vertex tree.
QueryGraph eight_vertex_tree();

QueryGraph shape(Topology t, std::size_t n, std::uint64_t seed = 1);

/// Random spanning tree plus each remaining pair with probability extra.
QueryGraph random_connected(std::size_t n, std::uint64_t seed, double extra);

struct SuiteCase {
  std::string label;
  QueryGraph graph;
  CostModel model;
};

/// Mixed topologies (the five generator shapes plus random cyclic graphs)
/// with n in [min_n, max_n], alternating cost kinds.
std::vector<SuiteCase> mixed_suite(std::size_t count, std::size_t min_n, std::size_t max_n, std::uint64_t seed);

}  // namespace joinopt::testing
