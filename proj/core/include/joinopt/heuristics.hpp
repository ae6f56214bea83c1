#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "joinopt/cost_model.hpp"
#include "joinopt/memo.hpp"
#include "joinopt/plan.hpp"
#include "joinopt/query_graph.hpp"

namespace joinopt {

inline constexpr std::size_t kDefaultHeuristicK = 15;
inline constexpr std::size_t kMaxHeuristicK = 25;

struct HeuristicOptions {
  /// Workers of each inner mpdp run.
  std::size_t workers = 1;
  std::optional<std::chrono::milliseconds> timeout;
};

struct HeuristicResult {
  Plan plan;
  /// Counters summed over all inner exact runs.
  RunStats stats;
};

/// A contracted group of relations standing in for one vertex.
struct CompositeNode {
  RelSet relations;
  Plan plan;
};

/// Graph over composite nodes. Edge (a, b) carries the product of the
/// selectivities of all original edges between the two nodes, multiplied in
/// original edge order.
class CompositeGraph {
 public:
  /// One node per relation, each holding its leaf plan.
  static CompositeGraph from_query(const QueryGraph& g, const CostModel& model);
  /// Node relation sets must partition the original relations.
  CompositeGraph(const QueryGraph& original, std::vector<CompositeNode> nodes);

  const QueryGraph& original() const { return *original_; }
  std::size_t size() const { return nodes_.size(); }
  const CompositeNode& node(std::size_t i) const { return nodes_[i]; }
  const std::vector<CompositeNode>& nodes() const { return nodes_; }
  const std::vector<EdgeInfo>& edges() const { return edges_; }

  /// Join graph over the given nodes (ascending indices), renumbered
  /// 0..members.size()-1, for use as an exact-optimizer topology.
  QueryGraph induced_topology(std::span<const std::size_t> members) const;
  std::vector<Plan> plans(std::span<const std::size_t> members) const;

 private:
  const QueryGraph* original_;
  std::vector<CompositeNode> nodes_;
  std::vector<EdgeInfo> edges_;
};

/// Replaces every partition (node indices of g) by one node holding its
/// subplan. Partition i becomes node i.
CompositeGraph contract(const CompositeGraph& g, const std::vector<std::vector<std::size_t>>& partitions,
                        std::vector<Plan> subplans);

class UnionFind {
 public:
  explicit UnionFind(std::size_t n);
  std::size_t find(std::size_t x);
  /// Returns the surviving root.
  std::size_t unite(std::size_t a, std::size_t b);
  std::size_t size_of(std::size_t x) { return size_[find(x)]; }
  const RelSet& members(std::size_t x) { return members_[find(x)]; }
  std::size_t element_count() const { return parent_.size(); }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> rank_;
  std::vector<std::size_t> size_;
  std::vector<RelSet> members_;
};

/// UnionDP partition phase: repeatedly unions the endpoint sets of the edge
/// minimizing (combined node count, weight, edge index) while the combined
/// count stays within k. Partitions are returned as sorted node indices,
/// ordered by their smallest node.
std::vector<std::vector<std::size_t>> partition_phase(const CompositeGraph& g, std::size_t k, const CostModel& model);

/// Greedy operator ordering: repeatedly joins the two adjacent components
/// whose join has the smallest result (then the cheaper join, then the
/// smaller relation sets).
Plan goo(const QueryGraph& g, const CostModel& model = {});

/// Iterative DP starting from goo: repeatedly re-optimizes the costliest
/// subtree with at most k leaves using mpdp and freezes the result as a
/// leaf. Stops early on timeout, returning the current (complete) plan.
HeuristicResult idp2(const QueryGraph& g, std::size_t k, const CostModel& model = {},
                     const HeuristicOptions& options = {});

/// Partition, optimize each partition with mpdp, contract, recurse. Throws
/// TimeoutError when the budget runs out.
HeuristicResult uniondp(const QueryGraph& g, std::size_t k, const CostModel& model = {},
                        const HeuristicOptions& options = {});

}  // namespace joinopt
