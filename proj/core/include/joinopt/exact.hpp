#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "joinopt/cost_model.hpp"
#include "joinopt/memo.hpp"
#include "joinopt/query_graph.hpp"

namespace joinopt {

/// Input of an exact optimizer: a topology of at most 64 vertices plus the
/// plan standing in for each vertex. In the plain form every vertex is a base
/// relation; in the composite form a vertex is a subplan over relations of a
/// larger original graph (used by the heuristics), and set cardinalities are
/// estimated on the original graph over the union of the covered relations.
class ExactProblem {
 public:
  ExactProblem(const QueryGraph& g, CostModel model);
  ExactProblem(const QueryGraph& topology, const QueryGraph& original, std::vector<Plan> leaves, CostModel model);

  const QueryGraph& topology() const { return *topology_; }
  const QueryGraph& original() const { return *original_; }
  const CostModel& cost_model() const { return model_; }
  std::span<const Plan> leaves() const { return leaves_; }
  std::size_t size() const { return topology_->size(); }

  double cardinality(SmallRelSet s) const;

 private:
  const QueryGraph* topology_;
  const QueryGraph* original_;
  std::vector<Plan> leaves_;
  CostModel model_;
  bool composite_ = false;
};

enum class ExactAlgorithm { kDpSize, kDpSub, kMpdpTree, kMpdp };

std::string_view to_string(ExactAlgorithm algo);

/// Receives enumeration events; used by tests to instrument a run. Calls may
/// come from several worker threads at once.
class EnumerationObserver {
 public:
  virtual ~EnumerationObserver() = default;
  /// After a connected set has been evaluated.
  virtual void on_set(SmallRelSet /*set*/, std::uint64_t /*evaluated*/, std::uint64_t /*ccp*/) {}
  /// For every CCP pair handed to costing.
  virtual void on_pair(SmallRelSet /*set*/, SmallRelSet /*left*/, SmallRelSet /*right*/) {}
};

struct ExactOptions {
  std::size_t workers = 1;
  std::optional<std::chrono::milliseconds> timeout;
  /// Enumerate and count pairs without costing; no plan is produced.
  bool count_only = false;
  /// Fault injection for verification harnesses: mpdp ignores the last block
  /// of every set.
  bool fault_skip_last_block = false;
  EnumerationObserver* observer = nullptr;
};

struct OptimizerResult {
  std::optional<Plan> plan;
  RunStats stats;
};

/// Sets per work item claimed by a pipeline worker.
inline constexpr std::uint64_t kWorkItemSize = 1024;

OptimizerResult dpsize(const ExactProblem& problem, const ExactOptions& options = {});
OptimizerResult dpsub(const ExactProblem& problem, const ExactOptions& options = {});
/// Throws TopologyError unless the topology is a tree.
OptimizerResult mpdp_tree(const ExactProblem& problem, const ExactOptions& options = {});
OptimizerResult mpdp(const ExactProblem& problem, const ExactOptions& options = {});

/// Level-synchronous driver shared by dpsub, mpdp_tree and mpdp: per level,
/// unrank all candidate sets in work items, filter disconnected ones,
/// evaluate and prune each set locally, then scatter into the memo.
OptimizerResult level_pipeline(const ExactProblem& problem, ExactAlgorithm algo, const ExactOptions& options);

OptimizerResult optimize_exact(ExactAlgorithm algo, const ExactProblem& problem, const ExactOptions& options = {});

// Brute-force references, independent of the enumerators above.

inline constexpr std::size_t kOracleMaxRelations = 14;

/// Exhaustive recursion over all CCP splits of every connected set.
Plan oracle_optimal(const QueryGraph& g, const CostModel& model);
/// Ordered CCP pairs over all pairs of disjoint relation subsets.
std::uint64_t oracle_ccp_count(const QueryGraph& g);

}  // namespace joinopt
