#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "joinopt/relset.hpp"

namespace joinopt {

struct RelationInfo {
  std::string name;
  double base_cardinality = 1.0;
  double selection_factor = 1.0;

  bool operator==(const RelationInfo&) const = default;
};

struct EdgeInfo {
  std::size_t u = 0;
  std::size_t v = 0;
  double selectivity = 1.0;

  bool operator==(const EdgeInfo&) const = default;
};

/// Neighbor on the larger-index side of an edge, with the edge's selectivity.
struct ForwardEdge {
  std::size_t to;
  std::size_t edge;
  double selectivity;
};

enum class GraphCheck {
  kFull,           // structure, connectivity and value ranges of a loaded query
  kStructureOnly,  // structure and connectivity only; derived graphs may carry underflowed estimates
};

/// Undirected, connected join graph. Immutable after construction; edges are
/// kept sorted by (u, v).
class QueryGraph {
 public:
  QueryGraph(std::vector<RelationInfo> relations, std::vector<EdgeInfo> edges,
             GraphCheck check = GraphCheck::kFull);

  std::size_t size() const { return relations_.size(); }
  const RelationInfo& relation(std::size_t i) const { return relations_[i]; }
  const std::vector<RelationInfo>& relations() const { return relations_; }
  const std::vector<EdgeInfo>& edges() const { return edges_; }

  const RelSet& adjacency(std::size_t v) const { return adjacency_[v]; }
  /// Only meaningful when fits_small().
  SmallRelSet small_adjacency(std::size_t v) const { return small_adjacency_[v]; }
  bool fits_small() const { return size() <= SmallRelSet::kCapacity; }
  std::span<const ForwardEdge> forward_edges(std::size_t u) const { return forward_[u]; }

  std::optional<std::size_t> edge_between(std::size_t a, std::size_t b) const;
  bool is_tree() const { return edges_.size() + 1 == size(); }

  RelSet all() const { return RelSet::full(size()); }
  RelSet empty_set() const { return RelSet(size()); }

  bool operator==(const QueryGraph& o) const { return relations_ == o.relations_ && edges_ == o.edges_; }

 private:
  std::vector<RelationInfo> relations_;
  std::vector<EdgeInfo> edges_;
  std::vector<RelSet> adjacency_;
  std::vector<SmallRelSet> small_adjacency_;
  std::vector<std::vector<ForwardEdge>> forward_;
};

// ---------------------------------------------------------------------------
// Graph primitives. SmallRelSet overloads are the exact optimizers' hot path;
// RelSet overloads serve arbitrary graph sizes.

inline SmallRelSet neighbors(SmallRelSet s, const QueryGraph& g) {
  SmallRelSet n;
  for (auto v : s) n |= g.small_adjacency(v);
  return n - s;
}
RelSet neighbors(const RelSet& s, const QueryGraph& g);

/// Vertices of restriction reachable from source along edges inside restriction.
inline SmallRelSet grow(SmallRelSet source, SmallRelSet restriction, const QueryGraph& g) {
  require(!source.empty(), "grow: empty source");
  require(source.is_subset_of(restriction), "grow: source not inside restriction");
  SmallRelSet reached = source;
  SmallRelSet frontier = source;
  while (!frontier.empty()) {
    SmallRelSet next;
    for (auto v : frontier) next |= g.small_adjacency(v);
    next = (next & restriction) - reached;
    reached |= next;
    frontier = next;
  }
  return reached;
}
RelSet grow(const RelSet& source, const RelSet& restriction, const QueryGraph& g);

/// Empty sets are reported as disconnected.
inline bool is_connected(SmallRelSet s, const QueryGraph& g) {
  return !s.empty() && grow(s.lowest_singleton(), s, g) == s;
}
bool is_connected(const RelSet& s, const QueryGraph& g);

inline bool is_ccp_pair(SmallRelSet left, SmallRelSet right, const QueryGraph& g) {
  return !left.empty() && !right.empty() && !left.intersects(right) && is_connected(left, g) &&
         is_connected(right, g) && neighbors(left, g).intersects(right);
}
bool is_ccp_pair(const RelSet& left, const RelSet& right, const QueryGraph& g);

/// Biconnected components of an induced subgraph; fixed capacity so the
/// per-set enumeration does not allocate.
class BlockList {
 public:
  void push_back(SmallRelSet block) { blocks_[size_++] = block; }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  SmallRelSet operator[](std::size_t i) const { return blocks_[i]; }
  const SmallRelSet* begin() const { return blocks_.data(); }
  const SmallRelSet* end() const { return blocks_.data() + size_; }
  void clear() { size_ = 0; }

 private:
  std::array<SmallRelSet, SmallRelSet::kCapacity> blocks_{};
  std::size_t size_ = 0;
};

/// Hopcroft-Tarjan over the subgraph induced by s, which must be connected.
BlockList find_blocks(SmallRelSet s, const QueryGraph& g);
/// Same, skipping the connectivity precondition check.
void find_blocks_unchecked(SmallRelSet s, const QueryGraph& g, BlockList& out);

}  // namespace joinopt
