#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <string>

#include "joinopt/relset.hpp"

namespace joinopt {

class QueryGraph;
struct PlanNode;

/// Immutable binary join tree. Copies share structure; a default-constructed
/// Plan is empty.
class Plan {
 public:
  static constexpr std::size_t kNoRelation = std::numeric_limits<std::size_t>::max();

  Plan() = default;

  static Plan leaf(std::size_t relation, std::size_t capacity, double cardinality);
  /// left and right must cover disjoint relation sets.
  static Plan join(Plan left, Plan right, double cardinality, double cost);

  explicit operator bool() const { return node_ != nullptr; }

  const RelSet& relations() const;
  double cardinality() const;
  double cost() const;
  bool is_leaf() const;
  /// Relation index of a leaf, kNoRelation for joins.
  std::size_t relation() const;
  const Plan& left() const;
  const Plan& right() const;
  std::size_t leaf_count() const;
  std::size_t join_count() const { return leaf_count() - 1; }

  /// Nested infix form, e.g. "((R0 ⋈ R2) ⋈ R1)". Relation names come from g
  /// when given, otherwise "R<index>".
  std::string to_string(const QueryGraph* g = nullptr) const;

  bool same_node(const Plan& o) const { return node_ == o.node_; }

 private:
  explicit Plan(std::shared_ptr<const PlanNode> node) : node_(std::move(node)) {}
  const PlanNode& node() const;

  std::shared_ptr<const PlanNode> node_;
};

struct PlanNode {
  RelSet relations;
  double cardinality = 0.0;
  double cost = 0.0;
  std::size_t relation = Plan::kNoRelation;
  std::size_t leaf_count = 1;
  Plan left;
  Plan right;
};

}  // namespace joinopt
