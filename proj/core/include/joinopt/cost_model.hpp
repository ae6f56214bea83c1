#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "joinopt/plan.hpp"
#include "joinopt/query_graph.hpp"

namespace joinopt {

enum class CostKind {
  kCout,      // sum of intermediate result sizes
  kHashJoin,  // c_out plus linear build and probe terms for both inputs
};

std::string_view to_string(CostKind kind);
std::optional<CostKind> parse_cost_kind(std::string_view text);

/// Cardinality of the join over s: product of filtered base cardinalities
/// times the selectivity of every edge induced by s. Factors are multiplied in
/// a fixed order (per member ascending: its filtered cardinality, then its
/// induced edges toward larger indices), so the result is a function of the
/// set alone, bit for bit. Interleaving keeps the running product finite on
/// PK-FK graphs with hundreds of relations.
double estimate_cardinality(SmallRelSet s, const QueryGraph& g);
double estimate_cardinality(const RelSet& s, const QueryGraph& g);

class CostModel {
 public:
  CostModel() = default;
  explicit CostModel(CostKind kind) : kind_(kind) {}

  CostKind kind() const { return kind_; }

  /// Symmetric in (left, right) bit for bit: each commutative pair is summed
  /// before the pairs are combined.
  double join_cost(double left_cost, double left_cardinality, double right_cost, double right_cardinality,
                   double output_cardinality) const {
    if (kind_ == CostKind::kCout) return (left_cost + right_cost) + output_cardinality;
    return ((left_cost + right_cost) + (left_cardinality + right_cardinality)) + output_cardinality;
  }

  double join_cost(const Plan& left, const Plan& right, const QueryGraph& g) const;

  /// Cost of joining the current plans on both sides of an edge.
  double edge_weight(const Plan& left_side, const Plan& right_side, const QueryGraph& g) const {
    return join_cost(left_side, right_side, g);
  }

  /// Builds the join of two plans with cardinality and cost from this model.
  Plan make_join(Plan left, Plan right, const QueryGraph& g) const;
  Plan make_leaf(std::size_t relation, const QueryGraph& g) const;

  bool operator==(const CostModel&) const = default;

 private:
  CostKind kind_ = CostKind::kHashJoin;
};

struct PlanCosts {
  double cost;
  double cardinality;
};

/// Recomputes cost and cardinality bottom-up from the leaves of plan.
PlanCosts recompute_costs(const Plan& plan, const QueryGraph& g, const CostModel& model);

}  // namespace joinopt
