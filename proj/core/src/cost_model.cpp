#include "joinopt/cost_model.hpp"

namespace joinopt {

std::string_view to_string(CostKind kind) { return kind == CostKind::kCout ? "c_out" : "hash_join"; }

std::optional<CostKind> parse_cost_kind(std::string_view text) {
  if (text == "c_out") return CostKind::kCout;
  if (text == "hash_join") return CostKind::kHashJoin;
  return std::nullopt;
}

double estimate_cardinality(SmallRelSet s, const QueryGraph& g) {
  double result = 1.0;
  for (auto u : s) {
    const auto& info = g.relation(u);
    result *= info.base_cardinality * info.selection_factor;
    for (const auto& f : g.forward_edges(u))
      if (s.contains(f.to)) result *= f.selectivity;
  }
  return result;
}

double estimate_cardinality(const RelSet& s, const QueryGraph& g) {
  require(s.capacity() == g.size(), "estimate_cardinality: set capacity does not match graph");
  double result = 1.0;
  for (auto u : s) {
    const auto& info = g.relation(u);
    result *= info.base_cardinality * info.selection_factor;
    for (const auto& f : g.forward_edges(u))
      if (s.contains(f.to)) result *= f.selectivity;
  }
  return result;
}

double CostModel::join_cost(const Plan& left, const Plan& right, const QueryGraph& g) const {
  require(!left.relations().intersects(right.relations()), "join_cost: overlapping inputs");
  const double out = estimate_cardinality(left.relations() | right.relations(), g);
  return join_cost(left.cost(), left.cardinality(), right.cost(), right.cardinality(), out);
}

Plan CostModel::make_join(Plan left, Plan right, const QueryGraph& g) const {
  require(!left.relations().intersects(right.relations()), "make_join: overlapping inputs");
  const double out = estimate_cardinality(left.relations() | right.relations(), g);
  const double cost = join_cost(left.cost(), left.cardinality(), right.cost(), right.cardinality(), out);
  return Plan::join(std::move(left), std::move(right), out, cost);
}

Plan CostModel::make_leaf(std::size_t relation, const QueryGraph& g) const {
  return Plan::leaf(relation, g.size(), estimate_cardinality(RelSet::singleton(g.size(), relation), g));
}

PlanCosts recompute_costs(const Plan& plan, const QueryGraph& g, const CostModel& model) {
  if (plan.is_leaf()) return {0.0, estimate_cardinality(plan.relations(), g)};
  const auto l = recompute_costs(plan.left(), g, model);
  const auto r = recompute_costs(plan.right(), g, model);
  const double out = estimate_cardinality(plan.relations(), g);
  return {model.join_cost(l.cost, l.cardinality, r.cost, r.cardinality, out), out};
}

}  // namespace joinopt
