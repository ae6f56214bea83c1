#include "joinopt/plan.hpp"

#include "joinopt/query_graph.hpp"

namespace joinopt {

Plan Plan::leaf(std::size_t relation, std::size_t capacity, double cardinality) {
  auto node = std::make_shared<PlanNode>();
  node->relations = RelSet::singleton(capacity, relation);
  node->cardinality = cardinality;
  node->cost = 0.0;
  node->relation = relation;
  return Plan(std::move(node));
}

Plan Plan::join(Plan left, Plan right, double cardinality, double cost) {
  require(left && right, "Plan::join: empty child");
  require(!left.relations().intersects(right.relations()), "Plan::join: children overlap");
  auto node = std::make_shared<PlanNode>();
  node->relations = left.relations() | right.relations();
  node->cardinality = cardinality;
  node->cost = cost;
  node->leaf_count = left.leaf_count() + right.leaf_count();
  node->left = std::move(left);
  node->right = std::move(right);
  return Plan(std::move(node));
}

const PlanNode& Plan::node() const {
  require(node_ != nullptr, "Plan: access to empty plan");
  return *node_;
}

const RelSet& Plan::relations() const { return node().relations; }
double Plan::cardinality() const { return node().cardinality; }
double Plan::cost() const { return node().cost; }
bool Plan::is_leaf() const { return node().relation != kNoRelation; }
std::size_t Plan::relation() const { return node().relation; }
const Plan& Plan::left() const { return node().left; }
const Plan& Plan::right() const { return node().right; }
std::size_t Plan::leaf_count() const { return node().leaf_count; }

std::string Plan::to_string(const QueryGraph* g) const {
  if (is_leaf()) {
    if (g != nullptr && relation() < g->size()) return g->relation(relation()).name;
    return "R" + std::to_string(relation());
  }
  return "(" + left().to_string(g) + " ⋈ " + right().to_string(g) + ")";
}

}  // namespace joinopt
