#include <algorithm>
#include <set>

#include "heuristics_internal.hpp"

namespace joinopt {

namespace {

struct Subtree {
  const Plan* plan = nullptr;
  std::size_t leaves = 0;
};

class Idp2State {
 public:
  explicit Idp2State(std::size_t k) : k_(k) {}

  bool is_unit(const Plan& p) const { return p.is_leaf() || frozen_.contains(p.relations()); }
  void freeze(const RelSet& s) { frozen_.insert(s); }

  // Effective leaf count of p, recording the costliest eligible subtree.
  std::size_t scan(const Plan& p, Subtree& best) const {
    if (is_unit(p)) return 1;
    const std::size_t leaves = scan(p.left(), best) + scan(p.right(), best);
    if (leaves <= k_ && beats(p, leaves, best)) best = {&p, leaves};
    return leaves;
  }

  void collect_units(const Plan& p, std::vector<CompositeNode>& out) const {
    if (is_unit(p)) {
      out.push_back({p.relations(), p});
      return;
    }
    collect_units(p.left(), out);
    collect_units(p.right(), out);
  }

 private:
  static bool beats(const Plan& p, std::size_t leaves, const Subtree& best) {
    if (best.plan == nullptr) return true;
    if (p.cost() != best.plan->cost()) return p.cost() > best.plan->cost();
    if (leaves != best.leaves) return leaves > best.leaves;
    return p.relations() < best.plan->relations();
  }

  std::size_t k_;
  std::set<RelSet> frozen_;
};

// Rebuilds the path from root to the node covering target, swapping in
// replacement; ancestors get their cost recomputed.
Plan substitute(const Plan& root, const RelSet& target, const Plan& replacement, const QueryGraph& g,
                const CostModel& model) {
  if (root.relations() == target) return replacement;
  if (target.is_subset_of(root.left().relations()))
    return model.make_join(substitute(root.left(), target, replacement, g, model), root.right(), g);
  return model.make_join(root.left(), substitute(root.right(), target, replacement, g, model), g);
}

}  // namespace

HeuristicResult idp2(const QueryGraph& g, std::size_t k, const CostModel& model, const HeuristicOptions& options) {
  detail::check_heuristic_k(k);
  const detail::Deadline deadline(options.timeout);
  HeuristicResult result;
  Plan tree = goo(g, model);
  Idp2State state(k);

  while (!state.is_unit(tree)) {
    if (deadline.passed()) {
      result.stats.timed_out = true;
      break;
    }
    Subtree chosen;
    state.scan(tree, chosen);
    require(chosen.plan != nullptr, "idp2: no subtree within k leaves");
    const RelSet target = chosen.plan->relations();

    std::vector<CompositeNode> units;
    state.collect_units(tree, units);
    std::sort(units.begin(), units.end(),
              [](const CompositeNode& a, const CompositeNode& b) { return a.relations < b.relations; });
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < units.size(); ++i)
      if (units[i].relations.is_subset_of(target)) members.push_back(i);
    const CompositeGraph current(g, std::move(units));

    auto optimized = detail::optimize_members(current, members, model, options, deadline, result.stats);
    if (!optimized) break;
    tree = substitute(tree, target, *optimized, g, model);
    state.freeze(target);
  }

  result.plan = tree;
  result.stats.elapsed = deadline.elapsed();
  return result;
}

}  // namespace joinopt
