#include "exact_internal.hpp"
#include "joinopt/exact.hpp"

namespace joinopt {

ExactProblem::ExactProblem(const QueryGraph& g, CostModel model) : topology_(&g), original_(&g), model_(model) {
  leaves_.reserve(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) leaves_.push_back(model_.make_leaf(v, g));
}

ExactProblem::ExactProblem(const QueryGraph& topology, const QueryGraph& original, std::vector<Plan> leaves,
                           CostModel model)
    : topology_(&topology), original_(&original), leaves_(std::move(leaves)), model_(model), composite_(true) {
  require(leaves_.size() == topology.size(), "ExactProblem: one leaf plan per vertex required");
  RelSet covered = original.empty_set();
  for (const auto& leaf : leaves_) {
    require(static_cast<bool>(leaf), "ExactProblem: empty leaf plan");
    require(leaf.relations().capacity() == original.size(), "ExactProblem: leaf plan over a different graph");
    require(!leaf.relations().intersects(covered), "ExactProblem: leaf plans overlap");
    covered |= leaf.relations();
  }
}

double ExactProblem::cardinality(SmallRelSet s) const {
  if (!composite_) return estimate_cardinality(s, *topology_);
  if (s.count() == 1) return leaves_[s.lowest()].cardinality();
  RelSet covered = original_->empty_set();
  for (auto v : s) covered |= leaves_[v].relations();
  return estimate_cardinality(covered, *original_);
}

std::string_view to_string(ExactAlgorithm algo) {
  switch (algo) {
    case ExactAlgorithm::kDpSize: return "dpsize";
    case ExactAlgorithm::kDpSub: return "dpsub";
    case ExactAlgorithm::kMpdpTree: return "mpdp-tree";
    case ExactAlgorithm::kMpdp: return "mpdp";
  }
  return "unknown";
}

OptimizerResult optimize_exact(ExactAlgorithm algo, const ExactProblem& problem, const ExactOptions& options) {
  if (algo == ExactAlgorithm::kDpSize) return dpsize(problem, options);
  return level_pipeline(problem, algo, options);
}

}  // namespace joinopt
