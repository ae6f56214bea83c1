#include "joinopt/exact.hpp"
#include "joinopt/workload.hpp"

int main() {
  const auto g = joinopt::generate({.topology = joinopt::Topology::kChain, .n_rels = 6});
  const auto r = joinopt::mpdp(joinopt::ExactProblem(g, joinopt::CostModel{}));
  return r.plan && r.plan->leaf_count() == 6 ? 0 : 1;
}
