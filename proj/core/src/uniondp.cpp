#include <numeric>

#include "heuristics_internal.hpp"

namespace joinopt {

HeuristicResult uniondp(const QueryGraph& g, std::size_t k, const CostModel& model, const HeuristicOptions& options) {
  detail::check_heuristic_k(k);
  const detail::Deadline deadline(options.timeout);
  HeuristicResult result;
  const auto expired = [&] {
    result.stats.timed_out = true;
    return TimeoutError("uniondp: time budget exhausted before a complete plan existed");
  };

  CompositeGraph current = CompositeGraph::from_query(g, model);
  while (current.size() > k) {
    if (deadline.passed()) throw expired();
    const auto partitions = partition_phase(current, k, model);
    std::vector<Plan> subplans;
    subplans.reserve(partitions.size());
    for (const auto& members : partitions) {
      auto plan = detail::optimize_members(current, members, model, options, deadline, result.stats);
      if (!plan) throw expired();
      subplans.push_back(std::move(*plan));
    }
    current = contract(current, partitions, std::move(subplans));
  }

  std::vector<std::size_t> all(current.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  auto plan = detail::optimize_members(current, all, model, options, deadline, result.stats);
  if (!plan) throw expired();
  result.plan = std::move(*plan);
  result.stats.elapsed = deadline.elapsed();
  return result;
}

}  // namespace joinopt
