#pragma once

#include <optional>
#include <span>

#include "exact_internal.hpp"
#include "joinopt/exact.hpp"
#include "joinopt/heuristics.hpp"

namespace joinopt::detail {

inline void check_heuristic_k(std::size_t k) {
  require(k >= 2 && k <= kMaxHeuristicK,
          "heuristic block size k must be in [2, " + std::to_string(kMaxHeuristicK) + "], got " + std::to_string(k));
}

/// Optimal plan over the given composite nodes using mpdp; empty on timeout.
inline std::optional<Plan> optimize_members(const CompositeGraph& g, std::span<const std::size_t> members,
                                            const CostModel& model, const HeuristicOptions& options,
                                            const Deadline& deadline, RunStats& total) {
  if (members.size() == 1) return g.node(members.front()).plan;
  const QueryGraph topology = g.induced_topology(members);
  const ExactProblem problem(topology, g.original(), g.plans(members), model);
  ExactOptions exact;
  exact.workers = options.workers;
  exact.timeout = deadline.remaining();
  auto result = mpdp(problem, exact);
  total.evaluated_pairs += result.stats.evaluated_pairs;
  total.ccp_pairs += result.stats.ccp_pairs;
  if (result.stats.timed_out) {
    total.timed_out = true;
    return std::nullopt;
  }
  return std::move(result.plan);
}

}  // namespace joinopt::detail
