#pragma once

#include <algorithm>
#include <chrono>
#include <optional>

#include "joinopt/exact.hpp"

namespace joinopt::detail {

/// Mask arithmetic in the enumerators needs one spare bit.
inline constexpr std::size_t kExactMaxRelations = 63;

inline void check_exact_capacity(std::size_t n) {
  if (n > kExactMaxRelations)
    throw CapacityError("exact optimizers support at most " + std::to_string(kExactMaxRelations) +
                        " relations, query has " + std::to_string(n));
}

class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  explicit Deadline(std::optional<std::chrono::milliseconds> timeout) : start_(Clock::now()) {
    if (timeout) end_ = start_ + *timeout;
  }
  bool passed() const { return end_ && Clock::now() >= *end_; }
  std::chrono::nanoseconds elapsed() const { return Clock::now() - start_; }
  /// Budget left, clamped at zero; empty when unbounded.
  std::optional<std::chrono::milliseconds> remaining() const {
    if (!end_) return std::nullopt;
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(*end_ - Clock::now());
    return std::max(left, std::chrono::milliseconds{0});
  }

 private:
  Clock::time_point start_;
  std::optional<Clock::time_point> end_;
};

inline void seed_leaves(const ExactProblem& problem, MemoTable& memo) {
  const auto leaves = problem.leaves();
  for (std::size_t v = 0; v < leaves.size(); ++v)
    memo.update(SmallRelSet::singleton(v), MemoEntry{{}, {}, leaves[v].cost(), leaves[v].cardinality()});
}

/// Ordered CCP pairs of a connected set, found through its blocks.
std::uint64_t count_ccp_pairs_by_blocks(SmallRelSet set, const QueryGraph& g, BlockList& scratch);

}  // namespace joinopt::detail
