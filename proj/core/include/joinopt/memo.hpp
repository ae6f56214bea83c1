#pragma once

#include <chrono>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "joinopt/plan.hpp"
#include "joinopt/relset.hpp"

namespace joinopt {

/// Best known split of one relation set. Leaves have empty children.
struct MemoEntry {
  SmallRelSet left;
  SmallRelSet right;
  double cost = 0.0;
  double cardinality = 0.0;
};

/// Plan order used by every optimizer: lower cost, then smaller left set,
/// then smaller right set. Strict and total over candidates for one set.
inline bool better_than(const MemoEntry& a, const MemoEntry& b) {
  if (a.cost != b.cost) return a.cost < b.cost;
  if (a.left != b.left) return a.left < b.left;
  return a.right < b.right;
}

struct SetHash {
  std::size_t operator()(SmallRelSet s) const {
    // murmur3 fmix64
    std::uint64_t k = s.bits();
    k ^= k >> 33;
    k *= 0xff51afd7ed558ccdULL;
    k ^= k >> 33;
    k *= 0xc4ceb9fe1a85ec53ULL;
    k ^= k >> 33;
    return static_cast<std::size_t>(k);
  }
};

/// DP table with one hash map per set size, so filling level i never moves
/// entries of smaller levels.
class MemoTable {
 public:
  using Level = std::unordered_map<SmallRelSet, MemoEntry, SetHash>;

  explicit MemoTable(std::size_t relation_count);

  std::size_t relation_count() const { return levels_.size() - 1; }

  /// Installs candidate for set when it beats the current entry (or none
  /// exists). Returns whether the entry changed.
  bool update(SmallRelSet set, const MemoEntry& candidate);

  const MemoEntry* find(SmallRelSet set) const {
    const auto& level = levels_[set.count()];
    auto it = level.find(set);
    return it == level.end() ? nullptr : &it->second;
  }
  /// Throws IncompleteMemoError when absent.
  const MemoEntry& at(SmallRelSet set) const;

  const Level& level(std::size_t size) const { return levels_[size]; }
  void reserve(std::size_t size, std::size_t count) { levels_[size].reserve(count); }

  /// Keys of one level in ascending order.
  std::vector<SmallRelSet> sorted_keys(std::size_t size) const;

  std::size_t entry_count() const;

 private:
  std::vector<Level> levels_;
};

/// Rebuilds the join tree for set. leaves[v] is the plan standing in for
/// vertex v; join nodes take cardinality and cost from the memo.
Plan extract_tree(const MemoTable& memo, SmallRelSet set, std::span<const Plan> leaves);

struct RunStats {
  std::uint64_t evaluated_pairs = 0;
  std::uint64_t ccp_pairs = 0;
  std::chrono::nanoseconds elapsed{0};
  bool timed_out = false;

  double elapsed_ms() const { return std::chrono::duration<double, std::milli>(elapsed).count(); }
};

}  // namespace joinopt
