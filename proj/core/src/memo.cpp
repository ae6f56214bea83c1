#include "joinopt/memo.hpp"

#include <algorithm>

namespace joinopt {

MemoTable::MemoTable(std::size_t relation_count) : levels_(relation_count + 1) {}

bool MemoTable::update(SmallRelSet set, const MemoEntry& candidate) {
  require(!set.empty() && set.count() < levels_.size(), "MemoTable::update: set outside table");
  auto [it, inserted] = levels_[set.count()].try_emplace(set, candidate);
  if (inserted) return true;
  if (!better_than(candidate, it->second)) return false;
  it->second = candidate;
  return true;
}

const MemoEntry& MemoTable::at(SmallRelSet set) const {
  if (set.empty() || set.count() >= levels_.size()) throw IncompleteMemoError("memo lookup outside table");
  const auto* entry = find(set);
  if (entry == nullptr) throw IncompleteMemoError("memo has no plan for " + to_string(set));
  return *entry;
}

std::vector<SmallRelSet> MemoTable::sorted_keys(std::size_t size) const {
  std::vector<SmallRelSet> keys;
  keys.reserve(levels_[size].size());
  for (const auto& [key, entry] : levels_[size]) keys.push_back(key);
  std::sort(keys.begin(), keys.end());
  return keys;
}

std::size_t MemoTable::entry_count() const {
  std::size_t total = 0;
  for (const auto& level : levels_) total += level.size();
  return total;
}

Plan extract_tree(const MemoTable& memo, SmallRelSet set, std::span<const Plan> leaves) {
  if (set.count() == 1) {
    require(set.lowest() < leaves.size(), "extract_tree: no leaf plan for vertex");
    return leaves[set.lowest()];
  }
  const auto& entry = memo.at(set);
  Plan left = extract_tree(memo, entry.left, leaves);
  Plan right = extract_tree(memo, entry.right, leaves);
  return Plan::join(std::move(left), std::move(right), entry.cardinality, entry.cost);
}

}  // namespace joinopt
