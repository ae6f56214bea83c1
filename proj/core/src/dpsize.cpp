#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <unordered_map>

#include "exact_internal.hpp"
#include "joinopt/exact.hpp"

namespace joinopt {

namespace {

struct SizeWorkItem {
  std::size_t left_size;
  std::size_t begin;
  std::size_t end;
};

struct SizeWorkerOutput {
  std::unordered_map<SmallRelSet, MemoEntry, SetHash> best;
  std::uint64_t evaluated = 0;
  std::uint64_t ccp = 0;
  std::exception_ptr error;
};

}  // namespace

// Joins every memo entry of size l with every entry of size s - l. Overlapping
// and non-adjacent pairs are counted as evaluated before being rejected.
// count_only is not honored: later levels are built from the memo itself.
OptimizerResult dpsize(const ExactProblem& problem, const ExactOptions& options) {
  const QueryGraph& g = problem.topology();
  const std::size_t n = g.size();
  detail::check_exact_capacity(n);

  const detail::Deadline deadline(options.timeout);
  OptimizerResult result;
  MemoTable memo(n);
  detail::seed_leaves(problem, memo);
  std::vector<std::vector<SmallRelSet>> keys(n + 1);
  keys[1] = memo.sorted_keys(1);

  for (std::size_t size = 2; size <= n; ++size) {
    if (deadline.passed()) {
      result.stats.timed_out = true;
      break;
    }
    std::vector<SizeWorkItem> items;
    for (std::size_t l = 1; l < size; ++l)
      for (std::size_t b = 0; b < keys[l].size(); b += kWorkItemSize)
        items.push_back({l, b, std::min(keys[l].size(), b + kWorkItemSize)});

    const std::size_t workers = std::clamp<std::size_t>(options.workers, 1, std::max<std::size_t>(1, items.size()));
    std::atomic<std::size_t> next_item{0};
    std::atomic<bool> stop{false};
    std::vector<SizeWorkerOutput> outputs(workers);

    const auto work = [&](SizeWorkerOutput& out) {
      try {
        std::unordered_map<SmallRelSet, double, SetHash> cardinalities;
        while (!stop.load(std::memory_order_relaxed)) {
          const std::size_t index = next_item.fetch_add(1, std::memory_order_relaxed);
          if (index >= items.size()) break;
          if (deadline.passed()) {
            stop = true;
            break;
          }
          const auto& item = items[index];
          const auto& rights = keys[size - item.left_size];
          for (std::size_t i = item.begin; i < item.end; ++i) {
            const SmallRelSet left = keys[item.left_size][i];
            const SmallRelSet left_neighbors = neighbors(left, g);
            const MemoEntry& l = memo.at(left);
            for (const SmallRelSet right : rights) {
              ++out.evaluated;
              if (left.intersects(right)) continue;
              if (!left_neighbors.intersects(right)) continue;
              ++out.ccp;
              const SmallRelSet set = left | right;
              if (options.observer != nullptr) options.observer->on_pair(set, left, right);
              auto [card, inserted] = cardinalities.try_emplace(set, 0.0);
              if (inserted) card->second = problem.cardinality(set);
              const MemoEntry& r = memo.at(right);
              const MemoEntry candidate{
                  left, right,
                  problem.cost_model().join_cost(l.cost, l.cardinality, r.cost, r.cardinality, card->second),
                  card->second};
              auto [it, fresh] = out.best.try_emplace(set, candidate);
              if (!fresh && better_than(candidate, it->second)) it->second = candidate;
            }
          }
        }
      } catch (...) {
        out.error = std::current_exception();
        stop = true;
      }
    };

    if (workers == 1) {
      work(outputs[0]);
    } else {
      std::vector<std::jthread> threads;
      threads.reserve(workers);
      for (auto& out : outputs) threads.emplace_back(work, std::ref(out));
    }

    for (const auto& out : outputs) {
      if (out.error) std::rethrow_exception(out.error);
      result.stats.evaluated_pairs += out.evaluated;
      result.stats.ccp_pairs += out.ccp;
    }
    if (stop.load()) {
      result.stats.timed_out = true;
      break;
    }
    for (const auto& out : outputs)
      for (const auto& [set, entry] : out.best) memo.update(set, entry);
    keys[size] = memo.sorted_keys(size);
  }

  if (!result.stats.timed_out) result.plan = extract_tree(memo, SmallRelSet::prefix(n), problem.leaves());
  result.stats.elapsed = deadline.elapsed();
  return result;
}

}  // namespace joinopt
