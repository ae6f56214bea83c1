#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "exact_internal.hpp"
#include "joinopt/exact.hpp"

namespace joinopt {

namespace {

/// Per-worker evaluation state; keeps the running best split of the set
/// currently being evaluated (the prune phase happens inline).
class SetEvaluator {
 public:
  SetEvaluator(const ExactProblem& problem, const MemoTable& memo, const ExactOptions& options)
      : problem_(problem), memo_(memo), options_(options), graph_(problem.topology()) {}

  void begin(SmallRelSet set) {
    set_ = set;
    found_ = false;
    if (!options_.count_only) output_cardinality_ = problem_.cardinality(set);
  }

  void offer(SmallRelSet left, SmallRelSet right) {
    if (options_.observer != nullptr) options_.observer->on_pair(set_, left, right);
    if (options_.count_only) return;
    const auto& l = memo_.at(left);
    const auto& r = memo_.at(right);
    const MemoEntry candidate{
        left, right,
        problem_.cost_model().join_cost(l.cost, l.cardinality, r.cost, r.cardinality, output_cardinality_),
        output_cardinality_};
    if (!found_ || better_than(candidate, best_)) {
      best_ = candidate;
      found_ = true;
    }
  }

  // Vertex-based enumeration over all subsets of the set.
  void dpsub_set() {
    const std::uint64_t m = set_.count();
    const std::uint64_t last = (std::uint64_t{1} << m) - 1;
    if (options_.count_only) {
      // The loop below would visit every mask; only its CCP pairs need work.
      evaluated += last;
      ccp += detail::count_ccp_pairs_by_blocks(set_, graph_, blocks_);
      return;
    }
    for (std::uint64_t mask = 1; mask <= last; ++mask) {
      ++evaluated;
      const SmallRelSet left(deposit_bits(mask, set_.bits()));
      const SmallRelSet right = set_ - left;
      if (right.empty() || left.empty()) continue;
      if (!is_connected(left, graph_)) continue;
      if (!is_connected(right, graph_)) continue;
      if (left.intersects(right)) continue;
      if (!neighbors(left, graph_).intersects(right)) continue;
      ++ccp;
      offer(left, right);
    }
  }

  // Edge-based enumeration: every induced edge of a tree splits it in two.
  void mpdp_tree_set() {
    for (auto u : set_) {
      const SmallRelSet later = graph_.small_adjacency(u) & set_ & SmallRelSet(~((std::uint64_t{2} << u) - 1));
      for (auto v : later) {
        const SmallRelSet left = grow(SmallRelSet::singleton(u), set_ - SmallRelSet::singleton(v), graph_);
        const SmallRelSet right = set_ - left;
        evaluated += 2;
        ccp += 2;
        offer(left, right);
        offer(right, left);
      }
    }
  }

  // Vertex-based enumeration inside each block, expanded to the whole set by
  // growing across cut vertices.
  void mpdp_set() {
    find_blocks_unchecked(set_, graph_, blocks_);
    std::size_t block_count = blocks_.size();
    if (options_.fault_skip_last_block && block_count > 0) --block_count;
    for (std::size_t b = 0; b < block_count; ++b) {
      const SmallRelSet block = blocks_[b];
      const std::uint64_t last = (std::uint64_t{1} << block.count()) - 2;
      for (std::uint64_t mask = 1; mask <= last; ++mask) {
        ++evaluated;
        const SmallRelSet lb(deposit_bits(mask, block.bits()));
        const SmallRelSet rb = block - lb;
        if (lb.empty() || rb.empty()) continue;
        if (!is_connected(lb, graph_)) continue;
        if (!is_connected(rb, graph_)) continue;
        if (!neighbors(lb, graph_).intersects(rb)) continue;
        ++ccp;
        if (options_.count_only) continue;
        const SmallRelSet left = grow(lb, set_ - rb, graph_);
        offer(left, set_ - left);
      }
    }
  }

  bool found() const { return found_; }
  const MemoEntry& best() const { return best_; }

  std::uint64_t evaluated = 0;
  std::uint64_t ccp = 0;

 private:
  const ExactProblem& problem_;
  const MemoTable& memo_;
  const ExactOptions& options_;
  const QueryGraph& graph_;
  BlockList blocks_;
  SmallRelSet set_;
  double output_cardinality_ = 0.0;
  MemoEntry best_;
  bool found_ = false;
};

struct WorkerOutput {
  std::vector<std::pair<SmallRelSet, MemoEntry>> best;
  std::uint64_t evaluated = 0;
  std::uint64_t ccp = 0;
  std::exception_ptr error;
};

}  // namespace

namespace detail {

std::uint64_t count_ccp_pairs_by_blocks(SmallRelSet set, const QueryGraph& g, BlockList& scratch) {
  find_blocks_unchecked(set, g, scratch);
  std::uint64_t count = 0;
  for (const SmallRelSet block : scratch) {
    const std::uint64_t last = (std::uint64_t{1} << block.count()) - 2;
    for (std::uint64_t mask = 1; mask <= last; ++mask) {
      const SmallRelSet lb(deposit_bits(mask, block.bits()));
      const SmallRelSet rb = block - lb;
      if (is_connected(lb, g) && is_connected(rb, g) && neighbors(lb, g).intersects(rb)) ++count;
    }
  }
  return count;
}

}  // namespace detail

OptimizerResult level_pipeline(const ExactProblem& problem, ExactAlgorithm algo, const ExactOptions& options) {
  require(algo != ExactAlgorithm::kDpSize, "level_pipeline: dpsize has its own driver");
  const QueryGraph& g = problem.topology();
  const std::size_t n = g.size();
  detail::check_exact_capacity(n);
  if (algo == ExactAlgorithm::kMpdpTree && !g.is_tree())
    throw TopologyError("mpdp-tree requires an acyclic join graph; use mpdp for graphs with cycles");

  const detail::Deadline deadline(options.timeout);
  OptimizerResult result;
  MemoTable memo(n);
  detail::seed_leaves(problem, memo);

  for (std::size_t level = 2; level <= n; ++level) {
    if (deadline.passed()) {
      result.stats.timed_out = true;
      break;
    }
    const std::uint64_t total = binomial(n, level);
    const std::uint64_t items = (total + kWorkItemSize - 1) / kWorkItemSize;
    const std::size_t workers = std::clamp<std::size_t>(options.workers, 1, static_cast<std::size_t>(items));
    std::atomic<std::uint64_t> next_item{0};
    std::atomic<bool> stop{false};
    std::vector<WorkerOutput> outputs(workers);

    const auto work = [&](WorkerOutput& out) {
      try {
        SetEvaluator evaluator(problem, memo, options);
        std::vector<SmallRelSet> sets;
        sets.reserve(kWorkItemSize);
        while (!stop.load(std::memory_order_relaxed)) {
          const std::uint64_t item = next_item.fetch_add(1, std::memory_order_relaxed);
          if (item >= items) break;
          if (deadline.passed()) {
            stop = true;
            break;
          }
          // unrank
          const std::uint64_t first = item * kWorkItemSize;
          const std::uint64_t count = std::min(kWorkItemSize, total - first);
          sets.clear();
          std::uint64_t bits = unrank_combination(first, level, n).bits();
          for (std::uint64_t j = 0; j < count; ++j) {
            sets.emplace_back(bits);
            if (j + 1 < count) bits = next_combination(bits);
          }
          // filter
          std::erase_if(sets, [&](SmallRelSet s) { return !is_connected(s, g); });
          // evaluate + prune
          for (const SmallRelSet set : sets) {
            const auto evaluated_before = evaluator.evaluated;
            const auto ccp_before = evaluator.ccp;
            evaluator.begin(set);
            switch (algo) {
              case ExactAlgorithm::kDpSub: evaluator.dpsub_set(); break;
              case ExactAlgorithm::kMpdpTree: evaluator.mpdp_tree_set(); break;
              default: evaluator.mpdp_set(); break;
            }
            if (options.observer != nullptr)
              options.observer->on_set(set, evaluator.evaluated - evaluated_before, evaluator.ccp - ccp_before);
            if (!options.count_only && evaluator.found()) out.best.emplace_back(set, evaluator.best());
          }
        }
        out.evaluated = evaluator.evaluated;
        out.ccp = evaluator.ccp;
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
    // scatter
    if (!options.count_only) {
      std::size_t found = 0;
      for (const auto& out : outputs) found += out.best.size();
      memo.reserve(level, found);
      for (const auto& out : outputs)
        for (const auto& [set, entry] : out.best) memo.update(set, entry);
    }
  }

  if (!result.stats.timed_out && !options.count_only)
    result.plan = extract_tree(memo, SmallRelSet::prefix(n), problem.leaves());
  result.stats.elapsed = deadline.elapsed();
  return result;
}

OptimizerResult dpsub(const ExactProblem& problem, const ExactOptions& options) {
  return level_pipeline(problem, ExactAlgorithm::kDpSub, options);
}

OptimizerResult mpdp_tree(const ExactProblem& problem, const ExactOptions& options) {
  return level_pipeline(problem, ExactAlgorithm::kMpdpTree, options);
}

OptimizerResult mpdp(const ExactProblem& problem, const ExactOptions& options) {
  return level_pipeline(problem, ExactAlgorithm::kMpdp, options);
}

}  // namespace joinopt
