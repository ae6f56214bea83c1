#include <bit>
#include <map>
#include <queue>

#include "joinopt/exact.hpp"

namespace joinopt {

namespace {

// Deliberately shares nothing with the enumerators: adjacency is rebuilt from
// the edge list, connectivity is a queue-based BFS, and subsets come from
// plain submask decrement.
class BruteForce {
 public:
  explicit BruteForce(const QueryGraph& g) : edges_(g.edges()), adjacency_(g.size(), 0) {
    for (const auto& e : edges_) {
      adjacency_[e.u] |= std::uint64_t{1} << e.v;
      adjacency_[e.v] |= std::uint64_t{1} << e.u;
    }
  }

  bool connected(std::uint64_t s) const {
    if (s == 0) return false;
    std::uint64_t seen = s & (~s + 1);
    std::queue<int> queue;
    queue.push(std::countr_zero(s));
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop();
      for (std::size_t w = 0; w < adjacency_.size(); ++w) {
        const std::uint64_t bit = std::uint64_t{1} << w;
        if ((adjacency_[v] & bit) && (s & bit) && !(seen & bit)) {
          seen |= bit;
          queue.push(static_cast<int>(w));
        }
      }
    }
    return seen == s;
  }

  bool linked(std::uint64_t a, std::uint64_t b) const {
    for (const auto& e : edges_) {
      const bool u_in_a = (a >> e.u) & 1U;
      const bool v_in_a = (a >> e.v) & 1U;
      const bool u_in_b = (b >> e.u) & 1U;
      const bool v_in_b = (b >> e.v) & 1U;
      if ((u_in_a && v_in_b) || (u_in_b && v_in_a)) return true;
    }
    return false;
  }

 private:
  const std::vector<EdgeInfo>& edges_;
  std::vector<std::uint64_t> adjacency_;
};

struct OracleEntry {
  double cost;
  double cardinality;
  std::uint64_t left;
  std::uint64_t right;
};

void check_oracle_size(const QueryGraph& g) {
  if (g.size() > kOracleMaxRelations)
    throw CapacityError("oracle refuses queries above " + std::to_string(kOracleMaxRelations) + " relations");
}

}  // namespace

Plan oracle_optimal(const QueryGraph& g, const CostModel& model) {
  check_oracle_size(g);
  const BruteForce brute(g);
  const std::size_t n = g.size();
  std::map<std::uint64_t, OracleEntry> best;

  const auto solve = [&](const auto& self, std::uint64_t s) -> const OracleEntry& {
    if (auto it = best.find(s); it != best.end()) return it->second;
    const double card = estimate_cardinality(SmallRelSet(s), g);
    if (std::popcount(s) == 1) return best.emplace(s, OracleEntry{0.0, card, 0, 0}).first->second;

    bool found = false;
    OracleEntry winner{};
    for (std::uint64_t left = (s - 1) & s; left != 0; left = (left - 1) & s) {
      const std::uint64_t right = s ^ left;
      if (!brute.connected(left) || !brute.connected(right) || !brute.linked(left, right)) continue;
      const OracleEntry& l = self(self, left);
      const OracleEntry& r = self(self, right);
      const double cost = model.join_cost(l.cost, l.cardinality, r.cost, r.cardinality, card);
      const bool better = !found || cost < winner.cost ||
                          (cost == winner.cost && (left < winner.left || (left == winner.left && right < winner.right)));
      if (better) {
        winner = OracleEntry{cost, card, left, right};
        found = true;
      }
    }
    if (!found) throw IncompleteMemoError("oracle: set " + to_string(SmallRelSet(s)) + " has no CCP split");
    return best.emplace(s, winner).first->second;
  };

  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  solve(solve, all);

  const auto build = [&](const auto& self, std::uint64_t s) -> Plan {
    const OracleEntry& e = best.at(s);
    if (std::popcount(s) == 1) return Plan::leaf(static_cast<std::size_t>(std::countr_zero(s)), n, e.cardinality);
    return Plan::join(self(self, e.left), self(self, e.right), e.cardinality, e.cost);
  };
  return build(build, all);
}

std::uint64_t oracle_ccp_count(const QueryGraph& g) {
  check_oracle_size(g);
  const BruteForce brute(g);
  const std::uint64_t all = (std::uint64_t{1} << g.size()) - 1;
  std::uint64_t count = 0;
  for (std::uint64_t s = 1; s <= all; ++s)
    for (std::uint64_t left = (s - 1) & s; left != 0; left = (left - 1) & s) {
      const std::uint64_t right = s ^ left;
      if (brute.connected(left) && brute.connected(right) && brute.linked(left, right)) ++count;
    }
  return count;
}

}  // namespace joinopt
