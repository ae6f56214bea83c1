#include <set>
#include <tuple>

#include "joinopt/heuristics.hpp"

namespace joinopt {

namespace {

struct Candidate {
  double cardinality;
  double cost;
  RelSet low;  // smaller relation set of the pair
  RelSet high;
  std::size_t a;
  std::size_t b;

  bool operator<(const Candidate& o) const {
    return std::tie(cardinality, cost, low, high) < std::tie(o.cardinality, o.cost, o.low, o.high);
  }
};

}  // namespace

Plan goo(const QueryGraph& g, const CostModel& model) {
  std::vector<Plan> components;
  std::vector<std::set<std::size_t>> adjacent(g.size());
  std::vector<bool> alive(g.size(), true);
  components.reserve(2 * g.size());
  for (std::size_t v = 0; v < g.size(); ++v) {
    components.push_back(model.make_leaf(v, g));
    for (auto w : g.adjacency(v)) adjacent[v].insert(w);
  }

  std::set<Candidate> queue;
  const auto offer = [&](std::size_t a, std::size_t b) {
    const Plan& pa = components[a];
    const Plan& pb = components[b];
    const bool a_low = pa.relations() < pb.relations();
    const double out = estimate_cardinality(pa.relations() | pb.relations(), g);
    const double cost = model.join_cost(pa.cost(), pa.cardinality(), pb.cost(), pb.cardinality(), out);
    queue.insert({out, cost, a_low ? pa.relations() : pb.relations(), a_low ? pb.relations() : pa.relations(),
                  a_low ? a : b, a_low ? b : a});
  };
  for (const auto& e : g.edges()) offer(e.u, e.v);

  std::size_t remaining = g.size();
  while (remaining > 1) {
    require(!queue.empty(), "goo: no joinable components left");
    const Candidate best = *queue.begin();
    queue.erase(queue.begin());
    if (!alive[best.a] || !alive[best.b]) continue;

    const std::size_t c = components.size();
    components.push_back(model.make_join(components[best.a], components[best.b], g));
    alive[best.a] = alive[best.b] = false;
    alive.push_back(true);
    --remaining;

    std::set<std::size_t> merged;
    for (const std::size_t side : {best.a, best.b})
      for (auto x : adjacent[side])
        if (x != best.a && x != best.b) merged.insert(x);
    adjacent.emplace_back();
    for (auto x : merged) {
      adjacent[x].erase(best.a);
      adjacent[x].erase(best.b);
      adjacent[x].insert(c);
      adjacent[c].insert(x);
      offer(c, x);
    }
  }
  return components.back();
}

}  // namespace joinopt
