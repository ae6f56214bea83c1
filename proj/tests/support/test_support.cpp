#include "test_support.hpp"

#include <cmath>
#include <random>

namespace joinopt::testing {

QueryGraph labeled_graph(std::size_t n, std::initializer_list<std::pair<std::size_t, std::size_t>> edges) {
  std::vector<RelationInfo> relations;
  for (std::size_t i = 1; i <= n; ++i) relations.push_back({std::to_string(i), 100.0 * static_cast<double>(i), 1.0});
  std::vector<EdgeInfo> out;
  for (auto [a, b] : edges) out.push_back({std::min(a, b) - 1, std::max(a, b) - 1, 0.01});
  return QueryGraph(std::move(relations), std::move(out));
}

SmallRelSet labels(std::initializer_list<std::size_t> ids) {
  SmallRelSet s;
  for (auto id : ids) s.insert(id - 1);
  return s;
}

QueryGraph four_block_graph() {
  return labeled_graph(9, {{1, 2}, {2, 3}, {3, 4}, {1, 4}, {4, 5}, {5, 9}, {6, 7}, {7, 8}, {8, 9}, {6, 9}});
}

QueryGraph eight_vertex_tree() { return labeled_graph(8, {{1, 2}, {2, 3}, {2, 4}, {4, 5}, {5, 6}, {6, 7}, {6, 8}}); }

QueryGraph shape(Topology t, std::size_t n, std::uint64_t seed) {
  GeneratorConfig cfg;
  cfg.topology = t;
  cfg.n_rels = n;
  cfg.seed = seed;
  return generate(cfg);
}

QueryGraph random_connected(std::size_t n, std::uint64_t seed, double extra) {
  std::mt19937_64 rng(seed);
  const auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<RelationInfo> relations;
  for (std::size_t i = 0; i < n; ++i)
    relations.push_back({"R" + std::to_string(i), std::round(std::pow(10.0, 1.0 + 5.0 * unit())), 0.05 + 0.95 * unit()});
  std::vector<EdgeInfo> edges;
  std::vector<std::vector<bool>> used(n, std::vector<bool>(n, false));
  for (std::size_t v = 1; v < n; ++v) {
    const std::size_t u = rng() % v;
    used[u][v] = true;
    edges.push_back({u, v, 1.0 / relations[v].base_cardinality});
  }
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (!used[u][v] && unit() < extra) edges.push_back({u, v, std::pow(10.0, -4.0 * unit())});
  return QueryGraph(std::move(relations), std::move(edges));
}

std::vector<SuiteCase> mixed_suite(std::size_t count, std::size_t min_n, std::size_t max_n, std::uint64_t seed) {
  static constexpr Topology kShapes[] = {Topology::kStar, Topology::kSnowflake, Topology::kChain, Topology::kClique,
                                         Topology::kRandomWalk};
  std::vector<SuiteCase> out;
  out.reserve(count);
  const std::size_t span = max_n - min_n + 1;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = min_n + (i * 7 + i / span) % span;
    const std::uint64_t s = seed * 1'000'003 + i;
    const CostModel model(i % 2 == 0 ? CostKind::kHashJoin : CostKind::kCout);
    const std::size_t pick = i % 6;
    if (pick < 5) {
      const Topology t = kShapes[pick];
      out.push_back({std::string(to_string(t)) + "-" + std::to_string(n) + "#" + std::to_string(s), shape(t, n, s), model});
    } else {
      out.push_back({"random-" + std::to_string(n) + "#" + std::to_string(s), random_connected(n, s, 0.3), model});
    }
  }
  return out;
}

}  // namespace joinopt::testing
