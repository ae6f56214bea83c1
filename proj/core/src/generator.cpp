#include <algorithm>
#include <cmath>
#include <random>

#include "joinopt/workload.hpp"

namespace joinopt {

namespace {

// Seed of the schema graph walked by randomwalk queries; the schema is the
// same for every query, only the walk depends on the query seed.
constexpr std::uint64_t kSchemaSeed = 0x6d62'7a5f'7363'6865ULL;
constexpr std::size_t kMaxWalkSteps = 1'000'000;

// std::mt19937_64 is fully specified; distributions are not, so the draws
// below are done by hand to stay identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  bool coin() { return (engine_() >> 63) != 0; }

  double log_uniform(double lo, double hi) {
    return std::max(1.0, std::round(std::exp(uniform(std::log(lo), std::log(hi)))));
  }

 private:
  std::mt19937_64 engine_;
};

struct Draft {
  std::vector<RelationInfo> relations;
  std::vector<EdgeInfo> edges;

  void add_relations(std::size_t n, const GeneratorConfig& cfg, Rng& rng) {
    for (std::size_t i = 0; i < n; ++i)
      relations.push_back({"R" + std::to_string(i), rng.log_uniform(cfg.cardinality_low, cfg.cardinality_high), 1.0});
  }
  // key is the referenced (primary key) side.
  void add_fk(std::size_t a, std::size_t key) {
    edges.push_back({std::min(a, key), std::max(a, key), 1.0 / relations[key].base_cardinality});
  }
  void select_dimensions(Rng& rng) {
    for (std::size_t i = 1; i < relations.size(); ++i) relations[i].selection_factor = rng.uniform(0.05, 1.0);
  }
  QueryGraph finish() { return QueryGraph(std::move(relations), std::move(edges)); }
};

std::size_t snowflake_fanout(std::size_t n, std::size_t depth) {
  for (std::size_t f = 1;; ++f) {
    std::size_t reach = 1;
    std::size_t level = 1;
    for (std::size_t d = 0; d < depth && reach < n; ++d) {
      level *= f;
      reach += level;
    }
    if (reach >= n) return f;
  }
}

QueryGraph random_walk(const GeneratorConfig& cfg, Rng& rng) {
  const std::size_t m = cfg.schema_size;
  if (m < 2) throw ValidationError("randomwalk: schema needs at least 2 relations");
  if (cfg.n_rels > m)
    throw ValidationError("randomwalk: cannot collect " + std::to_string(cfg.n_rels) + " relations from a schema of " +
                          std::to_string(m));

  // Preferential attachment, two foreign keys per new table.
  Rng schema_rng(kSchemaSeed);
  Draft schema;
  schema.add_relations(m, cfg, schema_rng);
  std::vector<std::size_t> endpoints{0, 1};
  std::vector<std::vector<std::size_t>> adjacency(m);
  const auto link = [&](std::size_t a, std::size_t key) {
    schema.add_fk(a, key);
    adjacency[a].push_back(key);
    adjacency[key].push_back(a);
    endpoints.push_back(a);
    endpoints.push_back(key);
  };
  link(1, 0);
  for (std::size_t v = 2; v < m; ++v) {
    std::vector<std::size_t> targets;
    while (targets.size() < std::min<std::size_t>(2, v)) {
      const std::size_t t = endpoints[schema_rng.index(endpoints.size())];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    for (auto t : targets) link(v, t);
  }

  std::vector<std::size_t> order;
  std::vector<std::size_t> position(m, m);
  std::size_t at = rng.index(m);
  for (std::size_t step = 0; order.size() < cfg.n_rels; ++step) {
    if (step > kMaxWalkSteps) throw ValidationError("randomwalk: walk did not collect enough relations");
    if (position[at] == m) {
      position[at] = order.size();
      order.push_back(at);
    }
    at = adjacency[at][rng.index(adjacency[at].size())];
  }

  Draft query;
  for (std::size_t i = 0; i < order.size(); ++i) {
    query.relations.push_back(schema.relations[order[i]]);
    query.relations.back().name = "T" + std::to_string(order[i]);
  }
  for (const auto& e : schema.edges) {
    if (position[e.u] == m || position[e.v] == m) continue;
    const std::size_t a = position[e.u];
    const std::size_t b = position[e.v];
    query.edges.push_back({std::min(a, b), std::max(a, b), e.selectivity});
  }
  return query.finish();
}

}  // namespace

std::string_view to_string(Topology t) {
  switch (t) {
    case Topology::kStar: return "star";
    case Topology::kSnowflake: return "snowflake";
    case Topology::kChain: return "chain";
    case Topology::kClique: return "clique";
    case Topology::kRandomWalk: return "randomwalk";
  }
  return "unknown";
}

std::optional<Topology> parse_topology(std::string_view text) {
  for (auto t : {Topology::kStar, Topology::kSnowflake, Topology::kChain, Topology::kClique, Topology::kRandomWalk})
    if (text == to_string(t)) return t;
  return std::nullopt;
}

QueryGraph generate(const GeneratorConfig& cfg) {
  if (cfg.n_rels < 2) throw ValidationError("generator: need at least 2 relations");
  if (!(cfg.cardinality_low >= 1.0 && cfg.cardinality_low <= cfg.cardinality_high && std::isfinite(cfg.cardinality_high)))
    throw ValidationError("generator: cardinality range must satisfy 1 <= low <= high");
  Rng rng(cfg.seed);
  const std::size_t n = cfg.n_rels;
  Draft draft;

  switch (cfg.topology) {
    case Topology::kStar:
      draft.add_relations(n, cfg, rng);
      for (std::size_t i = 1; i < n; ++i) draft.add_fk(0, i);
      draft.select_dimensions(rng);
      break;
    case Topology::kSnowflake: {
      if (cfg.depth < 2 || cfg.depth > 4) throw ValidationError("snowflake: depth must be in [2, 4]");
      draft.add_relations(n, cfg, rng);
      const std::size_t fanout = snowflake_fanout(n, cfg.depth);
      for (std::size_t i = 1; i < n; ++i) draft.add_fk((i - 1) / fanout, i);
      draft.select_dimensions(rng);
      break;
    }
    case Topology::kChain:
      draft.add_relations(n, cfg, rng);
      for (std::size_t i = 0; i + 1 < n; ++i) {
        if (rng.coin())
          draft.add_fk(i, i + 1);
        else
          draft.add_fk(i + 1, i);
      }
      break;
    case Topology::kClique:
      draft.add_relations(n, cfg, rng);
      // Not a PK-FK shape: selectivity log-uniform between the key-join
      // value of the larger side and 1.
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) {
          const double floor = 1.0 / std::max(draft.relations[u].base_cardinality, draft.relations[v].base_cardinality);
          draft.edges.push_back({u, v, std::exp(rng.uniform(std::log(floor), 0.0))});
        }
      break;
    case Topology::kRandomWalk:
      return random_walk(cfg, rng);
  }
  return draft.finish();
}

}  // namespace joinopt
