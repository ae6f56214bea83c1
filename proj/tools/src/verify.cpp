#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <random>

#include "commands.hpp"
#include "joinopt/error.hpp"
#include "joinopt/exact.hpp"
#include "joinopt_cli/cli.hpp"

namespace joinopt::cli {

namespace {

const std::vector<std::string> kSuites = {"optimality-equivalence", "counter-agreement", "lemma-invariants",
                                          "determinism"};

struct Finding {
  std::string suite;
  std::string algo;
  CostKind cost;
  std::string detail;
};

bool is_clique(const QueryGraph& g) { return g.edges().size() * 2 == g.size() * (g.size() - 1); }

class Inspection {
 public:
  Inspection(const QueryGraph& g, bool fault) : g_(g), fault_(fault) {}

  std::vector<Finding> run() {
    for (auto kind : {CostKind::kCout, CostKind::kHashJoin}) check_kind(kind);
    return std::move(findings_);
  }

 private:
  void fail(const std::string& suite, const std::string& algo, CostKind kind, const std::string& detail) {
    for (const auto& f : findings_)
      if (f.suite == suite) return;
    findings_.push_back({suite, algo, kind, detail});
  }

  ExactOptions options_for(ExactAlgorithm algo, std::size_t workers) const {
    ExactOptions options;
    options.workers = workers;
    options.fault_skip_last_block = fault_ && algo == ExactAlgorithm::kMpdp;
    return options;
  }

  // Enumeration only, so a broken enumerator still reports its counters.
  void check_counters(const std::vector<ExactAlgorithm>& algos, const ExactProblem& p, CostKind kind) {
    const std::uint64_t ccp = oracle_ccp_count(g_);
    for (auto algo : algos) {
      auto options = options_for(algo, 1);
      options.count_only = true;
      const std::string name(to_string(algo));
      try {
        const auto r = optimize_exact(algo, p, options);
        if (r.stats.ccp_pairs != ccp)
          fail("counter-agreement", name, kind,
               "ccp_pairs " + std::to_string(r.stats.ccp_pairs) + " != reference " + std::to_string(ccp));
      } catch (const Error& e) {
        fail("counter-agreement", name, kind, std::string("threw: ") + e.what());
      }
    }
  }

  std::optional<OptimizerResult> attempt(ExactAlgorithm algo, const ExactProblem& p, CostKind kind,
                                         std::size_t workers) {
    const auto options = options_for(algo, workers);
    try {
      auto r = optimize_exact(algo, p, options);
      if (!r.plan) throw IncompleteMemoError("no plan for the full set");
      return r;
    } catch (const Error& e) {
      fail("optimality-equivalence", std::string(to_string(algo)), kind, std::string("threw: ") + e.what());
      return std::nullopt;
    }
  }

  void check_kind(CostKind kind) {
    const CostModel model(kind);
    const ExactProblem problem(g_, model);
    const Plan reference = oracle_optimal(g_, model);

    std::vector<ExactAlgorithm> algos{ExactAlgorithm::kDpSize, ExactAlgorithm::kDpSub, ExactAlgorithm::kMpdp};
    if (g_.is_tree()) algos.push_back(ExactAlgorithm::kMpdpTree);
    if (kind == CostKind::kCout) check_counters(algos, problem, kind);
    std::map<ExactAlgorithm, OptimizerResult> results;
    for (auto algo : algos) {
      auto r = attempt(algo, problem, kind, 1);
      if (!r) continue;
      const std::string name(to_string(algo));
      if (r->plan->cost() != reference.cost())
        fail("optimality-equivalence", name, kind,
             "cost " + std::to_string(r->plan->cost()) + " != reference " + std::to_string(reference.cost()));
      if (recompute_costs(*r->plan, g_, model).cost != r->plan->cost())
        fail("optimality-equivalence", name, kind, "reported cost differs from recomputed cost");
      if (r->stats.evaluated_pairs < r->stats.ccp_pairs)
        fail("lemma-invariants", name, kind, "evaluated_pairs below ccp_pairs");
      results.emplace(algo, std::move(*r));
    }

    const auto mpdp = results.find(ExactAlgorithm::kMpdp);
    const auto dpsub = results.find(ExactAlgorithm::kDpSub);
    if (mpdp == results.end()) return;
    const RunStats& m = mpdp->second.stats;
    if (dpsub != results.end() && m.evaluated_pairs > dpsub->second.stats.evaluated_pairs)
      fail("lemma-invariants", "mpdp", kind, "evaluated_pairs above dpsub's");
    if ((g_.is_tree() || is_clique(g_)) && m.evaluated_pairs != m.ccp_pairs)
      fail("lemma-invariants", "mpdp", kind,
           "evaluated_pairs " + std::to_string(m.evaluated_pairs) + " != ccp_pairs " + std::to_string(m.ccp_pairs) +
               " on a graph whose blocks are cliques");

    if (auto parallel = attempt(ExactAlgorithm::kMpdp, problem, kind, 4)) {
      const RunStats& p = parallel->stats;
      if (std::bit_cast<std::uint64_t>(parallel->plan->cost()) !=
              std::bit_cast<std::uint64_t>(mpdp->second.plan->cost()) ||
          p.evaluated_pairs != m.evaluated_pairs || p.ccp_pairs != m.ccp_pairs)
        fail("determinism", "mpdp", kind, "4 workers disagree with 1 worker");
    }
  }

  const QueryGraph& g_;
  bool fault_;
  std::vector<Finding> findings_;
};

QueryGraph random_graph(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> log_card(std::log(10.0), std::log(1e5));
  std::uniform_real_distribution<double> log_sel(std::log(1e-3), 0.0);
  std::vector<RelationInfo> relations;
  for (std::size_t i = 0; i < n; ++i)
    relations.push_back({"R" + std::to_string(i), std::round(std::exp(log_card(rng))), 1.0});
  std::vector<EdgeInfo> edges;
  for (std::size_t v = 1; v < n; ++v)
    edges.push_back({static_cast<std::size_t>(rng() % v), v, 1.0 / relations[v].base_cardinality});
  for (std::size_t extra = rng() % n; extra > 0; --extra) {
    std::size_t a = rng() % n;
    std::size_t b = rng() % n;
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    const bool present =
        std::any_of(edges.begin(), edges.end(), [&](const EdgeInfo& e) { return e.u == a && e.v == b; });
    if (!present) edges.push_back({a, b, std::exp(log_sel(rng))});
  }
  return QueryGraph(std::move(relations), std::move(edges));
}

QueryGraph trial_graph(std::size_t trial, std::size_t max_rels, std::mt19937_64& rng) {
  const std::size_t n = 2 + static_cast<std::size_t>(rng() % (max_rels - 1));
  static constexpr Topology kShapes[] = {Topology::kStar, Topology::kSnowflake, Topology::kChain, Topology::kClique,
                                         Topology::kRandomWalk};
  const std::size_t shape = trial % 6;
  if (shape == 5) return random_graph(n, rng);
  GeneratorConfig cfg;
  cfg.topology = kShapes[shape];
  cfg.n_rels = n;
  cfg.seed = rng();
  return generate(cfg);
}

/// Subgraph without `drop` (vertex or edge), if still connected.
std::optional<QueryGraph> without_vertex(const QueryGraph& g, std::size_t drop) {
  if (g.size() <= 2) return std::nullopt;
  RelSet keep = g.all();
  keep.erase(drop);
  if (!is_connected(keep, g)) return std::nullopt;
  std::vector<RelationInfo> relations;
  for (std::size_t v = 0; v < g.size(); ++v)
    if (v != drop) relations.push_back(g.relation(v));
  std::vector<EdgeInfo> edges;
  const auto shift = [drop](std::size_t v) { return v > drop ? v - 1 : v; };
  for (const auto& e : g.edges())
    if (e.u != drop && e.v != drop) edges.push_back({shift(e.u), shift(e.v), e.selectivity});
  return QueryGraph(std::move(relations), std::move(edges));
}

std::optional<QueryGraph> without_edge(const QueryGraph& g, std::size_t drop) {
  std::vector<EdgeInfo> edges = g.edges();
  edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(drop));
  try {
    return QueryGraph(g.relations(), std::move(edges));
  } catch (const ValidationError&) {
    return std::nullopt;  // disconnected
  }
}

/// Greedy: drop vertices, then edges, while the same suite still fails.
QueryGraph shrink(QueryGraph g, const std::string& suite, bool fault) {
  const auto still_fails = [&](const QueryGraph& h) {
    for (const auto& f : Inspection(h, fault).run())
      if (f.suite == suite) return true;
    return false;
  };
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t v = 0; v < g.size() && !progress; ++v)
      if (auto h = without_vertex(g, v); h && still_fails(*h)) {
        g = std::move(*h);
        progress = true;
      }
    for (std::size_t e = 0; e < g.edges().size() && !progress; ++e)
      if (auto h = without_edge(g, e); h && still_fails(*h)) {
        g = std::move(*h);
        progress = true;
      }
  }
  return g;
}

}  // namespace

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  if (a.trials == 0) {
    err << "warning: --trials 0 checks nothing; passing vacuously\n";
    for (const auto& s : kSuites) out << "PASS " << s << " (0 graphs)\n";
    return kOk;
  }

  std::mt19937_64 rng(a.seed);
  for (std::size_t t = 0; t < a.trials; ++t) {
    const QueryGraph g = trial_graph(t, a.max_rels, rng);
    const auto findings = Inspection(g, a.inject_fault).run();
    if (findings.empty()) continue;

    const Finding& first = findings.front();
    const QueryGraph minimal = shrink(g, first.suite, a.inject_fault);
    std::filesystem::create_directories(a.repro_dir);
    const auto graph_path = a.repro_dir / "verify-repro.json";
    const auto notes_path = a.repro_dir / "verify-repro.txt";
    write_query(minimal, graph_path);
    std::ofstream notes(notes_path, std::ios::trunc);
    notes << "failed: " << first.suite << " (" << first.algo << ", " << to_string(first.cost) << "): " << first.detail
          << "\ntrial " << t << " of: joinopt verify --max-rels " << a.max_rels << " --trials " << a.trials
          << " --seed " << a.seed << (a.inject_fault ? " --inject-fault" : "") << "\nminimal graph ("
          << minimal.size() << " relations): " << graph_path.string() << "\nrerun: joinopt optimize --query "
          << graph_path.string() << " --algo " << first.algo << " --cost " << to_string(first.cost) << '\n';

    for (const auto& s : kSuites) {
      const auto it = std::find_if(findings.begin(), findings.end(), [&](const Finding& f) { return f.suite == s; });
      if (it == findings.end())
        out << "PASS " << s << " (" << t + 1 << " graphs)\n";
      else
        out << "FAIL " << s << ": trial " << t << ", " << it->algo << ", " << to_string(it->cost) << ": "
            << it->detail << '\n';
    }
    out << "reproducer: " << graph_path.string() << " (" << minimal.size() << " relations), " << notes_path.string()
        << '\n';
    return kVerifyFailed;
  }
  for (const auto& s : kSuites) out << "PASS " << s << " (" << a.trials << " graphs)\n";
  return kOk;
}

}  // namespace joinopt::cli
