#include "joinopt_cli/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <ostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "joinopt/error.hpp"
#include "joinopt/exact.hpp"
#include "joinopt/heuristics.hpp"

namespace joinopt::cli {

namespace {

using Clock = std::chrono::steady_clock;

std::optional<ExactAlgorithm> exact_algorithm(const std::string& algo) {
  if (algo == "dpsize") return ExactAlgorithm::kDpSize;
  if (algo == "dpsub") return ExactAlgorithm::kDpSub;
  if (algo == "mpdp") return ExactAlgorithm::kMpdp;
  if (algo == "mpdp-tree") return ExactAlgorithm::kMpdpTree;
  return std::nullopt;
}

std::optional<std::size_t> parse_count(std::string_view text) {
  std::size_t v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size()) return std::nullopt;
  return v;
}

CostKind cost_from_flag(const std::string& text) { return *parse_cost_kind(text); }

void add_run_flags(CLI::App* cmd, RunSettings& s, std::string& cost, std::int64_t& timeout_ms) {
  cmd->add_option("--workers", s.workers, "Worker threads (default: JOINOPT_WORKERS or 1)")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1024}));
  cmd->add_option("--timeout-ms", timeout_ms, "Optimization time budget")->check(CLI::PositiveNumber);
  cmd->add_option("--k", s.k, "Heuristic block size")->check(CLI::Range(std::size_t{2}, kMaxHeuristicK));
  cmd->add_option("--cost", cost, "Cost model")->check(CLI::IsMember({"c_out", "hash_join"}));
  cmd->add_flag("--count-only", s.count_only, "Exact algorithms: count pairs without costing");
}

}  // namespace

bool is_heuristic(const std::string& algo) { return algo == "goo" || algo == "idp2" || algo == "uniondp"; }

RunOutcome run_algorithm(const QueryGraph& g, const std::string& algo, const RunSettings& s) {
  const CostModel model(s.cost);
  RunOutcome out;
  if (auto exact = exact_algorithm(algo)) {
    const ExactProblem problem(g, model);
    ExactOptions options;
    options.workers = s.workers;
    options.timeout = s.timeout;
    options.count_only = s.count_only;
    const auto start = Clock::now();
    auto result = optimize_exact(*exact, problem, options);
    out.opt_time_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    out.plan = std::move(result.plan);
    out.stats = result.stats;
    return out;
  }
  if (s.count_only) throw UsageError("--count-only applies to exact algorithms only");
  const HeuristicOptions options{s.workers, s.timeout};
  const auto start = Clock::now();
  if (algo == "goo") {
    out.plan = goo(g, model);
  } else if (algo == "idp2") {
    auto result = idp2(g, s.k, model, options);
    out.plan = std::move(result.plan);
    out.stats = result.stats;
  } else if (algo == "uniondp") {
    try {
      auto result = uniondp(g, s.k, model, options);
      out.plan = std::move(result.plan);
      out.stats = result.stats;
    } catch (const TimeoutError&) {
      out.stats.timed_out = true;
    }
  } else {
    throw UsageError("unknown algorithm '" + algo + "'");
  }
  out.opt_time_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return out;
}

std::pair<std::size_t, std::size_t> parse_rels(const std::string& text) {
  const auto dots = text.find("..");
  const auto lo = parse_count(std::string_view(text).substr(0, dots));
  const auto hi = dots == std::string::npos ? lo : parse_count(std::string_view(text).substr(dots + 2));
  if (!lo || !hi || *lo < 2 || *lo > *hi)
    throw UsageError("--rels expects N or A..B with 2 <= A <= B, got '" + text + "'");
  return {*lo, *hi};
}

std::size_t default_workers() {
  if (const char* env = std::getenv("JOINOPT_WORKERS"))
    if (auto v = parse_count(env); v && *v > 0) return *v;
  return 1;
}

std::string query_id(Topology t, std::size_t n, std::uint64_t seed) {
  return std::string(to_string(t)) + "-n" + std::to_string(n) + "-s" + std::to_string(seed);
}

nlohmann::json plan_to_json(const Plan& plan, const QueryGraph& g) {
  if (plan.is_leaf())
    return {{"relation", plan.relation()}, {"name", g.relation(plan.relation()).name}, {"cardinality", plan.cardinality()}};
  return {{"cost", plan.cost()},
          {"cardinality", plan.cardinality()},
          {"left", plan_to_json(plan.left(), g)},
          {"right", plan_to_json(plan.right(), g)}};
}

int cmd_generate(const GenerateArgs& a, std::ostream& out, std::ostream&) {
  const auto topology = parse_topology(a.topology);
  const auto [lo, hi] = parse_rels(a.rels);
  std::filesystem::create_directories(a.out_dir);
  for (std::size_t n = lo; n <= hi; ++n)
    for (std::size_t i = 0; i < a.count; ++i) {
      GeneratorConfig cfg;
      cfg.topology = *topology;
      cfg.n_rels = n;
      cfg.depth = a.depth;
      cfg.seed = a.seed + i;
      const auto path = a.out_dir / (query_id(*topology, n, cfg.seed) + ".json");
      write_query(generate(cfg), path);
      out << path.string() << '\n';
    }
  return kOk;
}

int cmd_optimize(const OptimizeArgs& a, std::ostream& out, std::ostream&) {
  const QueryGraph g = read_query(a.query);
  const RunOutcome r = run_algorithm(g, a.algo, a.settings);
  nlohmann::json doc;
  doc["algo"] = a.algo;
  doc["cost_kind"] = to_string(a.settings.cost);
  doc["plan"] = r.plan ? plan_to_json(*r.plan, g) : nlohmann::json();
  doc["cost"] = r.plan ? nlohmann::json(r.plan->cost()) : nlohmann::json();
  doc["cardinality"] = r.plan ? nlohmann::json(r.plan->cardinality()) : nlohmann::json();
  doc["evaluated_pairs"] = r.stats.evaluated_pairs;
  doc["ccp_pairs"] = r.stats.ccp_pairs;
  doc["opt_time_ms"] = r.opt_time_ms;
  doc["timed_out"] = r.stats.timed_out;
  out << doc.dump(2) << '\n';
  return r.stats.timed_out ? kTimeout : kOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Join order optimization toolkit", "joinopt"};
  app.require_subcommand(1);
  const std::string topologies_help = "star|snowflake|chain|clique|randomwalk";
  const auto topology_check = CLI::IsMember({"star", "snowflake", "chain", "clique", "randomwalk"});

  GenerateArgs gen;
  auto* generate_cmd = app.add_subcommand("generate", "Write seeded synthetic query files");
  generate_cmd->add_option("--topology", gen.topology, topologies_help)->required()->check(topology_check);
  generate_cmd->add_option("--rels", gen.rels, "Relation count N or range A..B")->required();
  generate_cmd->add_option("--count", gen.count, "Queries per size")->check(CLI::PositiveNumber);
  generate_cmd->add_option("--seed", gen.seed, "Seed of the first query; query i uses seed+i");
  generate_cmd->add_option("--depth", gen.depth, "Snowflake depth")->check(CLI::Range(2, 4));
  generate_cmd->add_option("--out-dir", gen.out_dir, "Output directory");

  OptimizeArgs opt;
  std::string opt_cost = "hash_join";
  std::int64_t opt_timeout = 60000;
  auto* optimize_cmd = app.add_subcommand("optimize", "Optimize one query and print the plan as JSON");
  optimize_cmd->add_option("--query", opt.query, "Query file")->required();
  optimize_cmd->add_option("--algo", opt.algo, "Algorithm")->required()->check(CLI::IsMember(kAlgorithms));
  add_run_flags(optimize_cmd, opt.settings, opt_cost, opt_timeout);

  VerifyArgs ver;
  auto* verify_cmd = app.add_subcommand("verify", "Check the exact optimizers against brute-force references");
  verify_cmd->add_option("--max-rels", ver.max_rels, "Largest graph size")
      ->check(CLI::Range(std::size_t{2}, kOracleMaxRelations));
  verify_cmd->add_option("--trials", ver.trials, "Random graphs to check");
  verify_cmd->add_option("--seed", ver.seed, "Seed");
  verify_cmd->add_flag("--inject-fault", ver.inject_fault, "Make mpdp skip the last block of every set");
  verify_cmd->add_option("--repro-dir", ver.repro_dir, "Where a failing case is written");

  BenchArgs bench;
  std::string bench_cost = "hash_join";
  std::int64_t bench_timeout = 60000;
  auto* bench_cmd = app.add_subcommand("bench", "Run algorithms over generated queries, appending CSV rows");
  bench_cmd->add_option("--algos", bench.algos, "Comma separated algorithms")
      ->required()
      ->delimiter(',')
      ->check(CLI::IsMember(kAlgorithms));
  bench_cmd->add_option("--topology", bench.topology, topologies_help)->required()->check(topology_check);
  bench_cmd->add_option("--rels", bench.rels, "Relation count N or range A..B")->required();
  bench_cmd->add_option("--count", bench.count, "Queries per size")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench.seed, "Seed of the first query");
  bench_cmd->add_option("--depth", bench.depth, "Snowflake depth")->check(CLI::Range(2, 4));
  bench_cmd->add_option("--workers", bench.workers, "Comma separated worker counts")
      ->delimiter(',')
      ->check(CLI::Range(std::size_t{1}, std::size_t{1024}));
  bench_cmd->add_option("--timeout-ms", bench_timeout, "Per-run time budget")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--k", bench.settings.k, "Heuristic block size")
      ->check(CLI::Range(std::size_t{2}, kMaxHeuristicK));
  bench_cmd->add_option("--cost", bench_cost, "Cost model")->check(CLI::IsMember({"c_out", "hash_join"}));
  bench_cmd->add_flag("--count-only", bench.settings.count_only, "Exact algorithms: count pairs without costing");
  bench_cmd->add_option("--csv", bench.csv, "Output CSV (appended to)")->required();

  ReportArgs rep;
  auto* report_cmd = app.add_subcommand("report", "Summarize a bench CSV with per-query normalized costs");
  report_cmd->add_option("--csv", rep.csv, "Bench CSV")->required()->check(CLI::ExistingFile);
  report_cmd->add_option("--out", rep.out, "Write the summary here instead of stdout");

  opt.settings.workers = default_workers();
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*generate_cmd) return cmd_generate(gen, out, err);
    if (*optimize_cmd) {
      opt.settings.cost = cost_from_flag(opt_cost);
      opt.settings.timeout = std::chrono::milliseconds(opt_timeout);
      return cmd_optimize(opt, out, err);
    }
    if (*verify_cmd) return cmd_verify(ver, out, err);
    if (*bench_cmd) {
      if (bench.workers.empty()) bench.workers.push_back(default_workers());
      bench.settings.cost = cost_from_flag(bench_cost);
      bench.settings.timeout = std::chrono::milliseconds(bench_timeout);
      return cmd_bench(bench, out, err);
    }
    if (*report_cmd) return cmd_report(rep, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

}  // namespace joinopt::cli
