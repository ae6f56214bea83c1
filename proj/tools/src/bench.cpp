#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "commands.hpp"
#include "joinopt/error.hpp"
#include "joinopt_cli/cli.hpp"

namespace joinopt::cli {

namespace {

constexpr std::string_view kHeader =
    "algo,query_id,n_rels,topology,workers,cost_kind,opt_time_ms,plan_cost,evaluated_pairs,ccp_pairs,timed_out";

std::string format_double(double v, const char* fmt) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream in(line);
  std::string field;
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

/// Opens for appending; writes the header into new or empty files and
/// refuses files whose header differs.
std::ofstream open_csv(const std::filesystem::path& path) {
  bool fresh = true;
  if (std::ifstream existing(path); existing) {
    std::string first;
    if (std::getline(existing, first)) {
      fresh = false;
      if (first != kHeader) throw Error(path.string() + ": existing file has a different header");
    }
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::app);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  if (fresh) out << kHeader << '\n';
  return out;
}

}  // namespace

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  const Topology topology = *parse_topology(a.topology);
  const auto [lo, hi] = parse_rels(a.rels);
  if (a.settings.count_only)
    for (const auto& algo : a.algos)
      if (is_heuristic(algo)) throw UsageError("--count-only applies to exact algorithms only");
  std::ofstream csv = open_csv(a.csv);

  std::size_t rows = 0;
  for (std::size_t n = lo; n <= hi; ++n)
    for (std::size_t i = 0; i < a.count; ++i) {
      GeneratorConfig cfg;
      cfg.topology = topology;
      cfg.n_rels = n;
      cfg.depth = a.depth;
      cfg.seed = a.seed + i;
      const QueryGraph g = generate(cfg);
      const std::string id = query_id(topology, n, cfg.seed);
      for (const auto& algo : a.algos)
        for (auto workers : a.workers) {
          RunSettings s = a.settings;
          s.workers = workers;
          RunOutcome r;
          try {
            r = run_algorithm(g, algo, s);
          } catch (const Error& e) {
            err << "warning: skipping " << algo << " on " << id << ": " << e.what() << '\n';
            continue;
          }
          const bool has_cost = r.plan && !r.stats.timed_out;
          csv << algo << ',' << id << ',' << n << ',' << to_string(topology) << ',' << workers << ','
              << to_string(s.cost) << ',' << format_double(r.opt_time_ms, "%.3f") << ','
              << (has_cost ? format_double(r.plan->cost(), "%.17g") : "") << ',' << r.stats.evaluated_pairs << ','
              << r.stats.ccp_pairs << ',' << (r.stats.timed_out ? "true" : "false") << '\n';
          csv.flush();
          if (!csv) throw Error("write to " + a.csv.string() + " failed");
          ++rows;
        }
    }
  out << rows << " rows appended to " << a.csv.string() << '\n';
  return kOk;
}

int cmd_report(const ReportArgs& a, std::ostream& out, std::ostream&) {
  std::ifstream in(a.csv);
  if (!in) throw Error("cannot open " + a.csv.string());
  std::string line;
  if (!std::getline(in, line) || line != kHeader) throw ParseError(a.csv.string() + ": not a bench CSV");

  struct Row {
    std::string algo, query, topology, cost_kind;
    std::size_t n;
    double time_ms;
    std::optional<double> cost;
    bool timed_out;
  };
  std::vector<Row> rows;
  for (std::size_t line_no = 2; std::getline(in, line); ++line_no) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 11) throw ParseError(a.csv.string() + ":" + std::to_string(line_no) + ": expected 11 fields");
    try {
      rows.push_back({f[0], f[1], f[3], f[5], std::stoul(f[2]), std::stod(f[6]),
                      f[7].empty() ? std::nullopt : std::optional<double>(std::stod(f[7])), f[10] == "true"});
    } catch (const std::logic_error&) {
      throw ParseError(a.csv.string() + ":" + std::to_string(line_no) + ": malformed number");
    }
  }

  // Best plan per (query, cost model) is 1.0.
  std::map<std::pair<std::string, std::string>, double> best;
  for (const auto& r : rows) {
    if (!r.cost) continue;
    auto [it, fresh] = best.try_emplace({r.query, r.cost_kind}, *r.cost);
    if (!fresh) it->second = std::min(it->second, *r.cost);
  }

  struct Summary {
    std::size_t runs = 0, timeouts = 0, costed = 0;
    double norm_sum = 0.0, norm_max = 0.0, time_sum = 0.0;
  };
  std::map<std::tuple<std::string, std::string, std::size_t, std::string>, Summary> groups;
  for (const auto& r : rows) {
    auto& s = groups[{r.algo, r.topology, r.n, r.cost_kind}];
    ++s.runs;
    s.time_sum += r.time_ms;
    if (r.timed_out) ++s.timeouts;
    if (!r.cost) continue;
    const double b = best.at({r.query, r.cost_kind});
    const double norm = b > 0.0 ? *r.cost / b : 1.0;
    ++s.costed;
    s.norm_sum += norm;
    s.norm_max = std::max(s.norm_max, norm);
  }

  std::ofstream file;
  if (a.out) {
    file.open(*a.out, std::ios::trunc);
    if (!file) throw Error("cannot open " + a.out->string() + " for writing");
  }
  std::ostream& sink = a.out ? file : out;
  sink << "algo,topology,n_rels,cost_kind,runs,timed_out,mean_normalized_cost,max_normalized_cost,mean_opt_time_ms\n";
  for (const auto& [key, s] : groups) {
    const auto& [algo, topology, n, cost_kind] = key;
    sink << algo << ',' << topology << ',' << n << ',' << cost_kind << ',' << s.runs << ',' << s.timeouts << ','
         << (s.costed ? format_double(s.norm_sum / s.costed, "%.4f") : "") << ','
         << (s.costed ? format_double(s.norm_max, "%.4f") : "") << ','
         << format_double(s.time_sum / s.runs, "%.3f") << '\n';
  }
  return kOk;
}

}  // namespace joinopt::cli
