#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "joinopt/cost_model.hpp"
#include "joinopt/memo.hpp"
#include "joinopt/query_graph.hpp"
#include "joinopt/workload.hpp"

namespace joinopt::cli {

/// Thrown for flag combinations CLI11 cannot check on its own.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline const std::vector<std::string> kAlgorithms = {"dpsize", "dpsub", "mpdp", "mpdp-tree", "goo", "idp2", "uniondp"};

bool is_heuristic(const std::string& algo);

struct RunSettings {
  CostKind cost = CostKind::kHashJoin;
  std::size_t workers = 1;
  std::chrono::milliseconds timeout{60000};
  std::size_t k = 15;
  bool count_only = false;
};

struct RunOutcome {
  std::optional<Plan> plan;
  RunStats stats;
  double opt_time_ms = 0.0;
};

/// Only the optimizer call is timed.
RunOutcome run_algorithm(const QueryGraph& g, const std::string& algo, const RunSettings& settings);

/// "12" or "10..16".
std::pair<std::size_t, std::size_t> parse_rels(const std::string& text);
/// JOINOPT_WORKERS when set to a positive integer, else 1.
std::size_t default_workers();
std::string query_id(Topology t, std::size_t n, std::uint64_t seed);

struct GenerateArgs {
  std::string topology;
  std::string rels;
  std::size_t count = 1;
  std::uint64_t seed = 1;
  std::size_t depth = 4;
  std::filesystem::path out_dir = ".";
};
int cmd_generate(const GenerateArgs& a, std::ostream& out, std::ostream& err);

struct OptimizeArgs {
  std::filesystem::path query;
  std::string algo;
  RunSettings settings;
};
int cmd_optimize(const OptimizeArgs& a, std::ostream& out, std::ostream& err);

struct VerifyArgs {
  std::size_t max_rels = 10;
  std::size_t trials = 50;
  std::uint64_t seed = 1;
  bool inject_fault = false;
  std::filesystem::path repro_dir = ".";
};
int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err);

struct BenchArgs {
  std::vector<std::string> algos;
  std::string topology;
  std::string rels;
  std::size_t count = 1;
  std::uint64_t seed = 1;
  std::size_t depth = 4;
  std::vector<std::size_t> workers;
  RunSettings settings;
  std::filesystem::path csv;
};
int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err);

struct ReportArgs {
  std::filesystem::path csv;
  std::optional<std::filesystem::path> out;
};
int cmd_report(const ReportArgs& a, std::ostream& out, std::ostream& err);

}  // namespace joinopt::cli
