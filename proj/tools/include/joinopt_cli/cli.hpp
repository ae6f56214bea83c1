#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "joinopt/plan.hpp"
#include "joinopt/query_graph.hpp"

namespace joinopt::cli {

/// Stable contract for scripts.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kTimeout = 3,
  kVerifyFailed = 4,
};

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Leaf: {"relation":i,"name":...,"cardinality":c}
/// Join: {"cost":c,"cardinality":c,"left":{...},"right":{...}}
nlohmann::json plan_to_json(const Plan& plan, const QueryGraph& g);

}  // namespace joinopt::cli
