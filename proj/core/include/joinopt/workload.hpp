#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "joinopt/query_graph.hpp"

namespace joinopt {

enum class Topology { kStar, kSnowflake, kChain, kClique, kRandomWalk };

std::string_view to_string(Topology t);
std::optional<Topology> parse_topology(std::string_view text);

struct GeneratorConfig {
  Topology topology = Topology::kStar;
  std::size_t n_rels = 10;
  /// Snowflake only; the tree never gets deeper than this.
  std::size_t depth = 4;
  std::uint64_t seed = 1;
  double cardinality_low = 10.0;
  double cardinality_high = 1e6;
  /// Random walk only: relations in the fixed schema graph walked over.
  std::size_t schema_size = 56;
};

/// Deterministic in cfg. Star and snowflake put the fact table at relation 0;
/// every PK-FK edge has selectivity 1 / cardinality of its key side.
/// Throws ValidationError for impossible configurations.
QueryGraph generate(const GeneratorConfig& cfg);

/// UTF-8 JSON:
///   {"relations":[{"name":"R0","cardinality":12345.0,"selectivity":1.0},...],
///    "edges":[{"left":0,"right":3,"selectivity":0.001},...]}
std::string query_to_json(const QueryGraph& g);
/// Throws ParseError (naming the line or field) on malformed input and
/// ValidationError when the graph itself is invalid.
QueryGraph query_from_json(std::string_view text);

void write_query(const QueryGraph& g, const std::filesystem::path& path);
QueryGraph read_query(const std::filesystem::path& path);

}  // namespace joinopt
