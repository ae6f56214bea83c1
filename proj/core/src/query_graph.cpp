#include "joinopt/query_graph.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace joinopt {

namespace {

std::string edge_label(const EdgeInfo& e) {
  return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
}

}  // namespace

QueryGraph::QueryGraph(std::vector<RelationInfo> relations, std::vector<EdgeInfo> edges, GraphCheck check)
    : relations_(std::move(relations)), edges_(std::move(edges)) {
  const std::size_t n = relations_.size();
  if (n == 0) throw ValidationError("query graph has no relations");

  const bool check_values = check == GraphCheck::kFull;
  for (std::size_t i = 0; i < n && check_values; ++i) {
    const auto& r = relations_[i];
    if (!std::isfinite(r.base_cardinality) || !(r.base_cardinality >= 1.0))
      throw ValidationError("relation " + std::to_string(i) + " (" + r.name + "): cardinality must be >= 1");
    if (!(r.selection_factor > 0.0 && r.selection_factor <= 1.0))
      throw ValidationError("relation " + std::to_string(i) + " (" + r.name + "): selection factor outside (0,1]");
  }

  for (const auto& e : edges_) {
    if (e.u >= n || e.v >= n) throw ValidationError("edge " + edge_label(e) + ": endpoint out of range");
    if (e.u == e.v) throw ValidationError("edge " + edge_label(e) + ": self-loop");
    if (e.u > e.v) throw ValidationError("edge " + edge_label(e) + ": requires left < right");
    if (check_values && !(e.selectivity > 0.0 && e.selectivity <= 1.0))
      throw ValidationError("edge " + edge_label(e) + ": selectivity outside (0,1]");
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const EdgeInfo& a, const EdgeInfo& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  for (std::size_t i = 1; i < edges_.size(); ++i)
    if (edges_[i - 1].u == edges_[i].u && edges_[i - 1].v == edges_[i].v)
      throw ValidationError("edge " + edge_label(edges_[i]) + ": duplicate");

  adjacency_.assign(n, RelSet(n));
  forward_.assign(n, {});
  if (fits_small()) small_adjacency_.assign(n, SmallRelSet{});
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    adjacency_[e.u].insert(e.v);
    adjacency_[e.v].insert(e.u);
    if (fits_small()) {
      small_adjacency_[e.u].insert(e.v);
      small_adjacency_[e.v].insert(e.u);
    }
    forward_[e.u].push_back({e.v, i, e.selectivity});
  }

  if (!is_connected(all(), *this)) throw ValidationError("query graph is disconnected (cross products unsupported)");
}

std::optional<std::size_t> QueryGraph::edge_between(std::size_t a, std::size_t b) const {
  if (a > b) std::swap(a, b);
  if (a >= size()) return std::nullopt;
  for (const auto& f : forward_[a])
    if (f.to == b) return f.edge;
  return std::nullopt;
}

RelSet neighbors(const RelSet& s, const QueryGraph& g) {
  RelSet n(g.size());
  for (auto v : s) n |= g.adjacency(v);
  return n - s;
}

RelSet grow(const RelSet& source, const RelSet& restriction, const QueryGraph& g) {
  require(!source.empty(), "grow: empty source");
  require(source.is_subset_of(restriction), "grow: source not inside restriction");
  RelSet reached = source;
  std::vector<std::size_t> stack(source.begin(), source.end());
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (auto w : g.adjacency(v)) {
      if (restriction.contains(w) && !reached.contains(w)) {
        reached.insert(w);
        stack.push_back(w);
      }
    }
  }
  return reached;
}

bool is_connected(const RelSet& s, const QueryGraph& g) {
  return !s.empty() && grow(s.lowest_singleton(), s, g) == s;
}

bool is_ccp_pair(const RelSet& left, const RelSet& right, const QueryGraph& g) {
  return !left.empty() && !right.empty() && !left.intersects(right) && is_connected(left, g) &&
         is_connected(right, g) && neighbors(left, g).intersects(right);
}

BlockList find_blocks(SmallRelSet s, const QueryGraph& g) {
  require(g.fits_small(), "find_blocks: graph exceeds 64 relations");
  require(is_connected(s, g), "find_blocks: set " + to_string(s) + " is not connected");
  BlockList out;
  find_blocks_unchecked(s, g, out);
  return out;
}

void find_blocks_unchecked(SmallRelSet s, const QueryGraph& g, BlockList& out) {
  out.clear();
  if (s.count() == 1) {
    out.push_back(s);
    return;
  }
  constexpr std::size_t kCap = SmallRelSet::kCapacity;
  std::array<int, kCap> disc;
  std::array<int, kCap> low;
  std::array<SmallRelSet, kCap> pending;
  std::array<std::uint8_t, kCap> frames;
  std::array<std::uint8_t, kCap> stack;
  std::size_t frame_top = 0;
  std::size_t stack_top = 0;
  int clock = 0;
  for (auto v : s) disc[v] = -1;

  const auto visit = [&](std::size_t v) {
    disc[v] = low[v] = clock++;
    pending[v] = g.small_adjacency(v) & s;
    frames[frame_top++] = static_cast<std::uint8_t>(v);
    stack[stack_top++] = static_cast<std::uint8_t>(v);
  };
  visit(s.lowest());

  while (frame_top > 0) {
    const std::size_t v = frames[frame_top - 1];
    if (!pending[v].empty()) {
      const std::size_t w = pending[v].lowest();
      pending[v].erase(w);
      if (disc[w] < 0) {
        visit(w);
      } else {
        low[v] = std::min(low[v], disc[w]);
      }
      continue;
    }
    --frame_top;
    if (frame_top == 0) break;
    const std::size_t parent = frames[frame_top - 1];
    low[parent] = std::min(low[parent], low[v]);
    if (low[v] >= disc[parent]) {
      // parent separates v's subtree: everything stacked above parent is one block
      SmallRelSet block = SmallRelSet::singleton(parent);
      std::size_t popped;
      do {
        popped = stack[--stack_top];
        block.insert(popped);
      } while (popped != v);
      out.push_back(block);
    }
  }
}

}  // namespace joinopt
