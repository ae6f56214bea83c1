#include <algorithm>
#include <map>
#include <queue>
#include <tuple>
#include <utility>

#include "joinopt/heuristics.hpp"

namespace joinopt {

CompositeGraph CompositeGraph::from_query(const QueryGraph& g, const CostModel& model) {
  std::vector<CompositeNode> nodes;
  nodes.reserve(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) nodes.push_back({RelSet::singleton(g.size(), v), model.make_leaf(v, g)});
  return CompositeGraph(g, std::move(nodes));
}

CompositeGraph::CompositeGraph(const QueryGraph& original, std::vector<CompositeNode> nodes)
    : original_(&original), nodes_(std::move(nodes)) {
  const std::size_t n = original.size();
  constexpr std::size_t kUnowned = static_cast<std::size_t>(-1);
  std::vector<std::size_t> owner(n, kUnowned);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& node = nodes_[i];
    require(node.relations.capacity() == n && !node.relations.empty(), "CompositeGraph: bad node relation set");
    require(node.plan && node.plan.relations() == node.relations, "CompositeGraph: plan does not cover node");
    for (auto r : node.relations) {
      require(owner[r] == kUnowned, "CompositeGraph: nodes overlap");
      owner[r] = i;
    }
  }
  require(std::find(owner.begin(), owner.end(), kUnowned) == owner.end(), "CompositeGraph: nodes do not cover graph");

  std::map<std::pair<std::size_t, std::size_t>, double> merged;
  for (const auto& e : original.edges()) {
    const std::size_t a = owner[e.u];
    const std::size_t b = owner[e.v];
    if (a == b) continue;
    auto [it, fresh] = merged.try_emplace(std::minmax(a, b), 1.0);
    it->second *= e.selectivity;
  }
  edges_.reserve(merged.size());
  for (const auto& [key, sel] : merged) edges_.push_back({key.first, key.second, sel});
}

QueryGraph CompositeGraph::induced_topology(std::span<const std::size_t> members) const {
  require(std::is_sorted(members.begin(), members.end()) &&
              std::adjacent_find(members.begin(), members.end()) == members.end(),
          "induced_topology: members must be ascending and distinct");
  constexpr std::size_t kOutside = static_cast<std::size_t>(-1);
  std::vector<std::size_t> position(nodes_.size(), kOutside);
  std::vector<RelationInfo> relations;
  relations.reserve(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    require(members[i] < nodes_.size(), "induced_topology: node out of range");
    position[members[i]] = i;
    const auto& node = nodes_[members[i]];
    relations.push_back({"C" + std::to_string(members[i]), node.plan.cardinality(), 1.0});
  }
  std::vector<EdgeInfo> edges;
  for (const auto& e : edges_)
    if (position[e.u] != kOutside && position[e.v] != kOutside) edges.push_back({position[e.u], position[e.v], e.selectivity});
  return QueryGraph(std::move(relations), std::move(edges), GraphCheck::kStructureOnly);
}

std::vector<Plan> CompositeGraph::plans(std::span<const std::size_t> members) const {
  std::vector<Plan> out;
  out.reserve(members.size());
  for (auto m : members) out.push_back(nodes_.at(m).plan);
  return out;
}

CompositeGraph contract(const CompositeGraph& g, const std::vector<std::vector<std::size_t>>& partitions,
                        std::vector<Plan> subplans) {
  require(partitions.size() == subplans.size(), "contract: one subplan per partition required");
  std::vector<CompositeNode> nodes;
  nodes.reserve(partitions.size());
  for (std::size_t i = 0; i < partitions.size(); ++i) {
    RelSet covered = g.original().empty_set();
    for (auto m : partitions[i]) covered |= g.node(m).relations;
    nodes.push_back({std::move(covered), std::move(subplans[i])});
  }
  return CompositeGraph(g.original(), std::move(nodes));
}

UnionFind::UnionFind(std::size_t n) : parent_(n), rank_(n, 0), size_(n, 1) {
  members_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    parent_[i] = i;
    members_.push_back(RelSet::singleton(n, i));
  }
}

std::size_t UnionFind::find(std::size_t x) {
  std::size_t root = x;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[x] != root) x = std::exchange(parent_[x], root);
  return root;
}

std::size_t UnionFind::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return a;
  if (rank_[a] < rank_[b]) std::swap(a, b);
  if (rank_[a] == rank_[b]) ++rank_[a];
  parent_[b] = a;
  size_[a] += size_[b];
  members_[a] |= members_[b];
  members_[b] = RelSet(0);
  return a;
}

std::vector<std::vector<std::size_t>> partition_phase(const CompositeGraph& g, std::size_t k, const CostModel& model) {
  require(k >= 2, "partition_phase: k must be at least 2");
  const auto& edges = g.edges();
  using Key = std::tuple<std::size_t, double, std::size_t>;  // combined size, weight, edge index
  std::priority_queue<Key, std::vector<Key>, std::greater<>> queue;
  std::vector<double> weight(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    weight[i] = model.edge_weight(g.node(edges[i].u).plan, g.node(edges[i].v).plan, g.original());
    queue.emplace(2, weight[i], i);
  }

  UnionFind sets(g.size());
  std::size_t unions = 0;
  while (!queue.empty()) {
    const auto [keyed_size, w, i] = queue.top();
    queue.pop();
    const std::size_t a = sets.find(edges[i].u);
    const std::size_t b = sets.find(edges[i].v);
    if (a == b) continue;
    const std::size_t combined = sets.size_of(a) + sets.size_of(b);
    if (combined > k) continue;  // sizes only grow
    if (combined != keyed_size) {
      queue.emplace(combined, w, i);
      continue;
    }
    sets.unite(a, b);
    ++unions;
  }
  require(unions > 0 || g.size() == 1, "partition_phase: no edge fits within k");

  std::vector<std::vector<std::size_t>> partitions;
  std::vector<std::size_t> slot(g.size(), static_cast<std::size_t>(-1));
  for (std::size_t v = 0; v < g.size(); ++v) {
    const std::size_t root = sets.find(v);
    if (slot[root] == static_cast<std::size_t>(-1)) {
      slot[root] = partitions.size();
      partitions.emplace_back();
    }
    partitions[slot[root]].push_back(v);
  }
  return partitions;
}

}  // namespace joinopt
