#include "spa/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "elimination_graph.hpp"
#include "spa/netlist.hpp"

namespace spa {

UGraph::UGraph(std::size_t node_count) : adjacency_(node_count), labels_(node_count) {
  for (std::size_t v = 0; v < node_count; ++v) labels_[v] = std::to_string(v);
}

UGraph::UGraph(std::size_t node_count, std::vector<std::string> labels)
    : adjacency_(node_count), labels_(std::move(labels)) {
  if (labels_.size() != node_count) throw GraphError("label count does not match node count");
}

UGraph UGraph::from_edge_list(std::vector<std::string> labels, std::vector<Edge> edges) {
  const auto n = labels.size();
  UGraph g(n, std::move(labels));
  for (const auto& [a, b] : edges) {
    g.check_node(b);
    if (a == b) throw GraphError("self-loop on node " + std::to_string(a));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  // Sorted input keeps every adjacency list sorted under push_back.
  for (const auto& [a, b] : edges) {
    g.adjacency_[a].push_back(b);
    g.adjacency_[b].push_back(a);
  }
  g.edge_count_ = edges.size();
  return g;
}

NodeId UGraph::add_node(std::string label) {
  const auto id = static_cast<NodeId>(adjacency_.size());
  adjacency_.emplace_back();
  labels_.push_back(label.empty() ? std::to_string(id) : std::move(label));
  return id;
}

void UGraph::check_node(NodeId v) const {
  if (v >= adjacency_.size()) {
    throw GraphError("node " + std::to_string(v) + " out of range");
  }
}

bool UGraph::add_edge(NodeId a, NodeId b) {
  check_node(a);
  check_node(b);
  if (a == b) throw GraphError("self-loop on node " + std::to_string(a));
  auto& na = adjacency_[a];
  auto it = std::lower_bound(na.begin(), na.end(), b);
  if (it != na.end() && *it == b) return false;
  na.insert(it, b);
  auto& nb = adjacency_[b];
  nb.insert(std::lower_bound(nb.begin(), nb.end(), a), a);
  ++edge_count_;
  return true;
}

void UGraph::add_unique_edge(NodeId a, NodeId b) {
  if (!add_edge(a, b)) {
    throw GraphError("parallel edge " + std::to_string(a) + "-" + std::to_string(b));
  }
}

bool UGraph::has_edge(NodeId a, NodeId b) const {
  check_node(a);
  check_node(b);
  const auto& na = adjacency_[a];
  return std::binary_search(na.begin(), na.end(), b);
}

std::vector<Edge> UGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (NodeId v = 0; v < adjacency_.size(); ++v) {
    for (NodeId u : adjacency_[v]) {
      if (v < u) out.emplace_back(v, u);
    }
  }
  return out;
}

UGraph UGraph::induced_subgraph(std::span<const NodeId> nodes) const {
  std::vector<std::string> sub_labels;
  sub_labels.reserve(nodes.size());
  std::vector<NodeId> local(adjacency_.size(), static_cast<NodeId>(-1));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    check_node(nodes[i]);
    if (local[nodes[i]] != static_cast<NodeId>(-1)) throw GraphError("duplicate node in subset");
    local[nodes[i]] = static_cast<NodeId>(i);
    sub_labels.push_back(labels_[nodes[i]]);
  }
  UGraph sub(nodes.size(), std::move(sub_labels));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (NodeId u : adjacency_[nodes[i]]) {
      const NodeId j = local[u];
      if (j != static_cast<NodeId>(-1) && i < j) sub.add_edge(static_cast<NodeId>(i), j);
    }
  }
  return sub;
}

UGraph moralize(const Dag& dag) {
  UGraph moral(dag.size(), dag.labels());
  for (NodeId child = 0; child < dag.size(); ++child) {
    const auto& parents = dag.parents(child);
    for (std::size_t i = 0; i < parents.size(); ++i) {
      moral.add_edge(parents[i], child);
      for (std::size_t j = i + 1; j < parents.size(); ++j) moral.add_edge(parents[i], parents[j]);
    }
  }
  return moral;
}

std::size_t width_of_ordering(const UGraph& g, const EliminationOrder& order) {
  if (order.size() != g.size()) throw GraphError("ordering does not cover the graph");
  std::size_t width = 0;
  for (NodeId v = 0; v < g.size(); ++v) {
    const auto pos = order.position(v);
    const auto earlier = static_cast<std::size_t>(std::count_if(
        g.neighbors(v).begin(), g.neighbors(v).end(),
        [&](NodeId u) { return order.position(u) < pos; }));
    width = std::max(width, earlier);
  }
  return width;
}

namespace {

// Edges of the filled graph, each as (node, neighbor eliminated later), via
// follower pointers: every node hands its later neighbors on to the first
// of them to be eliminated.
std::vector<std::pair<NodeId, NodeId>> filled_edges(const UGraph& g, const EliminationOrder& order) {
  const std::size_t n = g.size();
  if (order.size() != n) throw GraphError("ordering does not cover the graph");
  // Elimination step of each node: the last position goes first.
  auto step = [&](NodeId v) { return n - 1 - order.position(v); };
  std::vector<NodeId> follower(n);
  std::vector<std::size_t> mark(n, n);
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(g.edge_count());
  for (std::size_t i = 0; i < n; ++i) {
    const NodeId w = order.at(n - 1 - i);
    follower[w] = w;
    mark[w] = i;
    for (NodeId v : g.neighbors(w)) {
      if (step(v) >= i) continue;
      NodeId x = v;
      while (mark[x] < i) {
        mark[x] = i;
        out.emplace_back(x, w);
        x = follower[x];
      }
      if (follower[x] == x) follower[x] = w;
    }
  }
  return out;
}

}  // namespace

Triangulation triangulate(const UGraph& g, const EliminationOrder& order) {
  const auto pairs = filled_edges(g, order);
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [a, b] : pairs) edges.emplace_back(a, b);
  Triangulation result{UGraph::from_edge_list(g.labels(), std::move(edges)), {}};
  for (const auto& e : result.induced.edges()) {
    if (!g.has_edge(e.first, e.second)) result.fill_edges.push_back(e);
  }
  return result;
}

std::size_t induced_width(const UGraph& g, const EliminationOrder& order) {
  std::vector<std::size_t> later(g.size(), 0);
  for (const auto& [v, later_neighbor] : filled_edges(g, order)) ++later[v];
  return g.size() == 0 ? 0 : *std::max_element(later.begin(), later.end());
}

namespace {

// Maximum cardinality search. Returns nodes in visit order.
std::vector<NodeId> mcs_visit_order(const UGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> weight(n, 0);
  std::vector<bool> visited(n, false);
  std::vector<NodeId> visit;
  visit.reserve(n);
  // Bucket queue keyed by weight; ties resolved by lowest id.
  std::vector<std::vector<NodeId>> buckets(n + 1);
  for (NodeId v = 0; v < n; ++v) buckets[0].push_back(v);
  std::size_t top = 0;
  while (visit.size() < n) {
    NodeId pick = 0;
    bool found = false;
    while (!found) {
      auto& bucket = buckets[top];
      // Buckets may hold stale entries; find the smallest live id.
      std::erase_if(bucket, [&](NodeId v) { return visited[v] || weight[v] != top; });
      if (bucket.empty()) {
        if (top == 0) break;
        --top;
        continue;
      }
      pick = *std::min_element(bucket.begin(), bucket.end());
      found = true;
    }
    visited[pick] = true;
    visit.push_back(pick);
    for (NodeId u : g.neighbors(pick)) {
      if (visited[u]) continue;
      ++weight[u];
      buckets[weight[u]].push_back(u);
      top = std::max(top, weight[u]);
    }
  }
  return visit;
}

}  // namespace

bool is_chordal(const UGraph& g) {
  const std::size_t n = g.size();
  if (n < 4) return true;
  // MCS visit order read first-to-last is an ordering in which every node's
  // earlier neighbors form a clique iff g is chordal.
  const auto visit = mcs_visit_order(g);
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[visit[i]] = i;
  for (NodeId v : visit) {
    // Earlier neighbors of v; the latest of them must be adjacent to the rest.
    NodeId parent = 0;
    bool has_parent = false;
    for (NodeId u : g.neighbors(v)) {
      if (pos[u] < pos[v] && (!has_parent || pos[u] > pos[parent])) {
        parent = u;
        has_parent = true;
      }
    }
    if (!has_parent) continue;
    for (NodeId u : g.neighbors(v)) {
      if (u != parent && pos[u] < pos[v] && !g.has_edge(u, parent)) return false;
    }
  }
  return true;
}

namespace {

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
  std::vector<std::size_t> parent;
};

}  // namespace

bool is_forest_without(const UGraph& g, const std::vector<bool>& removed) {
  DisjointSets sets(g.size());
  for (NodeId v = 0; v < g.size(); ++v) {
    if (removed[v]) continue;
    for (NodeId u : g.neighbors(v)) {
      if (v < u && !removed[u] && !sets.unite(v, u)) return false;
    }
  }
  return true;
}

bool is_forest(const UGraph& g) { return is_forest_without(g, std::vector<bool>(g.size(), false)); }

std::size_t connected_components(const UGraph& g) {
  DisjointSets sets(g.size());
  std::size_t components = g.size();
  for (NodeId v = 0; v < g.size(); ++v) {
    for (NodeId u : g.neighbors(v)) {
      if (v < u && sets.unite(v, u)) --components;
    }
  }
  return components;
}

std::vector<NodeId> cutset_heuristic(const UGraph& g) {
  const std::size_t n = g.size();
  std::vector<bool> removed(n, false);  // pruned or cut
  std::vector<std::size_t> degree(n);
  for (NodeId v = 0; v < n; ++v) degree[v] = g.degree(v);
  std::vector<NodeId> picks;

  std::vector<NodeId> stack;
  auto drop = [&](NodeId v) {
    removed[v] = true;
    for (NodeId u : g.neighbors(v)) {
      if (removed[u]) continue;
      if (--degree[u] <= 1) stack.push_back(u);
    }
  };
  auto prune = [&] {
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      if (!removed[v] && degree[v] <= 1) drop(v);
    }
  };

  for (NodeId v = 0; v < n; ++v) {
    if (degree[v] <= 1) stack.push_back(v);
  }
  prune();
  for (;;) {
    // What survives pruning has minimum degree 2, so it contains a cycle
    // unless it is empty.
    NodeId best = 0;
    bool any = false;
    for (NodeId v = 0; v < n; ++v) {
      if (!removed[v] && (!any || degree[v] > degree[best])) {
        best = v;
        any = true;
      }
    }
    if (!any) break;
    picks.push_back(best);
    drop(best);
    prune();
  }

  // Minimality sweep, latest pick first.
  std::vector<bool> in_cutset(n, false);
  for (NodeId v : picks) in_cutset[v] = true;
  for (auto it = picks.rbegin(); it != picks.rend(); ++it) {
    in_cutset[*it] = false;
    if (!is_forest_without(g, in_cutset)) in_cutset[*it] = true;
  }
  std::vector<NodeId> cutset;
  for (NodeId v = 0; v < n; ++v) {
    if (in_cutset[v]) cutset.push_back(v);
  }
  return cutset;
}

}  // namespace spa
