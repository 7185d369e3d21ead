#include "spa/jointree.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace spa {

Cluster intersect(const Cluster& a, const Cluster& b) {
  Cluster out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::size_t CliqueTree::max_cluster_size() const {
  std::size_t best = 0;
  for (const auto& c : clusters) best = std::max(best, c.size());
  return best;
}

std::size_t CliqueTree::component_count() const { return clusters.size() - edges.size(); }

std::vector<std::size_t> CliqueTree::cluster_sizes() const {
  std::vector<std::size_t> out;
  out.reserve(clusters.size());
  for (const auto& c : clusters) out.push_back(c.size());
  return out;
}

std::vector<std::size_t> CliqueTree::separator_sizes() const {
  std::vector<std::size_t> out;
  out.reserve(edges.size());
  for (const auto& e : edges) out.push_back(e.separator.size());
  return out;
}

std::vector<Cluster> maximal_cliques(const UGraph& induced, const EliminationOrder& order) {
  const std::size_t n = induced.size();
  if (order.size() != n) throw GraphError("ordering does not cover the graph");

  std::vector<Cluster> candidate(n);
  for (NodeId v = 0; v < n; ++v) {
    auto& c = candidate[v];
    c.push_back(v);
    for (NodeId u : induced.neighbors(v)) {
      if (order.position(u) < order.position(v)) c.push_back(u);
    }
    std::sort(c.begin(), c.end());
    // Perfect elimination check: the latest earlier neighbor must see all
    // other earlier neighbors.
    NodeId parent = v;
    for (NodeId u : c) {
      if (u != v && (parent == v || order.position(u) > order.position(parent))) parent = u;
    }
    if (parent == v) continue;
    for (NodeId u : c) {
      if (u != v && u != parent && !induced.has_edge(u, parent)) {
        throw JoinTreeError("ordering is not a perfect elimination ordering at node '" +
                            induced.label(v) + "'");
      }
    }
  }

  // Sweep first to last. A node whose earlier neighbors are exactly the
  // clique holding its latest earlier neighbor extends that clique; any
  // other node starts a new one. Cliques keep the order they were started in.
  std::vector<Cluster> out;
  std::vector<std::size_t> owner(n);
  for (std::size_t pos = 0; pos < n; ++pos) {
    const NodeId v = order.at(pos);
    const auto& c = candidate[v];
    NodeId parent = v;
    for (NodeId u : c) {
      if (u != v && (parent == v || order.position(u) > order.position(parent))) parent = u;
    }
    if (parent != v && out[owner[parent]].size() + 1 == c.size()) {
      auto& k = out[owner[parent]];
      k.insert(std::upper_bound(k.begin(), k.end(), v), v);
      owner[v] = owner[parent];
    } else {
      owner[v] = out.size();
      out.push_back(c);
    }
  }
  return out;
}

CliqueTree build_primary_tree(std::vector<Cluster> clusters, const Ordering& ordering) {
  CliqueTree tree;
  tree.ordering = ordering;
  NodeId max_node = 0;
  for (auto& c : clusters) {
    std::sort(c.begin(), c.end());
    if (!c.empty()) max_node = std::max(max_node, c.back());
  }
  std::vector<std::vector<std::size_t>> holders(clusters.empty() ? 0 : max_node + 1);
  std::vector<std::size_t> shared(clusters.size(), 0);
  std::vector<std::size_t> touched;

  for (std::size_t i = 0; i < clusters.size(); ++i) {
    touched.clear();
    for (NodeId v : clusters[i]) {
      for (std::size_t j : holders[v]) {
        if (shared[j]++ == 0) touched.push_back(j);
      }
    }
    std::size_t best = i;
    for (std::size_t j : touched) {
      if (best == i || shared[j] > shared[best] || (shared[j] == shared[best] && j < best)) best = j;
    }
    if (best != i) {
      tree.edges.push_back({best, i, intersect(clusters[best], clusters[i])});
    }
    for (std::size_t j : touched) shared[j] = 0;
    for (NodeId v : clusters[i]) holders[v].push_back(i);
  }
  tree.clusters = std::move(clusters);
  if (!verify_running_intersection(tree)) {
    throw JoinTreeError("primary tree violates the running intersection property");
  }
  return tree;
}

CliqueTree primary_tree(const UGraph& moral, const Ordering& ordering) {
  const auto tri = triangulate(moral, ordering.order);
  return build_primary_tree(maximal_cliques(tri.induced, ordering.order), ordering);
}

std::size_t separator_width(const CliqueTree& tree) {
  std::size_t width = 0;
  for (const auto& e : tree.edges) width = std::max(width, e.separator.size());
  return width;
}

bool verify_running_intersection(const CliqueTree& tree) {
  const std::size_t k = tree.clusters.size();
  // Edges must form a forest over the clusters.
  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : tree.edges) {
    if (e.a >= k || e.b >= k || e.a == e.b) return false;
    if (e.separator != intersect(tree.clusters[e.a], tree.clusters[e.b])) return false;
    const auto ra = find(e.a);
    const auto rb = find(e.b);
    if (ra == rb) return false;
    parent[ra] = rb;
  }
  // In a forest, a vertex subset induces a connected subtree iff it spans
  // exactly (size - 1) edges.
  NodeId max_node = 0;
  for (const auto& c : tree.clusters) {
    if (!c.empty()) max_node = std::max(max_node, c.back());
  }
  std::vector<std::size_t> holders(k == 0 ? 0 : max_node + 1, 0);
  std::vector<std::size_t> spanned(holders.size(), 0);
  for (const auto& c : tree.clusters) {
    for (NodeId v : c) ++holders[v];
  }
  for (const auto& e : tree.edges) {
    for (NodeId v : e.separator) ++spanned[v];
  }
  for (std::size_t v = 0; v < holders.size(); ++v) {
    if (holders[v] > 0 && spanned[v] != holders[v] - 1) return false;
  }
  return true;
}

}  // namespace spa
