#pragma once

// Brute-force reference implementations for small graphs. They work on a
// plain adjacency matrix and share no code with the library.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "spa/graph.hpp"

namespace spa::test {

using Matrix = std::vector<std::vector<bool>>;

inline Matrix to_matrix(const UGraph& g) {
  Matrix m(g.size(), std::vector<bool>(g.size(), false));
  for (const auto& e : g.edges()) m[e.first][e.second] = m[e.second][e.first] = true;
  return m;
}

inline UGraph from_edges(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
  UGraph g(n);
  for (auto [a, b] : edges) g.add_edge(a, b);
  return g;
}

inline UGraph cycle(std::size_t n) {
  UGraph g(n);
  for (NodeId i = 0; i < n; ++i) g.add_edge(i, static_cast<NodeId>((i + 1) % n));
  return g;
}

inline UGraph complete(std::size_t n) {
  UGraph g(n);
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

inline UGraph path(std::size_t n) {
  UGraph g(n);
  for (NodeId i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

inline UGraph star(std::size_t leaves) {
  UGraph g(leaves + 1);
  for (NodeId i = 1; i <= leaves; ++i) g.add_edge(0, i);
  return g;
}

/// Random labelled tree: node i > 0 attaches to a uniformly chosen earlier
/// node.
inline UGraph random_tree(std::size_t n, std::mt19937_64& rng) {
  UGraph g(n);
  for (NodeId i = 1; i < n; ++i) g.add_edge(i, static_cast<NodeId>(rng() % i));
  return g;
}

/// G(n, p) with p = num / den.
inline UGraph random_graph(std::size_t n, std::uint64_t num, std::uint64_t den, std::mt19937_64& rng) {
  UGraph g(n);
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j)
      if (rng() % den < num) g.add_edge(i, j);
  return g;
}

/// Induced width of one ordering by direct elimination on a matrix copy.
inline std::size_t brute_induced_width(Matrix m, const std::vector<NodeId>& order) {
  const std::size_t n = order.size();
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;
  std::size_t width = 0;
  for (std::size_t i = n; i-- > 0;) {
    const NodeId v = order[i];
    std::vector<NodeId> earlier;
    for (NodeId u = 0; u < n; ++u)
      if (m[v][u] && pos[u] < i) earlier.push_back(u);
    width = std::max(width, earlier.size());
    for (auto a : earlier)
      for (auto b : earlier)
        if (a != b) m[a][b] = true;
  }
  return width;
}

/// Treewidth as the minimum induced width over all n! orderings.
inline std::size_t brute_treewidth(const UGraph& g) {
  const auto m = to_matrix(g);
  std::vector<NodeId> order(g.size());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::size_t best = g.size();
  do {
    best = std::min(best, brute_induced_width(m, order));
  } while (std::next_permutation(order.begin(), order.end()));
  return g.empty() ? 0 : best;
}

/// Acyclicity of the graph restricted to nodes with keep[v], by counting:
/// a forest has exactly (nodes - components) edges.
inline bool brute_is_forest(const Matrix& m, const std::vector<bool>& keep) {
  const std::size_t n = m.size();
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t components = 0;
  std::vector<bool> seen(n, false);
  for (std::size_t s = 0; s < n; ++s) {
    if (!keep[s]) continue;
    ++nodes;
    for (std::size_t t = s + 1; t < n; ++t)
      if (keep[t] && m[s][t]) ++edges;
    if (seen[s]) continue;
    ++components;
    std::vector<std::size_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (std::size_t u = 0; u < n; ++u) {
        if (keep[u] && m[v][u] && !seen[u]) {
          seen[u] = true;
          stack.push_back(u);
        }
      }
    }
  }
  return edges + components == nodes;
}

inline bool removal_leaves_forest(const UGraph& g, const std::vector<NodeId>& cut) {
  std::vector<bool> keep(g.size(), true);
  for (auto v : cut) keep[v] = false;
  return brute_is_forest(to_matrix(g), keep);
}

/// Minimum feedback vertex set size by trying all subsets (n <= 16).
inline std::size_t brute_fvs_size(const UGraph& g) {
  const std::size_t n = g.size();
  const auto m = to_matrix(g);
  std::size_t best = n;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const auto k = static_cast<std::size_t>(__builtin_popcount(mask));
    if (k >= best) continue;
    std::vector<bool> keep(n);
    for (std::size_t v = 0; v < n; ++v) keep[v] = !(mask >> v & 1u);
    if (brute_is_forest(m, keep)) best = k;
  }
  return best;
}

/// Chordality by repeatedly deleting a simplicial vertex.
inline bool brute_is_chordal(const UGraph& g) {
  auto m = to_matrix(g);
  const std::size_t n = g.size();
  std::vector<bool> alive(n, true);
  for (std::size_t round = 0; round < n; ++round) {
    bool removed = false;
    for (std::size_t v = 0; v < n && !removed; ++v) {
      if (!alive[v]) continue;
      std::vector<std::size_t> nb;
      for (std::size_t u = 0; u < n; ++u)
        if (alive[u] && m[v][u]) nb.push_back(u);
      bool simplicial = true;
      for (std::size_t i = 0; i < nb.size() && simplicial; ++i)
        for (std::size_t j = i + 1; j < nb.size() && simplicial; ++j)
          simplicial = m[nb[i]][nb[j]];
      if (simplicial) {
        alive[v] = false;
        removed = true;
      }
    }
    if (!removed) return false;
  }
  return true;
}

/// All maximal cliques by subset enumeration (n <= 16), each sorted, the
/// list sorted.
inline std::vector<std::vector<NodeId>> brute_maximal_cliques(const UGraph& g) {
  const std::size_t n = g.size();
  const auto m = to_matrix(g);
  auto is_clique = [&](std::uint32_t mask) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if ((mask >> a & 1u) && (mask >> b & 1u) && !m[a][b]) return false;
    return true;
  };
  std::vector<std::vector<NodeId>> out;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (!is_clique(mask)) continue;
    bool maximal = true;
    for (std::size_t v = 0; v < n && maximal; ++v)
      if (!(mask >> v & 1u) && is_clique(mask | 1u << v)) maximal = false;
    if (!maximal) continue;
    std::vector<NodeId> c;
    for (NodeId v = 0; v < n; ++v)
      if (mask >> v & 1u) c.push_back(v);
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Graph filled in by eliminating `order` last to first.
inline UGraph brute_triangulate(const UGraph& g, const std::vector<NodeId>& order) {
  auto m = to_matrix(g);
  const std::size_t n = order.size();
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;
  for (std::size_t i = n; i-- > 0;) {
    const NodeId v = order[i];
    for (NodeId a = 0; a < n; ++a)
      for (NodeId b = 0; b < n; ++b)
        if (a != b && m[v][a] && m[v][b] && pos[a] < i && pos[b] < i) m[a][b] = true;
  }
  UGraph out(n);
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = a + 1; b < n; ++b)
      if (m[a][b]) out.add_edge(a, b);
  return out;
}

/// (max clique, separator width) of a chordal graph: maximal cliques by
/// enumeration, separators from a maximum-weight spanning forest (Kruskal)
/// of the clique intersection graph.
inline std::pair<std::size_t, std::size_t> brute_clique_sepset(const UGraph& chordal) {
  const auto cliques = brute_maximal_cliques(chordal);
  std::size_t max_clique = 0;
  for (const auto& c : cliques) max_clique = std::max(max_clique, c.size());
  struct W {
    std::size_t w, a, b;
  };
  std::vector<W> edges;
  for (std::size_t i = 0; i < cliques.size(); ++i)
    for (std::size_t j = i + 1; j < cliques.size(); ++j) {
      std::vector<NodeId> common;
      std::set_intersection(cliques[i].begin(), cliques[i].end(), cliques[j].begin(), cliques[j].end(),
                            std::back_inserter(common));
      if (!common.empty()) edges.push_back({common.size(), i, j});
    }
  std::stable_sort(edges.begin(), edges.end(), [](const W& x, const W& y) { return x.w > y.w; });
  std::vector<std::size_t> root(cliques.size());
  std::iota(root.begin(), root.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (root[x] != x) x = root[x];
    return x;
  };
  std::size_t sep = 0;
  for (const auto& e : edges) {
    const auto ra = find(e.a);
    const auto rb = find(e.b);
    if (ra == rb) continue;
    root[ra] = rb;
    sep = std::max(sep, e.w);
  }
  return {max_clique, sep};
}

inline std::size_t brute_components(const UGraph& g) {
  const auto m = to_matrix(g);
  std::vector<bool> seen(g.size(), false);
  std::size_t count = 0;
  for (std::size_t s = 0; s < g.size(); ++s) {
    if (seen[s]) continue;
    ++count;
    std::vector<std::size_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (std::size_t u = 0; u < g.size(); ++u)
        if (m[v][u] && !seen[u]) {
          seen[u] = true;
          stack.push_back(u);
        }
    }
  }
  return count;
}

}  // namespace spa::test
