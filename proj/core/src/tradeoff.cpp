#include "spa/tradeoff.hpp"

#include <algorithm>
#include <numeric>

namespace spa {

CliqueTree merge_by_separator(const CliqueTree& tree, std::size_t bound) {
  const std::size_t k = tree.clusters.size();
  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : tree.edges) {
    if (e.separator.size() > bound) {
      // Root at the smaller index so groups are keyed by their first member.
      const auto ra = find(e.a);
      const auto rb = find(e.b);
      if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }
  }

  CliqueTree out;
  out.ordering = tree.ordering;
  out.secondary_bound = bound;
  std::vector<std::size_t> group_of(k);
  std::vector<std::size_t> index_of_root(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto r = find(i);
    if (index_of_root[r] == k) {
      index_of_root[r] = out.clusters.size();
      out.clusters.emplace_back();
    }
    group_of[i] = index_of_root[r];
    auto& merged = out.clusters[group_of[i]];
    Cluster u;
    std::set_union(merged.begin(), merged.end(), tree.clusters[i].begin(), tree.clusters[i].end(),
                   std::back_inserter(u));
    merged = std::move(u);
  }
  for (const auto& e : tree.edges) {
    if (e.separator.size() > bound) continue;
    const auto a = group_of[e.a];
    const auto b = group_of[e.b];
    out.edges.push_back({a, b, intersect(out.clusters[a], out.clusters[b])});
  }
  return out;
}

std::vector<std::size_t> cluster_cutsets(const CliqueTree& tree, const UGraph& moral) {
  std::vector<std::size_t> sizes;
  sizes.reserve(tree.clusters.size());
  for (const auto& c : tree.clusters) {
    sizes.push_back(cutset_heuristic(moral.induced_subgraph(c)).size());
  }
  return sizes;
}

DecompositionPoint decomposition_point(const CliqueTree& primary, const UGraph& moral,
                                       std::size_t bound) {
  const auto tree = merge_by_separator(primary, bound);
  const auto cutsets = cluster_cutsets(tree, moral);
  DecompositionPoint p;
  p.sep_bound = separator_width(tree);
  p.max_cluster = tree.max_cluster_size();
  p.max_cutset = cutsets.empty() ? 0 : *std::max_element(cutsets.begin(), cutsets.end());
  p.cluster_count = tree.clusters.size();
  const auto bounds = complexity_bounds(p, moral.size(), Algorithm::hybrid);
  p.time_exponent = bounds.time_exponent;
  p.space_exponent = bounds.space_exponent;
  return p;
}

std::vector<std::size_t> series_bounds(const CliqueTree& primary) {
  auto sizes = primary.separator_sizes();
  sizes.push_back(0);
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  return sizes;
}

TradeoffSeries tradeoff_series(const CliqueTree& primary, const UGraph& moral, std::string circuit) {
  TradeoffSeries series;
  series.circuit = std::move(circuit);
  series.heuristic = primary.ordering.heuristic;
  for (std::size_t bound : series_bounds(primary)) {
    series.points.push_back(decomposition_point(primary, moral, bound));
  }
  return series;
}

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::clustering: return "clustering";
    case Algorithm::conditioning: return "conditioning";
    case Algorithm::hybrid: return "hybrid";
  }
  return "?";
}

ComplexityBound complexity_bounds(const DecompositionPoint& p, std::size_t n, Algorithm mode) {
  switch (mode) {
    case Algorithm::clustering: return {n, p.max_cluster + 1, p.sep_bound};
    case Algorithm::conditioning: return {n, p.max_cutset + 2, 0};
    case Algorithm::hybrid: return {n, std::max(p.sep_bound, p.max_cutset), p.sep_bound};
  }
  return {};
}

}  // namespace spa
