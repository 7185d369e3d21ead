#include "spa/ordering.hpp"

#include <numeric>
#include <random>

#include "elimination_graph.hpp"

namespace spa {

std::string_view to_string(Heuristic h) {
  switch (h) {
    case Heuristic::min_degree: return "min-degree";
    case Heuristic::min_width: return "min-width";
    case Heuristic::max_cardinality: return "max-cardinality";
    case Heuristic::causal: return "causal";
  }
  return "?";
}

std::string_view short_name(Heuristic h) {
  switch (h) {
    case Heuristic::min_degree: return "MDO";
    case Heuristic::min_width: return "MWO";
    case Heuristic::max_cardinality: return "MCO";
    case Heuristic::causal: return "CO";
  }
  return "?";
}

std::optional<Heuristic> parse_heuristic(std::string_view name) {
  for (Heuristic h : kAllHeuristics) {
    if (name == to_string(h) || name == short_name(h)) return h;
  }
  return std::nullopt;
}

std::string_view to_string(TieBreak::Kind kind) {
  return kind == TieBreak::Kind::index ? "index" : "random";
}

std::vector<std::size_t> TieBreak::ranks(std::size_t node_count) const {
  std::vector<std::size_t> rank(node_count);
  std::iota(rank.begin(), rank.end(), std::size_t{0});
  if (kind == Kind::random && node_count > 1) {
    // Fisher-Yates on raw engine output; mt19937_64 is fully specified, so
    // the permutation is the same on every platform.
    std::mt19937_64 engine(seed);
    for (std::size_t i = node_count - 1; i > 0; --i) {
      const auto j = static_cast<std::size_t>(engine() % (i + 1));
      std::swap(rank[i], rank[j]);
    }
  }
  return rank;
}

namespace {

Ordering greedy_last_to_first(const UGraph& g, TieBreak tie, Heuristic h, bool connect) {
  const std::size_t n = g.size();
  const auto rank = tie.ranks(n);
  detail::EliminationGraph work(g);
  std::vector<NodeId> sequence(n);
  for (std::size_t slot = n; slot-- > 0;) {
    NodeId best = 0;
    bool any = false;
    for (NodeId v = 0; v < n; ++v) {
      if (!work.alive(v)) continue;
      if (!any || work.degree(v) < work.degree(best) ||
          (work.degree(v) == work.degree(best) && rank[v] < rank[best])) {
        best = v;
        any = true;
      }
    }
    sequence[slot] = best;
    work.eliminate(best, connect);
  }
  return {EliminationOrder(std::move(sequence), n), h, tie};
}

}  // namespace

Ordering min_degree(const UGraph& g, TieBreak tie) {
  return greedy_last_to_first(g, tie, Heuristic::min_degree, /*connect=*/true);
}

Ordering min_width(const UGraph& g, TieBreak tie) {
  return greedy_last_to_first(g, tie, Heuristic::min_width, /*connect=*/false);
}

Ordering max_cardinality(const UGraph& g, TieBreak tie) {
  const std::size_t n = g.size();
  const auto rank = tie.ranks(n);
  std::vector<std::size_t> ordered_neighbors(n, 0);
  std::vector<bool> placed(n, false);
  std::vector<NodeId> sequence;
  sequence.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    NodeId best = 0;
    bool any = false;
    for (NodeId v = 0; v < n; ++v) {
      if (placed[v]) continue;
      if (!any || ordered_neighbors[v] > ordered_neighbors[best] ||
          (ordered_neighbors[v] == ordered_neighbors[best] && rank[v] < rank[best])) {
        best = v;
        any = true;
      }
    }
    placed[best] = true;
    sequence.push_back(best);
    for (NodeId u : g.neighbors(best)) ++ordered_neighbors[u];
  }
  return {EliminationOrder(std::move(sequence), n), Heuristic::max_cardinality, tie};
}

Ordering causal(const Dag& dag, TieBreak tie) {
  const auto rank = tie.ranks(dag.size());
  return {EliminationOrder(topological_sort(dag, rank), dag.size()), Heuristic::causal, tie};
}

Ordering make_ordering(Heuristic h, const UGraph& moral, const Dag& dag, TieBreak tie) {
  switch (h) {
    case Heuristic::min_degree: return min_degree(moral, tie);
    case Heuristic::min_width: return min_width(moral, tie);
    case Heuristic::max_cardinality: return max_cardinality(moral, tie);
    case Heuristic::causal:
      if (dag.size() != moral.size()) throw GraphError("dag and moral graph disagree on node count");
      return causal(dag, tie);
  }
  throw GraphError("unknown heuristic");
}

}  // namespace spa
