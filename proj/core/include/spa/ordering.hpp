#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "spa/graph.hpp"
#include "spa/netlist.hpp"

namespace spa {

enum class Heuristic { min_degree, min_width, max_cardinality, causal };

inline constexpr Heuristic kAllHeuristics[] = {Heuristic::causal, Heuristic::max_cardinality,
                                               Heuristic::min_width, Heuristic::min_degree};

/// "min-degree", "min-width", "max-cardinality", "causal".
std::string_view to_string(Heuristic h);
/// Short tags used in file names and tables: MDO, MWO, MCO, CO.
std::string_view short_name(Heuristic h);
std::optional<Heuristic> parse_heuristic(std::string_view name);

/// How ties between equally good candidates are resolved.
///
/// `index` prefers the lowest node id. `random` draws a permutation of the
/// nodes from a 64-bit Mersenne twister seeded with `seed` and prefers the
/// lowest rank in it; the draw does not depend on the standard library.
struct TieBreak {
  enum class Kind { index, random };
  Kind kind = Kind::index;
  std::uint64_t seed = 0;

  static TieBreak by_index() { return {}; }
  static TieBreak random(std::uint64_t seed) { return {Kind::random, seed}; }

  /// rank[v] for every node; smaller wins.
  [[nodiscard]] std::vector<std::size_t> ranks(std::size_t node_count) const;

  friend bool operator==(const TieBreak&, const TieBreak&) = default;
};

std::string_view to_string(TieBreak::Kind kind);

struct Ordering {
  EliminationOrder order;
  Heuristic heuristic = Heuristic::min_degree;
  TieBreak tie_break;
};

/// Built last to first: the minimum-degree node of the current graph takes
/// the latest free slot, its neighbors are connected, and it is removed.
Ordering min_degree(const UGraph& g, TieBreak tie = {});

/// As min_degree, but neighbors are not connected on removal.
Ordering min_width(const UGraph& g, TieBreak tie = {});

/// Built first to last: each next node has the most already-ordered
/// neighbors. The first node is the tie-break winner.
Ordering max_cardinality(const UGraph& g, TieBreak tie = {});

/// A topological order of the dag (parents before children).
Ordering causal(const Dag& dag, TieBreak tie = {});

/// Dispatches on `h`. `dag` must be the graph `moral` was derived from; it is
/// only read for the causal heuristic.
Ordering make_ordering(Heuristic h, const UGraph& moral, const Dag& dag, TieBreak tie = {});

}  // namespace spa
