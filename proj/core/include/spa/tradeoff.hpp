#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spa/graph.hpp"
#include "spa/jointree.hpp"

namespace spa {

/// One tree of the tradeoff series: the tree obtained by merging every
/// cluster pair whose separator exceeds `sep_bound`.
struct DecompositionPoint {
  std::size_t sep_bound = 0;      // s_i, also the tree's separator width
  std::size_t max_cluster = 0;    // r_i
  std::size_t max_cutset = 0;     // c_i, largest per-cluster cutset
  std::size_t cluster_count = 0;
  std::size_t time_exponent = 0;  // hybrid estimate, max(s_i, c_i)
  std::size_t space_exponent = 0; // s_i

  friend bool operator==(const DecompositionPoint&, const DecompositionPoint&) = default;
};

struct TradeoffSeries {
  std::string circuit;
  Heuristic heuristic = Heuristic::min_degree;
  std::vector<DecompositionPoint> points;  // strictly decreasing sep_bound, ends at 0

  friend bool operator==(const TradeoffSeries&, const TradeoffSeries&) = default;
};

/// Contracts every tree edge whose separator is larger than `bound`. Merged
/// clusters are unions of connected groups of input clusters, ordered by
/// their first member. Surviving separators are unchanged and all <= bound.
CliqueTree merge_by_separator(const CliqueTree& tree, std::size_t bound);

/// Cutset size of the moral graph restricted to each cluster, aligned with
/// tree.clusters.
std::vector<std::size_t> cluster_cutsets(const CliqueTree& tree, const UGraph& moral);

/// Evaluates one secondary tree of `primary` at separator bound `bound`.
DecompositionPoint decomposition_point(const CliqueTree& primary, const UGraph& moral,
                                       std::size_t bound);

/// Distinct separator sizes of `primary` in strictly decreasing order, with
/// 0 appended when absent. These are the bounds of the series.
std::vector<std::size_t> series_bounds(const CliqueTree& primary);

TradeoffSeries tradeoff_series(const CliqueTree& primary, const UGraph& moral,
                               std::string circuit = {});

enum class Algorithm { clustering, conditioning, hybrid };

std::string_view to_string(Algorithm a);

/// Worst-case bound O(linear_factor * exp(time_exponent)) time and
/// O(linear_factor * exp(space_exponent)) space; a space exponent of 0 means
/// linear space.
struct ComplexityBound {
  std::size_t linear_factor = 0;
  std::size_t time_exponent = 0;
  std::size_t space_exponent = 0;

  friend bool operator==(const ComplexityBound&, const ComplexityBound&) = default;
};

/// clustering:   time r+1, space s
/// conditioning: time c+2, linear space
/// hybrid:       time max(s, c), space s
///
/// The hybrid time exponent uses the larger of separator and cutset so time
/// never drops below space when the heuristic cutset is smaller than s.
ComplexityBound complexity_bounds(const DecompositionPoint& p, std::size_t n, Algorithm mode);

}  // namespace spa
