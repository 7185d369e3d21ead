#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "spa/graph.hpp"
#include "spa/ordering.hpp"

namespace spa {

/// Sorted node ids.
using Cluster = std::vector<NodeId>;

struct TreeEdge {
  std::size_t a = 0;  // cluster indices
  std::size_t b = 0;
  Cluster separator;  // cluster a ∩ cluster b

  friend bool operator==(const TreeEdge&, const TreeEdge&) = default;
};

class JoinTreeError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A clique-tree (join-tree) over clusters of graph nodes; a forest when
/// the underlying graph is disconnected.
///
/// The primary tree has the maximal cliques of a triangulated graph as
/// clusters. Secondary trees come out of merge_by_separator() and remember
/// the separator bound that produced them.
struct CliqueTree {
  std::vector<Cluster> clusters;
  std::vector<TreeEdge> edges;
  Ordering ordering;
  std::optional<std::size_t> secondary_bound;  // empty for the primary tree

  [[nodiscard]] bool is_primary() const noexcept { return !secondary_bound.has_value(); }
  [[nodiscard]] std::size_t max_cluster_size() const;
  [[nodiscard]] std::size_t component_count() const;
  [[nodiscard]] std::vector<std::size_t> cluster_sizes() const;
  [[nodiscard]] std::vector<std::size_t> separator_sizes() const;
};

/// For every node v the candidate {v} ∪ earlier-neighbors(v); candidates
/// contained in another candidate are dropped. Clusters come back ordered by
/// the position of the node that started them in a first-to-last sweep, so
/// each one meets the union of its predecessors inside a single predecessor.
/// Throws JoinTreeError when `order` is
/// not a perfect elimination ordering of `induced`.
std::vector<Cluster> maximal_cliques(const UGraph& induced, const EliminationOrder& order);

/// Connects every cluster to the preceding cluster with which it shares the
/// most nodes. Ties go to the earliest cluster. A cluster sharing nothing
/// with its predecessors starts a new component.
CliqueTree build_primary_tree(std::vector<Cluster> clusters, const Ordering& ordering);

/// Orders, triangulates and builds the primary tree in one go.
CliqueTree primary_tree(const UGraph& moral, const Ordering& ordering);

/// Largest separator; 0 for a tree without edges.
std::size_t separator_width(const CliqueTree& tree);

/// True iff for every node the clusters holding it form a connected subtree,
/// and every edge's separator is the intersection of its endpoints.
bool verify_running_intersection(const CliqueTree& tree);

/// Sorted intersection of two sorted clusters.
Cluster intersect(const Cluster& a, const Cluster& b);

}  // namespace spa
