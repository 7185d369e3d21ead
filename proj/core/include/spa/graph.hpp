#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spa {

using NodeId = std::uint32_t;

class Dag;

/// Undirected edge, always stored with first < second.
struct Edge {
  NodeId first{};
  NodeId second{};

  Edge() = default;
  Edge(NodeId a, NodeId b) : first(a < b ? a : b), second(a < b ? b : a) {}

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Simple undirected graph over dense node ids 0..n-1.
///
/// Adjacency lists are kept sorted. Self-loops are rejected; inserting an
/// edge that already exists is a no-op reported through the return value of
/// add_edge(), or an error through add_unique_edge().
class UGraph {
 public:
  UGraph() = default;
  explicit UGraph(std::size_t node_count);
  UGraph(std::size_t node_count, std::vector<std::string> labels);

  /// Graph with the given labels and edges; repeated edges collapse.
  static UGraph from_edge_list(std::vector<std::string> labels, std::vector<Edge> edges);

  NodeId add_node(std::string label = {});

  /// Returns false if the edge was already present.
  bool add_edge(NodeId a, NodeId b);
  /// Throws GraphError if the edge was already present.
  void add_unique_edge(NodeId a, NodeId b);

  [[nodiscard]] bool has_edge(NodeId a, NodeId b) const;
  [[nodiscard]] std::size_t size() const noexcept { return adjacency_.size(); }
  [[nodiscard]] bool empty() const noexcept { return adjacency_.empty(); }
  [[nodiscard]] std::size_t edge_count() const noexcept { return edge_count_; }
  [[nodiscard]] std::size_t degree(NodeId v) const { return adjacency_.at(v).size(); }
  [[nodiscard]] const std::vector<NodeId>& neighbors(NodeId v) const { return adjacency_.at(v); }
  [[nodiscard]] const std::string& label(NodeId v) const { return labels_.at(v); }
  [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// All edges, sorted.
  [[nodiscard]] std::vector<Edge> edges() const;

  /// Subgraph induced by `nodes` (need not be sorted). Node i of the result
  /// corresponds to nodes[i] and inherits its label.
  [[nodiscard]] UGraph induced_subgraph(std::span<const NodeId> nodes) const;

  friend bool operator==(const UGraph&, const UGraph&) = default;

 private:
  void check_node(NodeId v) const;

  std::vector<std::vector<NodeId>> adjacency_;
  std::vector<std::string> labels_;
  std::size_t edge_count_ = 0;
};

/// A validated permutation of the nodes of a graph. Position 0 is the first
/// node of the ordering; elimination runs from the last position to the first.
class EliminationOrder {
 public:
  EliminationOrder() = default;
  /// Throws GraphError unless `sequence` is a permutation of 0..node_count-1.
  EliminationOrder(std::vector<NodeId> sequence, std::size_t node_count);

  static EliminationOrder identity(std::size_t node_count);

  [[nodiscard]] std::span<const NodeId> sequence() const noexcept { return sequence_; }
  [[nodiscard]] std::size_t size() const noexcept { return sequence_.size(); }
  [[nodiscard]] NodeId at(std::size_t position) const { return sequence_.at(position); }
  [[nodiscard]] std::size_t position(NodeId v) const { return position_.at(v); }

  friend bool operator==(const EliminationOrder& a, const EliminationOrder& b) {
    return a.sequence_ == b.sequence_;
  }

 private:
  std::vector<NodeId> sequence_;
  std::vector<std::size_t> position_;
};

struct Triangulation {
  UGraph induced;
  std::vector<Edge> fill_edges;  // sorted
};

/// Drops edge directions and marries every pair of co-parents.
UGraph moralize(const Dag& dag);

/// Max over nodes of the number of neighbors that precede it.
std::size_t width_of_ordering(const UGraph& g, const EliminationOrder& order);

/// Processes nodes last to first, connecting the earlier neighbors of each
/// processed node pairwise.
Triangulation triangulate(const UGraph& g, const EliminationOrder& order);

/// Width of the triangulated graph under the same ordering.
std::size_t induced_width(const UGraph& g, const EliminationOrder& order);

/// Maximum cardinality search followed by a perfect-elimination check.
bool is_chordal(const UGraph& g);

bool is_forest(const UGraph& g);

/// Forest test on `g` with `removed` nodes deleted. `removed` is indexed by node.
bool is_forest_without(const UGraph& g, const std::vector<bool>& removed);

std::size_t connected_components(const UGraph& g);

/// Greedy cycle-cutset: strip degree <= 1 nodes, cut the max-degree node
/// (lowest id on ties) while cycles remain, then drop redundant picks.
/// Result is sorted and inclusion-minimal.
std::vector<NodeId> cutset_heuristic(const UGraph& g);

class OracleLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline constexpr std::size_t kCutsetOracleLimit = 20;
inline constexpr std::size_t kTreewidthOracleLimit = 10;

/// Minimum feedback vertex set by enumerating subsets of increasing size.
std::vector<NodeId> cutset_exact(const UGraph& g, std::size_t limit = kCutsetOracleLimit);

/// Minimum induced width over all orderings.
std::size_t treewidth_exact(const UGraph& g, std::size_t limit = kTreewidthOracleLimit);

}  // namespace spa
