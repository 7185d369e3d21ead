#pragma once

#include <algorithm>
#include <cstddef>
#include <unordered_set>
#include <vector>

#include "spa/graph.hpp"

namespace spa::detail {

// Mutable copy of a graph supporting node elimination, shared by the
// triangulation routines and the greedy ordering heuristics.
class EliminationGraph {
 public:
  explicit EliminationGraph(const UGraph& g) : neighbors_(g.size()), alive_(g.size(), true) {
    for (NodeId v = 0; v < g.size(); ++v) {
      neighbors_[v].reserve(g.degree(v) * 2);
      neighbors_[v].insert(g.neighbors(v).begin(), g.neighbors(v).end());
    }
  }

  [[nodiscard]] std::size_t size() const noexcept { return neighbors_.size(); }
  [[nodiscard]] bool alive(NodeId v) const { return alive_[v]; }
  [[nodiscard]] std::size_t degree(NodeId v) const { return neighbors_[v].size(); }

  [[nodiscard]] std::vector<NodeId> sorted_neighbors(NodeId v) const {
    std::vector<NodeId> out(neighbors_[v].begin(), neighbors_[v].end());
    std::sort(out.begin(), out.end());
    return out;
  }

  // Removes v. With connect_neighbors the remaining neighbors become a clique.
  // Returns the neighbors whose degree changed.
  std::vector<NodeId> eliminate(NodeId v, bool connect_neighbors) {
    auto nbrs = sorted_neighbors(v);
    for (NodeId u : nbrs) neighbors_[u].erase(v);
    if (connect_neighbors) {
      for (std::size_t a = 0; a < nbrs.size(); ++a) {
        for (std::size_t b = a + 1; b < nbrs.size(); ++b) {
          neighbors_[nbrs[a]].insert(nbrs[b]);
          neighbors_[nbrs[b]].insert(nbrs[a]);
        }
      }
    }
    neighbors_[v].clear();
    alive_[v] = false;
    return nbrs;
  }

 private:
  std::vector<std::unordered_set<NodeId>> neighbors_;
  std::vector<bool> alive_;
};

}  // namespace spa::detail
