#include <numeric>
#include <string>

#include "spa/graph.hpp"

namespace spa {

EliminationOrder::EliminationOrder(std::vector<NodeId> sequence, std::size_t node_count)
    : sequence_(std::move(sequence)), position_(node_count, node_count) {
  if (sequence_.size() != node_count) {
    throw GraphError("ordering has " + std::to_string(sequence_.size()) + " entries, graph has " +
                     std::to_string(node_count) + " nodes");
  }
  for (std::size_t i = 0; i < sequence_.size(); ++i) {
    const NodeId v = sequence_[i];
    if (v >= node_count || position_[v] != node_count) {
      throw GraphError("ordering is not a permutation (bad entry " + std::to_string(v) + ")");
    }
    position_[v] = i;
  }
}

EliminationOrder EliminationOrder::identity(std::size_t node_count) {
  std::vector<NodeId> seq(node_count);
  std::iota(seq.begin(), seq.end(), NodeId{0});
  return EliminationOrder(std::move(seq), node_count);
}

}  // namespace spa
