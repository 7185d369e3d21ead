// Exponential-time exact routines, used to cross-check the heuristics on
// small graphs.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "spa/graph.hpp"

namespace spa {

std::vector<NodeId> cutset_exact(const UGraph& g, std::size_t limit) {
  const std::size_t n = g.size();
  if (n > limit) {
    throw OracleLimitError("cutset_exact: " + std::to_string(n) + " nodes exceeds limit " +
                           std::to_string(limit));
  }
  std::vector<bool> removed(n, false);
  for (std::size_t k = 0; k <= n; ++k) {
    // Lexicographically first k-subset first.
    std::vector<bool> choose(n, false);
    std::fill(choose.begin(), choose.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      if (is_forest_without(g, choose)) {
        std::vector<NodeId> out;
        for (NodeId v = 0; v < n; ++v) {
          if (choose[v]) out.push_back(v);
        }
        return out;
      }
    } while (std::prev_permutation(choose.begin(), choose.end()));
  }
  return {};  // unreachable: removing every node leaves a forest
}

std::size_t treewidth_exact(const UGraph& g, std::size_t limit) {
  const std::size_t n = g.size();
  if (n > limit) {
    throw OracleLimitError("treewidth_exact: " + std::to_string(n) + " nodes exceeds limit " +
                           std::to_string(limit));
  }
  if (n == 0) return 0;
  using Mask = std::uint32_t;
  std::vector<Mask> adj(n, 0);
  for (NodeId v = 0; v < n; ++v) {
    for (NodeId u : g.neighbors(v)) adj[v] |= Mask{1} << u;
  }
  // degree_after(S, v): number of nodes outside S + {v} reachable from v
  // through nodes of S, i.e. v's degree once S has been eliminated.
  auto degree_after = [&](Mask eliminated, NodeId v) {
    Mask seen = Mask{1} << v;
    Mask frontier = seen;
    Mask reached = 0;
    while (frontier != 0) {
      Mask next = 0;
      for (Mask f = frontier; f != 0; f &= f - 1) {
        next |= adj[static_cast<std::size_t>(std::countr_zero(f))];
      }
      next &= ~seen;
      seen |= next;
      reached |= next & ~eliminated;
      frontier = next & eliminated;
    }
    return static_cast<std::size_t>(std::popcount(reached));
  };
  // best[S] = smallest achievable max degree when the nodes of S are
  // eliminated first (in some order).
  const Mask full = (n == 32) ? ~Mask{0} : ((Mask{1} << n) - 1);
  std::vector<std::size_t> best(std::size_t{1} << n, std::numeric_limits<std::size_t>::max());
  best[0] = 0;
  for (Mask s = 1; s <= full; ++s) {
    std::size_t value = std::numeric_limits<std::size_t>::max();
    for (Mask rest = s; rest != 0; rest &= rest - 1) {
      const auto v = static_cast<NodeId>(std::countr_zero(rest));
      const Mask before = s & ~(Mask{1} << v);
      value = std::min(value, std::max(best[before], degree_after(before, v)));
    }
    best[s] = value;
    if (s == full) break;
  }
  return best[full];
}

}  // namespace spa
