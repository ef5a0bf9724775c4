#pragma once

#include <utility>
#include <vector>

#include "graphwright/graph/graph.hpp"
#include "graphwright/solvers/solution.hpp"

namespace graphwright {

/// Undirected graphs: union-find over the edge list. Directed graphs: DFS
/// looking for a back edge.
inline Solution detect_cycle(const Graph& g) {
  const std::size_t n = g.node_count();
  bool found = false;
  if (!g.directed()) {
    std::vector<NodeId> parent(n);
    for (NodeId v = 0; v < n; ++v) parent[v] = v;
    auto find = [&](NodeId v) {
      while (parent[v] != v) {
        parent[v] = parent[parent[v]];
        v = parent[v];
      }
      return v;
    };
    for (const auto& e : g.edges()) {
      const NodeId a = find(e.u), b = find(e.v);
      if (a == b) {
        found = true;
        break;
      }
      parent[a] = b;
    }
  } else {
    enum : char { white, grey, black };
    std::vector<char> state(n, white);
    for (NodeId root = 0; root < n && !found; ++root) {
      if (state[root] != white) continue;
      std::vector<std::pair<NodeId, std::size_t>> stack{{root, 0}};
      state[root] = grey;
      while (!stack.empty() && !found) {
        auto& [u, next] = stack.back();
        auto arcs = g.neighbors(u);
        if (next == arcs.size()) {
          state[u] = black;
          stack.pop_back();
          continue;
        }
        const NodeId v = arcs[next++].to;
        if (state[v] == grey) found = true;
        else if (state[v] == white) {
          state[v] = grey;
          stack.emplace_back(v, 0);
        }
      }
    }
  }
  Solution sol;
  sol.kind = SolutionKind::boolean;
  sol.flag = found;
  sol.objective = Rational(found ? 1 : 0);
  sol.algorithm_id = "cycle_detection";
  sol.exact = true;
  return sol;
}

}  // namespace graphwright
