#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "graphwright/core/error.hpp"
#include "graphwright/graph/graph.hpp"
#include "graphwright/solvers/scaled.hpp"
#include "graphwright/solvers/solution.hpp"

namespace graphwright {

namespace detail {

inline constexpr std::int64_t unreachable = std::numeric_limits<std::int64_t>::max();

inline std::vector<std::int64_t> dijkstra_distances(const Graph& g, const ScaledWeights& w, NodeId source,
                                                    bool reverse) {
  std::vector<std::int64_t> dist(g.node_count(), unreachable);
  using Item = std::pair<std::int64_t, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[source] = 0;
  queue.emplace(0, source);
  while (!queue.empty()) {
    auto [d, u] = queue.top();
    queue.pop();
    if (d != dist[u]) continue;
    for (const auto& arc : reverse ? g.in_neighbors(u) : g.neighbors(u)) {
      const std::int64_t cost = reverse ? w(arc.to, u) : w(u, arc.to);
      if (d + cost < dist[arc.to]) {
        dist[arc.to] = d + cost;
        queue.emplace(dist[arc.to], arc.to);
      }
    }
  }
  return dist;
}

}  // namespace detail

/// Dijkstra with exact (scaled integer) distances. Among all shortest simple
/// paths the lexicographically smallest node sequence is returned: the path
/// is walked forward from the source, always trying the smallest-index
/// neighbour that stays on a shortest route to the destination.
inline Solution shortest_path_dijkstra(const Graph& g, const std::string& source, const std::string& target) {
  auto s = g.index_of(source);
  auto t = g.index_of(target);
  if (!s) throw Error(Errc::unknown_node, "unknown source node '" + source + "'");
  if (!t) throw Error(Errc::unknown_node, "unknown target node '" + target + "'");
  detail::ScaledWeights w(g);
  const auto from_source = detail::dijkstra_distances(g, w, *s, false);
  if (from_source[*t] == detail::unreachable)
    throw Error(Errc::no_path, "no path from '" + source + "' to '" + target + "'");
  const auto to_target = detail::dijkstra_distances(g, w, *t, true);

  std::vector<NodeId> path{*s};
  std::vector<char> on_path(g.node_count(), 0);
  on_path[*s] = 1;
  // Only zero-weight edges can make this walk backtrack.
  std::function<bool(NodeId)> extend = [&](NodeId u) -> bool {
    if (u == *t) return true;
    for (const auto& arc : g.neighbors(u)) {
      const NodeId v = arc.to;
      if (on_path[v] || to_target[v] == detail::unreachable) continue;
      if (w(u, v) + to_target[v] != to_target[u]) continue;
      on_path[v] = 1;
      path.push_back(v);
      if (extend(v)) return true;
      path.pop_back();
      on_path[v] = 0;
    }
    return false;
  };
  extend(*s);

  Solution sol;
  sol.kind = SolutionKind::path;
  for (NodeId v : path) sol.nodes.push_back(g.name(v));
  sol.objective = w.unscale(from_source[*t]);
  sol.algorithm_id = "dijkstra";
  sol.exact = true;
  return sol;
}

}  // namespace graphwright
