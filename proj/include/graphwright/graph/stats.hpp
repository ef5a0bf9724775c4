#pragma once

#include <cstddef>
#include <vector>

#include "graphwright/core/rational.hpp"
#include "graphwright/graph/graph.hpp"

namespace graphwright {

struct GraphStats {
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  Rational density{0};
  bool is_connected = false;  // weak connectivity for directed graphs
  bool is_complete = false;
  bool directed = false;
  bool weighted = false;

  friend bool operator==(const GraphStats&, const GraphStats&) = default;
};

inline std::size_t max_edge_count(std::size_t n, bool directed) noexcept {
  return directed ? n * (n > 0 ? n - 1 : 0) : n * (n > 0 ? n - 1 : 0) / 2;
}

inline bool is_weakly_connected(const Graph& g) {
  const auto n = g.node_count();
  if (n <= 1) return true;
  std::vector<char> seen(n, 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    auto visit = [&](const Arc& a) {
      if (!seen[a.to]) {
        seen[a.to] = 1;
        ++reached;
        stack.push_back(a.to);
      }
    };
    for (const auto& a : g.neighbors(u)) visit(a);
    if (g.directed())
      for (const auto& a : g.in_neighbors(u)) visit(a);
  }
  return reached == n;
}

inline GraphStats graph_stats(const Graph& g) {
  GraphStats s;
  s.node_count = g.node_count();
  s.edge_count = g.edge_count();
  s.directed = g.directed();
  s.weighted = g.weighted();
  const auto max_m = max_edge_count(s.node_count, s.directed);
  s.density = max_m == 0 ? Rational(0)
                         : Rational(static_cast<std::int64_t>(s.edge_count), static_cast<std::int64_t>(max_m));
  s.is_complete = s.edge_count == max_m;
  s.is_connected = is_weakly_connected(g);
  return s;
}

}  // namespace graphwright
