#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "graphwright/core/error.hpp"
#include "graphwright/graph/graph.hpp"
#include "graphwright/solvers/coloring.hpp"
#include "graphwright/solvers/solution.hpp"

namespace graphwright {

inline constexpr std::size_t default_vertex_cover_exact_limit = 30;

namespace detail {

inline Solution make_cover_solution(const Graph& g, const std::vector<char>& in_cover, std::string algorithm_id,
                                    bool exact) {
  Solution s;
  s.kind = SolutionKind::node_set;
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (in_cover[v]) s.nodes.push_back(g.name(v));
  s.objective = Rational(static_cast<std::int64_t>(s.nodes.size()));
  s.algorithm_id = std::move(algorithm_id);
  s.exact = exact;
  return s;
}

/// Decision procedure: can the edges among `alive` be covered with at most
/// `budget` vertices? Applies degree-0 and degree-1 reductions, then branches
/// on a maximum-degree vertex v: take v, or take all of N(v).
inline bool coverable(const std::vector<Mask>& adj, Mask alive, int budget) {
  for (;;) {
    bool reduced = false;
    int edges2 = 0, max_deg = 0;
    int best_v = -1;
    for (Mask m = alive; m != 0; m &= m - 1) {
      const int v = std::countr_zero(m);
      const Mask nb = adj[static_cast<std::size_t>(v)] & alive;
      const int d = std::popcount(nb);
      if (d == 0) {
        alive &= ~(Mask{1} << v);
        reduced = true;
        break;
      }
      if (d == 1) {
        // The single neighbour is never worse than v itself.
        alive &= ~nb;
        alive &= ~(Mask{1} << v);
        if (--budget < 0) return false;
        reduced = true;
        break;
      }
      edges2 += d;
      if (d > max_deg) {
        max_deg = d;
        best_v = v;
      }
    }
    if (reduced) continue;
    if (alive == 0 || best_v < 0) return true;
    if (budget <= 0) return false;
    if (edges2 / 2 > budget * max_deg) return false;
    const Mask bit = Mask{1} << best_v;
    if (coverable(adj, alive & ~bit, budget - 1)) return true;
    const Mask nb = adj[static_cast<std::size_t>(best_v)] & alive;
    const int take = std::popcount(nb);
    if (take > budget) return false;
    return coverable(adj, alive & ~bit & ~nb, budget - take);
  }
}

/// Feasibility with some vertices forced into (`in`) or out of (`out`) the cover.
inline bool coverable_with(const std::vector<Mask>& adj, Mask all, Mask in, Mask out, int budget) {
  for (Mask m = out; m != 0; m &= m - 1) in |= adj[static_cast<std::size_t>(std::countr_zero(m))];
  if ((in & out) != 0) return false;
  const int forced = std::popcount(in);
  if (forced > budget) return false;
  return coverable(adj, all & ~in & ~out, budget - forced);
}

}  // namespace detail

/// 2-approximation: both endpoints of a maximal matching built by scanning
/// edges in canonical (u, v) order.
inline Solution vertex_cover_approx(const Graph& g) {
  detail::require_undirected(g, "matching cover");
  std::vector<char> in_cover(g.node_count(), 0);
  for (const auto& e : g.edges())
    if (!in_cover[e.u] && !in_cover[e.v]) in_cover[e.u] = in_cover[e.v] = 1;
  return detail::make_cover_solution(g, in_cover, "matching_2approx", false);
}

/// Minimum vertex cover by branch and bound. Among minimum covers the
/// lexicographically smallest name set is returned: nodes are decided in
/// name order, each kept in the cover whenever a minimum cover still exists
/// under the decisions made so far.
inline Solution vertex_cover_exact(const Graph& g, std::size_t limit = default_vertex_cover_exact_limit) {
  detail::require_undirected(g, "exact vertex cover");
  const std::size_t n = g.node_count();
  if (n > limit)
    throw Error(Errc::too_large, "exact vertex cover limit is " + std::to_string(limit) + " nodes, graph has " +
                                     std::to_string(n));
  if (n > 64) throw Error(Errc::too_large, "exact vertex cover supports at most 64 nodes");
  const auto adj = detail::adjacency_masks(g);
  const detail::Mask all = n == 64 ? ~detail::Mask{0} : (detail::Mask{1} << n) - 1;

  // A maximal matching gives a lower bound; twice it is an upper bound.
  int matching = 0;
  {
    std::vector<char> used(n, 0);
    for (const auto& e : g.edges())
      if (!used[e.u] && !used[e.v]) {
        used[e.u] = used[e.v] = 1;
        ++matching;
      }
  }
  int size = matching;
  while (!detail::coverable(adj, all, size)) ++size;

  detail::Mask in = 0, out = 0;
  for (NodeId v = 0; v < n; ++v) {
    const detail::Mask bit = detail::Mask{1} << v;
    if ((in & bit) != 0) continue;
    if (detail::coverable_with(adj, all, in | bit, out, size))
      in |= bit;
    else
      out |= bit;
  }
  // Vertices forced in by excluded neighbours.
  for (detail::Mask m = out; m != 0; m &= m - 1) in |= adj[static_cast<std::size_t>(std::countr_zero(m))];
  std::vector<char> in_cover(n, 0);
  for (NodeId v = 0; v < n; ++v) in_cover[v] = (in >> v & 1U) ? 1 : 0;
  return detail::make_cover_solution(g, in_cover, "vertex_cover_branch_and_bound", true);
}

}  // namespace graphwright
