#pragma once

// Symmetric TSP on complete undirected graphs.
//
// Every solver returns tours in canonical form: the tour starts at node 0 and
// travels toward the smaller-indexed of node 0's two tour neighbours. Exact
// solvers return the lexicographically smallest canonical optimal tour.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "graphwright/core/error.hpp"
#include "graphwright/graph/graph.hpp"
#include "graphwright/graph/stats.hpp"
#include "graphwright/solvers/scaled.hpp"
#include "graphwright/solvers/solution.hpp"

namespace graphwright {

inline constexpr std::size_t default_tsp_brute_force_limit = 10;
inline constexpr std::size_t default_held_karp_limit = 16;
inline constexpr std::size_t default_tsp_branch_and_bound_limit = 25;

namespace detail {

inline void require_tsp_graph(const Graph& g) {
  if (g.directed()) throw Error(Errc::invalid_input, "TSP solvers handle undirected graphs only");
  if (g.node_count() < 3) throw Error(Errc::invalid_input, "TSP needs at least 3 nodes");
  if (g.edge_count() != max_edge_count(g.node_count(), false))
    throw Error(Errc::graph_not_complete, "TSP needs a complete graph (" + std::to_string(g.edge_count()) + " of " +
                                              std::to_string(max_edge_count(g.node_count(), false)) + " edges)");
}

inline std::int64_t tour_length(const ScaledWeights& w, std::span<const NodeId> tour) {
  std::int64_t total = 0;
  for (std::size_t i = 0; i < tour.size(); ++i) total += w(tour[i], tour[(i + 1) % tour.size()]);
  return total;
}

/// Rotate so the tour starts at node 0, then orient toward the smaller neighbour.
inline std::vector<NodeId> canonical_tour(std::vector<NodeId> tour) {
  auto zero = std::find(tour.begin(), tour.end(), NodeId{0});
  std::rotate(tour.begin(), zero, tour.end());
  if (tour.size() > 2 && tour[1] > tour.back()) std::reverse(tour.begin() + 1, tour.end());
  return tour;
}

inline Solution make_tour_solution(const Graph& g, const ScaledWeights& w, const std::vector<NodeId>& tour,
                                   std::string algorithm_id, bool exact) {
  Solution s;
  s.kind = SolutionKind::tour;
  for (NodeId v : tour) s.nodes.push_back(g.name(v));
  s.objective = w.unscale(tour_length(w, tour));
  s.algorithm_id = std::move(algorithm_id);
  s.exact = exact;
  return s;
}

inline std::vector<NodeId> tour_indices(const Graph& g, const std::vector<std::string>& names) {
  std::vector<NodeId> tour;
  std::vector<char> seen(g.node_count(), 0);
  for (const auto& name : names) {
    auto id = g.index_of(name);
    if (!id) throw Error(Errc::invalid_input, "tour visits unknown node '" + name + "'");
    if (seen[*id]) throw Error(Errc::invalid_input, "tour visits '" + name + "' twice");
    seen[*id] = 1;
    tour.push_back(*id);
  }
  if (tour.size() != g.node_count()) throw Error(Errc::invalid_input, "tour does not visit every node");
  return tour;
}

/// First-improvement 2-opt: each pass applies the first exchange that
/// strictly shortens the tour and restarts; stops at a 2-opt local optimum.
inline void two_opt_in_place(const ScaledWeights& w, std::vector<NodeId>& tour) {
  const std::size_t n = tour.size();
  if (n < 4) return;
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i = 0; i + 2 < n && !improved; ++i) {
      for (std::size_t j = i + 2; j < n; ++j) {
        if (i == 0 && j == n - 1) continue;  // edges share node tour[0]
        const NodeId a = tour[i], b = tour[i + 1], c = tour[j], d = tour[(j + 1) % n];
        const std::int64_t delta = w(a, c) + w(b, d) - w(a, b) - w(c, d);
        if (delta < 0) {
          std::reverse(tour.begin() + static_cast<std::ptrdiff_t>(i + 1), tour.begin() + static_cast<std::ptrdiff_t>(j + 1));
          improved = true;
          break;
        }
      }
    }
  }
}

inline std::vector<NodeId> nearest_neighbor_tour(const ScaledWeights& w, NodeId start) {
  const std::size_t n = w.n;
  std::vector<char> used(n, 0);
  std::vector<NodeId> tour{start};
  used[start] = 1;
  NodeId cur = start;
  for (std::size_t step = 1; step < n; ++step) {
    NodeId best = n;
    for (NodeId v = 0; v < n; ++v)
      if (!used[v] && (best == n || w(cur, v) < w(cur, best))) best = v;
    used[best] = 1;
    tour.push_back(best);
    cur = best;
  }
  return tour;
}

}  // namespace detail

inline Rational tour_cost(const Graph& g, const std::vector<std::string>& tour) {
  detail::ScaledWeights w(g);
  auto ids = detail::tour_indices(g, tour);
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (w(ids[i], ids[(i + 1) % ids.size()]) == detail::no_edge)
      throw Error(Errc::invalid_input, "tour uses a missing edge");
  return w.unscale(detail::tour_length(w, ids));
}

/// Exhaustive search over all (n-1)! orderings; oracle for the exact solvers.
inline Solution tsp_brute_force(const Graph& g, std::size_t limit = default_tsp_brute_force_limit) {
  detail::require_tsp_graph(g);
  if (g.node_count() > limit)
    throw Error(Errc::too_large, "brute force handles at most " + std::to_string(limit) + " nodes");
  detail::ScaledWeights w(g);
  const std::size_t n = g.node_count();
  std::vector<NodeId> perm(n);
  std::iota(perm.begin(), perm.end(), NodeId{0});
  std::vector<NodeId> best;
  std::int64_t best_len = std::numeric_limits<std::int64_t>::max();
  do {
    if (perm[1] > perm[n - 1]) continue;
    const auto len = detail::tour_length(w, perm);
    if (len < best_len) {
      best_len = len;
      best = perm;
    }
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  return detail::make_tour_solution(g, w, best, "tsp_brute_force", true);
}

/// Held-Karp subset dynamic programme with node 0 fixed as the start.
/// remaining[mask][j] is the cheapest way to finish the tour from j when the
/// nodes in `mask` (over nodes 1..n-1) have been visited; evaluating it
/// forward lets the reconstruction pick the smallest feasible next node.
inline Solution tsp_exact_held_karp(const Graph& g, std::size_t limit = default_held_karp_limit) {
  detail::require_tsp_graph(g);
  if (g.node_count() > limit)
    throw Error(Errc::too_large, "Held-Karp limit is " + std::to_string(limit) + " nodes, graph has " +
                                     std::to_string(g.node_count()));
  if (limit > 24) throw Error(Errc::too_large, "Held-Karp state table would not fit in memory");
  detail::ScaledWeights w(g);
  const std::size_t n = g.node_count();
  const std::size_t m = n - 1;  // node k+1 <-> bit k
  const std::size_t full = (std::size_t{1} << m) - 1;
  constexpr std::int64_t inf = std::numeric_limits<std::int64_t>::max();
  std::vector<std::int64_t> remaining((full + 1) * m, inf);
  auto at = [&](std::size_t mask, std::size_t k) -> std::int64_t& { return remaining[mask * m + k]; };

  for (std::size_t mask = full; mask >= 1; --mask) {
    for (std::size_t j = 0; j < m; ++j) {
      if (!(mask >> j & 1U)) continue;
      if (mask == full) {
        at(mask, j) = w(j + 1, 0);
        continue;
      }
      std::int64_t best = inf;
      for (std::size_t k = 0; k < m; ++k) {
        if (mask >> k & 1U) continue;
        best = std::min(best, w(j + 1, k + 1) + at(mask | (std::size_t{1} << k), k));
      }
      at(mask, j) = best;
    }
  }

  std::int64_t optimum = inf;
  for (std::size_t k = 0; k < m; ++k) optimum = std::min(optimum, w(0, k + 1) + at(std::size_t{1} << k, k));

  std::vector<NodeId> tour{0};
  std::size_t mask = 0;
  NodeId cur = 0;
  std::int64_t need = optimum;
  while (mask != full) {
    for (std::size_t k = 0; k < m; ++k) {
      if (mask >> k & 1U) continue;
      const std::size_t next_mask = mask | (std::size_t{1} << k);
      const std::int64_t via = w(cur, k + 1) + at(next_mask, k);
      if (via == need) {
        need -= w(cur, k + 1);
        mask = next_mask;
        cur = k + 1;
        tour.push_back(cur);
        break;
      }
    }
  }
  return detail::make_tour_solution(g, w, tour, "held_karp", true);
}

inline Solution tsp_nearest_neighbor(const Graph& g, NodeId start = 0) {
  detail::require_tsp_graph(g);
  if (start >= g.node_count()) throw Error(Errc::unknown_node, "start node index out of range");
  detail::ScaledWeights w(g);
  auto tour = detail::canonical_tour(detail::nearest_neighbor_tour(w, start));
  return detail::make_tour_solution(g, w, tour, "nearest_neighbor", false);
}

/// Improves an existing tour with 2-opt; never returns a longer tour.
inline Solution tsp_two_opt(const Graph& g, const Solution& tour) {
  detail::require_tsp_graph(g);
  if (tour.kind != SolutionKind::tour) throw Error(Errc::kind_mismatch, "2-opt needs a tour");
  detail::ScaledWeights w(g);
  auto ids = detail::tour_indices(g, tour.nodes);
  detail::two_opt_in_place(w, ids);
  return detail::make_tour_solution(g, w, detail::canonical_tour(std::move(ids)), "two_opt", false);
}

inline Solution tsp_nearest_neighbor_two_opt(const Graph& g, NodeId start = 0) {
  auto s = tsp_two_opt(g, tsp_nearest_neighbor(g, start));
  s.algorithm_id = "nearest_neighbor_2opt";
  return s;
}

namespace detail {

/// Branch and bound over edge decisions with Held-Karp 1-tree bounds. Each
/// search node fixes some edges in or out of the tour; its bound is the best
/// 1-tree (MST over nodes 1..n-1 plus two edges at node 0) found by
/// subgradient ascent on node penalties pi, warm-started from the parent.
/// Branching follows a node of degree > 2 in the 1-tree: drop one of its
/// tree edges, or keep it (and possibly a second one).
class TspBranchAndBound {
 public:
  TspBranchAndBound(const ScaledWeights& w, std::vector<NodeId> incumbent)
      : w_(w), n_(w.n), best_(std::move(incumbent)), best_len_(tour_length(w, best_)) {
    double total = 0.0;
    for (NodeId i = 0; i < n_; ++i)
      for (NodeId j = 0; j < n_; ++j)
        if (i != j) total += static_cast<double>(w_(i, j));
    big_ = 4.0 * total + 1.0;
  }

  std::vector<NodeId> solve() {
    Node root;
    root.fix.assign(n_ * n_, 0);
    root.pi.assign(n_, 0.0);
    if (propagate(root.fix)) explore(root, 40 * static_cast<int>(n_));
    return best_;
  }

 private:
  struct Node {
    std::vector<signed char> fix;  // n*n: 1 forced in, -1 forced out, 0 free
    std::vector<double> pi;
  };

  struct OneTree {
    double value = 0.0;  // penalised length minus 2*sum(pi)
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::vector<int> degree;
    bool feasible = false;
  };

  const ScaledWeights& w_;
  std::size_t n_;
  std::vector<NodeId> best_;
  std::int64_t best_len_;
  double big_ = 0.0;

  signed char fixed(const std::vector<signed char>& fix, NodeId i, NodeId j) const { return fix[i * n_ + j]; }
  void set_fix(std::vector<signed char>& fix, NodeId i, NodeId j, signed char v) const {
    fix[i * n_ + j] = v;
    fix[j * n_ + i] = v;
  }

  OneTree one_tree(const std::vector<signed char>& fix, const std::vector<double>& pi) const {
    OneTree t;
    t.degree.assign(n_, 0);
    auto cost = [&](NodeId i, NodeId j) {
      const double c = static_cast<double>(w_(i, j)) + pi[i] + pi[j];
      return fixed(fix, i, j) > 0 ? c - big_ : c;
    };
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> key(n_, inf);
    std::vector<NodeId> parent(n_, 0);
    std::vector<char> in_tree(n_, 0);
    double total = 0.0;
    key[1] = 0.0;
    for (std::size_t step = 1; step < n_; ++step) {
      NodeId u = 0;
      double best = inf;
      for (NodeId v = 1; v < n_; ++v)
        if (!in_tree[v] && key[v] < best) {
          best = key[v];
          u = v;
        }
      if (u == 0) return t;  // exclusions disconnect nodes 1..n-1
      in_tree[u] = 1;
      if (step > 1) {
        total += best;
        t.edges.emplace_back(parent[u], u);
      }
      for (NodeId v = 1; v < n_; ++v)
        if (!in_tree[v] && fixed(fix, u, v) >= 0 && cost(u, v) < key[v]) {
          key[v] = cost(u, v);
          parent[v] = u;
        }
    }
    // Two edges at node 0: forced ones first, then the cheapest free ones.
    std::vector<NodeId> picks;
    for (NodeId v = 1; v < n_; ++v)
      if (fixed(fix, 0, v) > 0) picks.push_back(v);
    while (picks.size() < 2) {
      NodeId pick = 0;
      double best = inf;
      for (NodeId v = 1; v < n_; ++v)
        if (fixed(fix, 0, v) == 0 && std::find(picks.begin(), picks.end(), v) == picks.end() && cost(0, v) < best) {
          best = cost(0, v);
          pick = v;
        }
      if (pick == 0) return t;
      picks.push_back(pick);
    }
    for (NodeId v : picks) {
      total += cost(0, v);
      t.edges.emplace_back(0, v);
    }
    // Undo the forced-edge discount.
    for (const auto& [a, b] : t.edges) {
      if (fixed(fix, a, b) > 0) total += big_;
      ++t.degree[a];
      ++t.degree[b];
    }
    t.value = total - 2.0 * std::accumulate(pi.begin(), pi.end(), 0.0);
    t.feasible = true;
    return t;
  }

  std::vector<NodeId> tree_as_tour(const OneTree& t) const {
    std::vector<std::vector<NodeId>> adj(n_);
    for (const auto& [a, b] : t.edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    std::vector<NodeId> tour{0};
    NodeId prev = 0, cur = adj[0][0];
    while (cur != 0) {
      tour.push_back(cur);
      const NodeId next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = next;
    }
    return tour;
  }

  // Closes fixings under the degree rules; false when the node is infeasible.
  bool propagate(std::vector<signed char>& fix) const {
    for (bool changed = true; changed;) {
      changed = false;
      for (NodeId v = 0; v < n_; ++v) {
        int in = 0, open = 0;
        for (NodeId u = 0; u < n_; ++u) {
          if (u == v) continue;
          if (fixed(fix, v, u) > 0) ++in;
          else if (fixed(fix, v, u) == 0) ++open;
        }
        if (in > 2 || in + open < 2) return false;
        if (in == 2 && open > 0) {
          for (NodeId u = 0; u < n_; ++u)
            if (u != v && fixed(fix, v, u) == 0) set_fix(fix, v, u, -1);
          changed = true;
        } else if (in + open == 2 && open > 0) {
          for (NodeId u = 0; u < n_; ++u)
            if (u != v && fixed(fix, v, u) == 0) set_fix(fix, v, u, 1);
          changed = true;
        }
      }
      // Forced edges form paths; a path may only close once it spans every node.
      std::vector<NodeId> comp(n_);
      std::iota(comp.begin(), comp.end(), NodeId{0});
      std::function<NodeId(NodeId)> find = [&](NodeId x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
      std::size_t forced = 0;
      for (NodeId a = 0; a < n_; ++a)
        for (NodeId b = a + 1; b < n_; ++b)
          if (fixed(fix, a, b) > 0) {
            ++forced;
            const NodeId ra = find(a), rb = find(b);
            if (ra == rb && forced < n_) return false;
            comp[ra] = rb;
          }
      if (forced == n_) continue;
      for (NodeId a = 0; a < n_; ++a)
        for (NodeId b = a + 1; b < n_; ++b)
          if (fixed(fix, a, b) == 0 && find(a) == find(b)) {
            set_fix(fix, a, b, -1);
            changed = true;
          }
    }
    return true;
  }

  bool prunable(double bound) const {
    // Tour lengths are integers, so a bound above best - 1 leaves no room.
    return bound > static_cast<double>(best_len_) - 1.0 + 1e-6;
  }

  void explore(Node& node, int iterations) {
    OneTree best_tree;
    std::vector<double> best_pi = node.pi;
    double best_bound = -std::numeric_limits<double>::infinity();
    double alpha = 2.0;
    int stale = 0;
    for (int it = 0; it < iterations; ++it) {
      OneTree t = one_tree(node.fix, node.pi);
      if (!t.feasible) return;
      if (t.value > best_bound + 1e-9) {
        best_bound = t.value;
        best_pi = node.pi;
        best_tree = t;
        stale = 0;
      } else if (++stale >= 5) {
        alpha /= 2.0;
        stale = 0;
      }
      if (prunable(best_bound)) return;
      double norm = 0.0;
      for (NodeId v = 0; v < n_; ++v) norm += static_cast<double>((t.degree[v] - 2) * (t.degree[v] - 2));
      if (norm == 0.0) break;
      if (alpha < 1e-3) break;
      const double step = alpha * (static_cast<double>(best_len_) - t.value) / norm;
      for (NodeId v = 0; v < n_; ++v) node.pi[v] += step * (t.degree[v] - 2);
    }
    node.pi = best_pi;

    NodeId branch = n_;
    for (NodeId v = 0; v < n_; ++v)
      if (best_tree.degree[v] > 2 && (branch == n_ || best_tree.degree[v] > best_tree.degree[branch])) branch = v;
    if (branch == n_) {
      auto tour = canonical_tour(tree_as_tour(best_tree));
      const auto len = tour_length(w_, tour);
      if (len < best_len_) {
        best_len_ = len;
        best_ = std::move(tour);
      }
      return;
    }

    std::vector<NodeId> free_edges;  // other endpoints of free tree edges at `branch`
    int forced_in = 0;
    for (const auto& [a, b] : best_tree.edges) {
      if (a != branch && b != branch) continue;
      const NodeId other = a == branch ? b : a;
      if (fixed(node.fix, branch, other) > 0) ++forced_in;
      else free_edges.push_back(other);
    }
    std::sort(free_edges.begin(), free_edges.end(),
              [&](NodeId x, NodeId y) { return w_(branch, x) > w_(branch, y) || (w_(branch, x) == w_(branch, y) && x < y); });
    const int child_iterations = 10 + 2 * static_cast<int>(n_);
    auto child = [&](std::vector<std::pair<NodeId, signed char>> decisions) {
      Node c{node.fix, node.pi};
      for (auto [other, value] : decisions) set_fix(c.fix, branch, other, value);
      if (propagate(c.fix)) explore(c, child_iterations);
    };
    const NodeId e1 = free_edges[0];
    child({{e1, -1}});
    if (forced_in >= 1 || free_edges.size() < 2) {
      child({{e1, 1}});
    } else {
      const NodeId e2 = free_edges[1];
      child({{e1, 1}, {e2, -1}});
      child({{e1, 1}, {e2, 1}});
    }
  }
};

}  // namespace detail

/// Exact TSP for graphs beyond the Held-Karp memory budget.
inline Solution tsp_branch_and_bound(const Graph& g, std::size_t limit = default_tsp_branch_and_bound_limit) {
  detail::require_tsp_graph(g);
  if (g.node_count() > limit)
    throw Error(Errc::too_large, "TSP branch and bound limit is " + std::to_string(limit) + " nodes, graph has " +
                                     std::to_string(g.node_count()));
  detail::ScaledWeights w(g);
  auto start = detail::nearest_neighbor_tour(w, 0);
  detail::two_opt_in_place(w, start);
  detail::TspBranchAndBound bnb(w, detail::canonical_tour(std::move(start)));
  return detail::make_tour_solution(g, w, bnb.solve(), "tsp_branch_and_bound", true);
}

}  // namespace graphwright
