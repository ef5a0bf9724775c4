#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "graphwright/core/error.hpp"
#include "graphwright/graph/graph.hpp"
#include "graphwright/solvers/solution.hpp"

namespace graphwright {

inline constexpr std::size_t default_coloring_exact_limit = 25;

namespace detail {

inline void require_undirected(const Graph& g, const char* what) {
  if (g.directed()) throw Error(Errc::invalid_input, std::string(what) + " handles undirected graphs only");
}

/// Renumber colours by first appearance in node order so equal partitions
/// always print identically.
inline std::vector<int> normalise_colors(const std::vector<int>& colors) {
  std::vector<int> remap;
  std::vector<int> out(colors.size());
  for (std::size_t v = 0; v < colors.size(); ++v) {
    const auto c = static_cast<std::size_t>(colors[v]);
    if (c >= remap.size()) remap.resize(c + 1, -1);
    if (remap[c] < 0) remap[c] = static_cast<int>(std::count_if(remap.begin(), remap.end(), [](int r) { return r >= 0; }));
    out[v] = remap[c];
  }
  return out;
}

inline Solution make_coloring_solution(const Graph& g, const std::vector<int>& raw, std::string algorithm_id, bool exact) {
  const auto colors = normalise_colors(raw);
  Solution s;
  s.kind = SolutionKind::coloring;
  int used = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    s.colors[g.name(v)] = colors[v];
    used = std::max(used, colors[v] + 1);
  }
  s.objective = Rational(used);
  s.algorithm_id = std::move(algorithm_id);
  s.exact = exact;
  return s;
}

inline std::vector<int> dsatur_colors(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<int> color(n, -1);
  std::vector<std::vector<char>> seen(n);  // seen[v][c]: a neighbour of v has colour c
  std::vector<int> saturation(n, 0);
  for (std::size_t step = 0; step < n; ++step) {
    NodeId pick = n;
    for (NodeId v = 0; v < n; ++v) {
      if (color[v] >= 0) continue;
      if (pick == n || saturation[v] > saturation[pick] ||
          (saturation[v] == saturation[pick] && g.degree(v) > g.degree(pick)))
        pick = v;
    }
    int c = 0;
    while (static_cast<std::size_t>(c) < seen[pick].size() && seen[pick][static_cast<std::size_t>(c)]) ++c;
    color[pick] = c;
    for (const auto& arc : g.neighbors(pick)) {
      auto& s = seen[arc.to];
      if (s.size() <= static_cast<std::size_t>(c)) s.resize(static_cast<std::size_t>(c) + 1, 0);
      if (!s[static_cast<std::size_t>(c)]) {
        s[static_cast<std::size_t>(c)] = 1;
        ++saturation[arc.to];
      }
    }
  }
  return color;
}

using Mask = std::uint64_t;

inline std::vector<Mask> adjacency_masks(const Graph& g) {
  std::vector<Mask> adj(g.node_count(), 0);
  for (const auto& e : g.edges()) {
    adj[e.u] |= Mask{1} << e.v;
    adj[e.v] |= Mask{1} << e.u;
  }
  return adj;
}

/// Maximum clique size by simple branch and bound (colour-free bound).
inline int max_clique_size(const std::vector<Mask>& adj) {
  int best = 0;
  auto expand = [&](auto&& self, Mask candidates, int size) -> void {
    if (candidates == 0) {
      best = std::max(best, size);
      return;
    }
    while (candidates != 0) {
      if (size + std::popcount(candidates) <= best) return;
      const int v = std::countr_zero(candidates);
      candidates &= ~(Mask{1} << v);
      self(self, candidates & adj[static_cast<std::size_t>(v)], size + 1);
    }
  };
  const std::size_t n = adj.size();
  expand(expand, n == 64 ? ~Mask{0} : (Mask{1} << n) - 1, 0);
  return best;
}

/// Backtracking k-colourability test with DSATUR vertex ordering. A vertex
/// may only open colour `used` (one past the highest used so far), which
/// removes colour-permutation symmetry.
class KColoring {
 public:
  KColoring(const std::vector<Mask>& adj, int k) : adj_(adj), k_(k), color_(adj.size(), -1), forbidden_(adj.size(), 0) {}

  bool run() { return assign(0, 0); }
  const std::vector<int>& colors() const { return color_; }

 private:
  const std::vector<Mask>& adj_;
  int k_;
  std::vector<int> color_;
  std::vector<Mask> forbidden_;  // colour bits blocked by coloured neighbours

  bool assign(std::size_t done, int used) {
    const std::size_t n = adj_.size();
    if (done == n) return true;
    std::size_t pick = n;
    int pick_sat = -1, pick_deg = -1;
    for (std::size_t v = 0; v < n; ++v) {
      if (color_[v] >= 0) continue;
      const int sat = std::popcount(forbidden_[v]);
      const int deg = std::popcount(adj_[v]);
      if (sat > pick_sat || (sat == pick_sat && deg > pick_deg)) {
        pick = v;
        pick_sat = sat;
        pick_deg = deg;
      }
    }
    const int limit = std::min(k_, used + 1);
    for (int c = 0; c < limit; ++c) {
      if (forbidden_[pick] >> c & 1U) continue;
      color_[pick] = c;
      std::vector<std::size_t> touched;
      for (Mask m = adj_[pick]; m != 0; m &= m - 1) {
        const auto u = static_cast<std::size_t>(std::countr_zero(m));
        if (color_[u] < 0 && !(forbidden_[u] >> c & 1U)) {
          forbidden_[u] |= Mask{1} << c;
          touched.push_back(u);
        }
      }
      bool dead_end = false;
      for (auto u : touched)
        if (std::popcount(forbidden_[u]) >= k_) dead_end = true;
      if (!dead_end && assign(done + 1, std::max(used, c + 1))) return true;
      for (auto u : touched) forbidden_[u] &= ~(Mask{1} << c);
      color_[pick] = -1;
    }
    return false;
  }
};

}  // namespace detail

/// Greedy colouring by saturation degree; ties go to the higher degree, then
/// the lower node index.
inline Solution coloring_dsatur(const Graph& g) {
  detail::require_undirected(g, "DSATUR");
  return detail::make_coloring_solution(g, detail::dsatur_colors(g), "dsatur", false);
}

/// Chromatic number by iterative deepening: k runs from the maximum clique
/// size up to the DSATUR colour count, returning the first k that admits a
/// proper colouring.
inline Solution coloring_exact(const Graph& g, std::size_t limit = default_coloring_exact_limit) {
  detail::require_undirected(g, "exact colouring");
  if (g.node_count() > limit)
    throw Error(Errc::too_large, "exact colouring limit is " + std::to_string(limit) + " nodes, graph has " +
                                     std::to_string(g.node_count()));
  if (g.node_count() > 64) throw Error(Errc::too_large, "exact colouring supports at most 64 nodes");
  if (g.node_count() == 0) return detail::make_coloring_solution(g, {}, "coloring_backtracking", true);
  const auto adj = detail::adjacency_masks(g);
  const auto greedy = detail::dsatur_colors(g);
  const int upper = *std::max_element(greedy.begin(), greedy.end()) + 1;
  const int lower = std::max(1, detail::max_clique_size(adj));
  for (int k = lower; k <= upper; ++k) {
    detail::KColoring search(adj, k);
    if (search.run()) return detail::make_coloring_solution(g, search.colors(), "coloring_backtracking", true);
  }
  throw Error(Errc::solver_error, "no colouring found within the DSATUR bound");  // unreachable
}

}  // namespace graphwright
