#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "graphwright/core/error.hpp"
#include "graphwright/solvers/coloring.hpp"
#include "graphwright/solvers/cycle.hpp"
#include "graphwright/solvers/shortest_path.hpp"
#include "graphwright/solvers/tsp.hpp"
#include "graphwright/solvers/vertex_cover.hpp"

namespace graphwright {

/// Bound algorithm parameters, by name. Values are kept as text and
/// interpreted by the solver that owns them.
using Parameters = std::map<std::string, std::string>;

using SolverFn = std::function<Solution(const Graph&, const Task&, const Parameters&)>;

namespace detail {

inline std::size_t size_param(const Parameters& p, const std::string& key, std::size_t fallback) {
  auto it = p.find(key);
  if (it == p.end() || it->second.empty()) return fallback;
  try {
    std::size_t pos = 0;
    auto v = std::stoull(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("trailing");
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw Error(Errc::invalid_input, "parameter " + key + " must be a non-negative integer, got '" + it->second + "'");
  }
}

inline NodeId start_param(const Graph& g, const Parameters& p) {
  auto it = p.find("start");
  if (it == p.end() || it->second.empty()) return 0;
  auto id = g.index_of(it->second);
  if (!id) throw Error(Errc::unknown_node, "start node '" + it->second + "' is not in the graph");
  return *id;
}

}  // namespace detail

namespace detail {

struct SolverTable {
  std::shared_mutex mutex;
  std::map<std::string, SolverFn, std::less<>> solvers;
};

inline SolverTable& solver_table() {
  static SolverTable table{{}, {
      {"held_karp",
       [](const Graph& g, const Task&, const Parameters& p) {
         return tsp_exact_held_karp(g, detail::size_param(p, "max_nodes", default_held_karp_limit));
       }},
      {"tsp_branch_and_bound",
       [](const Graph& g, const Task&, const Parameters& p) {
         return tsp_branch_and_bound(g, detail::size_param(p, "max_nodes", default_tsp_branch_and_bound_limit));
       }},
      {"tsp_brute_force",
       [](const Graph& g, const Task&, const Parameters& p) {
         return tsp_brute_force(g, detail::size_param(p, "max_nodes", default_tsp_brute_force_limit));
       }},
      {"nearest_neighbor_2opt",
       [](const Graph& g, const Task&, const Parameters& p) {
         return tsp_nearest_neighbor_two_opt(g, detail::start_param(g, p));
       }},
      {"coloring_backtracking",
       [](const Graph& g, const Task&, const Parameters& p) {
         return coloring_exact(g, detail::size_param(p, "max_nodes", default_coloring_exact_limit));
       }},
      {"dsatur", [](const Graph& g, const Task&, const Parameters&) { return coloring_dsatur(g); }},
      {"vertex_cover_branch_and_bound",
       [](const Graph& g, const Task&, const Parameters& p) {
         return vertex_cover_exact(g, detail::size_param(p, "max_nodes", default_vertex_cover_exact_limit));
       }},
      {"matching_2approx", [](const Graph& g, const Task&, const Parameters&) { return vertex_cover_approx(g); }},
      {"dijkstra",
       [](const Graph& g, const Task& t, const Parameters&) {
         return shortest_path_dijkstra(g, t.source, t.target);
       }},
      {"cycle_detection", [](const Graph& g, const Task&, const Parameters&) { return detect_cycle(g); }},
  }};
  return table;
}

}  // namespace detail

/// Ids with a native implementation, in order.
inline std::vector<std::string> registered_solvers() {
  auto& table = detail::solver_table();
  std::shared_lock lock(table.mutex);
  std::vector<std::string> ids;
  for (const auto& [id, fn] : table.solvers) ids.push_back(id);
  return ids;
}

/// Adds or replaces the implementation behind a knowledge-base algorithm id.
inline void register_solver(std::string algorithm_id, SolverFn fn) {
  auto& table = detail::solver_table();
  std::unique_lock lock(table.mutex);
  table.solvers[std::move(algorithm_id)] = std::move(fn);
}

inline Solution run_solver(std::string_view algorithm_id, const Graph& g, const Task& task, const Parameters& params = {}) {
  SolverFn fn;
  {
    auto& table = detail::solver_table();
    std::shared_lock lock(table.mutex);
    auto it = table.solvers.find(algorithm_id);
    if (it == table.solvers.end())
      throw Error(Errc::solver_error, "no implementation for algorithm '" + std::string(algorithm_id) + "'");
    fn = it->second;
  }
  return fn(g, task, params);
}

}  // namespace graphwright
