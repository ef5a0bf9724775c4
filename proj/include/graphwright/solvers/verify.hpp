#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "graphwright/core/error.hpp"
#include "graphwright/graph/graph.hpp"
#include "graphwright/solvers/cycle.hpp"
#include "graphwright/solvers/solution.hpp"

namespace graphwright {

struct ValidityReport {
  bool valid = true;
  std::vector<std::string> violations;
  /// Objective recomputed from the payload; empty when the payload is too
  /// malformed to evaluate.
  std::optional<Rational> recomputed_objective;

  void fail(std::string what) {
    valid = false;
    violations.push_back(std::move(what));
  }
};

namespace detail {

inline std::vector<NodeId> resolve_nodes(const Graph& g, const std::vector<std::string>& names, ValidityReport& report,
                                         bool allow_repeats) {
  std::vector<NodeId> ids;
  std::set<std::string> seen;
  for (const auto& name : names) {
    auto id = g.index_of(name);
    if (!id) {
      report.fail("unknown node '" + name + "'");
      continue;
    }
    if (!seen.insert(name).second && !allow_repeats) report.fail("node '" + name + "' appears more than once");
    ids.push_back(*id);
  }
  return ids;
}

inline std::string edge_label(const Graph& g, NodeId u, NodeId v) { return g.name(u) + "-" + g.name(v); }

inline void check_tour(const Graph& g, const Solution& s, ValidityReport& r) {
  auto ids = resolve_nodes(g, s.nodes, r, false);
  if (s.nodes.size() != g.node_count())
    r.fail("tour visits " + std::to_string(s.nodes.size()) + " nodes, graph has " + std::to_string(g.node_count()));
  if (!r.valid) return;
  Rational total(0);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const NodeId u = ids[i], v = ids[(i + 1) % ids.size()];
    auto w = g.weight(u, v);
    if (!w) r.fail("tour uses missing edge " + edge_label(g, u, v));
    else total += *w;
  }
  if (r.valid) r.recomputed_objective = total;
}

inline void check_coloring(const Graph& g, const Solution& s, ValidityReport& r) {
  for (const auto& [name, color] : s.colors) {
    if (!g.index_of(name)) r.fail("colour assigned to unknown node '" + name + "'");
    if (color < 0) r.fail("node '" + name + "' has negative colour " + std::to_string(color));
  }
  for (const auto& name : g.names())
    if (!s.colors.contains(name)) r.fail("node '" + name + "' has no colour");
  if (!r.valid) return;
  for (const auto& e : g.edges()) {
    const int a = s.colors.at(g.name(e.u)), b = s.colors.at(g.name(e.v));
    if (a == b) r.fail("adjacent nodes " + edge_label(g, e.u, e.v) + " share colour " + std::to_string(a));
  }
  std::set<int> distinct;
  for (const auto& [name, color] : s.colors) distinct.insert(color);
  r.recomputed_objective = Rational(static_cast<std::int64_t>(distinct.size()));
}

inline void check_cover(const Graph& g, const Solution& s, ValidityReport& r) {
  auto ids = resolve_nodes(g, s.nodes, r, false);
  if (!r.valid) return;
  std::vector<char> in(g.node_count(), 0);
  for (auto v : ids) in[v] = 1;
  for (const auto& e : g.edges())
    if (!in[e.u] && !in[e.v]) r.fail("edge " + edge_label(g, e.u, e.v) + " is not covered");
  r.recomputed_objective = Rational(static_cast<std::int64_t>(ids.size()));
}

inline void check_path(const Task& task, const Graph& g, const Solution& s, ValidityReport& r) {
  if (s.nodes.empty()) {
    r.fail("path is empty");
    return;
  }
  auto ids = resolve_nodes(g, s.nodes, r, false);
  if (!task.source.empty() && s.nodes.front() != task.source)
    r.fail("path starts at '" + s.nodes.front() + "', expected '" + task.source + "'");
  if (!task.target.empty() && s.nodes.back() != task.target)
    r.fail("path ends at '" + s.nodes.back() + "', expected '" + task.target + "'");
  if (!r.valid) return;
  Rational total(0);
  for (std::size_t i = 0; i + 1 < ids.size(); ++i) {
    auto w = g.weight(ids[i], ids[i + 1]);
    if (!w) r.fail("path uses missing edge " + edge_label(g, ids[i], ids[i + 1]));
    else total += *w;
  }
  if (r.valid) r.recomputed_objective = total;
}

}  // namespace detail

/// Structural checks for the answer shape of `task.type`, then (unless
/// disabled) agreement between the stated objective and the payload.
/// Boolean answers are checked against detect_cycle.
inline ValidityReport verify_solution(const Task& task, const Graph& g, const Solution& s, bool check_objective = true) {
  if (s.kind != expected_kind(task.type))
    throw Error(Errc::kind_mismatch, std::string(to_string(task.type)) + " expects a " +
                                         std::string(to_string(expected_kind(task.type))) + " answer, got " +
                                         std::string(to_string(s.kind)));
  ValidityReport r;
  switch (s.kind) {
    case SolutionKind::tour: detail::check_tour(g, s, r); break;
    case SolutionKind::coloring: detail::check_coloring(g, s, r); break;
    case SolutionKind::node_set: detail::check_cover(g, s, r); break;
    case SolutionKind::path: detail::check_path(task, g, s, r); break;
    case SolutionKind::boolean: {
      const bool truth = detect_cycle(g).flag;
      if (s.flag != truth) r.fail(std::string("answer says the graph ") + (s.flag ? "has" : "has no") + " cycle");
      r.recomputed_objective = Rational(s.flag ? 1 : 0);
      break;
    }
  }
  if (check_objective && r.recomputed_objective && *r.recomputed_objective != s.objective)
    r.fail("stated objective " + s.objective.str() + " differs from recomputed " + r.recomputed_objective->str());
  return r;
}

}  // namespace graphwright
