#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "graphwright/core/rational.hpp"
#include "graphwright/core/text.hpp"

namespace graphwright {

enum class ProblemType { tsp, coloring, vertex_cover, shortest_path, cycle };

inline constexpr std::array<ProblemType, 5> all_problem_types{ProblemType::tsp, ProblemType::coloring,
                                                              ProblemType::vertex_cover, ProblemType::shortest_path,
                                                              ProblemType::cycle};

constexpr std::string_view to_string(ProblemType t) noexcept {
  switch (t) {
    case ProblemType::tsp: return "tsp";
    case ProblemType::coloring: return "coloring";
    case ProblemType::vertex_cover: return "vertex_cover";
    case ProblemType::shortest_path: return "shortest_path";
    case ProblemType::cycle: return "cycle";
  }
  return "tsp";
}

/// Canonical names plus the common spellings a model tends to produce.
inline std::optional<ProblemType> parse_problem_type(std::string_view raw) {
  std::string s = text::lower(text::trim(raw));
  for (char& c : s)
    if (c == ' ' || c == '-') c = '_';
  static const std::map<std::string, ProblemType, std::less<>> names{
      {"tsp", ProblemType::tsp},
      {"traveling_salesman", ProblemType::tsp},
      {"travelling_salesman", ProblemType::tsp},
      {"traveling_salesman_problem", ProblemType::tsp},
      {"travelling_salesman_problem", ProblemType::tsp},
      {"coloring", ProblemType::coloring},
      {"colouring", ProblemType::coloring},
      {"graph_coloring", ProblemType::coloring},
      {"minimum_graph_coloring", ProblemType::coloring},
      {"vertex_cover", ProblemType::vertex_cover},
      {"minimum_vertex_cover", ProblemType::vertex_cover},
      {"shortest_path", ProblemType::shortest_path},
      {"cycle", ProblemType::cycle},
      {"cycle_detection", ProblemType::cycle},
  };
  auto it = names.find(s);
  if (it == names.end()) return std::nullopt;
  return it->second;
}

enum class SolutionKind { tour, coloring, node_set, path, boolean };

constexpr std::string_view to_string(SolutionKind k) noexcept {
  switch (k) {
    case SolutionKind::tour: return "tour";
    case SolutionKind::coloring: return "coloring";
    case SolutionKind::node_set: return "node_set";
    case SolutionKind::path: return "path";
    case SolutionKind::boolean: return "boolean";
  }
  return "tour";
}

inline std::optional<SolutionKind> parse_solution_kind(std::string_view s) {
  for (auto k : {SolutionKind::tour, SolutionKind::coloring, SolutionKind::node_set, SolutionKind::path,
                 SolutionKind::boolean})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

constexpr SolutionKind expected_kind(ProblemType t) noexcept {
  switch (t) {
    case ProblemType::tsp: return SolutionKind::tour;
    case ProblemType::coloring: return SolutionKind::coloring;
    case ProblemType::vertex_cover: return SolutionKind::node_set;
    case ProblemType::shortest_path: return SolutionKind::path;
    case ProblemType::cycle: return SolutionKind::boolean;
  }
  return SolutionKind::tour;
}

/// What is being asked of a graph: the problem family plus the query
/// endpoints for path problems.
struct Task {
  ProblemType type = ProblemType::tsp;
  std::string source;
  std::string target;
};

/// Node-structured answer. Only the payload field matching `kind` is used:
/// `nodes` for tour / node_set / path, `colors` for coloring, `flag` for
/// boolean. Tours list every node once; the return edge is implicit.
struct Solution {
  SolutionKind kind = SolutionKind::tour;
  std::vector<std::string> nodes;
  std::map<std::string, int> colors;
  bool flag = false;
  Rational objective{0};
  std::string algorithm_id;
  bool exact = false;

  friend bool operator==(const Solution&, const Solution&) = default;
};

}  // namespace graphwright
