#pragma once

// Text representations of a Graph. Grammar (all formats):
//
//   line      := header | nodes | comment | body
//   comment   := '#' anything
//   header    := 'graph' ('directed'|'undirected') ('weighted'|'unweighted')
//   format    := 'format' ('edge-list'|'adjacency-list'|'adjacency-matrix')
//   nodes     := 'nodes' name*
//
// edge-list body:        u v [w]                    (w defaults to 1)
// adjacency-list body:   u ':' [v ['(' w ')'] {',' v ['(' w ')']}]
// adjacency-matrix body: n rows of n numbers; 0 means "no edge"
//
// Numbers are integers, finite decimals or p/q fractions. Header and nodes
// lines are optional on input and always written on output. Without a header
// the graph is undirected (edge/adjacency lists) or undirected iff the matrix
// is symmetric, and weighted iff some weight differs from 1. Repeated
// mentions of the same edge are merged; different weights for the same edge
// raise ConflictingWeights.

#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "graphwright/core/error.hpp"
#include "graphwright/core/rational.hpp"
#include "graphwright/core/text.hpp"
#include "graphwright/graph/graph.hpp"

namespace graphwright {

enum class GraphFormat { edge_list, adjacency_list, adjacency_matrix };

inline std::string_view to_string(GraphFormat f) noexcept {
  switch (f) {
    case GraphFormat::edge_list: return "edge-list";
    case GraphFormat::adjacency_list: return "adjacency-list";
    case GraphFormat::adjacency_matrix: return "adjacency-matrix";
  }
  return "edge-list";
}

inline std::optional<GraphFormat> parse_graph_format(std::string_view s) {
  if (s == "edge-list") return GraphFormat::edge_list;
  if (s == "adjacency-list") return GraphFormat::adjacency_list;
  if (s == "adjacency-matrix") return GraphFormat::adjacency_matrix;
  return std::nullopt;
}

inline std::string serialize_graph(const Graph& g, GraphFormat format) {
  std::ostringstream out;
  out << "graph " << (g.directed() ? "directed" : "undirected") << ' ' << (g.weighted() ? "weighted" : "unweighted")
      << '\n';
  out << "nodes";
  for (const auto& name : g.names()) out << ' ' << name;
  out << '\n';
  switch (format) {
    case GraphFormat::edge_list:
      for (const auto& e : g.edges()) out << g.name(e.u) << ' ' << g.name(e.v) << ' ' << e.weight << '\n';
      break;
    case GraphFormat::adjacency_list:
      for (NodeId u = 0; u < g.node_count(); ++u) {
        out << g.name(u) << ':';
        bool first = true;
        for (const auto& arc : g.neighbors(u)) {
          out << (first ? " " : ", ") << g.name(arc.to);
          if (g.weighted()) out << '(' << arc.weight << ')';
          first = false;
        }
        out << '\n';
      }
      break;
    case GraphFormat::adjacency_matrix:
      for (const auto& e : g.edges())
        if (e.weight.is_zero())
          throw Error(Errc::unrepresentable,
                      "zero-weight edge " + g.name(e.u) + "-" + g.name(e.v) + " cannot be written as a matrix entry");
      for (NodeId u = 0; u < g.node_count(); ++u) {
        for (NodeId v = 0; v < g.node_count(); ++v) {
          if (v > 0) out << ' ';
          auto w = g.weight(u, v);
          out << (w ? *w : Rational(0));
        }
        out << '\n';
      }
      break;
  }
  return out.str();
}

namespace detail {

[[noreturn]] inline void parse_fail(std::size_t line, std::size_t column, const std::string& what) {
  throw Error(Errc::parse_error, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
}

inline std::size_t column_of(std::string_view line, std::string_view token) {
  return static_cast<std::size_t>(token.data() - line.data()) + 1;
}

inline Rational parse_number_at(std::string_view token, std::size_t line_no, std::string_view line) {
  try {
    return Rational::parse(token);
  } catch (const Error&) {
    parse_fail(line_no, column_of(line, token), "expected a number, found '" + std::string(token) + "'");
  }
}

struct Preamble {
  std::optional<bool> directed;
  std::optional<bool> weighted;
  std::optional<std::vector<std::string>> nodes;
  std::optional<GraphFormat> format;
  // (line number, text) of every body line
  std::vector<std::pair<std::size_t, std::string_view>> body;
};

inline Preamble read_preamble(std::string_view text) {
  Preamble p;
  auto lines = text::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    std::string_view t = text::trim(line);
    const std::size_t line_no = i + 1;
    if (t.empty() || t.front() == '#') continue;
    auto tokens = text::words(t);
    if (tokens[0] == "graph") {
      if (tokens.size() != 3) parse_fail(line_no, 1, "header must be 'graph <directed|undirected> <weighted|unweighted>'");
      if (tokens[1] == "directed") p.directed = true;
      else if (tokens[1] == "undirected") p.directed = false;
      else parse_fail(line_no, column_of(line, tokens[1]), "unknown directedness '" + std::string(tokens[1]) + "'");
      if (tokens[2] == "weighted") p.weighted = true;
      else if (tokens[2] == "unweighted") p.weighted = false;
      else parse_fail(line_no, column_of(line, tokens[2]), "unknown weighting '" + std::string(tokens[2]) + "'");
    } else if (tokens[0] == "nodes") {
      std::vector<std::string> names;
      for (std::size_t k = 1; k < tokens.size(); ++k) names.emplace_back(tokens[k]);
      p.nodes = std::move(names);
    } else if (tokens[0] == "format") {
      if (tokens.size() != 2 || !parse_graph_format(tokens[1]))
        parse_fail(line_no, 1, "format must be edge-list, adjacency-list or adjacency-matrix");
      p.format = parse_graph_format(tokens[1]);
    } else {
      p.body.emplace_back(line_no, line);
    }
  }
  return p;
}

inline void add_name(std::vector<std::string>& names, std::vector<std::string>& seen_sorted, std::string_view name) {
  auto it = std::lower_bound(seen_sorted.begin(), seen_sorted.end(), name);
  if (it != seen_sorted.end() && *it == name) return;
  seen_sorted.insert(it, std::string(name));
  names.emplace_back(name);
}

inline Graph finish(const Preamble& p, std::vector<std::string> mentioned, const std::vector<EdgeSpec>& edges,
                    bool inferred_directed, bool inferred_weighted) {
  std::vector<std::string> names;
  if (p.nodes) {
    names = *p.nodes;
    std::vector<std::string> sorted = names;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& m : mentioned)
      if (!std::binary_search(sorted.begin(), sorted.end(), m))
        throw Error(Errc::unknown_endpoint, "'" + m + "' is not listed on the nodes line");
  } else {
    names = std::move(mentioned);
  }
  return Graph::build(std::move(names), p.directed.value_or(inferred_directed), p.weighted.value_or(inferred_weighted),
                      edges);
}

inline Graph parse_edge_list(const Preamble& p) {
  std::vector<std::string> mentioned, seen;
  std::vector<EdgeSpec> edges;
  bool any_weight = false;
  for (const auto& [line_no, line] : p.body) {
    auto tokens = text::words(line);
    if (tokens.size() < 2 || tokens.size() > 3)
      parse_fail(line_no, 1, "expected 'u v [w]', found " + std::to_string(tokens.size()) + " fields");
    for (std::size_t k = 0; k < 2; ++k)
      if (!is_valid_node_name(tokens[k]))
        parse_fail(line_no, column_of(line, tokens[k]), "invalid node name '" + std::string(tokens[k]) + "'");
    EdgeSpec e{std::string(tokens[0]), std::string(tokens[1]), Rational(1)};
    if (tokens.size() == 3) {
      e.weight = parse_number_at(tokens[2], line_no, line);
      if (e.weight != Rational(1)) any_weight = true;
    }
    add_name(mentioned, seen, e.u);
    add_name(mentioned, seen, e.v);
    edges.push_back(std::move(e));
  }
  return finish(p, std::move(mentioned), edges, false, any_weight);
}

inline Graph parse_adjacency_list(const Preamble& p) {
  std::vector<std::string> mentioned, seen;
  std::vector<EdgeSpec> edges;
  bool any_weight = false;
  for (const auto& [line_no, line] : p.body) {
    auto colon = line.find(':');
    if (colon == std::string_view::npos) parse_fail(line_no, 1, "expected 'u: v(w), ...'");
    std::string_view head = text::trim(line.substr(0, colon));
    if (!is_valid_node_name(head)) parse_fail(line_no, 1, "invalid node name '" + std::string(head) + "'");
    add_name(mentioned, seen, head);
    std::string_view rest = line.substr(colon + 1);
    if (text::trim(rest).empty()) continue;
    for (std::string_view item : text::split(rest, ',')) {
      std::string_view t = text::trim(item);
      if (t.empty()) parse_fail(line_no, column_of(line, item), "empty neighbour entry");
      Rational w(1);
      std::string_view target = t;
      if (auto open = t.find('('); open != std::string_view::npos) {
        if (t.back() != ')') parse_fail(line_no, column_of(line, t), "unterminated weight in '" + std::string(t) + "'");
        target = text::trim(t.substr(0, open));
        w = parse_number_at(text::trim(t.substr(open + 1, t.size() - open - 2)), line_no, line);
        if (w != Rational(1)) any_weight = true;
      }
      if (!is_valid_node_name(target))
        parse_fail(line_no, column_of(line, t), "invalid node name '" + std::string(target) + "'");
      add_name(mentioned, seen, target);
      edges.push_back({std::string(head), std::string(target), w});
    }
  }
  return finish(p, std::move(mentioned), edges, false, any_weight);
}

inline Graph parse_adjacency_matrix(const Preamble& p) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& [line_no, line] : p.body) {
    std::vector<Rational> row;
    for (auto token : text::words(line)) row.push_back(parse_number_at(token, line_no, line));
    rows.push_back(std::move(row));
  }
  const std::size_t n = rows.size();
  for (std::size_t i = 0; i < n; ++i)
    if (rows[i].size() != n)
      throw Error(Errc::dimension_mismatch, "matrix row " + std::to_string(i + 1) + " has " +
                                                std::to_string(rows[i].size()) + " entries, expected " +
                                                std::to_string(n));
  std::vector<std::string> names;
  if (p.nodes) {
    if (p.nodes->size() != n)
      throw Error(Errc::dimension_mismatch, "nodes line lists " + std::to_string(p.nodes->size()) +
                                                " names for a " + std::to_string(n) + "x" + std::to_string(n) +
                                                " matrix");
    names = *p.nodes;
    // Rows follow the order of the nodes line.
  } else {
    const auto width = std::to_string(n > 0 ? n - 1 : 0).size();
    for (std::size_t i = 0; i < n; ++i) {
      std::string digits = std::to_string(i);
      names.push_back("v" + std::string(width - digits.size(), '0') + digits);
    }
  }
  bool symmetric = true, any_weight = false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (rows[i][j] != rows[j][i]) symmetric = false;
      if (!rows[i][j].is_zero() && rows[i][j] != Rational(1)) any_weight = true;
    }
  const bool directed = p.directed.value_or(!symmetric);
  if (!directed && !symmetric) throw Error(Errc::parse_error, "undirected graph declared but matrix is not symmetric");
  std::vector<EdgeSpec> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = directed ? 0 : i; j < n; ++j)
      if (!rows[i][j].is_zero()) edges.push_back({names[i], names[j], rows[i][j]});
  return Graph::build(std::move(names), directed, p.weighted.value_or(any_weight), edges);
}

}  // namespace detail

inline Graph parse_graph(std::string_view text, GraphFormat format) {
  auto p = detail::read_preamble(text);
  switch (format) {
    case GraphFormat::edge_list: return detail::parse_edge_list(p);
    case GraphFormat::adjacency_list: return detail::parse_adjacency_list(p);
    case GraphFormat::adjacency_matrix: return detail::parse_adjacency_matrix(p);
  }
  return detail::parse_edge_list(p);
}

/// Picks the format from a 'format' line when present, otherwise from the
/// shape of the body: ':' means adjacency-list, a square block of numbers
/// means adjacency-matrix, anything else is an edge list.
inline GraphFormat detect_graph_format(std::string_view text) {
  auto p = detail::read_preamble(text);
  if (p.format) return *p.format;
  bool all_numeric = !p.body.empty();
  for (const auto& [line_no, line] : p.body) {
    if (line.find(':') != std::string_view::npos) return GraphFormat::adjacency_list;
    auto tokens = text::words(line);
    if (tokens.size() != p.body.size()) all_numeric = false;
    for (auto t : tokens) {
      try {
        (void)Rational::parse(t);
      } catch (const Error&) {
        all_numeric = false;
      }
    }
  }
  return all_numeric ? GraphFormat::adjacency_matrix : GraphFormat::edge_list;
}

inline Graph parse_graph_auto(std::string_view text) { return parse_graph(text, detect_graph_format(text)); }

}  // namespace graphwright
