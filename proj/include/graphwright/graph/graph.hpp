#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "graphwright/core/error.hpp"
#include "graphwright/core/rational.hpp"

namespace graphwright {

using NodeId = std::size_t;

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  Rational weight{1};

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Edge stated by node names, as it appears in input data.
struct EdgeSpec {
  std::string u;
  std::string v;
  Rational weight{1};
};

struct Arc {
  NodeId to = 0;
  Rational weight{1};
};

/// Names are single tokens free of the punctuation used by the text formats;
/// the format keywords themselves are reserved.
inline bool is_valid_node_name(std::string_view name) noexcept {
  if (name.empty() || name == "graph" || name == "nodes" || name == "format") return false;
  for (char c : name) {
    auto uc = static_cast<unsigned char>(c);
    if (uc <= ' ' || c == ':' || c == '(' || c == ')' || c == ',' || c == '#' || c == ';' || uc == 0x7F) return false;
  }
  return true;
}

/// Immutable canonical graph. Nodes are sorted lexicographically by name and
/// identified by name; indices are re-derived from that order. Edges are
/// sorted by (u, v); undirected edges are stored with u < v.
class Graph {
 public:
  Graph() = default;

  static Graph build(std::vector<std::string> names, bool directed, bool weighted,
                     const std::vector<EdgeSpec>& edges) {
    std::sort(names.begin(), names.end());
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (!is_valid_node_name(names[i])) throw Error(Errc::invalid_name, "invalid node name '" + names[i] + "'");
      if (i > 0 && names[i] == names[i - 1]) throw Error(Errc::duplicate_node, "duplicate node '" + names[i] + "'");
    }
    Graph g;
    g.names_ = std::move(names);
    g.directed_ = directed;
    g.weighted_ = weighted;

    std::map<std::pair<NodeId, NodeId>, Rational> unique;
    for (const auto& e : edges) {
      auto u = g.index_of(e.u);
      auto v = g.index_of(e.v);
      if (!u) throw Error(Errc::unknown_endpoint, "edge endpoint '" + e.u + "' is not a node");
      if (!v) throw Error(Errc::unknown_endpoint, "edge endpoint '" + e.v + "' is not a node");
      if (*u == *v) throw Error(Errc::self_loop, "self-loop on '" + e.u + "'");
      if (e.weight.is_negative())
        throw Error(Errc::negative_weight, "edge " + e.u + "-" + e.v + " has weight " + e.weight.str());
      if (!weighted && e.weight != Rational(1))
        throw Error(Errc::invalid_weight, "unweighted graph edge " + e.u + "-" + e.v + " has weight " + e.weight.str());
      const std::pair<NodeId, NodeId> key = directed || *u < *v ? std::pair{*u, *v} : std::pair{*v, *u};
      auto [it, inserted] = unique.emplace(key, e.weight);
      if (!inserted && it->second != e.weight)
        throw Error(Errc::conflicting_weights, "edge " + e.u + "-" + e.v + " stated with weights " +
                                                   it->second.str() + " and " + e.weight.str());
    }
    g.edges_.reserve(unique.size());
    for (const auto& [key, w] : unique) g.edges_.push_back({key.first, key.second, w});
    g.index();
    return g;
  }

  std::size_t node_count() const noexcept { return names_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool directed() const noexcept { return directed_; }
  bool weighted() const noexcept { return weighted_; }

  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(NodeId i) const { return names_.at(i); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::optional<NodeId> index_of(std::string_view name) const {
    auto it = std::lower_bound(names_.begin(), names_.end(), name);
    if (it == names_.end() || *it != name) return std::nullopt;
    return static_cast<NodeId>(it - names_.begin());
  }

  /// Outgoing arcs; for undirected graphs every incident edge.
  std::span<const Arc> neighbors(NodeId u) const { return out_[u]; }
  /// Incoming arcs; equals neighbors() for undirected graphs.
  std::span<const Arc> in_neighbors(NodeId u) const { return directed_ ? std::span<const Arc>(in_[u]) : out_[u]; }

  std::size_t degree(NodeId u) const { return out_[u].size(); }

  bool has_edge(NodeId u, NodeId v) const { return lookup(u, v) >= 0; }

  std::optional<Rational> weight(NodeId u, NodeId v) const {
    auto k = lookup(u, v);
    if (k < 0) return std::nullopt;
    return edges_[static_cast<std::size_t>(k)].weight;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.names_ == b.names_ && a.directed_ == b.directed_ && a.weighted_ == b.weighted_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<std::string> names_;
  bool directed_ = false;
  bool weighted_ = false;
  std::vector<Edge> edges_;
  std::vector<std::vector<Arc>> out_;
  std::vector<std::vector<Arc>> in_;
  // n*n table of edge positions (-1 when absent); graphs here stay small.
  std::vector<std::int32_t> slot_;

  std::int32_t lookup(NodeId u, NodeId v) const {
    const auto n = names_.size();
    if (u >= n || v >= n) return -1;
    return slot_[u * n + v];
  }

  void index() {
    const auto n = names_.size();
    out_.assign(n, {});
    in_.assign(directed_ ? n : 0, {});
    slot_.assign(n * n, -1);
    for (std::size_t k = 0; k < edges_.size(); ++k) {
      const auto& e = edges_[k];
      out_[e.u].push_back({e.v, e.weight});
      slot_[e.u * n + e.v] = static_cast<std::int32_t>(k);
      if (directed_) {
        in_[e.v].push_back({e.u, e.weight});
      } else {
        out_[e.v].push_back({e.u, e.weight});
        slot_[e.v * n + e.u] = static_cast<std::int32_t>(k);
      }
    }
    for (auto& arcs : out_) std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) { return a.to < b.to; });
    for (auto& arcs : in_) std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) { return a.to < b.to; });
  }
};

inline Graph build_graph(std::vector<std::string> names, bool directed, bool weighted,
                         const std::vector<EdgeSpec>& edges) {
  return Graph::build(std::move(names), directed, weighted, edges);
}

}  // namespace graphwright
