#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "graphwright/core/parallel.hpp"
#include "graphwright/core/rng.hpp"
#include "graphwright/core/text.hpp"
#include "graphwright/dataset/instance.hpp"
#include "graphwright/dataset/names.hpp"
#include "graphwright/graph/stats.hpp"
#include "graphwright/solvers/registry.hpp"

namespace graphwright {

/// One fictional sentence per node, e.g. "Kovrain: A quiet bakery that
/// smells of fresh bread." Descriptions never mention other nodes or numbers.
inline std::map<std::string, std::string> gen_descriptions(const std::vector<std::string>& names, Scenario scenario,
                                                           Rng& rng) {
  const auto& t = scenario_text(scenario);
  std::map<std::string, std::string> out;
  for (const auto& name : names) {
    const auto adj = rng.pick(std::span<const std::string_view>(t.adjectives));
    const auto place = rng.pick(std::span<const std::string_view>(t.place_nouns));
    const auto clause = rng.pick(std::span<const std::string_view>(t.clauses));
    const bool vowel = std::string_view("aeiou").find(adj.front()) != std::string_view::npos;
    std::string s = name + ": " + (vowel ? "An " : "A ") + std::string(adj) + " " + std::string(place) + " " +
                    std::string(clause) + ".";
    if (!out.emplace(name, std::move(s)).second) throw Error(Errc::duplicate_node, "duplicate name '" + name + "'");
  }
  return out;
}

/// Graph plus the query endpoints of path problems.
struct GeneratedGraph {
  Graph graph;
  std::string source;
  std::string target;
};

namespace detail {

inline bool connected_indices(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t parts = n;
  for (auto [u, v] : edges) {
    auto a = find(u), b = find(v);
    if (a != b) {
      parent[a] = b;
      --parts;
    }
  }
  return parts <= 1;
}

/// Connected G(n, p) with p uniform in [0.25, 0.5], redrawn until connected.
inline std::vector<std::pair<std::size_t, std::size_t>> connected_gnp(std::size_t n, Rng& rng) {
  for (;;) {
    const double p = 0.25 + 0.25 * rng.unit();
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (rng.chance(p)) edges.emplace_back(i, j);
    if (connected_indices(n, edges)) return edges;
  }
}

}  // namespace detail

/// Random graph for a problem family over the given node names (in draw
/// order): complete with weights 1..100 for tsp, connected G(n, p) for
/// coloring and vertex_cover, connected weighted G(n, p) with distinct
/// endpoints for shortest_path, and a random tree, half the time with one
/// extra edge, for cycle.
inline GeneratedGraph gen_graph(ProblemType type, const std::vector<std::string>& names, Rng& rng) {
  const std::size_t n = names.size();
  if (n < 3) throw Error(Errc::invalid_input, "generated graphs need at least 3 nodes");
  std::vector<EdgeSpec> edges;
  GeneratedGraph out;
  bool weighted = false;
  switch (type) {
    case ProblemType::tsp:
      weighted = true;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) edges.push_back({names[i], names[j], Rational(rng.uniform(1, 100))});
      break;
    case ProblemType::coloring:
    case ProblemType::vertex_cover:
      for (auto [u, v] : detail::connected_gnp(n, rng)) edges.push_back({names[u], names[v], Rational(1)});
      break;
    case ProblemType::shortest_path: {
      weighted = true;
      for (auto [u, v] : detail::connected_gnp(n, rng)) edges.push_back({names[u], names[v], Rational(rng.uniform(1, 100))});
      const auto s = rng.index(n);
      auto t = rng.index(n - 1);
      if (t >= s) ++t;
      out.source = names[s];
      out.target = names[t];
      break;
    }
    case ProblemType::cycle: {
      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), 0);
      rng.shuffle(order);
      std::set<std::pair<std::size_t, std::size_t>> present;
      for (std::size_t i = 1; i < n; ++i) {
        const auto parent = order[rng.index(i)];
        const auto child = order[i];
        present.emplace(std::min(parent, child), std::max(parent, child));
      }
      if (rng.chance(0.5)) {
        std::vector<std::pair<std::size_t, std::size_t>> absent;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = i + 1; j < n; ++j)
            if (!present.contains({i, j})) absent.emplace_back(i, j);
        present.insert(absent[rng.index(absent.size())]);
      }
      for (auto [u, v] : present) edges.push_back({names[u], names[v], Rational(1)});
      break;
    }
  }
  out.graph = build_graph(names, false, weighted, edges);
  return out;
}

/// Same, over placeholder names v00, v01, ...
inline GeneratedGraph gen_graph(ProblemType type, std::size_t n, Rng& rng) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::string(i < 10 ? "0" : "") + std::to_string(i));
  return gen_graph(type, names, rng);
}

struct RenderedText {
  std::string text;
  std::string narrative;        // framing without any graph data
  std::size_t distractors = 0;  // red-herring sentences included
};

namespace detail {

inline std::string plural_node_list(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? ", " : "") + names[i];
  return out;
}

inline std::string question(ProblemType type, const ScenarioText& t, const std::string& source,
                            const std::string& target) {
  const std::string noun(t.noun), nouns(t.nouns), link(t.link), measure(t.measure);
  switch (type) {
    case ProblemType::tsp:
      return "Find a round trip that starts and ends at the same " + noun + ", visits every " + noun +
             " exactly once and has the smallest total " + measure + ". Give the order of the " + nouns +
             " and the total " + measure + ".";
    case ProblemType::coloring:
      return "Give each " + noun + " a channel so that the two ends of every " + link +
             " get different channels, using as few channels as possible. Give the channel of each " + noun +
             " and the number of channels used.";
    case ProblemType::vertex_cover:
      return "Choose as few " + nouns + " as possible so that every " + link + " has at least one chosen end. List the chosen " +
             nouns + " and how many there are.";
    case ProblemType::shortest_path:
      return "What is the best way to get from " + source + " to " + target + "? Give the route and its total " +
             measure + ".";
    case ProblemType::cycle:
      return "Looking only at the " + link + "s, is there a closed loop, that is, a cycle? Answer yes or no.";
  }
  return {};
}

}  // namespace detail

/// Natural-language problem. Every edge is stated exactly once, in shuffled
/// order and with shuffled endpoint order; the roster names every node.
/// Standard noise adds the framing, node descriptions and at least one
/// distractor per two nodes; heavy noise adds more framing and at least one
/// distractor per node.
inline RenderedText render_text(ProblemType type, Scenario scenario, const Graph& g,
                                const std::map<std::string, std::string>& descriptions, NoiseLevel noise, Rng& rng,
                                const std::string& source = {}, const std::string& target = {}) {
  const auto& t = scenario_text(scenario);
  RenderedText out;
  std::vector<std::string> framing(t.framing.begin(), t.framing.end());
  if (noise == NoiseLevel::heavy) framing.insert(framing.end(), t.heavy_framing.begin(), t.heavy_framing.end());
  out.narrative = text::join(framing, " ");

  std::vector<std::string> body;
  const auto& weighted = g.directed() ? directed_weighted_templates : t.weighted;
  const auto& plain = g.directed() ? directed_unweighted_templates : t.unweighted;
  for (const auto& e : g.edges()) {
    std::string a = g.name(e.u), b = g.name(e.v);
    if (!g.directed() && rng.chance(0.5)) std::swap(a, b);
    const auto& pool = g.weighted() ? weighted : plain;
    body.push_back(text::fill(rng.pick(std::span<const std::string_view>(pool)), {{"a", a}, {"b", b}, {"w", e.weight.str()}}));
  }
  if (noise != NoiseLevel::none) {
    for (const auto& name : g.names()) {
      auto it = descriptions.find(name);
      if (it != descriptions.end()) body.push_back(it->second);
    }
    const std::size_t n = g.node_count();
    out.distractors = noise == NoiseLevel::heavy ? n + n / 2 : (n + 1) / 2;
    std::vector<std::string_view> pool(common_distractors.begin(), common_distractors.end());
    pool.insert(pool.end(), t.distractors.begin(), t.distractors.end());
    for (std::size_t i = 0; i < out.distractors; ++i) {
      const auto& name = g.name(static_cast<NodeId>(rng.index(n)));
      const auto num = std::to_string(rng.uniform(2, 999));
      body.push_back(text::fill(rng.pick(std::span<const std::string_view>(pool)), {{"a", name}, {"num", num}}));
    }
  }
  rng.shuffle(body);

  std::vector<std::string> roster_names = g.names();
  rng.shuffle(roster_names);
  std::vector<std::string> paragraphs;
  if (noise != NoiseLevel::none) paragraphs.push_back(out.narrative);
  paragraphs.push_back(std::string(t.roster) + ": " + detail::plural_node_list(roster_names) + ".");
  for (std::size_t i = 0; i < body.size(); i += 6) {
    std::vector<std::string> chunk(body.begin() + static_cast<std::ptrdiff_t>(i),
                                   body.begin() + static_cast<std::ptrdiff_t>(std::min(body.size(), i + 6)));
    paragraphs.push_back(text::join(chunk, " "));
  }
  paragraphs.push_back(detail::question(type, t, source, target));
  out.text = text::join(paragraphs, "\n\n") + "\n";
  return out;
}

/// Largest size for which ground truth is computed exactly.
inline std::size_t exact_ground_truth_limit(ProblemType type) {
  switch (type) {
    case ProblemType::tsp: return 40;
    case ProblemType::coloring: return 40;
    case ProblemType::vertex_cover: return 64;
    case ProblemType::shortest_path:
    case ProblemType::cycle: return 1000;
  }
  return 0;
}

/// Optimal answer from the exact solvers and the heuristic answer the
/// bundled approximations give; path and cycle answers are exact in both
/// slots.
inline GroundTruth ground_truth(ProblemType type, const Graph& g, const std::string& source = {},
                                const std::string& target = {}) {
  const std::size_t limit = exact_ground_truth_limit(type);
  if (g.node_count() > limit)
    throw Error(Errc::too_large, std::string(to_string(type)) + " ground truth is exact up to " + std::to_string(limit) +
                                     " nodes, graph has " + std::to_string(g.node_count()));
  GroundTruth gt;
  switch (type) {
    case ProblemType::tsp:
      gt.optimal = g.node_count() <= default_held_karp_limit ? tsp_exact_held_karp(g) : tsp_branch_and_bound(g, limit);
      gt.approximate = tsp_nearest_neighbor_two_opt(g, 0);
      break;
    case ProblemType::coloring:
      gt.optimal = coloring_exact(g, limit);
      gt.approximate = coloring_dsatur(g);
      break;
    case ProblemType::vertex_cover:
      gt.optimal = vertex_cover_exact(g, limit);
      gt.approximate = vertex_cover_approx(g);
      break;
    case ProblemType::shortest_path:
      gt.optimal = gt.approximate = shortest_path_dijkstra(g, source, target);
      break;
    case ProblemType::cycle:
      gt.optimal = gt.approximate = detect_cycle(g);
      break;
  }
  return gt;
}

/// What to generate for one problem family.
struct DatasetSpec {
  ProblemType problem_type = ProblemType::tsp;
  std::size_t n_min = 8;
  std::size_t n_max = 25;
  std::size_t instances_per_size = 50;
  std::uint64_t master_seed = 0;
  NoiseLevel noise = NoiseLevel::standard;
  std::optional<Scenario> scenario;  // default: the family's own scenario

  void validate() const {
    if (n_min < 3) throw Error(Errc::invalid_input, "smallest size must be at least 3");
    if (n_max < n_min) throw Error(Errc::invalid_input, "size range is empty");
    if (instances_per_size < 1) throw Error(Errc::invalid_input, "need at least one instance per size");
    if (n_max > exact_ground_truth_limit(problem_type))
      throw Error(Errc::invalid_input, std::string(to_string(problem_type)) + " instances are limited to " +
                                           std::to_string(exact_ground_truth_limit(problem_type)) + " nodes");
  }
  std::size_t size() const { return instances_per_size * (n_max - n_min + 1); }
};

/// Seed of instance k of size n: splitmix64(master_seed XOR
/// fnv1a64("<type>/<n>/<k>")). Each instance's stream is independent of
/// every other instance and of generation order.
inline std::uint64_t instance_seed(std::uint64_t master_seed, ProblemType type, std::size_t n, std::size_t k) {
  const std::string key = std::string(to_string(type)) + "/" + std::to_string(n) + "/" + std::to_string(k);
  return splitmix64(master_seed ^ fnv1a64(key));
}

inline std::string instance_id(ProblemType type, std::size_t n, std::size_t k) {
  auto pad = [](std::size_t v, std::size_t width) {
    auto s = std::to_string(v);
    return std::string(s.size() < width ? width - s.size() : 0, '0') + s;
  };
  return std::string(to_string(type)) + "-n" + pad(n, 2) + "-" + pad(k, 3);
}

/// A complete instance from its seed: names, descriptions, graph, text and
/// ground truth are drawn in that order from one stream.
inline ProblemInstance gen_instance(ProblemType type, Scenario scenario, std::size_t n, NoiseLevel noise,
                                    std::uint64_t seed, std::string id) {
  Rng rng(seed);
  ProblemInstance inst;
  inst.id = std::move(id);
  inst.problem_type = type;
  inst.scenario = scenario;
  inst.noise = noise;
  inst.seed = seed;
  const auto names = gen_node_names(n, rng);
  const auto descriptions = gen_descriptions(names, scenario, rng);
  auto gen = gen_graph(type, names, rng);
  inst.graph = std::move(gen.graph);
  inst.source = std::move(gen.source);
  inst.target = std::move(gen.target);
  auto rendered = render_text(type, scenario, inst.graph, descriptions, noise, rng, inst.source, inst.target);
  inst.text = std::move(rendered.text);
  inst.narrative = std::move(rendered.narrative);
  inst.truth = ground_truth(type, inst.graph, inst.source, inst.target);
  return inst;
}

/// All instances of a spec, ordered by size then index. Instances are
/// generated on up to `workers` threads; the result does not depend on it.
inline std::vector<ProblemInstance> gen_dataset(const DatasetSpec& spec, std::size_t workers = 1) {
  spec.validate();
  const Scenario scenario = spec.scenario ? *spec.scenario : default_scenario(spec.problem_type);
  std::vector<ProblemInstance> out(spec.size());
  parallel_for(out.size(), workers, [&](std::size_t i) {
    const std::size_t n = spec.n_min + i / spec.instances_per_size;
    const std::size_t k = i % spec.instances_per_size;
    out[i] = gen_instance(spec.problem_type, scenario, n, spec.noise,
                          instance_seed(spec.master_seed, spec.problem_type, n, k),
                          instance_id(spec.problem_type, n, k));
  });
  return out;
}

}  // namespace graphwright
