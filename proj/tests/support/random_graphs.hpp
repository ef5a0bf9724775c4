#pragma once

#include <string>
#include <vector>

#include "graphwright/core/rng.hpp"
#include "graphwright/graph/graph.hpp"

namespace graphwright::testkit {

inline std::vector<std::string> plain_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("n" + std::string(i < 10 ? "0" : "") + std::to_string(i));
  return names;
}

inline Graph random_complete(std::size_t n, Rng& rng, std::int64_t max_weight = 100) {
  auto names = plain_names(n);
  std::vector<EdgeSpec> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) edges.push_back({names[i], names[j], Rational(rng.uniform(1, max_weight))});
  return build_graph(names, false, true, edges);
}

inline Graph random_gnp(std::size_t n, double p, Rng& rng, bool weighted = false, bool directed = false,
                        std::int64_t max_weight = 20) {
  auto names = plain_names(n);
  std::vector<EdgeSpec> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = directed ? 0 : i + 1; j < n; ++j) {
      if (i == j || !rng.chance(p)) continue;
      edges.push_back({names[i], names[j], weighted ? Rational(rng.uniform(0, max_weight)) : Rational(1)});
    }
  return build_graph(names, directed, weighted, edges);
}

}  // namespace graphwright::testkit
