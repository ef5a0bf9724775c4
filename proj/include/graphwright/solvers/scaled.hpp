#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "graphwright/core/error.hpp"
#include "graphwright/core/rational.hpp"
#include "graphwright/graph/graph.hpp"

namespace graphwright::detail {

inline constexpr std::int64_t no_edge = std::numeric_limits<std::int64_t>::max();

/// Edge weights multiplied by the lcm of their denominators, so solvers can
/// work in int64 and convert totals back to exact rationals. Sums of up to
/// n edges are guaranteed not to overflow.
struct ScaledWeights {
  std::size_t n = 0;
  std::int64_t denominator = 1;
  std::vector<std::int64_t> matrix;  // n*n, no_edge when absent

  std::int64_t operator()(NodeId u, NodeId v) const { return matrix[u * n + v]; }

  Rational unscale(std::int64_t total) const { return Rational(total, denominator); }

  explicit ScaledWeights(const Graph& g) : n(g.node_count()), matrix(n * n, no_edge) {
    for (const auto& e : g.edges()) {
      const auto d = e.weight.den();
      const std::int64_t gcd = std::gcd(denominator, d);
      const __int128 l = static_cast<__int128>(denominator / gcd) * d;
      if (l > (INT64_MAX >> 8)) throw Error(Errc::overflow, "weight denominators too large to scale");
      denominator = static_cast<std::int64_t>(l);
    }
    const __int128 cap = static_cast<__int128>(INT64_MAX / 4) / static_cast<__int128>(n + 1);
    for (const auto& e : g.edges()) {
      const __int128 w = static_cast<__int128>(e.weight.num()) * (denominator / e.weight.den());
      if (w > cap) throw Error(Errc::overflow, "edge weight too large to sum safely");
      matrix[e.u * n + e.v] = static_cast<std::int64_t>(w);
      if (!g.directed()) matrix[e.v * n + e.u] = static_cast<std::int64_t>(w);
    }
  }
};

}  // namespace graphwright::detail
