#pragma once

#include <string_view>

#include "graphwright/knowledge/knowledge_base.hpp"

namespace graphwright {

// Generated by tools/gen_embedded.py from data/knowledge_base.json.
inline constexpr std::string_view default_knowledge_base_text = R"kb({
  "version": 1,
  "algorithms": [
    {
      "algorithm_id": "held_karp",
      "problem_type": "tsp",
      "complexity": "O(n^2 2^n)",
      "exactness": "exact",
      "applicability": {"max_nodes": 16, "requires_complete": true, "requires_weighted": false, "directedness": "undirected"},
      "parameters": {},
      "description": "Subset dynamic program over (visited set, last node) with the tour anchored at the first node. Returns the lexicographically smallest optimal tour."
    },
    {
      "algorithm_id": "tsp_branch_and_bound",
      "problem_type": "tsp",
      "complexity": "O(n!) worst case, 1-tree bounded",
      "exactness": "exact",
      "applicability": {"max_nodes": 25, "requires_complete": true, "requires_weighted": false, "directedness": "undirected"},
      "parameters": {},
      "description": "Depth-first tour construction pruned by a minimum spanning tree completion bound on Lagrangian-adjusted weights, seeded with the nearest neighbour plus 2-opt tour."
    },
    {
      "algorithm_id": "nearest_neighbor_2opt",
      "problem_type": "tsp",
      "complexity": "O(n^2) per 2-opt pass",
      "exactness": "heuristic",
      "applicability": {"max_nodes": null, "requires_complete": true, "requires_weighted": false, "directedness": "undirected"},
      "parameters": {"start": ""},
      "description": "Greedy nearest neighbour tour from the start node (first node when empty), improved by first-improvement 2-opt until no exchange shortens it."
    },
    {
      "algorithm_id": "coloring_backtracking",
      "problem_type": "coloring",
      "complexity": "O(k^n) worst case",
      "exactness": "exact",
      "applicability": {"max_nodes": 25, "requires_complete": false, "requires_weighted": false, "directedness": "undirected"},
      "parameters": {},
      "description": "Tries k from the largest clique size up to the DSATUR colour count with saturation-ordered backtracking; the first feasible k is the chromatic number."
    },
    {
      "algorithm_id": "dsatur",
      "problem_type": "coloring",
      "complexity": "O(n^2)",
      "exactness": "heuristic",
      "applicability": {"max_nodes": null, "requires_complete": false, "requires_weighted": false, "directedness": "undirected"},
      "parameters": {},
      "description": "Greedy colouring that always colours the node with the most distinct neighbour colours, ties to higher degree then lower index."
    },
    {
      "algorithm_id": "vertex_cover_branch_and_bound",
      "problem_type": "vertex_cover",
      "complexity": "O(1.62^k n)",
      "exactness": "exact",
      "applicability": {"max_nodes": 30, "requires_complete": false, "requires_weighted": false, "directedness": "undirected"},
      "parameters": {},
      "description": "Branches on a maximum-degree node (take it or take all its neighbours) after degree-0 and degree-1 reductions. Returns the lexicographically smallest minimum cover."
    },
    {
      "algorithm_id": "matching_2approx",
      "problem_type": "vertex_cover",
      "complexity": "O(m)",
      "exactness": "approximation",
      "applicability": {"max_nodes": null, "requires_complete": false, "requires_weighted": false, "directedness": "undirected"},
      "parameters": {},
      "description": "Both endpoints of a maximal matching built in edge order. At most twice the optimum."
    },
    {
      "algorithm_id": "dijkstra",
      "problem_type": "shortest_path",
      "complexity": "O((n + m) log n)",
      "exactness": "exact",
      "applicability": {"max_nodes": null, "requires_complete": false, "requires_weighted": false, "directedness": "any"},
      "parameters": {},
      "description": "Priority-queue shortest path for non-negative weights. Among equal-cost paths the lexicographically smallest node sequence is returned."
    },
    {
      "algorithm_id": "cycle_detection",
      "problem_type": "cycle",
      "complexity": "O(n + m)",
      "exactness": "exact",
      "applicability": {"max_nodes": null, "requires_complete": false, "requires_weighted": false, "directedness": "any"},
      "parameters": {},
      "description": "Union-find over the edges of an undirected graph; depth-first back-edge search for a directed one."
    }
  ]
}
)kb";

inline const KnowledgeBase& default_knowledge_base() {
  static const KnowledgeBase kb = load_knowledge_base(default_knowledge_base_text);
  return kb;
}

}  // namespace graphwright
