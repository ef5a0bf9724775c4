#include <gtest/gtest.h>

#include "graphwright/solvers/registry.hpp"
#include "graphwright/solvers/verify.hpp"
#include "support/oracles.hpp"
#include "support/random_graphs.hpp"

using namespace graphwright;
using testkit::plain_names;
using testkit::random_complete;
using testkit::random_gnp;

namespace {

Errc error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::io_error;
}

Graph uniform_complete(std::size_t n, std::int64_t w = 1) {
  auto names = plain_names(n);
  std::vector<EdgeSpec> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) edges.push_back({names[i], names[j], Rational(w)});
  return build_graph(names, false, true, edges);
}

Graph cycle_graph(std::size_t n) {
  auto names = plain_names(n);
  std::vector<EdgeSpec> edges;
  for (std::size_t i = 0; i < n; ++i) edges.push_back({names[i], names[(i + 1) % n]});
  return build_graph(names, false, false, edges);
}

Graph star(std::size_t leaves) {
  std::vector<std::string> names{"hub"};
  std::vector<EdgeSpec> edges;
  for (std::size_t i = 0; i < leaves; ++i) {
    names.push_back("leaf" + std::to_string(i));
    edges.push_back({"hub", names.back()});
  }
  return build_graph(names, false, false, edges);
}

Graph edgeless(std::size_t n) { return build_graph(plain_names(n), false, false, {}); }

const Task tsp_task{ProblemType::tsp, "", ""};
const Task coloring_task{ProblemType::coloring, "", ""};
const Task cover_task{ProblemType::vertex_cover, "", ""};

}  // namespace

TEST(Tsp, TriangleHasOneTour) {
  auto g = build_graph({"A", "B", "C"}, false, true,
                       {{"A", "B", Rational(1)}, {"B", "C", Rational(2)}, {"A", "C", Rational(3)}});
  EXPECT_EQ(tsp_brute_force(g).objective, Rational(6));
  EXPECT_EQ(tsp_exact_held_karp(g).objective, Rational(6));
  EXPECT_EQ(tsp_branch_and_bound(g).objective, Rational(6));
}

TEST(Tsp, UniformK4) {
  auto g = uniform_complete(4);
  EXPECT_EQ(tsp_brute_force(g).objective, Rational(4));
  EXPECT_EQ(tsp_exact_held_karp(g).objective, Rational(4));
  for (NodeId s = 0; s < 4; ++s) EXPECT_EQ(tsp_nearest_neighbor(g, s).objective, Rational(4));
  auto opt = tsp_exact_held_karp(g);
  EXPECT_EQ(tsp_two_opt(g, opt).objective, opt.objective);
  EXPECT_EQ(opt.nodes, (std::vector<std::string>{"n00", "n01", "n02", "n03"}));
}

TEST(Tsp, SizeLimitsAndPreconditions) {
  Rng rng(1);
  EXPECT_EQ(error_of([&] { tsp_exact_held_karp(random_complete(17, rng)); }), Errc::too_large);
  EXPECT_EQ(error_of([&] { tsp_brute_force(random_complete(11, rng)); }), Errc::too_large);
  EXPECT_EQ(error_of([&] { tsp_branch_and_bound(random_complete(26, rng)); }), Errc::too_large);
  EXPECT_EQ(error_of([] { tsp_exact_held_karp(cycle_graph(5)); }), Errc::graph_not_complete);
  EXPECT_EQ(error_of([] { tsp_nearest_neighbor(cycle_graph(5)); }), Errc::graph_not_complete);
}

TEST(Tsp, SeededK8BruteForceMatchesHeldKarp) {
  Rng rng(8);
  auto g = random_complete(8, rng);
  auto bf = tsp_brute_force(g);
  auto hk = tsp_exact_held_karp(g);
  EXPECT_EQ(bf.objective, hk.objective);
  EXPECT_EQ(bf.nodes, hk.nodes);
}

TEST(Tsp, TiesResolveToSameTourAcrossExactSolvers) {
  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    auto g = random_complete(static_cast<std::size_t>(rng.uniform(4, 9)), rng, 3);
    auto bf = tsp_brute_force(g);
    ASSERT_EQ(tsp_exact_held_karp(g).nodes, bf.nodes);
    ASSERT_EQ(tsp_branch_and_bound(g).objective, bf.objective);
  }
}

TEST(TspProperty, HeldKarpMatchesPermutationOracle) {
  Rng rng(2024);
  for (int i = 0; i < 200; ++i) {
    auto g = random_complete(static_cast<std::size_t>(rng.uniform(5, 9)), rng);
    auto hk = tsp_exact_held_karp(g);
    ASSERT_EQ(hk.objective, testkit::permutation_tsp_cost(g));
    ASSERT_TRUE(verify_solution(tsp_task, g, hk).valid);
  }
}

TEST(TspProperty, BranchAndBoundMatchesHeldKarp) {
  Rng rng(77);
  for (int i = 0; i < 300; ++i) {
    const auto max_weight = rng.chance(0.3) ? 3 : 100;
    auto g = random_complete(static_cast<std::size_t>(rng.uniform(3, 14)), rng, max_weight);
    auto hk = tsp_exact_held_karp(g);
    auto bb = tsp_branch_and_bound(g);
    ASSERT_EQ(bb.objective, hk.objective);
    ASSERT_TRUE(verify_solution(tsp_task, g, bb).valid);
    const auto ids = detail::tour_indices(g, bb.nodes);
    ASSERT_EQ(detail::canonical_tour(ids), ids);
  }
  for (int i = 0; i < 10; ++i) {
    auto g = random_complete(16, rng);
    ASSERT_EQ(tsp_branch_and_bound(g).objective, tsp_exact_held_karp(g).objective);
  }
}

TEST(TspProperty, TwoOptNeverWorsensNearestNeighbour) {
  Rng rng(20);
  auto k20 = random_complete(20, rng);
  EXPECT_LE(tsp_nearest_neighbor_two_opt(k20).objective, tsp_nearest_neighbor(k20).objective);
  for (int i = 0; i < 200; ++i) {
    auto g = random_complete(static_cast<std::size_t>(rng.uniform(3, 12)), rng);
    auto nn = tsp_nearest_neighbor(g, static_cast<NodeId>(rng.index(g.node_count())));
    auto improved = tsp_two_opt(g, nn);
    ASSERT_LE(improved.objective, nn.objective);
    ASSERT_TRUE(verify_solution(tsp_task, g, nn).valid);
    ASSERT_TRUE(verify_solution(tsp_task, g, improved).valid);
    ASSERT_GE(improved.objective, tsp_exact_held_karp(g).objective);
  }
}

TEST(Coloring, Examples) {
  auto k5 = uniform_complete(5);
  EXPECT_EQ(coloring_exact(k5).objective, Rational(5));
  EXPECT_EQ(coloring_dsatur(k5).objective, Rational(5));
  EXPECT_EQ(coloring_exact(cycle_graph(6)).objective, Rational(2));
  EXPECT_EQ(coloring_exact(cycle_graph(7)).objective, Rational(3));
  EXPECT_EQ(coloring_dsatur(edgeless(10)).objective, Rational(1));
  EXPECT_EQ(coloring_exact(edgeless(10)).objective, Rational(1));
  EXPECT_EQ(coloring_exact(edgeless(0)).objective, Rational(0));
}

TEST(Coloring, ColoursStartAtZeroInNodeOrder) {
  auto s = coloring_exact(cycle_graph(4));
  EXPECT_EQ(s.colors.at("n00"), 0);
  EXPECT_EQ(s.colors.at("n01"), 1);
  EXPECT_EQ(s.colors.at("n02"), 0);
}

TEST(Coloring, Limits) {
  Rng rng(5);
  EXPECT_EQ(error_of([&] { coloring_exact(random_gnp(26, 0.3, rng)); }), Errc::too_large);
  EXPECT_EQ(error_of([&] { coloring_dsatur(random_gnp(5, 0.5, rng, false, true)); }), Errc::invalid_input);
}

TEST(ColoringProperty, ExactMatchesExhaustiveMinimum) {
  Rng rng(12);
  auto g12 = random_gnp(12, 0.4, rng);
  EXPECT_EQ(coloring_exact(g12).objective, Rational(testkit::exhaustive_chromatic_number(g12)));
  for (int i = 0; i < 200; ++i) {
    auto g = random_gnp(static_cast<std::size_t>(rng.uniform(1, 12)), rng.unit(), rng);
    auto s = coloring_exact(g);
    ASSERT_EQ(s.objective, Rational(testkit::exhaustive_chromatic_number(g)));
    ASSERT_TRUE(verify_solution(coloring_task, g, s).valid);
  }
}

TEST(ColoringProperty, DsaturIsProperAndNeverBeatsExact) {
  Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    auto g = random_gnp(static_cast<std::size_t>(rng.uniform(1, 25)), rng.unit() * 0.6, rng);
    auto h = coloring_dsatur(g);
    ASSERT_TRUE(verify_solution(coloring_task, g, h).valid);
    ASSERT_GE(h.objective, coloring_exact(g).objective);
  }
}

TEST(VertexCover, Examples) {
  auto s = vertex_cover_exact(star(5));
  EXPECT_EQ(s.nodes, (std::vector<std::string>{"hub"}));
  EXPECT_EQ(s.objective, Rational(1));
  EXPECT_TRUE(vertex_cover_exact(edgeless(6)).nodes.empty());
  EXPECT_TRUE(vertex_cover_approx(edgeless(6)).nodes.empty());
  auto edge = build_graph({"A", "B"}, false, false, {{"A", "B"}});
  EXPECT_EQ(vertex_cover_approx(edge).nodes, (std::vector<std::string>{"A", "B"}));
  EXPECT_EQ(vertex_cover_exact(edge).nodes, (std::vector<std::string>{"A"}));
}

TEST(VertexCover, Limit) {
  Rng rng(3);
  EXPECT_EQ(error_of([&] { vertex_cover_exact(random_gnp(31, 0.2, rng)); }), Errc::too_large);
}

TEST(VertexCoverProperty, ExactMatchesSubsetOracle) {
  Rng rng(14);
  auto g14 = random_gnp(14, 0.3, rng);
  EXPECT_EQ(vertex_cover_exact(g14).objective, Rational(testkit::subset_vertex_cover_size(g14)));
  for (int i = 0; i < 200; ++i) {
    auto g = random_gnp(static_cast<std::size_t>(rng.uniform(1, 14)), rng.unit(), rng);
    auto s = vertex_cover_exact(g);
    ASSERT_EQ(s.objective, Rational(testkit::subset_vertex_cover_size(g)));
    ASSERT_TRUE(verify_solution(cover_task, g, s).valid);
  }
}

TEST(VertexCoverProperty, ExactPicksLexicographicallySmallestMinimum) {
  Rng rng(15);
  for (int i = 0; i < 100; ++i) {
    auto g = random_gnp(static_cast<std::size_t>(rng.uniform(2, 10)), 0.4, rng);
    const auto n = g.node_count();
    const auto best = static_cast<std::size_t>(testkit::subset_vertex_cover_size(g));
    std::vector<std::string> smallest;
    bool found = false;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != best) continue;
      bool covers = true;
      for (const auto& e : g.edges())
        if (!(mask >> e.u & 1U) && !(mask >> e.v & 1U)) covers = false;
      if (!covers) continue;
      std::vector<std::string> set;
      for (NodeId v = 0; v < n; ++v)
        if (mask >> v & 1U) set.push_back(g.name(v));
      if (!found || set < smallest) smallest = set;
      found = true;
    }
    ASSERT_EQ(vertex_cover_exact(g).nodes, smallest);
  }
}

TEST(VertexCoverProperty, MatchingCoverWithinFactorTwo) {
  Rng rng(16);
  for (int i = 0; i < 200; ++i) {
    auto g = random_gnp(static_cast<std::size_t>(rng.uniform(1, 30)), rng.unit() * 0.5, rng);
    auto approx = vertex_cover_approx(g);
    auto exact = vertex_cover_exact(g);
    ASSERT_TRUE(verify_solution(cover_task, g, approx).valid);
    ASSERT_LE(approx.objective, exact.objective * Rational(2));
    ASSERT_GE(approx.objective, exact.objective);
  }
}

TEST(ShortestPath, Examples) {
  auto g = build_graph({"A", "B"}, false, true, {{"A", "B", Rational(7)}});
  auto same = shortest_path_dijkstra(g, "A", "A");
  EXPECT_EQ(same.nodes, (std::vector<std::string>{"A"}));
  EXPECT_EQ(same.objective, Rational(0));
  auto ab = shortest_path_dijkstra(g, "A", "B");
  EXPECT_EQ(ab.objective, Rational(7));
  EXPECT_EQ(ab.nodes, (std::vector<std::string>{"A", "B"}));
  EXPECT_EQ(error_of([&] { shortest_path_dijkstra(g, "A", "Z"); }), Errc::unknown_node);
  auto split = build_graph({"A", "B"}, false, true, {});
  EXPECT_EQ(error_of([&] { shortest_path_dijkstra(split, "A", "B"); }), Errc::no_path);
}

TEST(ShortestPath, TiesPreferSmallerSequence) {
  auto g = build_graph({"S", "A", "B", "T"}, false, true,
                       {{"S", "B", Rational(1)}, {"B", "T", Rational(1)}, {"S", "A", Rational(1)}, {"A", "T", Rational(1)}});
  EXPECT_EQ(shortest_path_dijkstra(g, "S", "T").nodes, (std::vector<std::string>{"S", "A", "T"}));
}

TEST(ShortestPath, DirectedEdgesAreOneWay) {
  auto g = build_graph({"A", "B", "C"}, true, true, {{"A", "B", Rational(1)}, {"C", "B", Rational(1)}});
  EXPECT_EQ(error_of([&] { shortest_path_dijkstra(g, "A", "C"); }), Errc::no_path);
}

TEST(ShortestPathProperty, MatchesBellmanFord) {
  Rng rng(15);
  Task task{ProblemType::shortest_path, "", ""};
  int compared = 0;
  for (int i = 0; i < 200; ++i) {
    const auto n = static_cast<std::size_t>(rng.uniform(2, 20));
    auto g = random_gnp(n, rng.unit() * 0.5, rng, true, rng.chance(0.3));
    const auto s = static_cast<NodeId>(rng.index(n));
    const auto t = static_cast<NodeId>(rng.index(n));
    auto expected = testkit::bellman_ford(g, s, t);
    if (!expected) {
      ASSERT_EQ(error_of([&] { shortest_path_dijkstra(g, g.name(s), g.name(t)); }), Errc::no_path);
      continue;
    }
    auto sol = shortest_path_dijkstra(g, g.name(s), g.name(t));
    ASSERT_EQ(sol.objective, *expected);
    task.source = g.name(s);
    task.target = g.name(t);
    ASSERT_TRUE(verify_solution(task, g, sol).valid);
    ++compared;
  }
  EXPECT_GT(compared, 100);
}

TEST(Cycle, Examples) {
  auto tree = build_graph({"A", "B", "C", "D", "E"}, false, false, {{"A", "B"}, {"A", "C"}, {"C", "D"}, {"C", "E"}});
  EXPECT_FALSE(detect_cycle(tree).flag);
  EXPECT_TRUE(detect_cycle(cycle_graph(3)).flag);
  auto two_way = build_graph({"A", "B"}, true, false, {{"A", "B"}, {"B", "A"}});
  EXPECT_TRUE(detect_cycle(two_way).flag);
  auto dag = build_graph({"A", "B", "C"}, true, false, {{"A", "B"}, {"B", "C"}, {"A", "C"}});
  EXPECT_FALSE(detect_cycle(dag).flag);
}

TEST(CycleProperty, AgreesWithExhaustiveSearch) {
  Rng rng(10);
  for (int i = 0; i < 300; ++i) {
    const bool directed = rng.chance(0.5);
    auto g = random_gnp(static_cast<std::size_t>(rng.uniform(1, 10)), rng.unit() * 0.4, rng, false, directed);
    ASSERT_EQ(detect_cycle(g).flag, testkit::exhaustive_has_cycle(g));
  }
}

TEST(Verify, Examples) {
  auto k4 = uniform_complete(4, 2);
  Solution tour{SolutionKind::tour, {"n00", "n02", "n01", "n03"}, {}, false, Rational(8), "", false};
  EXPECT_TRUE(verify_solution(tsp_task, k4, tour).valid);
  tour.objective = Rational(9);
  auto r = verify_solution(tsp_task, k4, tour);
  EXPECT_FALSE(r.valid);
  ASSERT_EQ(r.violations.size(), 1u);

  auto tri = cycle_graph(3);
  Solution coloring{SolutionKind::coloring, {}, {{"n00", 0}, {"n01", 0}, {"n02", 1}}, false, Rational(2), "", false};
  auto c = verify_solution(coloring_task, tri, coloring);
  EXPECT_FALSE(c.valid);
  EXPECT_EQ(c.violations, (std::vector<std::string>{"adjacent nodes n00-n01 share colour 0"}));

  Solution cover{SolutionKind::node_set, {"n00"}, {}, false, Rational(1), "", false};
  auto v = verify_solution(cover_task, tri, cover);
  EXPECT_EQ(v.violations, (std::vector<std::string>{"edge n01-n02 is not covered"}));

  EXPECT_EQ(error_of([&] { verify_solution(cover_task, tri, coloring); }), Errc::kind_mismatch);
}

TEST(Verify, RejectsMalformedTours) {
  auto k4 = uniform_complete(4);
  Solution repeat{SolutionKind::tour, {"n00", "n01", "n01", "n02"}, {}, false, Rational(4), "", false};
  EXPECT_FALSE(verify_solution(tsp_task, k4, repeat).valid);
  Solution short_tour{SolutionKind::tour, {"n00", "n01", "n02"}, {}, false, Rational(3), "", false};
  EXPECT_FALSE(verify_solution(tsp_task, k4, short_tour).valid);
  Solution stranger{SolutionKind::tour, {"n00", "n01", "n02", "zz"}, {}, false, Rational(4), "", false};
  EXPECT_FALSE(verify_solution(tsp_task, k4, stranger).valid);
}

TEST(Registry, RunsByAlgorithmId) {
  auto g = uniform_complete(5, 3);
  EXPECT_EQ(run_solver("held_karp", g, tsp_task).objective, Rational(15));
  EXPECT_EQ(run_solver("nearest_neighbor_2opt", g, tsp_task, {{"start", "n03"}}).nodes.front(), "n00");
  EXPECT_EQ(error_of([&] { run_solver("held_karp", g, tsp_task, {{"max_nodes", "4"}}); }), Errc::too_large);
  EXPECT_EQ(error_of([&] { run_solver("simplex", g, tsp_task); }), Errc::solver_error);
  EXPECT_EQ(error_of([&] { run_solver("held_karp", g, tsp_task, {{"max_nodes", "x"}}); }), Errc::invalid_input);
}

TEST(Determinism, RepeatedRunsAreIdentical) {
  Rng rng(404);
  for (int i = 0; i < 50; ++i) {
    auto k = random_complete(12, rng);
    auto k25 = random_complete(25, rng);
    ASSERT_EQ(tsp_branch_and_bound(k25), tsp_branch_and_bound(k25));
    ASSERT_EQ(tsp_exact_held_karp(k), tsp_exact_held_karp(k));
    ASSERT_EQ(tsp_nearest_neighbor_two_opt(k), tsp_nearest_neighbor_two_opt(k));
    auto g = random_gnp(18, 0.3, rng);
    ASSERT_EQ(coloring_exact(g), coloring_exact(g));
    ASSERT_EQ(vertex_cover_exact(g), vertex_cover_exact(g));
    ASSERT_EQ(coloring_dsatur(g), coloring_dsatur(g));
  }
}
