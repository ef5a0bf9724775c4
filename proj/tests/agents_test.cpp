#include <gtest/gtest.h>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "graphwright/agents/backend_config.hpp"
#include "graphwright/agents/direct.hpp"
#include "graphwright/agents/result_json.hpp"
#include "graphwright/agents/stub_backend.hpp"
#include "graphwright/knowledge/default_kb.hpp"
#include "support/random_graphs.hpp"
#include "support/scripted_backend.hpp"

using namespace graphwright;
using testkit::ScriptedBackend;

namespace {

std::string fence(const std::string& tag, const std::string& body) { return "```" + tag + "\n" + body + "\n```\n"; }

Errc error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::io_error;
}

std::filesystem::path temp_path(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "graphwright_agents_test";
  std::filesystem::create_directories(dir);
  auto p = dir / name;
  std::filesystem::remove_all(p);
  return p;
}

const PromptSet& prompts() {
  static const PromptSet p = PromptSet::defaults();
  return p;
}

/// Wraps a backend and sums what it bills.
class Meter final : public ChatBackend {
 public:
  explicit Meter(ChatBackend& inner) : inner_(inner) {}
  ChatReply complete(const ChatRequest& r) override {
    auto reply = inner_.complete(r);
    std::lock_guard lock(mutex_);
    billed += reply.usage;
    ++calls;
    return reply;
  }
  std::string backend_id() const override { return inner_.backend_id(); }
  Usage billed;
  int calls = 0;

 private:
  ChatBackend& inner_;
  std::mutex mutex_;
};

OraclePayload payload_for(ProblemType type, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  OraclePayload p;
  p.problem_type = type;
  p.narrative = "A courier company plans routes between depots.";
  switch (type) {
    case ProblemType::tsp: p.graph = testkit::random_complete(n, rng); break;
    case ProblemType::shortest_path:
      p.graph = testkit::random_gnp(n, 0.6, rng, true);
      p.source = p.graph.name(0);
      p.target = p.graph.name(n - 1);
      break;
    default: p.graph = testkit::random_gnp(n, 0.4, rng); break;
  }
  return p;
}

Solution exact_answer(const OraclePayload& p) {
  const Task task{p.problem_type, p.source, p.target};
  switch (p.problem_type) {
    case ProblemType::tsp: return tsp_exact_held_karp(p.graph);
    case ProblemType::coloring: return coloring_exact(p.graph);
    case ProblemType::vertex_cover: return vertex_cover_exact(p.graph);
    case ProblemType::shortest_path: return shortest_path_dijkstra(p.graph, task.source, task.target);
    case ProblemType::cycle: return detect_cycle(p.graph);
  }
  return {};
}

}  // namespace

// ---- structured output ----

TEST(StructuredBlocks, LastMatchingBlockWinsAndProseIsIgnored) {
  const std::string reply = "Sure.\n```Graph\nfirst\n```\nthen\n```json\n{}\n```\n  ```graph  \nsecond\n```\nbye";
  ASSERT_TRUE(find_block(reply, "graph"));
  EXPECT_EQ(*find_block(reply, "graph"), "second\n");
  EXPECT_FALSE(find_block(reply, "narrative"));
  EXPECT_FALSE(find_block("```graph\nA B 1\n", "graph"));
  EXPECT_EQ(error_of([] { require_block("no fences", "graph"); }), Errc::parse_failure);
  EXPECT_EQ(error_of([] { require_json_block(fence("spec", "[1,2]"), "spec"); }), Errc::parse_failure);
  EXPECT_EQ(error_of([] { require_json_block(fence("spec", "{oops"), "spec"); }), Errc::parse_failure);
  EXPECT_EQ(require_json_block(fence("spec", R"({"a": 1})"), "spec")["a"], 1);
}

TEST(Prompts, RenderReplacesOnlySuppliedNames) {
  EXPECT_EQ(render_template("{problem} and {\"ok\": true} {graph}", {{"problem", "P"}}), "P and {\"ok\": true} {graph}");
  EXPECT_EQ(render_template("{a}{a}", {{"a", "{a}"}}), "{a}{a}");
}

TEST(Prompts, DefaultsCoverEveryAgent) {
  const auto& p = prompts();
  for (auto a : {agent::tiea, agent::piea, agent::gsiea, agent::sgia, agent::gta, agent::asa, agent::audit, agent::direct}) {
    EXPECT_FALSE(p.system(a).empty()) << a;
    EXPECT_FALSE(p.user(a).empty()) << a;
  }
  EXPECT_NE(p.user(agent::gta).find("{kb_excerpt}"), std::string::npos);
  EXPECT_NE(p.user(agent::sgia).find("{graph}"), std::string::npos);
  EXPECT_FALSE(p.file("cot_directive.txt").empty());
}

TEST(Prompts, DirectoryOverridesSingleFiles) {
  const auto dir = temp_path("prompts");
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "tiea.user.txt") << "Only this: {problem}";
  const auto p = PromptSet::from_directory(dir);
  EXPECT_EQ(p.user(agent::tiea), "Only this: {problem}");
  EXPECT_EQ(p.user(agent::piea), prompts().user(agent::piea));
  EXPECT_EQ(error_of([&] { PromptSet::from_directory(dir / "missing"); }), Errc::config_error);
}

TEST(Prompts, BundledFilesMatchEmbeddedCopies) {
  for (const auto& [name, text] : default_prompt_files()) {
    std::ifstream in(std::filesystem::path(GRAPHWRIGHT_SOURCE_DIR) / "prompts" / std::string(name), std::ios::binary);
    ASSERT_TRUE(in) << name;
    std::stringstream buf;
    buf << in.rdbuf();
    EXPECT_EQ(buf.str(), text) << name;
  }
}

// ---- retries ----

TEST(Retries, UnparseableRepliesGiveParseFailureAfterThreeAttempts) {
  ScriptedBackend b;
  b.script("piea", {"I think it is a TSP."});
  AgentContext ctx{b, prompts()};
  Trail trail;
  EXPECT_EQ(error_of([&] { run_piea(ctx, "some problem", trail); }), Errc::parse_failure);
  ASSERT_EQ(trail.size(), 3u);
  EXPECT_EQ(b.requests.size(), 3u);
  EXPECT_EQ(trail[0].user.find("could not be used"), std::string::npos);
  EXPECT_NE(trail[1].user.find("has no ```problem_spec block"), std::string::npos);
  EXPECT_NE(trail[2].user.find("could not be used"), std::string::npos);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(trail[i].attempt, i + 1);
    EXPECT_FALSE(trail[i].error.empty());
  }
}

TEST(Retries, RecoversOnALaterAttempt) {
  ScriptedBackend b;
  b.script("piea", {"garbage", fence("problem_spec", R"({"problem_type": "coloring", "objective": "few colours"})")});
  AgentContext ctx{b, prompts()};
  Trail trail;
  auto spec = run_piea(ctx, "Wireless channel allocation among towers.", trail);
  EXPECT_EQ(spec.problem_type, ProblemType::coloring);
  ASSERT_EQ(trail.size(), 2u);
  EXPECT_TRUE(trail[1].error.empty());
}

TEST(Retries, BackendFailuresAreRetriedThenSurfaced) {
  ScriptedBackend b;
  b.script("tiea", {"!throw"});
  AgentContext ctx{b, prompts()};
  Trail trail;
  EXPECT_EQ(error_of([&] { run_tiea(ctx, "text", trail); }), Errc::backend_error);
  EXPECT_EQ(trail.size(), 3u);

  ScriptedBackend flaky;
  flaky.script("tiea", {"!throw", fence("narrative", "Couriers and depots.")});
  AgentContext ctx2{flaky, prompts()};
  Trail t2;
  EXPECT_EQ(run_tiea(ctx2, "text", t2), "Couriers and depots.");
  EXPECT_EQ(t2.size(), 2u);
}

TEST(Retries, EmptyRepliesGiveEmptyOutput) {
  ScriptedBackend b;
  b.script("tiea", {"  \n"});
  AgentContext ctx{b, prompts()};
  Trail trail;
  EXPECT_EQ(error_of([&] { run_tiea(ctx, "text", trail); }), Errc::empty_output);
  EXPECT_EQ(trail.size(), 3u);
}

TEST(Retries, RetryBudgetIsConfigurable) {
  ScriptedBackend b;
  b.script("tiea", {"nothing"});
  AgentContext ctx{b, prompts(), 5};
  Trail trail;
  EXPECT_EQ(error_of([&] { run_tiea(ctx, "text", trail); }), Errc::parse_failure);
  EXPECT_EQ(trail.size(), 5u);
}

// ---- extraction layer ----

TEST(Tiea, StructuralLinesAreDropped) {
  ScriptedBackend b;
  b.script("tiea", {fence("narrative", "Depots across the valley.\nA B 4\nA: B(4), C(2)\n0 1 2\nnodes A B C\nVans leave at dawn.")});
  AgentContext ctx{b, prompts()};
  Trail trail;
  EXPECT_EQ(run_tiea(ctx, "p", trail), "Depots across the valley.\nVans leave at dawn.");
}

TEST(Tiea, PureEdgeListGivesNearEmptyNarrative) {
  ScriptedBackend b;
  b.script("tiea", {fence("narrative", "A B 3\nB C 4\nA C 5")});
  AgentContext ctx{b, prompts()};
  Trail trail;
  EXPECT_EQ(run_tiea(ctx, "A B 3\nB C 4\nA C 5", trail), "");
}

TEST(Piea, UnsupportedTypeIsNotRetried) {
  ScriptedBackend b;
  b.script("piea", {fence("problem_spec", R"({"problem_type": "max_flow"})")});
  AgentContext ctx{b, prompts()};
  Trail trail;
  EXPECT_EQ(error_of([&] { run_piea(ctx, "maximise flow", trail); }), Errc::unsupported_problem_type);
  EXPECT_EQ(trail.size(), 1u);
}

TEST(Piea, ShortestPathCarriesEndpoints) {
  ScriptedBackend b;
  b.script("piea", {fence("problem_spec", R"({"problem_type": "Shortest Path", "source": " Kovra ", "target": "Zelm"})")});
  AgentContext ctx{b, prompts()};
  Trail trail;
  auto spec = run_piea(ctx, "Target navigation", trail);
  EXPECT_EQ(spec.problem_type, ProblemType::shortest_path);
  EXPECT_EQ(spec.source, "Kovra");
  EXPECT_EQ(spec.target, "Zelm");

  ScriptedBackend missing;
  missing.script("piea", {fence("problem_spec", R"({"problem_type": "shortest_path", "source": "Kovra"})")});
  AgentContext ctx2{missing, prompts()};
  Trail t2;
  EXPECT_EQ(error_of([&] { run_piea(ctx2, "p", t2); }), Errc::parse_failure);
}

TEST(Gsiea, EmptyListingIsEmptyGraph) {
  ScriptedBackend b;
  b.script("gsiea", {fence("raw_graph", "\n# nothing here\n")});
  AgentContext ctx{b, prompts()};
  Trail trail;
  EXPECT_EQ(error_of([&] { run_gsiea(ctx, "Only noise.", trail); }), Errc::empty_graph);
  EXPECT_EQ(trail.size(), 1u);
}

TEST(Gsiea, DuplicatesArePreserved) {
  ScriptedBackend b;
  b.script("gsiea", {fence("raw_graph", "A B 2\nB C 3\nA B 2")});
  AgentContext ctx{b, prompts()};
  Trail trail;
  EXPECT_EQ(run_gsiea(ctx, "p", trail), "A B 2\nB C 3\nA B 2\n");
}

TEST(Gsiea, StubListsEveryPairOfACompleteInstance) {
  Rng rng(8);
  OraclePayload p;
  p.graph = testkit::random_complete(8, rng);
  OracleStubBackend stub(p);
  AgentContext ctx{stub, prompts()};
  Trail trail;
  auto raw = run_gsiea(ctx, "delivery", trail);
  auto g = parse_graph_auto(raw);
  EXPECT_EQ(g.node_count(), 8u);
  EXPECT_EQ(g.edge_count(), 28u);
}

// ---- knowledge integration layer ----

TEST(Sgia, RepeatedEdgeWithSameWeightIsMerged) {
  OracleStubBackend stub({});
  AgentContext ctx{stub, prompts()};
  Trail trail;
  auto g = run_sgia(ctx, "A B 2\nB C 3\nA B 2\n", trail);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(g.weight(*g.index_of("A"), *g.index_of("B")), Rational(2));
}

TEST(Sgia, ConflictingWeightsAreRejected) {
  OracleStubBackend stub({});
  AgentContext ctx{stub, prompts()};
  Trail trail;
  EXPECT_EQ(error_of([&] { run_sgia(ctx, "A B 3\nB C 1\nA B 5", trail); }), Errc::conflicting_weights);
  EXPECT_EQ(trail.size(), 1u);
  EXPECT_EQ(error_of([&] { run_sgia(ctx, "  \n", trail); }), Errc::empty_graph);
}

TEST(Sgia, EveryRawFormatNormalisesToTheSameGraph) {
  Rng rng(11);
  OracleStubBackend stub({});
  AgentContext ctx{stub, prompts()};
  for (int i = 0; i < 60; ++i) {
    const auto n = static_cast<std::size_t>(rng.uniform(2, 12));
    const auto g = testkit::random_gnp(n, 0.5, rng, true);
    Trail trail;
    const auto from_edges = run_sgia(ctx, serialize_graph(g, GraphFormat::edge_list), trail);
    const auto from_lists = run_sgia(ctx, serialize_graph(g, GraphFormat::adjacency_list), trail);
    EXPECT_EQ(from_edges, g);
    EXPECT_EQ(from_lists, g);
    bool matrix_ok = true;
    std::string matrix;
    try {
      matrix = serialize_graph(g, GraphFormat::adjacency_matrix);
    } catch (const Error&) {
      matrix_ok = false;
    }
    if (matrix_ok) {
      EXPECT_EQ(run_sgia(ctx, matrix, trail), g);
    }
  }
}

TEST(Gta, SelectorDecidesByTypeAndSize) {
  OracleStubBackend stub({});
  AgentContext ctx{stub, prompts()};
  Rng rng(4);
  ProblemSpec spec;
  spec.problem_type = ProblemType::tsp;
  Trail trail;
  auto c10 = run_gta(ctx, "story", spec, testkit::random_complete(10, rng), default_knowledge_base(), trail);
  EXPECT_EQ(c10.record.algorithm_id, "held_karp");
  EXPECT_EQ(c10.rationale.back(), "model proposal held_karp agrees with the selector");

  auto c25 = run_gta(ctx, "story", spec, testkit::random_complete(25, rng), default_knowledge_base(), trail);
  EXPECT_EQ(c25.record.algorithm_id, "tsp_branch_and_bound");

  auto c26 = run_gta(ctx, "story", spec, testkit::random_complete(26, rng), default_knowledge_base(), trail);
  EXPECT_EQ(c26.record.algorithm_id, "nearest_neighbor_2opt");
  EXPECT_FALSE(c26.record.exact());
  EXPECT_EQ(c26.rationale.back(), "model proposed held_karp; overridden by the selector with nearest_neighbor_2opt");
  EXPECT_EQ(trail.size(), 3u);
}

TEST(Gta, ColoringNeverGetsAnotherTypesAlgorithm) {
  OracleStubBackend stub({});
  AgentContext ctx{stub, prompts()};
  Rng rng(5);
  ProblemSpec spec;
  spec.problem_type = ProblemType::coloring;
  for (std::size_t n = 3; n <= 40; ++n) {
    Trail trail;
    auto c = run_gta(ctx, "", spec, testkit::random_gnp(n, 0.4, rng), default_knowledge_base(), trail);
    EXPECT_EQ(c.record.problem_type, ProblemType::coloring);
    EXPECT_EQ(c.record.algorithm_id, n <= 25 ? "coloring_backtracking" : "dsatur");
    // Only coloring cards are shown to the model.
    EXPECT_EQ(trail[0].user.find("held_karp"), std::string::npos);
  }
}

TEST(Gta, UnparseableProposalIsRetried) {
  ScriptedBackend b;
  b.script("gta", {"use Held-Karp", fence("algorithm", R"({"algorithm_id": "held_karp"})")});
  AgentContext ctx{b, prompts()};
  Rng rng(1);
  Trail trail;
  auto c = run_gta(ctx, "", ProblemSpec{}, testkit::random_complete(6, rng), default_knowledge_base(), trail);
  EXPECT_EQ(c.record.algorithm_id, "held_karp");
  EXPECT_EQ(trail.size(), 2u);
}

// ---- algorithm execution layer ----

TEST(Asa, HeldKarpOnK8IsExactAndClean) {
  Rng rng(21);
  const auto g = testkit::random_complete(8, rng);
  OracleStubBackend stub({});
  AgentContext ctx{stub, prompts()};
  const auto records = lookup_algorithms(default_knowledge_base(), ProblemType::tsp);
  const auto choice = select_algorithm(records, graph_stats(g));
  ASSERT_EQ(choice.record.algorithm_id, "held_karp");
  Trail trail;
  ProblemSpec spec;
  auto r = run_asa(ctx, choice, g, spec, 2, records, trail);
  EXPECT_EQ(r.solution, tsp_exact_held_karp(g));
  EXPECT_EQ(r.solution.objective, tsp_brute_force(g).objective);
  EXPECT_EQ(r.self_check_rounds, 2);
  ASSERT_EQ(r.checks.size(), 2u);
  for (const auto& c : r.checks) {
    EXPECT_TRUE(c.violations.empty());
    EXPECT_TRUE(c.model_ok);
    EXPECT_TRUE(c.resolved_with.empty());
  }
  EXPECT_EQ(r.code_output, solution_to_json(r.solution).dump());
  EXPECT_FALSE(r.review.empty());
  ASSERT_EQ(trail.size(), 3u);
  EXPECT_EQ(trail[0].agent, "asa");
  EXPECT_EQ(trail[1].agent, "audit");
}

TEST(Asa, ZeroRoundsKeepsTheInitialAnswer) {
  Rng rng(3);
  const auto g = testkit::random_gnp(12, 0.4, rng);
  OracleStubBackend stub({});
  AgentContext ctx{stub, prompts()};
  const auto records = lookup_algorithms(default_knowledge_base(), ProblemType::vertex_cover);
  ProblemSpec spec;
  spec.problem_type = ProblemType::vertex_cover;
  Trail trail;
  auto r = run_asa(ctx, select_algorithm(records, graph_stats(g)), g, spec, 0, records, trail);
  EXPECT_EQ(r.solution, r.initial_solution);
  EXPECT_TRUE(r.checks.empty());
  EXPECT_EQ(trail.size(), 1u);
  EXPECT_EQ(error_of([&] { run_asa(ctx, select_algorithm(records, graph_stats(g)), g, spec, -1, records, trail); }),
            Errc::invalid_input);
}

TEST(Asa, InapplicableChoiceSurfacesSolverErrorWithRationale) {
  const auto g = build_graph({"A", "B", "C", "D"}, false, true, {{"A", "B", Rational(1)}, {"B", "C", Rational(2)}});
  OracleStubBackend stub({});
  AgentContext ctx{stub, prompts()};
  AlgorithmChoice forced;
  forced.record = *default_knowledge_base().find("held_karp");
  forced.rationale = {"forced by the test"};
  Trail trail;
  try {
    run_asa(ctx, forced, g, ProblemSpec{}, 2, lookup_algorithms(default_knowledge_base(), ProblemType::tsp), trail);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::solver_error);
    EXPECT_NE(e.message().find("held_karp failed"), std::string::npos);
    EXPECT_NE(e.message().find("forced by the test"), std::string::npos);
  }
  EXPECT_TRUE(trail.empty());
}

namespace {

// The bundled cards with always-empty vertex covers listed first.
KnowledgeBase broken_cover_kb(bool second_broken) {
  auto kb = nlohmann::ordered_json::parse(default_knowledge_base_text);
  auto& cards = kb["algorithms"];
  auto card = *std::find_if(cards.begin(), cards.end(),
                            [](const auto& c) { return c["algorithm_id"] == "vertex_cover_branch_and_bound"; });
  card["applicability"]["max_nodes"] = nullptr;
  std::vector<std::string> ids{"broken_cover"};
  if (second_broken) ids.push_back("broken_cover_too");
  for (auto it = ids.rbegin(); it != ids.rend(); ++it) {
    card["algorithm_id"] = *it;
    cards.insert(cards.begin(), card);
  }
  return load_knowledge_base(kb.dump());
}

void register_broken_solvers() {
  auto empty_cover = [](const Graph&, const Task&, const Parameters&) {
    Solution s;
    s.kind = SolutionKind::node_set;
    s.algorithm_id = "broken_cover";
    return s;
  };
  register_solver("broken_cover", empty_cover);
  register_solver("broken_cover_too", empty_cover);
}

}  // namespace

TEST(Asa, DetectedViolationTriggersOneResolve) {
  register_broken_solvers();
  const auto kb = broken_cover_kb(false);
  Rng rng(9);
  const auto g = testkit::random_gnp(10, 0.4, rng);
  ASSERT_GT(g.edge_count(), 0u);
  OracleStubBackend stub({});
  AgentContext ctx{stub, prompts()};
  const auto records = lookup_algorithms(kb, ProblemType::vertex_cover);
  const auto choice = select_algorithm(records, graph_stats(g));
  ASSERT_EQ(choice.record.algorithm_id, "broken_cover");
  ProblemSpec spec;
  spec.problem_type = ProblemType::vertex_cover;
  Trail trail;
  auto r = run_asa(ctx, choice, g, spec, 3, records, trail);
  ASSERT_EQ(r.checks.size(), 3u);
  EXPECT_FALSE(r.checks[0].violations.empty());
  EXPECT_EQ(r.checks[0].resolved_with, "vertex_cover_branch_and_bound");
  EXPECT_TRUE(r.checks[1].violations.empty());
  EXPECT_TRUE(r.checks[2].violations.empty());
  EXPECT_EQ(r.choice.record.algorithm_id, "vertex_cover_branch_and_bound");
  EXPECT_EQ(r.solution, vertex_cover_exact(g));
  EXPECT_TRUE(r.initial_solution.nodes.empty());
  EXPECT_TRUE(verify_solution(spec.task(), g, r.solution).valid);
}

TEST(Asa, PersistentViolationsAreVerificationFailed) {
  register_broken_solvers();
  const auto kb = broken_cover_kb(true);
  const auto g = build_graph({"A", "B"}, false, false, {{"A", "B", Rational(1)}});
  OracleStubBackend stub({});
  AgentContext ctx{stub, prompts()};
  const auto records = lookup_algorithms(kb, ProblemType::vertex_cover);
  ProblemSpec spec;
  spec.problem_type = ProblemType::vertex_cover;
  Trail trail;
  EXPECT_EQ(error_of([&] { run_asa(ctx, select_algorithm(records, graph_stats(g)), g, spec, 2, records, trail); }),
            Errc::verification_failed);
  // Without rounds there is no re-solve, and the final check still refuses the answer.
  EXPECT_EQ(error_of([&] { run_asa(ctx, select_algorithm(records, graph_stats(g)), g, spec, 0, records, trail); }),
            Errc::verification_failed);
}

TEST(Asa, ModelAuditRemarksAreRecordedButDoNotReplaceAValidAnswer) {
  ScriptedBackend b;
  b.script("asa", {fence("review", R"({"summary": "fine"})")});
  b.script("audit", {fence("audit", R"({"ok": false, "issues": ["tour looks long"]})")});
  AgentContext ctx{b, prompts()};
  Rng rng(2);
  const auto g = testkit::random_complete(7, rng);
  const auto records = lookup_algorithms(default_knowledge_base(), ProblemType::tsp);
  Trail trail;
  auto r = run_asa(ctx, select_algorithm(records, graph_stats(g)), g, ProblemSpec{}, 2, records, trail);
  ASSERT_EQ(r.checks.size(), 2u);
  EXPECT_FALSE(r.checks[0].model_ok);
  EXPECT_EQ(r.checks[0].model_issues, std::vector<std::string>{"tour looks long"});
  EXPECT_TRUE(r.checks[0].resolved_with.empty());
  EXPECT_EQ(r.solution, r.initial_solution);
}

TEST(Asa, ViolationsNeverIncreaseOverRounds) {
  register_broken_solvers();
  const auto kb = broken_cover_kb(false);
  const auto records = lookup_algorithms(kb, ProblemType::vertex_cover);
  OracleStubBackend stub({});
  AgentContext ctx{stub, prompts()};
  Rng rng(77);
  ProblemSpec spec;
  spec.problem_type = ProblemType::vertex_cover;
  for (int i = 0; i < 30; ++i) {
    const auto g = testkit::random_gnp(static_cast<std::size_t>(rng.uniform(2, 14)), 0.5, rng);
    const int rounds = static_cast<int>(rng.uniform(1, 4));
    Trail trail;
    auto r = run_asa(ctx, select_algorithm(records, graph_stats(g)), g, spec, rounds, records, trail);
    for (std::size_t k = 1; k < r.checks.size(); ++k)
      EXPECT_LE(r.checks[k].violations.size(), r.checks[k - 1].violations.size());
    EXPECT_TRUE(verify_solution(spec.task(), g, r.solution).valid);
  }
}

// ---- whole pipeline ----

TEST(Pipeline, StubRunMatchesExactAnswersForEveryType) {
  PipelineConfig config;
  config.kb = &default_knowledge_base();
  std::uint64_t seed = 100;
  for (auto type : all_problem_types)
    for (std::size_t n : {3, 8, 13}) {
      const auto p = payload_for(type, n, ++seed);
      Solution expected;
      try {
        expected = exact_answer(p);
      } catch (const Error&) {
        continue;  // unreachable target in a sparse draw
      }
      OracleStubBackend stub(p);
      auto r = run_pipeline(stub, "problem text", config);
      EXPECT_EQ(r.solution.objective, expected.objective) << to_string(type) << " n=" << n;
      EXPECT_EQ(r.normalized_graph, p.graph);
      EXPECT_EQ(r.bundle.narrative, p.narrative);
      EXPECT_EQ(r.bundle.problem_spec.problem_type, type);
      EXPECT_EQ(r.self_check_rounds, 2);
    }
}

TEST(Pipeline, StagesOnlySeeTheirOwnInputs) {
  const auto p = payload_for(ProblemType::tsp, 6, 5);
  OracleStubBackend stub(p);
  PipelineConfig config;
  config.kb = &default_knowledge_base();
  const std::string marker = "Zqvorth-marker";
  auto r = run_pipeline(stub, "The depots are far apart. " + marker, config);
  std::set<std::string> agents;
  for (const auto& e : r.trail) {
    agents.insert(e.agent);
    const bool sees_problem = e.user.find(marker) != std::string::npos;
    const bool iel = e.agent == "tiea" || e.agent == "piea" || e.agent == "gsiea";
    EXPECT_EQ(sees_problem, iel) << e.agent;
    if (e.agent == "sgia" || e.agent == "asa" || e.agent == "audit") {
      EXPECT_EQ(e.user.find(p.narrative), std::string::npos) << e.agent;
    }
  }
  EXPECT_EQ(agents, (std::set<std::string>{"tiea", "piea", "gsiea", "sgia", "gta", "asa", "audit"}));
  EXPECT_EQ(r.trail[0].agent, "tiea");
  EXPECT_EQ(r.trail[1].agent, "piea");
  EXPECT_EQ(r.trail[2].agent, "gsiea");
}

TEST(Pipeline, TrailUsageEqualsBilledUsage) {
  for (bool parallel : {true, false}) {
    const auto p = payload_for(ProblemType::coloring, 9, 12);
    OracleStubBackend stub(p);
    Meter meter(stub);
    PipelineConfig config;
    config.kb = &default_knowledge_base();
    config.parallel_extraction = parallel;
    auto r = run_pipeline(meter, "text", config);
    EXPECT_EQ(trail_usage(r.trail), meter.billed);
    EXPECT_EQ(static_cast<int>(r.trail.size()), meter.calls);
    EXPECT_GT(meter.billed.input_tokens, 0);
  }
  // Failed attempts are billed too.
  ScriptedBackend b;
  const auto p = payload_for(ProblemType::tsp, 5, 1);
  OracleStubBackend stub(p);
  b.fallback([&](const ChatRequest& r) { return stub.complete(r).text; });
  b.script("gta", {"hmm", "still thinking", fence("algorithm", R"({"algorithm_id": "held_karp"})")});
  PipelineConfig config;
  config.kb = &default_knowledge_base();
  auto r = run_pipeline(b, "text", config);
  EXPECT_EQ(trail_usage(r.trail), b.billed);
  EXPECT_EQ(r.trail.size(), b.requests.size());
}

TEST(Pipeline, ErrorsNameTheFailingStage) {
  PipelineConfig config;
  config.kb = &default_knowledge_base();
  const auto p = payload_for(ProblemType::tsp, 5, 2);
  OracleStubBackend stub(p);
  auto stage_of = [&](ChatBackend& b, const std::string& text) -> std::string {
    try {
      run_pipeline(b, text, config);
    } catch (const StageError& e) {
      return e.stage();
    }
    return "none";
  };
  EXPECT_EQ(stage_of(stub, "   "), "input");

  auto with = [&](const std::string& agent, const std::string& reply) {
    auto b = std::make_unique<ScriptedBackend>();
    b->fallback([&](const ChatRequest& r) { return stub.complete(r).text; });
    b->script(agent, {reply});
    return b;
  };
  EXPECT_EQ(stage_of(*with("piea", fence("problem_spec", R"({"problem_type": "max_flow"})")), "t"), "PIEA");
  EXPECT_EQ(stage_of(*with("tiea", "!throw"), "t"), "TIEA");
  EXPECT_EQ(stage_of(*with("gsiea", fence("raw_graph", "")), "t"), "GSIEA");
  EXPECT_EQ(stage_of(*with("gsiea", fence("raw_graph", "A B 1\nA B 2")), "t"), "SGIA");
  EXPECT_EQ(stage_of(*with("gta", "no block"), "t"), "GTA");
  EXPECT_EQ(stage_of(*with("audit", "no block"), "t"), "ASA");
  // A path question over a graph without the named endpoints.
  EXPECT_EQ(stage_of(*with("piea", fence("problem_spec", R"({"problem_type": "shortest_path", "source": "X", "target": "Y"})")), "t"),
            "ASA");

  try {
    run_pipeline(*with("piea", fence("problem_spec", R"({"problem_type": "max_flow"})")), "t", config);
  } catch (const StageError& e) {
    EXPECT_EQ(e.code(), Errc::unsupported_problem_type);
    EXPECT_NE(std::string(e.what()).find("[PIEA]"), std::string::npos);
  }
  PipelineConfig no_kb;
  EXPECT_EQ(error_of([&] { run_pipeline(stub, "t", no_kb); }), Errc::config_error);
}

TEST(Pipeline, RecordThenReplayIsByteIdentical) {
  const auto fixtures = temp_path("fixtures.jsonl");
  PipelineConfig config;
  config.kb = &default_knowledge_base();
  std::vector<std::string> recorded;
  std::vector<std::string> texts;
  for (auto type : {ProblemType::tsp, ProblemType::shortest_path, ProblemType::cycle}) {
    const auto p = payload_for(type, 7, 40 + static_cast<int>(type));
    texts.push_back("instance " + std::string(to_string(type)));
    auto rec = RecordingBackend(std::make_shared<OracleStubBackend>(p), fixtures);
    recorded.push_back(solve_result_to_json(run_pipeline(rec, texts.back(), config), true).dump());
  }
  for (int run = 0; run < 2; ++run) {
    ReplayBackend replay(fixtures);
    for (std::size_t i = 0; i < texts.size(); ++i)
      EXPECT_EQ(solve_result_to_json(run_pipeline(replay, texts[i], config), true).dump(), recorded[i]);
  }
  ReplayBackend replay(fixtures);
  EXPECT_EQ(error_of([&] { replay.complete({"tiea", "s", "never recorded", 0.0}); }), Errc::backend_error);
  EXPECT_EQ(error_of([] { ReplayBackend(temp_path("absent.jsonl")); }), Errc::config_error);
}

TEST(Pipeline, ResultJsonRoundTripsTheTrail) {
  const auto p = payload_for(ProblemType::vertex_cover, 8, 3);
  OracleStubBackend stub(p);
  PipelineConfig config;
  config.kb = &default_knowledge_base();
  auto r = run_pipeline(stub, "text", config);
  auto j = nlohmann::json::parse(solve_result_to_json(r, true).dump());
  auto trail = trail_from_json(j["trail"]);
  ASSERT_EQ(trail.size(), r.trail.size());
  EXPECT_EQ(trail_usage(trail), trail_usage(r.trail));
  EXPECT_EQ(trail.back().reply, r.trail.back().reply);
  EXPECT_EQ(solution_from_json(j["solution"], SolutionKind::node_set).nodes, r.solution.nodes);
}

// ---- backends ----

TEST(RateLimiter, SpacesCallStarts) {
  RateLimiter limiter(1200, 0);  // one start per 50 ms
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < 5; ++i) auto permit = limiter.acquire();
  const auto elapsed = std::chrono::steady_clock::now() - t0;
  EXPECT_GE(elapsed, std::chrono::milliseconds(195));
}

TEST(RateLimiter, CapsCallsInFlight) {
  auto limiter = std::make_shared<RateLimiter>(0, 2);
  std::atomic<int> now{0}, peak{0};
  std::vector<std::thread> threads;
  for (int i = 0; i < 8; ++i)
    threads.emplace_back([&] {
      auto permit = limiter->acquire();
      const int v = ++now;
      int p = peak.load();
      while (v > p && !peak.compare_exchange_weak(p, v)) {
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(10));
      --now;
    });
  for (auto& t : threads) t.join();
  EXPECT_LE(peak.load(), 2);
  EXPECT_GE(peak.load(), 1);
}

TEST(BackendConfig, ParsesAndValidates) {
  auto c = parse_backend_config(R"({"backend": "http", "endpoint": "http://localhost:1/v1", "model": "m",
    "temperature": 0, "rate_limit": {"requests_per_minute": 60, "max_concurrent": 2},
    "price_per_million": {"input": 0.15, "output": "0.60"}})");
  EXPECT_EQ(c.kind, BackendKind::http);
  EXPECT_EQ(c.price_input_per_million, Rational(3, 20));
  EXPECT_EQ(c.price_output_per_million, Rational(3, 5));
  EXPECT_EQ(c.max_concurrent, 2u);
  EXPECT_EQ(parse_backend_config(R"({"backend": "stub"})").kind, BackendKind::stub);

  auto bad = [](const std::string& text) { return error_of([&] { parse_backend_config(text); }); };
  EXPECT_EQ(bad("[]"), Errc::config_error);
  EXPECT_EQ(bad(R"({"backend": "stub", "api_key": "sk-123"})"), Errc::config_error);
  EXPECT_EQ(bad(R"({"backend": "carrier-pigeon"})"), Errc::config_error);
  EXPECT_EQ(bad(R"({"backend": "http", "model": "m"})"), Errc::config_error);
  EXPECT_EQ(bad(R"({"backend": "replay", "fixtures": "/nonexistent/f.jsonl"})"), Errc::config_error);
  EXPECT_EQ(bad(R"({"backend": "stub", "price_per_million": {"input": -1}})"), Errc::config_error);
  EXPECT_EQ(bad(R"({"backend": "stub", "timeout_seconds": 0})"), Errc::config_error);
  EXPECT_EQ(bad(R"({"backend": "http", "endpoint": "http://x", "model": "m", "api_key_env": "GRAPHWRIGHT_UNSET_KEY_VAR"})"),
            Errc::config_error);
}

TEST(BackendConfig, PricesReadableWithoutTheKey) {
  const auto c = parse_backend_config(R"({"backend": "http", "endpoint": "http://x", "model": "m",
    "api_key_env": "GRAPHWRIGHT_UNSET_KEY_VAR", "price_per_million": {"input": "0.15", "output": "0.60"}})",
                                      {}, false);
  EXPECT_EQ(c.price_output_per_million, Rational(3, 5));
}

TEST(BackendConfig, RelativePathsFollowTheConfigFile) {
  const auto dir = temp_path("cfg");
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "f.jsonl") << "";
  std::ofstream(dir / "replay.json") << R"({"backend": "replay", "fixtures": "f.jsonl"})";
  auto c = load_backend_config(dir / "replay.json");
  EXPECT_EQ(c.fixtures, dir / "f.jsonl");
  EXPECT_NE(make_shared_backend(c), nullptr);
  EXPECT_EQ(make_shared_backend(parse_backend_config(R"({"backend": "stub"})")), nullptr);
  EXPECT_EQ(error_of([&] { load_backend_config(dir / "nope.json"); }), Errc::config_error);
}

namespace {

struct LocalServer {
  httplib::Server server;
  int port = 0;
  std::thread thread;

  LocalServer() {
    port = server.bind_to_any_port("127.0.0.1");
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }
  ~LocalServer() {
    server.stop();
    thread.join();
  }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port) + "/v1"; }
};

}  // namespace

TEST(HttpBackend, PostsChatCompletionAndReadsUsage) {
  LocalServer local;
  nlohmann::json seen;
  std::string auth;
  local.server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
    seen = nlohmann::json::parse(req.body);
    auth = req.get_header_value("Authorization");
    res.set_content(R"({"choices":[{"message":{"role":"assistant","content":"```narrative\nhi\n```"}}],
                        "usage":{"prompt_tokens":12,"completion_tokens":5}})",
                    "application/json");
  });
  HttpChatBackend backend({local.url() + "/", "tiny-model", "secret", 5});
  auto reply = backend.complete({"tiea", "sys", "usr", 0.0});
  EXPECT_EQ(reply.text, "```narrative\nhi\n```");
  EXPECT_EQ(reply.usage, (Usage{12, 5}));
  EXPECT_EQ(seen["model"], "tiny-model");
  EXPECT_EQ(seen["temperature"], 0.0);
  EXPECT_EQ(seen["messages"][0]["role"], "system");
  EXPECT_EQ(seen["messages"][1]["content"], "usr");
  EXPECT_EQ(auth, "Bearer secret");
  EXPECT_EQ(backend.backend_id(), "http:tiny-model");

  AgentContext ctx{backend, prompts()};
  Trail trail;
  EXPECT_EQ(run_tiea(ctx, "p", trail), "hi");
  EXPECT_EQ(trail_usage(trail), (Usage{12, 5}));
}

TEST(HttpBackend, ServerFailuresAreBackendErrors) {
  LocalServer local;
  int calls = 0;
  local.server.Post("/v1/chat/completions", [&](const httplib::Request&, httplib::Response& res) {
    ++calls;
    res.status = 500;
    res.set_content("overloaded", "text/plain");
  });
  local.server.Post("/v2/chat/completions", [&](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"choices": []})", "application/json");
  });
  HttpChatBackend backend({local.url(), "m", "", 5});
  AgentContext ctx{backend, prompts()};
  Trail trail;
  EXPECT_EQ(error_of([&] { run_tiea(ctx, "p", trail); }), Errc::backend_error);
  EXPECT_EQ(calls, 3);
  HttpChatBackend shapeless({"http://127.0.0.1:" + std::to_string(local.port) + "/v2", "m", "", 5});
  EXPECT_EQ(error_of([&] { shapeless.complete({"tiea", "s", "u", 0}); }), Errc::backend_error);
  EXPECT_EQ(error_of([] { HttpChatBackend({"localhost:8080", "m", "", 5}); }), Errc::config_error);
  EXPECT_EQ(error_of([] { HttpChatBackend({"ftp://x", "m", "", 5}); }), Errc::config_error);
}

TEST(HttpBackend, UnreachableServerIsBackendError) {
  int port;
  {
    httplib::Server probe;
    port = probe.bind_to_any_port("127.0.0.1");
  }
  HttpChatBackend backend({"http://127.0.0.1:" + std::to_string(port), "m", "", 1});
  EXPECT_EQ(error_of([&] { backend.complete({"tiea", "s", "u", 0}); }), Errc::backend_error);
}

// ---- single-prompt baseline ----

TEST(Direct, StubAnswersAreParsedWithTheSameContract) {
  auto p = payload_for(ProblemType::tsp, 6, 8);
  p.answer = tsp_exact_held_karp(p.graph);
  OracleStubBackend stub(p);
  AgentContext ctx{stub, prompts()};
  Trail trail;
  auto a = run_direct(ctx, "Problem text here", DirectMode::direct, trail);
  EXPECT_EQ(a.problem_type, ProblemType::tsp);
  EXPECT_EQ(a.solution.nodes, p.answer->nodes);
  EXPECT_EQ(a.solution.objective, p.answer->objective);
  EXPECT_EQ(a.solution.algorithm_id, "direct");
  EXPECT_EQ(trail[0].user.find(prompts().file("cot_directive.txt")), std::string::npos);

  Trail cot_trail;
  run_direct(ctx, "Problem text here", DirectMode::cot, cot_trail);
  EXPECT_EQ(cot_trail[0].user.rfind(prompts().file("cot_directive.txt"), 0), 0u);
  EXPECT_EQ(parse_direct_mode("cot"), DirectMode::cot);
  EXPECT_FALSE(parse_direct_mode("tot"));
}

TEST(Direct, MissingOrWrongAnswersAreParseFailures) {
  OraclePayload p;
  OracleStubBackend stub(p);
  AgentContext ctx{stub, prompts()};
  Trail trail;
  EXPECT_EQ(error_of([&] { run_direct(ctx, "p", DirectMode::direct, trail); }), Errc::parse_failure);
  EXPECT_EQ(trail.size(), 3u);

  ScriptedBackend b;
  b.script("direct", {fence("answer", R"({"problem_type": "coloring", "kind": "tour", "nodes": ["A"], "objective": "1"})")});
  AgentContext ctx2{b, prompts()};
  Trail t2;
  EXPECT_EQ(error_of([&] { run_direct(ctx2, "p", DirectMode::direct, t2); }), Errc::parse_failure);
}
