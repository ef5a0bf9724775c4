#pragma once

#include <future>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "graphwright/agents/backend.hpp"
#include "graphwright/agents/prompts.hpp"
#include "graphwright/agents/structured.hpp"
#include "graphwright/core/error.hpp"
#include "graphwright/core/text.hpp"
#include "graphwright/graph/format.hpp"
#include "graphwright/graph/stats.hpp"
#include "graphwright/knowledge/knowledge_base.hpp"
#include "graphwright/solvers/registry.hpp"
#include "graphwright/solvers/solution_json.hpp"
#include "graphwright/solvers/verify.hpp"
#include "json.hpp"

namespace graphwright {

namespace agent {
inline constexpr std::string_view tiea = "tiea";
inline constexpr std::string_view piea = "piea";
inline constexpr std::string_view gsiea = "gsiea";
inline constexpr std::string_view sgia = "sgia";
inline constexpr std::string_view gta = "gta";
inline constexpr std::string_view asa = "asa";
inline constexpr std::string_view audit = "audit";
inline constexpr std::string_view direct = "direct";
}  // namespace agent

/// One backend call as seen by the pipeline. Failed attempts are kept so
/// token totals match what the backend actually billed.
struct TrailEntry {
  std::string agent;
  int attempt = 1;
  std::string system;
  std::string user;
  std::string reply;
  Usage usage;
  std::string error;  // empty when the reply was accepted
};

using Trail = std::vector<TrailEntry>;

inline Usage trail_usage(const Trail& trail) {
  Usage total;
  for (const auto& e : trail) total += e.usage;
  return total;
}

struct ProblemSpec {
  ProblemType problem_type = ProblemType::tsp;
  std::string objective;
  std::vector<std::string> constraints;
  std::string source;
  std::string target;

  Task task() const { return Task{problem_type, source, target}; }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["problem_type"] = std::string(to_string(problem_type));
    j["objective"] = objective;
    j["constraints"] = constraints;
    j["source"] = source.empty() ? nlohmann::ordered_json() : nlohmann::ordered_json(source);
    j["target"] = target.empty() ? nlohmann::ordered_json() : nlohmann::ordered_json(target);
    return j;
  }
};

struct ExtractionBundle {
  std::string narrative;
  ProblemSpec problem_spec;
  std::string raw_graph;
};

struct SelfCheckRound {
  int round = 0;
  std::vector<std::string> violations;     // from verify_solution
  bool model_ok = true;
  std::vector<std::string> model_issues;   // reported by the audit call, unconfirmed
  std::string resolved_with;               // algorithm used for a re-solve, if any
};

struct SolveResult {
  Solution solution;           // final answer after the self-check rounds
  Solution initial_solution;   // first interpreted answer
  AlgorithmChoice choice;
  Graph normalized_graph;
  ExtractionBundle bundle;
  Trail trail;
  int self_check_rounds = 0;
  std::string code_output;     // raw solver output as JSON text
  std::string review;
  std::vector<SelfCheckRound> checks;
};

/// What each agent call needs besides its inputs.
struct AgentContext {
  ChatBackend& backend;
  const PromptSet& prompts;
  int retries = 3;
  double temperature = 0.0;
};

struct PipelineConfig {
  const KnowledgeBase* kb = nullptr;
  const PromptSet* prompts = nullptr;
  int n_check = 2;
  int retries = 3;
  double temperature = 0.0;
  bool parallel_extraction = true;
};

namespace detail {

inline bool retryable(Errc c) { return c == Errc::parse_failure || c == Errc::schema_error || c == Errc::parse_error; }

/// Calls the backend until `parse` accepts a reply, at most `retries` times.
/// Parse errors are fed back in the next prompt; backend failures are
/// retried as they are. The last failure decides the error raised.
template <class Parse>
auto ask(const AgentContext& ctx, std::string_view agent_name, const std::map<std::string, std::string>& vars,
         Trail& trail, Parse&& parse, std::string_view user_prefix = {}) -> decltype(parse(std::string())) {
  const std::string system = render_template(ctx.prompts.system(agent_name), vars);
  const std::string user = std::string(user_prefix) + render_template(ctx.prompts.user(agent_name), vars);
  std::string prompt = user;
  Errc last_code = Errc::backend_error;
  std::string last_message = "no attempts made";
  const int attempts = std::max(1, ctx.retries);
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    TrailEntry entry{std::string(agent_name), attempt, system, prompt, {}, {}, {}};
    ChatReply reply;
    try {
      reply = ctx.backend.complete(ChatRequest{std::string(agent_name), system, prompt, ctx.temperature});
    } catch (const Error& e) {
      entry.error = e.what();
      trail.push_back(std::move(entry));
      last_code = Errc::backend_error;
      last_message = e.message();
      continue;
    } catch (const std::exception& e) {
      entry.error = e.what();
      trail.push_back(std::move(entry));
      last_code = Errc::backend_error;
      last_message = e.what();
      continue;
    }
    entry.reply = reply.text;
    entry.usage = reply.usage;
    if (text::trim(reply.text).empty()) {
      entry.error = "empty reply";
      trail.push_back(std::move(entry));
      last_code = Errc::empty_output;
      last_message = "backend returned an empty reply";
      continue;
    }
    try {
      auto value = parse(reply.text);
      trail.push_back(std::move(entry));
      return value;
    } catch (const Error& e) {
      entry.error = e.what();
      trail.push_back(std::move(entry));
      if (!retryable(e.code())) throw;
      last_code = Errc::parse_failure;
      last_message = e.message();
      prompt = user + "\n\nYour previous reply could not be used: " + e.message() +
               "\nReply again and end with the block exactly as described.";
    }
  }
  throw Error(last_code, std::string(agent_name) + " gave no usable reply in " + std::to_string(attempts) +
                             " attempts: " + last_message);
}

/// Lines that carry graph data rather than story: edge lines, adjacency
/// entries, matrix rows and format keywords.
inline bool looks_structural(std::string_view line) {
  const auto words = text::words(line);
  if (words.empty()) return false;
  if (words[0] == "nodes" || words[0] == "graph" || words[0] == "format") return true;
  if (line.find("->") != std::string_view::npos) return true;
  auto numeric = [](std::string_view w) {
    try {
      Rational::parse(w);
      return true;
    } catch (const Error&) {
      return false;
    }
  };
  if (words.size() >= 2 && std::all_of(words.begin(), words.end(), numeric)) return true;
  if (words.size() == 3 && numeric(words[2]) && !numeric(words[0]) && !numeric(words[1])) return true;
  const auto colon = line.find(':');
  if (colon != std::string_view::npos && line.find('(', colon) != std::string_view::npos &&
      line.find(')', colon) != std::string_view::npos)
    return true;
  return false;
}

inline std::string strip_structure(std::string_view body) {
  std::string out;
  for (auto line : text::split_lines(body)) {
    if (looks_structural(line)) continue;
    out.append(text::trim(line));
    out.push_back('\n');
  }
  return std::string(text::trim(out));
}

inline std::string optional_string(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return {};
  if (!it->is_string()) throw Error(Errc::parse_failure, std::string("problem_spec field '") + key + "' must be a string");
  return std::string(text::trim(it->get<std::string>()));
}

inline nlohmann::ordered_json kb_excerpt(const std::vector<AlgorithmRecord>& records) {
  auto list = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json card;
    card["algorithm_id"] = r.algorithm_id;
    card["complexity"] = r.complexity;
    card["exactness"] = std::string(to_string(r.exactness));
    nlohmann::ordered_json app;
    app["max_nodes"] = r.applicability.max_nodes ? nlohmann::ordered_json(*r.applicability.max_nodes)
                                                 : nlohmann::ordered_json();
    app["requires_complete"] = r.applicability.requires_complete;
    app["requires_weighted"] = r.applicability.requires_weighted;
    app["directedness"] = std::string(to_string(r.applicability.directedness));
    card["applicability"] = app;
    card["description"] = r.description;
    list.push_back(card);
  }
  return list;
}

}  // namespace detail

/// Story around the problem with graph data removed.
inline std::string run_tiea(const AgentContext& ctx, std::string_view problem, Trail& trail) {
  return detail::ask(ctx, agent::tiea, {{"problem", std::string(problem)}}, trail,
                     [](const std::string& reply) { return detail::strip_structure(require_block(reply, "narrative")); });
}

inline ProblemSpec run_piea(const AgentContext& ctx, std::string_view problem, Trail& trail) {
  return detail::ask(ctx, agent::piea, {{"problem", std::string(problem)}}, trail, [](const std::string& reply) {
    const auto j = require_json_block(reply, "problem_spec");
    auto it = j.find("problem_type");
    if (it == j.end() || !it->is_string()) throw Error(Errc::parse_failure, "problem_spec needs a problem_type string");
    const auto raw_type = it->get<std::string>();
    auto type = parse_problem_type(raw_type);
    if (!type) throw Error(Errc::unsupported_problem_type, "problem type '" + raw_type + "' is not supported");
    ProblemSpec spec;
    spec.problem_type = *type;
    spec.objective = detail::optional_string(j, "objective");
    if (auto c = j.find("constraints"); c != j.end() && !c->is_null()) {
      if (!c->is_array()) throw Error(Errc::parse_failure, "problem_spec constraints must be a list");
      for (const auto& v : *c) {
        if (!v.is_string()) throw Error(Errc::parse_failure, "problem_spec constraints must be strings");
        spec.constraints.push_back(v.get<std::string>());
      }
    }
    spec.source = detail::optional_string(j, "source");
    spec.target = detail::optional_string(j, "target");
    if (spec.problem_type == ProblemType::shortest_path && (spec.source.empty() || spec.target.empty()))
      throw Error(Errc::parse_failure, "shortest_path problem_spec needs source and target");
    return spec;
  });
}

/// Raw node roster and connections, as loosely formatted as the model
/// left them. Duplicates are kept for SGIA to settle.
inline std::string run_gsiea(const AgentContext& ctx, std::string_view problem, Trail& trail) {
  return detail::ask(ctx, agent::gsiea, {{"problem", std::string(problem)}}, trail, [](const std::string& reply) {
    auto body = require_block(reply, "raw_graph");
    bool any = false;
    for (auto line : text::split_lines(body)) {
      auto t = text::trim(line);
      if (!t.empty() && t.front() != '#') any = true;
    }
    if (!any) throw Error(Errc::empty_graph, "no graph structure found in the problem text");
    return body;
  });
}

/// Canonical graph G' from the raw listing. The model rewrites the listing
/// in the edge-list grammar; graph-core parsing merges repeated edges and
/// rejects conflicting weights.
inline Graph run_sgia(const AgentContext& ctx, std::string_view raw_graph, Trail& trail) {
  if (text::trim(raw_graph).empty()) throw Error(Errc::empty_graph, "raw graph is empty");
  std::string raw(raw_graph);
  if (raw.back() == '\n') raw.pop_back();
  return detail::ask(ctx, agent::sgia, {{"graph", raw}}, trail, [](const std::string& reply) {
    auto g = parse_graph_auto(require_block(reply, "graph"));
    if (g.node_count() == 0) throw Error(Errc::empty_graph, "normalised graph has no nodes");
    return g;
  });
}

/// Algorithm choice for G'. The model proposes; the deterministic selector
/// decides, and a disagreement is recorded in the rationale.
inline AlgorithmChoice run_gta(const AgentContext& ctx, std::string_view narrative, const ProblemSpec& spec,
                               const Graph& graph, const KnowledgeBase& kb, Trail& trail) {
  const auto records = lookup_algorithms(kb, spec.problem_type);
  std::string g_text = serialize_graph(graph, GraphFormat::edge_list);
  g_text.pop_back();
  const std::map<std::string, std::string> vars{{"narrative", std::string(narrative)},
                                                {"problem_spec", spec.to_json().dump()},
                                                {"graph", g_text},
                                                {"kb_excerpt", detail::kb_excerpt(records).dump(2)}};
  const std::string proposal = detail::ask(ctx, agent::gta, vars, trail, [](const std::string& reply) {
    const auto j = require_json_block(reply, "algorithm");
    auto it = j.find("algorithm_id");
    if (it == j.end() || !it->is_string()) throw Error(Errc::parse_failure, "algorithm block needs an algorithm_id string");
    return it->get<std::string>();
  });
  auto choice = select_algorithm(records, graph_stats(graph));
  if (proposal == choice.record.algorithm_id)
    choice.rationale.push_back("model proposal " + proposal + " agrees with the selector");
  else
    choice.rationale.push_back("model proposed " + proposal + "; overridden by the selector with " +
                               choice.record.algorithm_id);
  return choice;
}

namespace detail {

inline Solution run_choice(const AlgorithmChoice& choice, const Graph& g, const Task& task) {
  try {
    return run_solver(choice.record.algorithm_id, g, task, choice.bound_parameters);
  } catch (const Error& e) {
    std::string why;
    for (const auto& line : choice.rationale) why += (why.empty() ? "" : "; ") + line;
    throw Error(Errc::solver_error, choice.record.algorithm_id + " failed: " + e.what() + " (selection: " + why + ")");
  }
}

}  // namespace detail

/// Runs the chosen solver (S_code), has the model present it (S^0), then
/// performs `n_check` self-check rounds. A round re-verifies the answer
/// programmatically and asks the model to audit it. Only programmatic
/// violations trigger a re-solve, using the next applicable algorithm;
/// model remarks are recorded unconfirmed.
inline SolveResult run_asa(const AgentContext& ctx, const AlgorithmChoice& choice, const Graph& graph,
                           const ProblemSpec& spec, int n_check, const std::vector<AlgorithmRecord>& records,
                           Trail& trail) {
  if (n_check < 0) throw Error(Errc::invalid_input, "n_check must be non-negative");
  SolveResult result;
  result.choice = choice;
  const Task task = spec.task();
  Solution code = detail::run_choice(choice, graph, task);
  result.code_output = solution_to_json(code).dump();

  const std::string spec_text = spec.to_json().dump();
  result.review = detail::ask(ctx, agent::asa, {{"problem_spec", spec_text}, {"solution", result.code_output}}, trail,
                              [](const std::string& reply) {
                                const auto j = require_json_block(reply, "review");
                                auto it = j.find("summary");
                                if (it == j.end() || !it->is_string())
                                  throw Error(Errc::parse_failure, "review block needs a summary string");
                                return it->get<std::string>();
                              });
  result.initial_solution = code;
  Solution current = code;

  std::string g_text = serialize_graph(graph, GraphFormat::edge_list);
  g_text.pop_back();
  bool resolved = false;
  SelectionConstraints tried;
  tried.excluded.insert(choice.record.algorithm_id);
  for (int round = 1; round <= n_check; ++round) {
    SelfCheckRound check;
    check.round = round;
    const auto report = verify_solution(task, graph, current);
    check.violations = report.violations;
    const auto solution_text = solution_to_json(current).dump();
    auto [ok, issues] = detail::ask(
        ctx, agent::audit, {{"problem_spec", spec_text}, {"graph", g_text}, {"solution", solution_text}}, trail,
        [](const std::string& reply) {
          const auto j = require_json_block(reply, "audit");
          auto ok_it = j.find("ok");
          if (ok_it == j.end() || !ok_it->is_boolean()) throw Error(Errc::parse_failure, "audit block needs ok: true/false");
          std::vector<std::string> found;
          if (auto it = j.find("issues"); it != j.end() && it->is_array())
            for (const auto& v : *it) found.push_back(v.is_string() ? v.get<std::string>() : v.dump());
          return std::pair{ok_it->get<bool>(), found};
        });
    check.model_ok = ok;
    check.model_issues = std::move(issues);
    if (!report.valid) {
      if (resolved)
        throw Error(Errc::verification_failed, "violations remain after a re-solve: " + report.violations.front());
      AlgorithmChoice next;
      try {
        next = select_algorithm(records, graph_stats(graph), tried);
      } catch (const Error& e) {
        throw Error(Errc::verification_failed, "answer fails verification (" + report.violations.front() +
                                                   ") and no other algorithm applies: " + e.message());
      }
      Solution again = detail::run_choice(next, graph, task);
      const auto second = verify_solution(task, graph, again);
      if (!second.valid)
        throw Error(Errc::verification_failed, "violations remain after re-solving with " + next.record.algorithm_id +
                                                   ": " + second.violations.front());
      check.resolved_with = next.record.algorithm_id;
      tried.excluded.insert(next.record.algorithm_id);
      result.choice = std::move(next);
      current = std::move(again);
      resolved = true;
    }
    result.checks.push_back(std::move(check));
  }
  const auto final_report = verify_solution(task, graph, current);
  if (!final_report.valid)
    throw Error(Errc::verification_failed, "final answer fails verification: " + final_report.violations.front());
  result.solution = std::move(current);
  result.self_check_rounds = n_check;
  result.normalized_graph = graph;
  return result;
}

/// The full pipeline: TIEA, PIEA and GSIEA on the problem text (in
/// parallel), then SGIA and GTA, then ASA. Errors carry the failing stage.
inline SolveResult run_pipeline(ChatBackend& backend, std::string_view problem, const PipelineConfig& config) {
  if (!config.kb) throw Error(Errc::config_error, "pipeline needs a knowledge base");
  const PromptSet fallback = config.prompts ? PromptSet() : PromptSet::defaults();
  const PromptSet& prompts = config.prompts ? *config.prompts : fallback;
  const AgentContext ctx{backend, prompts, config.retries, config.temperature};
  if (text::trim(problem).empty()) throw StageError("input", Error(Errc::invalid_input, "problem text is empty"));

  Trail tiea_trail, piea_trail, gsiea_trail;
  std::string narrative, raw_graph;
  ProblemSpec spec;
  auto guarded = [](auto&& fn) -> std::exception_ptr {
    try {
      fn();
    } catch (...) {
      return std::current_exception();
    }
    return nullptr;
  };
  auto do_tiea = [&] { narrative = run_tiea(ctx, problem, tiea_trail); };
  auto do_piea = [&] { spec = run_piea(ctx, problem, piea_trail); };
  auto do_gsiea = [&] { raw_graph = run_gsiea(ctx, problem, gsiea_trail); };
  std::exception_ptr errors[3];
  if (config.parallel_extraction) {
    auto f1 = std::async(std::launch::async, [&] { return guarded(do_tiea); });
    auto f2 = std::async(std::launch::async, [&] { return guarded(do_piea); });
    errors[2] = guarded(do_gsiea);
    errors[0] = f1.get();
    errors[1] = f2.get();
  } else {
    errors[0] = guarded(do_tiea);
    errors[1] = guarded(do_piea);
    errors[2] = guarded(do_gsiea);
  }
  SolveResult result;
  for (auto* part : {&tiea_trail, &piea_trail, &gsiea_trail})
    result.trail.insert(result.trail.end(), part->begin(), part->end());
  const char* stage_names[] = {"TIEA", "PIEA", "GSIEA"};
  for (int i = 0; i < 3; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const Error& e) {
      throw StageError(stage_names[i], e);
    } catch (const std::exception& e) {
      throw StageError(stage_names[i], Error(Errc::backend_error, e.what()));
    }
  }

  auto stage = [&](const char* name, auto&& fn) {
    try {
      return fn();
    } catch (const StageError&) {
      throw;
    } catch (const Error& e) {
      throw StageError(name, e);
    }
  };
  Graph graph = stage("SGIA", [&] { return run_sgia(ctx, raw_graph, result.trail); });
  AlgorithmChoice choice = stage("GTA", [&] { return run_gta(ctx, narrative, spec, graph, *config.kb, result.trail); });
  const auto records = lookup_algorithms(*config.kb, spec.problem_type);
  Trail trail = std::move(result.trail);
  result = stage("ASA", [&] { return run_asa(ctx, choice, graph, spec, config.n_check, records, trail); });
  result.trail = std::move(trail);
  result.bundle = ExtractionBundle{std::move(narrative), std::move(spec), std::move(raw_graph)};
  return result;
}

}  // namespace graphwright
