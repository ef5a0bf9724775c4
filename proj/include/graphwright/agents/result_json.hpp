#pragma once

#include "graphwright/agents/pipeline.hpp"
#include "graphwright/graph/format.hpp"
#include "graphwright/solvers/solution_json.hpp"
#include "json.hpp"

namespace graphwright {

inline nlohmann::ordered_json trail_to_json(const Trail& trail, bool with_transcripts = false) {
  auto list = nlohmann::ordered_json::array();
  for (const auto& e : trail) {
    nlohmann::ordered_json j;
    j["agent"] = e.agent;
    j["attempt"] = e.attempt;
    j["input_tokens"] = e.usage.input_tokens;
    j["output_tokens"] = e.usage.output_tokens;
    if (!e.error.empty()) j["error"] = e.error;
    if (with_transcripts) {
      j["system"] = e.system;
      j["user"] = e.user;
      j["reply"] = e.reply;
    }
    list.push_back(j);
  }
  return list;
}

inline Trail trail_from_json(const nlohmann::json& list) {
  if (!list.is_array()) throw Error(Errc::schema_error, "trail must be a list");
  Trail trail;
  for (const auto& j : list) {
    if (!j.is_object() || !j.contains("agent") || !j["agent"].is_string())
      throw Error(Errc::schema_error, "trail entry needs an agent");
    TrailEntry e;
    e.agent = j["agent"].get<std::string>();
    e.attempt = j.value("attempt", 1);
    e.usage.input_tokens = j.value("input_tokens", std::int64_t{0});
    e.usage.output_tokens = j.value("output_tokens", std::int64_t{0});
    if (e.usage.input_tokens < 0 || e.usage.output_tokens < 0)
      throw Error(Errc::schema_error, "token counts must be non-negative");
    e.error = j.value("error", std::string());
    e.system = j.value("system", std::string());
    e.user = j.value("user", std::string());
    e.reply = j.value("reply", std::string());
    trail.push_back(std::move(e));
  }
  return trail;
}

inline nlohmann::ordered_json solve_result_to_json(const SolveResult& r, bool with_transcripts = false) {
  nlohmann::ordered_json j;
  j["solution"] = solution_to_json(r.solution);
  j["initial_solution"] = solution_to_json(r.initial_solution);
  j["algorithm_id"] = r.choice.record.algorithm_id;
  j["bound_parameters"] = r.choice.bound_parameters;
  j["rationale"] = r.choice.rationale;
  j["narrative"] = r.bundle.narrative;
  j["problem_spec"] = r.bundle.problem_spec.to_json();
  j["normalized_graph"] = serialize_graph(r.normalized_graph, GraphFormat::edge_list);
  j["code_output"] = r.code_output;
  j["review"] = r.review;
  j["self_check_rounds"] = r.self_check_rounds;
  auto checks = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json cj;
    cj["round"] = c.round;
    cj["violations"] = c.violations;
    cj["model_ok"] = c.model_ok;
    cj["model_issues"] = c.model_issues;
    if (!c.resolved_with.empty()) cj["resolved_with"] = c.resolved_with;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  j["trail"] = trail_to_json(r.trail, with_transcripts);
  return j;
}

}  // namespace graphwright
