#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "graphwright/agents/pipeline.hpp"

namespace graphwright {

enum class DirectMode { direct, cot };

inline std::optional<DirectMode> parse_direct_mode(std::string_view s) {
  if (s == "direct") return DirectMode::direct;
  if (s == "cot") return DirectMode::cot;
  return std::nullopt;
}

struct DirectAnswer {
  ProblemType problem_type = ProblemType::tsp;
  Solution solution;
};

/// Single-prompt baseline: the whole problem in, one ```answer block out.
/// Chain-of-thought mode puts the reasoning directive before the problem.
inline DirectAnswer run_direct(const AgentContext& ctx, std::string_view problem, DirectMode mode, Trail& trail) {
  const std::string prefix = mode == DirectMode::cot ? ctx.prompts.file("cot_directive.txt") : std::string();
  return detail::ask(
      ctx, agent::direct, {{"problem", std::string(problem)}}, trail,
      [](const std::string& reply) {
        const auto j = require_json_block(reply, "answer");
        auto it = j.find("problem_type");
        if (it == j.end() || !it->is_string()) throw Error(Errc::parse_failure, "answer needs a problem_type string");
        auto type = parse_problem_type(it->get<std::string>());
        if (!type)
          throw Error(Errc::unsupported_problem_type, "problem type '" + it->get<std::string>() + "' is not supported");
        DirectAnswer a;
        a.problem_type = *type;
        try {
          a.solution = solution_from_json(j, expected_kind(*type));
        } catch (const Error& e) {
          throw Error(Errc::parse_failure, "answer block: " + e.message());
        }
        a.solution.algorithm_id = "direct";
        return a;
      },
      prefix);
}

}  // namespace graphwright
