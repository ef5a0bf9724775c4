#pragma once

#include <string>
#include <vector>

#include "graphwright/dataset/files.hpp"
#include "graphwright/dataset/generate.hpp"

namespace graphwright {

/// Converts external benchmark records into instances. Each JSONL line is
/// {"problem_type", "graph" (text in any graph format), optional "id",
/// "source", "target", "text", "scenario", "noise"}. Missing text is
/// rendered from the graph with a seed drawn from `seed` and the id;
/// ground truth is always recomputed.
inline std::vector<ProblemInstance> import_instances(std::string_view jsonl, const std::string& origin = "import",
                                                     std::uint64_t seed = 0) {
  std::vector<ProblemInstance> out;
  std::size_t line_no = 0;
  for (auto line : text::split_lines(jsonl)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    const std::string where = origin + " line " + std::to_string(line_no);
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw Error(Errc::schema_error, where + " is not a JSON object");
    try {
      ProblemInstance inst;
      inst.id = detail::optional_string_field(j, "id", where);
      if (inst.id.empty()) inst.id = "import-" + std::to_string(out.size());
      const auto type = detail::string_field(j, "problem_type", where);
      auto pt = parse_problem_type(type);
      if (!pt) throw Error(Errc::unsupported_problem_type, "problem type '" + type + "' is not supported");
      inst.problem_type = *pt;
      const auto scenario = detail::optional_string_field(j, "scenario", where);
      auto sc = parse_scenario(scenario);
      if (!scenario.empty() && !sc) throw Error(Errc::schema_error, "unknown scenario '" + scenario + "'");
      inst.scenario = sc ? *sc : Scenario::generic;
      const auto noise = detail::optional_string_field(j, "noise", where);
      auto nl = parse_noise_level(noise);
      if (!noise.empty() && !nl) throw Error(Errc::schema_error, "unknown noise level '" + noise + "'");
      inst.noise = nl ? *nl : NoiseLevel::none;
      inst.graph = parse_graph_auto(detail::string_field(j, "graph", where));
      inst.source = detail::optional_string_field(j, "source", where);
      inst.target = detail::optional_string_field(j, "target", where);
      if (inst.problem_type == ProblemType::shortest_path && (inst.source.empty() || inst.target.empty()))
        throw Error(Errc::schema_error, "shortest_path records need source and target");
      inst.seed = splitmix64(seed ^ fnv1a64(inst.id));
      Rng rng(inst.seed);
      auto rendered = render_text(inst.problem_type, inst.scenario, inst.graph,
                                  gen_descriptions(inst.graph.names(), inst.scenario, rng), inst.noise, rng, inst.source,
                                  inst.target);
      inst.text = detail::optional_string_field(j, "text", where);
      if (inst.text.empty()) inst.text = std::move(rendered.text);
      inst.narrative = std::move(rendered.narrative);
      inst.truth = ground_truth(inst.problem_type, inst.graph, inst.source, inst.target);
      out.push_back(std::move(inst));
    } catch (const Error& e) {
      throw Error(e.code(), where + ": " + e.message());
    }
  }
  return out;
}

}  // namespace graphwright
