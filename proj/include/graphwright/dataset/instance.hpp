#pragma once

#include <cstdint>
#include <string>

#include "graphwright/core/error.hpp"
#include "graphwright/dataset/scenario.hpp"
#include "graphwright/graph/format.hpp"
#include "graphwright/solvers/solution_json.hpp"
#include "json.hpp"

namespace graphwright {

enum class NoiseLevel { none, standard, heavy };

constexpr std::string_view to_string(NoiseLevel n) noexcept {
  switch (n) {
    case NoiseLevel::none: return "none";
    case NoiseLevel::standard: return "standard";
    case NoiseLevel::heavy: return "heavy";
  }
  return "none";
}

inline std::optional<NoiseLevel> parse_noise_level(std::string_view s) {
  for (auto n : {NoiseLevel::none, NoiseLevel::standard, NoiseLevel::heavy})
    if (to_string(n) == s) return n;
  return std::nullopt;
}

struct GroundTruth {
  Solution optimal;
  Solution approximate;
};

/// One benchmark problem: the public text plus the hidden payload it was
/// rendered from.
struct ProblemInstance {
  std::string id;
  ProblemType problem_type = ProblemType::tsp;
  Scenario scenario = Scenario::generic;
  NoiseLevel noise = NoiseLevel::standard;
  std::uint64_t seed = 0;
  std::string text;
  Graph graph;
  std::string narrative;
  std::string source;
  std::string target;
  GroundTruth truth;

  std::size_t node_count() const { return graph.node_count(); }
  Task task() const { return Task{problem_type, source, target}; }
};

namespace detail {

inline const nlohmann::json& field(const nlohmann::json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) throw Error(Errc::schema_error, where + " is missing '" + key + "'");
  return *it;
}

inline std::string string_field(const nlohmann::json& j, const char* key, const std::string& where) {
  const auto& v = field(j, key, where);
  if (!v.is_string()) throw Error(Errc::schema_error, where + " field '" + key + "' must be a string");
  return v.get<std::string>();
}

inline std::string optional_string_field(const nlohmann::json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return {};
  if (!it->is_string()) throw Error(Errc::schema_error, where + " field '" + key + "' must be a string");
  return it->get<std::string>();
}

}  // namespace detail

/// Instance record: {id, problem_type, scenario, noise, n, seed, text,
/// hidden_graph (edge-list text), hidden_narrative, source, target,
/// ground_truth {optimal, approximate}}. The seed is decimal text so that
/// readers without 64-bit integers keep it exact.
inline nlohmann::ordered_json instance_to_json(const ProblemInstance& inst) {
  nlohmann::ordered_json j;
  j["id"] = inst.id;
  j["problem_type"] = std::string(to_string(inst.problem_type));
  j["scenario"] = std::string(to_string(inst.scenario));
  j["noise"] = std::string(to_string(inst.noise));
  j["n"] = inst.node_count();
  j["seed"] = std::to_string(inst.seed);
  j["text"] = inst.text;
  j["hidden_graph"] = serialize_graph(inst.graph, GraphFormat::edge_list);
  j["hidden_narrative"] = inst.narrative;
  j["source"] = inst.source.empty() ? nlohmann::ordered_json() : nlohmann::ordered_json(inst.source);
  j["target"] = inst.target.empty() ? nlohmann::ordered_json() : nlohmann::ordered_json(inst.target);
  j["ground_truth"] = {{"optimal", solution_to_json(inst.truth.optimal)},
                       {"approximate", solution_to_json(inst.truth.approximate)}};
  return j;
}

inline ProblemInstance instance_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(Errc::schema_error, "instance record must be a JSON object");
  ProblemInstance inst;
  inst.id = detail::string_field(j, "id", "instance");
  const std::string where = "instance " + inst.id;
  const auto type = detail::string_field(j, "problem_type", where);
  auto pt = parse_problem_type(type);
  if (!pt) throw Error(Errc::schema_error, where + " has unknown problem_type '" + type + "'");
  inst.problem_type = *pt;
  auto sc = parse_scenario(detail::optional_string_field(j, "scenario", where));
  inst.scenario = sc ? *sc : default_scenario(inst.problem_type);
  auto noise = parse_noise_level(detail::optional_string_field(j, "noise", where));
  inst.noise = noise ? *noise : NoiseLevel::standard;
  if (auto s = detail::optional_string_field(j, "seed", where); !s.empty()) {
    try {
      std::size_t pos = 0;
      inst.seed = std::stoull(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      throw Error(Errc::schema_error, where + " has a malformed seed");
    }
  }
  inst.text = detail::string_field(j, "text", where);
  try {
    inst.graph = parse_graph(detail::string_field(j, "hidden_graph", where), GraphFormat::edge_list);
  } catch (const Error& e) {
    if (e.code() == Errc::schema_error) throw;
    throw Error(Errc::schema_error, where + " hidden_graph: " + e.message());
  }
  inst.narrative = detail::optional_string_field(j, "hidden_narrative", where);
  inst.source = detail::optional_string_field(j, "source", where);
  inst.target = detail::optional_string_field(j, "target", where);
  if (auto n = j.find("n"); n != j.end() && (!n->is_number_unsigned() || n->get<std::size_t>() != inst.node_count()))
    throw Error(Errc::schema_error, where + " field 'n' does not match its hidden graph");
  const auto& truth = detail::field(j, "ground_truth", where);
  const auto kind = expected_kind(inst.problem_type);
  try {
    inst.truth.optimal = solution_from_json(detail::field(truth, "optimal", where + " ground_truth"), kind);
    inst.truth.approximate = solution_from_json(detail::field(truth, "approximate", where + " ground_truth"), kind);
  } catch (const Error& e) {
    if (e.code() == Errc::schema_error) throw;
    throw Error(Errc::schema_error, where + " ground_truth: " + e.message());
  }
  return inst;
}

}  // namespace graphwright
