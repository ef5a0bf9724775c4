#pragma once

#include <optional>
#include <string>

#include "graphwright/core/error.hpp"
#include "graphwright/solvers/solution.hpp"
#include "json.hpp"

namespace graphwright {

/// {"kind", payload field, "objective" as "p/q" text, "algorithm_id", "exact"}.
/// The payload field is "nodes", "colors" or "flag" depending on kind.
inline nlohmann::ordered_json solution_to_json(const Solution& s) {
  nlohmann::ordered_json j;
  j["kind"] = std::string(to_string(s.kind));
  switch (s.kind) {
    case SolutionKind::tour:
    case SolutionKind::node_set:
    case SolutionKind::path: j["nodes"] = s.nodes; break;
    case SolutionKind::coloring: {
      nlohmann::ordered_json colors = nlohmann::ordered_json::object();
      for (const auto& [name, c] : s.colors) colors[name] = c;
      j["colors"] = colors;
      break;
    }
    case SolutionKind::boolean: j["flag"] = s.flag; break;
  }
  j["objective"] = s.objective.str();
  if (!s.algorithm_id.empty()) j["algorithm_id"] = s.algorithm_id;
  j["exact"] = s.exact;
  return j;
}

/// Numbers may be given as JSON numbers or as text ("12", "7/2", "3.5").
inline Rational rational_from_json(const nlohmann::json& v, const std::string& what) {
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_string()) {
    try {
      return Rational::parse(v.get<std::string>());
    } catch (const Error&) {
    }
  }
  if (v.is_number_float()) {
    try {
      return Rational::parse(v.dump());
    } catch (const Error&) {
    }
  }
  throw Error(Errc::schema_error, what + " must be a number, got " + v.dump());
}

/// Reads a solution. With `expected`, a missing "kind" defaults to it and a
/// different kind is a KindMismatch. A missing objective is recomputed by
/// the caller, so it defaults to 0 only when `require_objective` is false.
inline Solution solution_from_json(const nlohmann::json& j, std::optional<SolutionKind> expected = std::nullopt,
                                   bool require_objective = true) {
  if (!j.is_object()) throw Error(Errc::schema_error, "solution must be a JSON object");
  Solution s;
  if (auto it = j.find("kind"); it != j.end()) {
    if (!it->is_string()) throw Error(Errc::schema_error, "solution kind must be a string");
    auto kind = parse_solution_kind(it->get<std::string>());
    if (!kind) throw Error(Errc::schema_error, "unknown solution kind '" + it->get<std::string>() + "'");
    s.kind = *kind;
    if (expected && *expected != s.kind)
      throw Error(Errc::kind_mismatch, "expected a " + std::string(to_string(*expected)) + " answer, got " +
                                           std::string(to_string(s.kind)));
  } else if (expected) {
    s.kind = *expected;
  } else {
    throw Error(Errc::schema_error, "solution has no kind");
  }

  switch (s.kind) {
    case SolutionKind::tour:
    case SolutionKind::node_set:
    case SolutionKind::path: {
      auto it = j.find("nodes");
      if (it == j.end() || !it->is_array()) throw Error(Errc::schema_error, "solution needs a 'nodes' array");
      for (const auto& v : *it) {
        if (!v.is_string()) throw Error(Errc::schema_error, "node names must be strings");
        s.nodes.push_back(v.get<std::string>());
      }
      break;
    }
    case SolutionKind::coloring: {
      auto it = j.find("colors");
      if (it == j.end() || !it->is_object()) throw Error(Errc::schema_error, "solution needs a 'colors' object");
      for (const auto& [name, v] : it->items()) {
        if (!v.is_number_integer()) throw Error(Errc::schema_error, "colour of '" + name + "' must be an integer");
        s.colors[name] = v.get<int>();
      }
      break;
    }
    case SolutionKind::boolean: {
      auto it = j.find("flag");
      if (it == j.end() || !it->is_boolean()) throw Error(Errc::schema_error, "solution needs a boolean 'flag'");
      s.flag = it->get<bool>();
      break;
    }
  }
  if (auto it = j.find("objective"); it != j.end() && !it->is_null()) {
    s.objective = rational_from_json(*it, "objective");
  } else if (s.kind == SolutionKind::boolean) {
    s.objective = Rational(s.flag ? 1 : 0);
  } else if (require_objective) {
    throw Error(Errc::schema_error, "solution has no objective");
  }
  if (auto it = j.find("algorithm_id"); it != j.end() && it->is_string()) s.algorithm_id = it->get<std::string>();
  if (auto it = j.find("exact"); it != j.end() && it->is_boolean()) s.exact = it->get<bool>();
  return s;
}

}  // namespace graphwright
