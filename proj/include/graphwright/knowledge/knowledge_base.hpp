#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "graphwright/core/error.hpp"
#include "graphwright/graph/stats.hpp"
#include "graphwright/solvers/solution.hpp"
#include "json.hpp"

namespace graphwright {

enum class Exactness { exact, approximation, heuristic };
enum class Directedness { any, undirected, directed };

inline std::string_view to_string(Exactness e) noexcept {
  switch (e) {
    case Exactness::exact: return "exact";
    case Exactness::approximation: return "approximation";
    case Exactness::heuristic: return "heuristic";
  }
  return "exact";
}

inline std::string_view to_string(Directedness d) noexcept {
  switch (d) {
    case Directedness::any: return "any";
    case Directedness::undirected: return "undirected";
    case Directedness::directed: return "directed";
  }
  return "any";
}

struct Applicability {
  std::optional<std::size_t> max_nodes;  // empty: no size limit
  bool requires_complete = false;
  bool requires_weighted = false;
  Directedness directedness = Directedness::any;

  friend bool operator==(const Applicability&, const Applicability&) = default;
};

struct AlgorithmRecord {
  std::string algorithm_id;
  ProblemType problem_type = ProblemType::tsp;
  std::string complexity;
  Exactness exactness = Exactness::exact;
  Applicability applicability;
  std::map<std::string, std::string> parameters;  // name -> default
  std::string description;

  bool exact() const noexcept { return exactness == Exactness::exact; }
  friend bool operator==(const AlgorithmRecord&, const AlgorithmRecord&) = default;
};

struct AlgorithmChoice {
  AlgorithmRecord record;
  std::map<std::string, std::string> bound_parameters;
  std::vector<std::string> rationale;
};

/// Caller-side restrictions on selection.
struct SelectionConstraints {
  /// Algorithms ruled out already, e.g. after a failed verification.
  std::set<std::string> excluded;
  /// Overrides for record parameters; unknown names are rejected.
  std::map<std::string, std::string> parameters;
};

class KnowledgeBase {
 public:
  KnowledgeBase() = default;
  explicit KnowledgeBase(std::vector<AlgorithmRecord> records) : records_(std::move(records)) {}

  const std::vector<AlgorithmRecord>& records() const noexcept { return records_; }

  const AlgorithmRecord* find(std::string_view id) const {
    for (const auto& r : records_)
      if (r.algorithm_id == id) return &r;
    return nullptr;
  }

 private:
  std::vector<AlgorithmRecord> records_;
};

namespace detail {

inline const nlohmann::json& kb_field(const nlohmann::json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw Error(Errc::schema_error, where + ": missing field '" + key + "'");
  return *it;
}

inline std::string kb_string(const nlohmann::json& obj, const char* key, const std::string& where) {
  const auto& v = kb_field(obj, key, where);
  if (!v.is_string()) throw Error(Errc::schema_error, where + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

inline bool kb_bool(const nlohmann::json& obj, const char* key, const std::string& where) {
  const auto& v = kb_field(obj, key, where);
  if (!v.is_boolean()) throw Error(Errc::schema_error, where + ": field '" + key + "' must be true or false");
  return v.get<bool>();
}

inline AlgorithmRecord parse_record(const nlohmann::json& j, std::size_t index) {
  std::string where = "algorithms[" + std::to_string(index) + "]";
  if (!j.is_object()) throw Error(Errc::schema_error, where + " must be an object");
  AlgorithmRecord r;
  r.algorithm_id = kb_string(j, "algorithm_id", where);
  if (r.algorithm_id.empty()) throw Error(Errc::schema_error, where + ": empty algorithm_id");
  where += " (" + r.algorithm_id + ")";

  const auto type = kb_string(j, "problem_type", where);
  auto parsed = parse_problem_type(type);
  if (!parsed) throw Error(Errc::schema_error, where + ": unsupported problem_type '" + type + "'");
  r.problem_type = *parsed;

  r.complexity = kb_string(j, "complexity", where);
  const auto exactness = kb_string(j, "exactness", where);
  if (exactness == "exact") r.exactness = Exactness::exact;
  else if (exactness == "approximation") r.exactness = Exactness::approximation;
  else if (exactness == "heuristic") r.exactness = Exactness::heuristic;
  else throw Error(Errc::schema_error, where + ": exactness must be exact, approximation or heuristic");

  const auto& app = kb_field(j, "applicability", where);
  if (!app.is_object()) throw Error(Errc::schema_error, where + ": applicability must be an object");
  const auto& max_nodes = kb_field(app, "max_nodes", where);
  if (!max_nodes.is_null()) {
    if (!max_nodes.is_number_integer() || max_nodes.get<long long>() <= 0)
      throw Error(Errc::schema_error, where + ": max_nodes must be a positive integer or null");
    r.applicability.max_nodes = max_nodes.get<std::size_t>();
  }
  r.applicability.requires_complete = kb_bool(app, "requires_complete", where);
  r.applicability.requires_weighted = kb_bool(app, "requires_weighted", where);
  const auto dir = kb_string(app, "directedness", where);
  if (dir == "any") r.applicability.directedness = Directedness::any;
  else if (dir == "undirected") r.applicability.directedness = Directedness::undirected;
  else if (dir == "directed") r.applicability.directedness = Directedness::directed;
  else throw Error(Errc::schema_error, where + ": directedness must be any, undirected or directed");

  const auto& params = kb_field(j, "parameters", where);
  if (!params.is_object()) throw Error(Errc::schema_error, where + ": parameters must be an object");
  for (const auto& [name, value] : params.items()) {
    if (value.is_string()) r.parameters[name] = value.get<std::string>();
    else if (value.is_number_integer()) r.parameters[name] = std::to_string(value.get<long long>());
    else throw Error(Errc::schema_error, where + ": parameter '" + name + "' default must be a string or integer");
  }
  r.description = kb_string(j, "description", where);
  return r;
}

inline int exactness_rank(Exactness e) { return static_cast<int>(e); }

}  // namespace detail

/// Parses a knowledge file: {"version": 1, "algorithms": [record, ...]}.
/// Every supported problem type needs at least one exact record.
inline KnowledgeBase load_knowledge_base(std::string_view source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(source);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::schema_error, std::string("knowledge file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(Errc::schema_error, "knowledge file must hold a JSON object");
  const auto& list = detail::kb_field(doc, "algorithms", "knowledge file");
  if (!list.is_array()) throw Error(Errc::schema_error, "knowledge file: 'algorithms' must be an array");

  std::vector<AlgorithmRecord> records;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < list.size(); ++i) {
    auto r = detail::parse_record(list[i], i);
    if (!ids.insert(r.algorithm_id).second)
      throw Error(Errc::duplicate_id, "algorithm id '" + r.algorithm_id + "' appears more than once");
    records.push_back(std::move(r));
  }
  for (auto type : all_problem_types) {
    bool has_exact = std::any_of(records.begin(), records.end(),
                                 [&](const AlgorithmRecord& r) { return r.problem_type == type && r.exact(); });
    if (!has_exact)
      throw Error(Errc::schema_error, "knowledge file has no exact algorithm for " + std::string(to_string(type)));
  }
  return KnowledgeBase(std::move(records));
}

inline std::vector<AlgorithmRecord> lookup_algorithms(const KnowledgeBase& kb, ProblemType type) {
  std::vector<AlgorithmRecord> out;
  for (const auto& r : kb.records())
    if (r.problem_type == type) out.push_back(r);
  std::stable_sort(out.begin(), out.end(), [](const AlgorithmRecord& a, const AlgorithmRecord& b) {
    return detail::exactness_rank(a.exactness) < detail::exactness_rank(b.exactness);
  });
  return out;
}

/// Problem type given as text, as a model or a user would state it.
inline std::vector<AlgorithmRecord> lookup_algorithms(const KnowledgeBase& kb, std::string_view type) {
  auto parsed = parse_problem_type(type);
  if (!parsed) throw Error(Errc::unknown_problem_type, "unknown problem type '" + std::string(type) + "'");
  return lookup_algorithms(kb, *parsed);
}

/// Empty when the record admits the graph, otherwise the reason it does not.
inline std::optional<std::string> rejection_reason(const AlgorithmRecord& r, const GraphStats& s) {
  const auto& a = r.applicability;
  if (a.max_nodes && s.node_count > *a.max_nodes)
    return std::string(r.exact() ? "exact limit exceeded" : "size limit exceeded") + " (" +
           std::to_string(s.node_count) + " > " + std::to_string(*a.max_nodes) + " nodes)";
  if (a.requires_complete && !s.is_complete) return std::string("requires a complete graph");
  if (a.requires_weighted && !s.weighted) return std::string("requires a weighted graph");
  if (a.directedness == Directedness::undirected && s.directed) return std::string("requires an undirected graph");
  if (a.directedness == Directedness::directed && !s.directed) return std::string("requires a directed graph");
  return std::nullopt;
}

inline bool admits(const AlgorithmRecord& r, const GraphStats& s) { return !rejection_reason(r, s); }

/// First admissible exact record, else the first admissible non-exact one,
/// in the order given. The size limit is bound as the `max_nodes`
/// parameter so the solver enforces the same cutoff.
inline AlgorithmChoice select_algorithm(const std::vector<AlgorithmRecord>& records, const GraphStats& stats,
                                        const SelectionConstraints& constraints = {}) {
  if (records.empty()) throw Error(Errc::no_applicable_algorithm, "no algorithms to choose from");
  std::vector<std::string> rationale;
  const AlgorithmRecord* chosen = nullptr;
  for (bool want_exact : {true, false}) {
    for (const auto& r : records) {
      if (r.exact() != want_exact) continue;
      if (constraints.excluded.contains(r.algorithm_id)) {
        rationale.push_back(r.algorithm_id + " rejected: excluded by caller");
        continue;
      }
      if (auto why = rejection_reason(r, stats)) {
        rationale.push_back(r.algorithm_id + " rejected: " + *why);
        continue;
      }
      chosen = &r;
      break;
    }
    if (chosen) break;
  }
  if (!chosen) {
    std::string msg = "no algorithm admits the graph";
    for (const auto& line : rationale) msg += "; " + line;
    throw Error(Errc::no_applicable_algorithm, msg);
  }

  AlgorithmChoice choice{*chosen, chosen->parameters, std::move(rationale)};
  for (const auto& [name, value] : constraints.parameters) {
    if (!chosen->parameters.contains(name))
      throw Error(Errc::invalid_input, chosen->algorithm_id + " has no parameter '" + name + "'");
    choice.bound_parameters[name] = value;
  }
  if (chosen->applicability.max_nodes) choice.bound_parameters["max_nodes"] = std::to_string(*chosen->applicability.max_nodes);
  choice.rationale.push_back("selected " + chosen->algorithm_id + " (" + std::string(to_string(chosen->exactness)) +
                             ", " + chosen->complexity + ") for " + std::to_string(stats.node_count) + " nodes");
  return choice;
}

}  // namespace graphwright
