#pragma once

#include <optional>
#include <string>

#include "graphwright/agents/backend.hpp"
#include "graphwright/agents/pipeline.hpp"
#include "graphwright/agents/structured.hpp"
#include "graphwright/core/rng.hpp"
#include "graphwright/graph/format.hpp"
#include "graphwright/solvers/solution_json.hpp"

namespace graphwright {

/// What the oracle stub knows about one instance.
struct OraclePayload {
  ProblemType problem_type = ProblemType::tsp;
  std::string narrative;
  Graph graph;
  std::string source;
  std::string target;
  std::optional<Solution> answer;  // used by the direct baseline only
};

/// Offline backend that answers every agent from an instance's hidden
/// payload, so the pipeline runs end to end without a model. Tokens are
/// counted as whitespace-separated words.
class OracleStubBackend final : public ChatBackend {
 public:
  explicit OracleStubBackend(OraclePayload payload) : payload_(std::move(payload)) {}

  ChatReply complete(const ChatRequest& request) override {
    ChatReply reply;
    reply.text = answer(request);
    reply.usage.input_tokens = whitespace_tokens(request.system) + whitespace_tokens(request.user);
    reply.usage.output_tokens = whitespace_tokens(reply.text);
    return reply;
  }

  std::string backend_id() const override { return "oracle-stub"; }

 private:
  OraclePayload payload_;

  static std::string fenced(std::string_view tag, std::string_view body) {
    std::string out = "```" + std::string(tag) + "\n" + std::string(body);
    if (out.back() != '\n') out.push_back('\n');
    return out + "```\n";
  }

  static std::string objective_phrase(ProblemType t) {
    switch (t) {
      case ProblemType::tsp: return "minimise the total length of a closed tour visiting every node once";
      case ProblemType::coloring: return "use the fewest colours so that connected nodes differ";
      case ProblemType::vertex_cover: return "choose the fewest nodes so that every connection touches one";
      case ProblemType::shortest_path: return "find the cheapest route from source to target";
      case ProblemType::cycle: return "decide whether the graph contains a cycle";
    }
    return "";
  }

  // The raw listing varies its representation with the instance.
  std::string raw_graph() const {
    const auto edge_list = serialize_graph(payload_.graph, GraphFormat::edge_list);
    switch (fnv1a64(edge_list) % 3) {
      case 1: return serialize_graph(payload_.graph, GraphFormat::adjacency_list);
      case 2:
        try {
          return serialize_graph(payload_.graph, GraphFormat::adjacency_matrix);
        } catch (const Error&) {
          return edge_list;
        }
      default: return edge_list;
    }
  }

  std::string answer(const ChatRequest& r) const {
    const auto& a = r.agent;
    if (a == agent::tiea) return "The story, without the data:\n" + fenced("narrative", payload_.narrative);
    if (a == agent::piea) {
      ProblemSpec spec;
      spec.problem_type = payload_.problem_type;
      spec.objective = objective_phrase(payload_.problem_type);
      spec.source = payload_.source;
      spec.target = payload_.target;
      return fenced("problem_spec", spec.to_json().dump());
    }
    if (a == agent::gsiea) return "Nodes and connections as stated:\n" + fenced("raw_graph", raw_graph());
    if (a == agent::sgia) {
      auto raw = find_block(r.user, "raw_graph");
      return fenced("graph", raw ? *raw : serialize_graph(payload_.graph, GraphFormat::edge_list));
    }
    if (a == agent::gta) {
      std::string pick = "unknown";
      if (auto cards = find_block(r.user, "knowledge")) {
        auto j = nlohmann::json::parse(*cards, nullptr, false);
        if (j.is_array() && !j.empty() && j[0].contains("algorithm_id") && j[0]["algorithm_id"].is_string())
          pick = j[0]["algorithm_id"].get<std::string>();
      }
      return fenced("algorithm", nlohmann::json{{"algorithm_id", pick}, {"reason", "first card listed"}}.dump());
    }
    if (a == agent::asa)
      return fenced("review", nlohmann::json{{"summary", "The algorithm output answers the question as posed."}}.dump());
    if (a == agent::audit) return fenced("audit", R"({"ok": true, "issues": []})");
    if (a == agent::direct) {
      if (!payload_.answer) return "I cannot answer this one.";
      auto j = solution_to_json(*payload_.answer);
      nlohmann::ordered_json out;
      out["problem_type"] = std::string(to_string(payload_.problem_type));
      for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "algorithm_id" && it.key() != "exact") out[it.key()] = it.value();
      return fenced("answer", out.dump());
    }
    throw Error(Errc::backend_error, "oracle stub has no answer for agent '" + a + "'");
  }
};

}  // namespace graphwright
