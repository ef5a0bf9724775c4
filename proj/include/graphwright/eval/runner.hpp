#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "graphwright/agents/backend_config.hpp"
#include "graphwright/agents/direct.hpp"
#include "graphwright/agents/pipeline.hpp"
#include "graphwright/agents/result_json.hpp"
#include "graphwright/agents/stub_backend.hpp"
#include "graphwright/core/parallel.hpp"
#include "graphwright/dataset/instance.hpp"
#include "graphwright/eval/cost.hpp"
#include "graphwright/eval/score.hpp"

namespace graphwright {

enum class SolveMode { pipeline, direct, cot };

constexpr std::string_view to_string(SolveMode m) noexcept {
  switch (m) {
    case SolveMode::pipeline: return "pipeline";
    case SolveMode::direct: return "direct";
    case SolveMode::cot: return "cot";
  }
  return "pipeline";
}

inline std::optional<SolveMode> parse_solve_mode(std::string_view s) {
  for (auto m : {SolveMode::pipeline, SolveMode::direct, SolveMode::cot})
    if (to_string(m) == s) return m;
  return std::nullopt;
}

/// The oracle stub's view of an instance. Only the stub ever sees this; live
/// backends get the text alone.
inline OraclePayload oracle_payload(const ProblemInstance& inst) {
  OraclePayload p;
  p.problem_type = inst.problem_type;
  p.narrative = inst.narrative.empty() ? std::string(to_string(inst.scenario)) : inst.narrative;
  p.graph = inst.graph;
  p.source = inst.source;
  p.target = inst.target;
  p.answer = inst.truth.optimal;
  return p;
}

struct RunOptions {
  BackendConfig backend;
  const KnowledgeBase* kb = nullptr;
  const PromptSet* prompts = nullptr;
  SolveMode mode = SolveMode::pipeline;
  int n_check = 2;
  int retries = 3;
  std::size_t concurrency = 4;
  bool transcripts = false;
};

struct ResultRecord {
  std::string id;
  ProblemType problem_type = ProblemType::tsp;
  SolveMode mode = SolveMode::pipeline;
  std::string backend;
  bool ok = false;
  std::string error;
  std::string error_code;
  std::string stage;
  std::optional<Solution> solution;
  Trail trail;
  nlohmann::ordered_json detail;  // pipeline internals, pipeline mode only
};

namespace detail {

/// Logs the usage of every completed call so a failed run still reports
/// what it was billed.
class MeteredBackend final : public ChatBackend {
 public:
  explicit MeteredBackend(ChatBackend& inner) : inner_(inner) {}

  ChatReply complete(const ChatRequest& request) override {
    ChatReply reply = inner_.complete(request);
    std::lock_guard lock(mutex_);
    TrailEntry e;
    e.agent = request.agent;
    e.attempt = ++attempts_[request.agent];
    e.usage = reply.usage;
    calls_.push_back(std::move(e));
    return reply;
  }
  std::string backend_id() const override { return inner_.backend_id(); }
  bool serialized() const override { return inner_.serialized(); }

  /// Calls grouped by agent; order within an agent is call order, so the
  /// result does not depend on thread timing.
  Trail calls() const {
    std::lock_guard lock(mutex_);
    Trail out = calls_;
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.agent < b.agent; });
    return out;
  }

 private:
  ChatBackend& inner_;
  mutable std::mutex mutex_;
  Trail calls_;
  std::map<std::string, int> attempts_;
};

}  // namespace detail

/// Solves one instance. Errors are caught and recorded; only the text is
/// passed to the pipeline.
inline ResultRecord solve_instance(const ProblemInstance& inst, ChatBackend& backend, const RunOptions& opt,
                                   const PromptSet& prompts) {
  ResultRecord rec;
  rec.id = inst.id;
  rec.problem_type = inst.problem_type;
  rec.mode = opt.mode;
  rec.backend = backend.backend_id();
  detail::MeteredBackend meter(backend);
  try {
    if (opt.mode == SolveMode::pipeline) {
      PipelineConfig pc;
      pc.kb = opt.kb;
      pc.prompts = &prompts;
      pc.n_check = opt.n_check;
      pc.retries = opt.retries;
      pc.temperature = opt.backend.temperature;
      const auto r = run_pipeline(meter, inst.text, pc);
      rec.solution = r.solution;
      rec.trail = r.trail;
      rec.detail = solve_result_to_json(r, opt.transcripts);
      rec.detail.erase("trail");
      rec.detail.erase("solution");
      if (opt.transcripts) rec.detail["trail"] = trail_to_json(r.trail, true);
    } else {
      const AgentContext ctx{meter, prompts, opt.retries, opt.backend.temperature};
      const auto answer = run_direct(ctx, inst.text, opt.mode == SolveMode::cot ? DirectMode::cot : DirectMode::direct,
                                     rec.trail);
      rec.solution = answer.solution;
      if (opt.transcripts) rec.detail["trail"] = trail_to_json(rec.trail, true);
    }
    rec.ok = true;
  } catch (const StageError& e) {
    rec.error = e.what();
    rec.error_code = std::string(to_string(e.code()));
    rec.stage = e.stage();
    rec.trail = meter.calls();
  } catch (const Error& e) {
    rec.error = e.what();
    rec.error_code = std::string(to_string(e.code()));
    if (rec.trail.empty()) rec.trail = meter.calls();
  } catch (const std::exception& e) {
    rec.error = e.what();
    rec.error_code = std::string(to_string(Errc::backend_error));
    if (rec.trail.empty()) rec.trail = meter.calls();
  }
  return rec;
}

/// Solves every instance on a bounded worker pool. The oracle stub is built
/// per instance from its hidden payload; any other backend is shared and
/// throttled by the configured rate limit. Results keep instance order.
inline std::vector<ResultRecord> solve_batch(const std::vector<ProblemInstance>& instances, const RunOptions& opt) {
  if (opt.mode == SolveMode::pipeline && !opt.kb) throw Error(Errc::config_error, "pipeline runs need a knowledge base");
  if (opt.n_check < 0) throw Error(Errc::config_error, "n_check must be non-negative");
  const PromptSet fallback = opt.prompts ? PromptSet() : PromptSet::defaults();
  const PromptSet& prompts = opt.prompts ? *opt.prompts : fallback;
  std::shared_ptr<ChatBackend> shared = make_shared_backend(opt.backend);
  if (shared && (opt.backend.requests_per_minute > 0 || opt.backend.max_concurrent > 0))
    shared = std::make_shared<ThrottledBackend>(
        shared, std::make_shared<RateLimiter>(opt.backend.requests_per_minute, opt.backend.max_concurrent));
  std::vector<ResultRecord> out(instances.size());
  parallel_for(instances.size(), opt.concurrency, [&](std::size_t i) {
    if (shared) {
      out[i] = solve_instance(instances[i], *shared, opt, prompts);
    } else {
      OracleStubBackend stub(oracle_payload(instances[i]));
      out[i] = solve_instance(instances[i], stub, opt, prompts);
    }
  });
  return out;
}

inline nlohmann::ordered_json result_to_json(const ResultRecord& r) {
  nlohmann::ordered_json j;
  j["id"] = r.id;
  j["problem_type"] = std::string(to_string(r.problem_type));
  j["mode"] = std::string(to_string(r.mode));
  j["backend"] = r.backend;
  j["status"] = r.ok ? "ok" : "failed";
  if (!r.ok) {
    j["error"] = r.error;
    j["error_code"] = r.error_code;
    if (!r.stage.empty()) j["stage"] = r.stage;
  }
  if (r.solution) j["solution"] = solution_to_json(*r.solution);
  const auto usage = trail_usage(r.trail);
  j["usage"] = {{"input_tokens", usage.input_tokens}, {"output_tokens", usage.output_tokens}};
  j["trail"] = trail_to_json(r.trail);
  if (!r.detail.is_null()) j["detail"] = r.detail;
  return j;
}

inline ResultRecord result_from_json(const nlohmann::json& j, const std::string& where) {
  if (!j.is_object()) throw Error(Errc::schema_error, where + " is not a JSON object");
  ResultRecord r;
  r.id = detail::string_field(j, "id", where);
  const auto type = detail::string_field(j, "problem_type", where);
  auto pt = parse_problem_type(type);
  if (!pt) throw Error(Errc::schema_error, where + " has unknown problem_type '" + type + "'");
  r.problem_type = *pt;
  auto mode = parse_solve_mode(detail::optional_string_field(j, "mode", where));
  r.mode = mode ? *mode : SolveMode::pipeline;
  r.backend = detail::optional_string_field(j, "backend", where);
  const auto status = detail::string_field(j, "status", where);
  if (status != "ok" && status != "failed") throw Error(Errc::schema_error, where + " has unknown status '" + status + "'");
  r.ok = status == "ok";
  r.error = detail::optional_string_field(j, "error", where);
  r.error_code = detail::optional_string_field(j, "error_code", where);
  r.stage = detail::optional_string_field(j, "stage", where);
  if (auto it = j.find("solution"); it != j.end() && !it->is_null()) r.solution = solution_from_json(*it);
  if (r.ok && !r.solution) throw Error(Errc::schema_error, where + " is ok but has no solution");
  if (auto it = j.find("trail"); it != j.end()) r.trail = trail_from_json(*it);
  return r;
}

inline std::string results_jsonl(const std::vector<ResultRecord>& results) {
  std::string out;
  for (const auto& r : results) out += result_to_json(r).dump() + "\n";
  return out;
}

inline std::vector<ResultRecord> parse_results(std::string_view jsonl, const std::string& origin = "results") {
  std::vector<ResultRecord> out;
  std::size_t line_no = 0;
  for (auto line : text::split_lines(jsonl)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    const std::string where = origin + " line " + std::to_string(line_no);
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) throw Error(Errc::schema_error, where + " is not JSON");
    out.push_back(result_from_json(j, where));
  }
  return out;
}

struct Evaluation {
  std::vector<ScoredInstance> scored;
  std::vector<AccuracyRow> rows;
  CostReport costs;
};

/// Scores a run against the instances it was made from. Instances with no
/// result, and failed runs, score 0 and count as failures. A wrongly typed
/// answer scores 0 without counting as a failure.
inline InstanceScore score_result(const ResultRecord* r, const ProblemInstance& inst) {
  if (!r) return failure_score("no result for this instance");
  if (!r->ok || !r->solution) return failure_score(r->error.empty() ? "run failed" : r->error);
  try {
    return score_instance(*r->solution, inst.truth.optimal, inst.task(), inst.graph);
  } catch (const Error& e) {
    InstanceScore s;
    s.failure_reason = e.what();
    return s;
  }
}

inline Evaluation evaluate(const std::vector<ResultRecord>& results, const std::vector<ProblemInstance>& instances,
                           const Rates& rates) {
  std::map<std::string, const ResultRecord*> by_id;
  for (const auto& r : results)
    if (!by_id.emplace(r.id, &r).second) throw Error(Errc::schema_error, "results list '" + r.id + "' twice");
  std::map<std::string, const ProblemInstance*> known;
  for (const auto& inst : instances) known.emplace(inst.id, &inst);
  for (const auto& r : results)
    if (!known.contains(r.id)) throw Error(Errc::schema_error, "result '" + r.id + "' matches no instance");
  Evaluation ev;
  std::vector<IdentifiedTrail> trails;
  for (const auto& inst : instances) {
    auto it = by_id.find(inst.id);
    const ResultRecord* r = it == by_id.end() ? nullptr : it->second;
    ev.scored.push_back({inst.id, inst.problem_type, score_result(r, inst)});
    if (r) trails.push_back({r->id, r->trail});
  }
  if (!ev.scored.empty()) ev.rows = accuracy_table(ev.scored);
  ev.costs = cost_report(trails, rates);
  return ev;
}

inline Rates rates_of(const BackendConfig& c) { return {c.price_input_per_million, c.price_output_per_million}; }

}  // namespace graphwright
