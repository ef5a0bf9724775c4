#pragma once

#include <map>
#include <string>
#include <vector>

#include "graphwright/core/error.hpp"
#include "graphwright/core/rational.hpp"
#include "graphwright/solvers/verify.hpp"

namespace graphwright {

struct InstanceScore {
  int acc_nodes = 0;
  int acc_result = 0;
  Rational acc_all{0};
  bool failed = false;          // the run produced no answer
  std::string failure_reason;

  friend bool operator==(const InstanceScore&, const InstanceScore&) = default;
};

/// acc_result compares the stated objective with the optimum. acc_nodes
/// ignores the stated objective: the payload must be valid on the hidden
/// graph and its recomputed objective optimal, so any optimum counts.
/// Boolean answers have no node set; they are scored on the result and
/// acc_nodes mirrors it.
inline InstanceScore score_instance(const Solution& prediction, const Solution& optimal, const Task& task,
                                    const Graph& g) {
  if (prediction.kind != expected_kind(task.type) || optimal.kind != expected_kind(task.type))
    throw Error(Errc::kind_mismatch, std::string(to_string(task.type)) + " is scored on " +
                                         std::string(to_string(expected_kind(task.type))) + " answers, got " +
                                         std::string(to_string(prediction.kind)));
  InstanceScore s;
  if (task.type == ProblemType::cycle) {
    s.acc_result = prediction.flag == optimal.flag;
    s.acc_nodes = s.acc_result;
    s.acc_all = Rational(s.acc_result);
    return s;
  }
  s.acc_result = prediction.objective == optimal.objective;
  const auto report = verify_solution(task, g, prediction, false);
  s.acc_nodes = report.valid && report.recomputed_objective && *report.recomputed_objective == optimal.objective;
  s.acc_all = Rational(1, 2) * Rational(s.acc_nodes) + Rational(1, 2) * Rational(s.acc_result);
  return s;
}

inline InstanceScore failure_score(std::string reason) {
  InstanceScore s;
  s.failed = true;
  s.failure_reason = std::move(reason);
  return s;
}

struct AccuracyRow {
  std::string label;  // problem type, or "all"
  std::size_t instances = 0;
  std::size_t failures = 0;
  Rational acc_all{0};
  Rational acc_nodes{0};
  Rational acc_result{0};
  Rational error_rate{0};

  friend bool operator==(const AccuracyRow&, const AccuracyRow&) = default;
};

/// Means over the given scores. Failed runs score 0 and count toward the
/// error rate.
inline AccuracyRow aggregate(const std::vector<InstanceScore>& scores, std::string label = "all") {
  if (scores.empty()) throw Error(Errc::invalid_input, "cannot aggregate zero scores");
  AccuracyRow row;
  row.label = std::move(label);
  row.instances = scores.size();
  for (const auto& s : scores) {
    row.acc_all += s.acc_all;
    row.acc_nodes += Rational(s.acc_nodes);
    row.acc_result += Rational(s.acc_result);
    row.failures += s.failed;
  }
  const Rational n(static_cast<std::int64_t>(scores.size()));
  row.acc_all /= n;
  row.acc_nodes /= n;
  row.acc_result /= n;
  row.error_rate = Rational(static_cast<std::int64_t>(row.failures)) / n;
  return row;
}

struct ScoredInstance {
  std::string id;
  ProblemType problem_type = ProblemType::tsp;
  InstanceScore score;
};

/// One row per problem type present (in the canonical type order), then an
/// "all" row when more than one type is present.
inline std::vector<AccuracyRow> accuracy_table(const std::vector<ScoredInstance>& scored) {
  std::map<ProblemType, std::vector<InstanceScore>> by_type;
  std::vector<InstanceScore> all;
  for (const auto& s : scored) {
    by_type[s.problem_type].push_back(s.score);
    all.push_back(s.score);
  }
  std::vector<AccuracyRow> rows;
  for (auto t : all_problem_types)
    if (by_type.contains(t)) rows.push_back(aggregate(by_type[t], std::string(to_string(t))));
  if (by_type.size() > 1) rows.push_back(aggregate(all, "all"));
  return rows;
}

}  // namespace graphwright
