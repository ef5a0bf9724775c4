#pragma once

#include <filesystem>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "graphwright/dataset/files.hpp"
#include "graphwright/eval/cost.hpp"
#include "graphwright/eval/score.hpp"

namespace graphwright {

namespace csv {

inline std::string field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) out += (i ? "," : "") + field(fields[i]);
  return out + "\n";
}

/// Records of a CSV text; quoted fields may hold commas, quotes and
/// newlines.
inline std::vector<std::vector<std::string>> parse(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> current;
  std::string f;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        f += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        f += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = any = true;
    } else if (c == ',') {
      current.push_back(std::move(f));
      f.clear();
      any = true;
    } else if (c == '\n') {
      current.push_back(std::move(f));
      rows.push_back(std::move(current));
      current.clear();
      f.clear();
      any = false;
    } else if (c != '\r') {
      f += c;
      any = true;
    }
  }
  if (quoted) throw Error(Errc::parse_error, "unterminated quoted CSV field");
  if (any) {
    current.push_back(std::move(f));
    rows.push_back(std::move(current));
  }
  return rows;
}

inline std::int64_t integer(const std::string& s) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw Error(Errc::parse_error, "not an integer: '" + s + "'");
  return v;
}

}  // namespace csv

inline const std::vector<std::string> accuracy_columns{"task",      "instances",  "failures",  "acc_all",
                                                       "acc_nodes", "acc_result", "error_rate"};
inline const std::vector<std::string> cost_columns{"scope", "id", "stage", "input_tokens", "output_tokens", "price"};
inline const std::vector<std::string> score_columns{"id",         "task",    "failed",        "acc_nodes",
                                                    "acc_result", "acc_all", "failure_reason"};

/// Fractions are written exactly as "p/q".
inline std::string accuracy_csv(const std::vector<AccuracyRow>& rows) {
  std::string out = csv::row(accuracy_columns);
  for (const auto& r : rows)
    out += csv::row({r.label, std::to_string(r.instances), std::to_string(r.failures), r.acc_all.str(),
                     r.acc_nodes.str(), r.acc_result.str(), r.error_rate.str()});
  return out;
}

inline void expect_header(const std::vector<std::vector<std::string>>& rows, const std::vector<std::string>& columns,
                          const char* what) {
  if (rows.empty() || rows[0] != columns) throw Error(Errc::schema_error, std::string(what) + " header row is missing");
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].size() != columns.size())
      throw Error(Errc::schema_error, std::string(what) + " row " + std::to_string(i) + " has " +
                                          std::to_string(rows[i].size()) + " fields");
}

inline std::vector<AccuracyRow> parse_accuracy_csv(std::string_view text) {
  const auto rows = csv::parse(text);
  expect_header(rows, accuracy_columns, "accuracy table");
  std::vector<AccuracyRow> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& f = rows[i];
    out.push_back({f[0], static_cast<std::size_t>(csv::integer(f[1])), static_cast<std::size_t>(csv::integer(f[2])),
                   Rational::parse(f[3]), Rational::parse(f[4]), Rational::parse(f[5]), Rational::parse(f[6])});
  }
  return out;
}

/// Rows: one per (instance, stage), one "instance" total per instance with
/// stage "*", one per stage over all instances, then the grand total.
inline std::string cost_csv(const CostReport& report) {
  std::string out = csv::row(cost_columns);
  auto line = [&](const char* scope, const std::string& id, const std::string& stage, const TokenCost& c) {
    out += csv::row({scope, id, stage, std::to_string(c.input_tokens), std::to_string(c.output_tokens), c.price.str()});
  };
  for (const auto& ic : report.instances) {
    for (const auto& [stage, c] : ic.stages) line("instance", ic.id, stage, c);
    line("instance", ic.id, "*", ic.total);
  }
  for (const auto& [stage, c] : report.stages) line("stage", "", stage, c);
  line("total", "", "*", report.total);
  return out;
}

inline CostReport parse_cost_csv(std::string_view text) {
  const auto rows = csv::parse(text);
  expect_header(rows, cost_columns, "cost table");
  CostReport report;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& f = rows[i];
    const TokenCost c{csv::integer(f[3]), csv::integer(f[4]), Rational::parse(f[5])};
    if (f[0] == "instance") {
      if (report.instances.empty() || report.instances.back().id != f[1]) report.instances.push_back({f[1], {}, {}});
      if (f[2] == "*") {
        report.instances.back().total = c;
      } else {
        report.instances.back().stages[f[2]] = c;
      }
    } else if (f[0] == "stage") {
      report.stages[f[2]] = c;
    } else if (f[0] == "total") {
      report.total = c;
    } else {
      throw Error(Errc::schema_error, "cost table row " + std::to_string(i) + " has unknown scope '" + f[0] + "'");
    }
  }
  return report;
}

inline std::string scores_csv(const std::vector<ScoredInstance>& scored) {
  std::string out = csv::row(score_columns);
  for (const auto& s : scored)
    out += csv::row({s.id, std::string(to_string(s.problem_type)), s.score.failed ? "1" : "0",
                     std::to_string(s.score.acc_nodes),
                     std::to_string(s.score.acc_result), s.score.acc_all.str(), s.score.failure_reason});
  return out;
}

inline std::vector<ScoredInstance> parse_scores_csv(std::string_view text) {
  const auto rows = csv::parse(text);
  expect_header(rows, score_columns, "score table");
  std::vector<ScoredInstance> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& f = rows[i];
    auto type = parse_problem_type(f[1]);
    if (!type) throw Error(Errc::schema_error, "score table row " + std::to_string(i) + " has unknown task");
    ScoredInstance s{f[0], *type, {}};
    s.score.failed = csv::integer(f[2]) != 0;
    s.score.acc_nodes = static_cast<int>(csv::integer(f[3]));
    s.score.acc_result = static_cast<int>(csv::integer(f[4]));
    s.score.acc_all = Rational::parse(f[5]);
    s.score.failure_reason = f[6];
    out.push_back(std::move(s));
  }
  return out;
}

inline std::string percent(const Rational& r) { return (r * Rational(100)).decimal(1) + "%"; }

inline std::string thousands(std::int64_t tokens) { return Rational(tokens, 1000).decimal(3); }

/// Human-readable report: the accuracy table, a one-line summary with one
/// ACC_all column per task, and token costs per stage.
inline std::string text_report(const std::vector<AccuracyRow>& rows, const CostReport& costs,
                               const std::string& model = "-", const std::string& method = "-") {
  std::ostringstream out;
  auto cell = [&](const std::string& s, int width) { out << std::left << std::setw(width) << s; };
  out << "Accuracy\n";
  cell("task", 16);
  cell("instances", 11);
  cell("acc_all", 10);
  cell("acc_nodes", 11);
  cell("acc_result", 12);
  out << "error_rate\n";
  for (const auto& r : rows) {
    cell(r.label, 16);
    cell(std::to_string(r.instances), 11);
    cell(percent(r.acc_all), 10);
    cell(percent(r.acc_nodes), 11);
    cell(percent(r.acc_result), 12);
    out << percent(r.error_rate) << "\n";
  }
  out << "\nSummary\n";
  cell("model", 24);
  cell("method", 14);
  for (const auto& r : rows)
    if (r.label != "all") cell(r.label, 15);
  out << "\n";
  cell(model, 24);
  cell(method, 14);
  for (const auto& r : rows)
    if (r.label != "all") cell(percent(r.acc_all), 15);
  out << "\n\nCost\n";
  cell("stage", 12);
  cell("inp_tokens_k", 14);
  cell("out_tokens_k", 14);
  out << "price\n";
  auto cost_line = [&](const std::string& label, const TokenCost& c) {
    cell(label, 12);
    cell(thousands(c.input_tokens), 14);
    cell(thousands(c.output_tokens), 14);
    out << c.price.decimal(6) << "\n";
  };
  for (const auto& [stage, c] : costs.stages) cost_line(stage, c);
  cost_line("total", costs.total);
  if (!costs.instances.empty()) {
    const Rational n(static_cast<std::int64_t>(costs.instances.size()));
    out << "per instance: " << (Rational(costs.total.input_tokens) / n / Rational(1000)).decimal(3) << "k in, "
        << (Rational(costs.total.output_tokens) / n / Rational(1000)).decimal(3) << "k out, "
        << (costs.total.price / n).decimal(6) << "\n";
  }
  return out.str();
}

struct ReportFiles {
  std::filesystem::path text;
  std::filesystem::path accuracy;
  std::filesystem::path scores;
  std::filesystem::path cost;
};

/// report.txt, accuracy.csv, scores.csv and cost.csv under `dir`.
inline ReportFiles emit_report(const std::filesystem::path& dir, const std::vector<ScoredInstance>& scored,
                               const std::vector<AccuracyRow>& rows, const CostReport& costs,
                               const std::string& model = "-", const std::string& method = "-") {
  ReportFiles files{dir / "report.txt", dir / "accuracy.csv", dir / "scores.csv", dir / "cost.csv"};
  write_file(files.text, text_report(rows, costs, model, method));
  write_file(files.accuracy, accuracy_csv(rows));
  write_file(files.scores, scores_csv(scored));
  write_file(files.cost, cost_csv(costs));
  return files;
}

}  // namespace graphwright
