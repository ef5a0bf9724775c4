// graphwright: generate datasets, solve them, score the results.
//
// Exit codes: 0 success, 1 some instances failed, 2 bad configuration or
// input.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "graphwright/agents/backend_config.hpp"
#include "graphwright/dataset/files.hpp"
#include "graphwright/dataset/import.hpp"
#include "graphwright/eval/report.hpp"
#include "graphwright/eval/runner.hpp"
#include "graphwright/knowledge/default_kb.hpp"

namespace fs = std::filesystem;
using namespace graphwright;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_partial = 1;
constexpr int exit_config = 2;

std::pair<std::size_t, std::size_t> parse_sizes(const std::string& s) {
  auto bad = [&] { return Error(Errc::config_error, "--sizes wants N or LO-HI, got '" + s + "'"); };
  const auto dash = s.find('-');
  try {
    std::size_t used = 0;
    if (dash == std::string::npos) {
      const auto n = std::stoul(s, &used);
      if (used != s.size()) throw bad();
      return {n, n};
    }
    const auto lo_text = s.substr(0, dash), hi_text = s.substr(dash + 1);
    const auto lo = std::stoul(lo_text, &used);
    if (used != lo_text.size()) throw bad();
    const auto hi = std::stoul(hi_text, &used);
    if (used != hi_text.size()) throw bad();
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw bad();
  }
}

struct GenerateArgs {
  std::vector<std::string> types;
  std::string sizes = "8-25";
  std::size_t per_size = 50;
  std::string noise = "standard";
  std::string scenario;
  std::uint64_t seed = 0;
  std::size_t jobs = 4;
  std::string out;
};

int cmd_generate(const GenerateArgs& a) {
  const auto [lo, hi] = parse_sizes(a.sizes);
  auto noise = parse_noise_level(a.noise);
  if (!noise) throw Error(Errc::config_error, "unknown noise level '" + a.noise + "'");
  std::optional<Scenario> scenario;
  if (!a.scenario.empty()) {
    scenario = parse_scenario(a.scenario);
    if (!scenario) throw Error(Errc::config_error, "unknown scenario '" + a.scenario + "'");
  }
  std::vector<ProblemType> types;
  for (const auto& t : a.types) {
    auto pt = parse_problem_type(t);
    if (!pt) throw Error(Errc::config_error, "unknown problem type '" + t + "'");
    types.push_back(*pt);
  }
  if (types.empty()) types.assign(all_problem_types.begin(), all_problem_types.end());

  std::vector<GeneratedSet> sets;
  for (auto type : types) {
    DatasetSpec spec;
    spec.problem_type = type;
    spec.n_min = lo;
    spec.n_max = hi;
    spec.instances_per_size = a.per_size;
    spec.master_seed = a.seed;
    spec.noise = *noise;
    spec.scenario = scenario;
    try {
      spec.validate();
    } catch (const Error& e) {
      throw Error(Errc::config_error, e.message());
    }
    sets.push_back({spec, gen_dataset(spec, a.jobs)});
    std::cerr << to_string(type) << ": " << sets.back().instances.size() << " instances\n";
  }
  const auto checksum = write_dataset(a.out, sets);
  std::cout << "manifest " << (fs::path(a.out) / "manifest.json").string() << " checksum " << checksum << "\n";
  return exit_ok;
}

struct SolveArgs {
  std::string dataset;
  std::string backend_config;
  std::string kb;
  int n_check = 2;
  std::size_t concurrency = 4;
  std::string out = "results.jsonl";
  std::string mode = "direct";
  bool transcripts = false;
};

std::vector<ProblemInstance> load_instances(const std::string& path) {
  if (!fs::exists(path)) throw Error(Errc::config_error, "dataset '" + path + "' does not exist");
  return load_dataset(path);
}

int cmd_solve(const SolveArgs& a, SolveMode mode) {
  // Everything that can be wrong with the configuration is checked before
  // the first instance is touched.
  RunOptions opt;
  opt.mode = mode;
  opt.backend = load_backend_config(a.backend_config);
  std::optional<KnowledgeBase> kb;
  if (!a.kb.empty()) {
    if (!fs::exists(a.kb)) throw Error(Errc::config_error, "knowledge file '" + a.kb + "' does not exist");
    kb = load_knowledge_base(read_file(a.kb));
  }
  opt.kb = kb ? &*kb : &default_knowledge_base();
  std::optional<PromptSet> prompts;
  if (opt.backend.prompts_dir) prompts = PromptSet::from_directory(*opt.backend.prompts_dir);
  opt.prompts = prompts ? &*prompts : nullptr;
  if (a.n_check < 0) throw Error(Errc::config_error, "--n-check must be non-negative");
  opt.n_check = a.n_check;
  opt.concurrency = a.concurrency;
  opt.transcripts = a.transcripts;
  const auto instances = load_instances(a.dataset);

  const auto results = solve_batch(instances, opt);
  write_file(a.out, results_jsonl(results));
  std::size_t failed = 0;
  for (const auto& r : results) {
    if (r.ok) continue;
    ++failed;
    std::cerr << r.id << ": " << r.error << "\n";
  }
  std::cout << "solved " << results.size() - failed << "/" << results.size() << ", results in " << a.out << "\n";
  return failed ? exit_partial : exit_ok;
}

struct EvaluateArgs {
  std::string results;
  std::string dataset;
  std::string backend_config;
  std::string out = "report";
  std::string model = "-";
};

int cmd_evaluate(const EvaluateArgs& a) {
  Rates rates;
  if (!a.backend_config.empty()) rates = rates_of(load_backend_config(a.backend_config, false));
  if (!fs::exists(a.results)) throw Error(Errc::config_error, "results file '" + a.results + "' does not exist");
  const auto results = parse_results(read_file(a.results), a.results);
  const auto instances = load_instances(a.dataset);
  const auto ev = evaluate(results, instances, rates);
  std::string method = "-";
  if (!results.empty()) method = std::string(to_string(results.front().mode));
  emit_report(a.out, ev.scored, ev.rows, ev.costs, a.model, method);
  std::cout << text_report(ev.rows, ev.costs, a.model, method);
  return exit_ok;
}

struct ImportArgs {
  std::string input;
  std::string out;
  std::uint64_t seed = 0;
};

int cmd_import(const ImportArgs& a) {
  if (!fs::exists(a.input)) throw Error(Errc::config_error, "input '" + a.input + "' does not exist");
  const auto instances = import_instances(read_file(a.input), a.input, a.seed);
  write_file(a.out, instances_jsonl(instances));
  std::cout << "imported " << instances.size() << " instances into " << a.out << "\n";
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph problem benchmark: generate, solve, evaluate"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Generate a seeded dataset");
  generate->add_option("--types", gen.types, "Problem types (default: all)")->delimiter(',');
  generate->add_option("--sizes", gen.sizes, "Node counts, N or LO-HI")->capture_default_str();
  generate->add_option("--per-size", gen.per_size, "Instances per node count")->capture_default_str();
  generate->add_option("--noise", gen.noise, "none, standard or heavy")->capture_default_str();
  generate->add_option("--scenario", gen.scenario, "Story for every type (default: one per type)");
  generate->add_option("--seed", gen.seed, "Master seed")->capture_default_str();
  generate->add_option("--jobs", gen.jobs, "Generator threads")->capture_default_str();
  generate->add_option("--out", gen.out, "Output directory")->required();

  SolveArgs solve_args;
  auto add_solve_flags = [&](CLI::App* cmd) {
    cmd->add_option("--dataset", solve_args.dataset, "Dataset directory or instance file")->required();
    cmd->add_option("--backend-config", solve_args.backend_config, "Backend configuration file")->required();
    cmd->add_option("--concurrency", solve_args.concurrency, "Instances in flight")->capture_default_str();
    cmd->add_option("--out", solve_args.out, "Results file")->capture_default_str();
    cmd->add_flag("--transcripts", solve_args.transcripts, "Keep prompts and replies in the results");
  };
  auto* solve = app.add_subcommand("solve", "Run the agent pipeline on every instance");
  add_solve_flags(solve);
  solve->add_option("--kb", solve_args.kb, "Knowledge file (default: bundled)");
  solve->add_option("--n-check", solve_args.n_check, "Self-check rounds")->capture_default_str();

  auto* solve_direct = app.add_subcommand("solve-direct", "Single-prompt baseline on every instance");
  add_solve_flags(solve_direct);
  solve_direct->add_option("--mode", solve_args.mode, "direct or cot")
      ->check(CLI::IsMember({"direct", "cot"}))
      ->capture_default_str();

  EvaluateArgs eval_args;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score results against their instances");
  evaluate_cmd->add_option("--results", eval_args.results, "Results file")->required();
  evaluate_cmd->add_option("--dataset", eval_args.dataset, "Dataset directory or instance file")->required();
  evaluate_cmd->add_option("--backend-config", eval_args.backend_config, "Backend configuration with prices");
  evaluate_cmd->add_option("--out", eval_args.out, "Report directory")->capture_default_str();
  evaluate_cmd->add_option("--model", eval_args.model, "Model label for the summary row")->capture_default_str();

  ImportArgs import_args;
  auto* import_cmd = app.add_subcommand("import", "Convert external records into instances");
  import_cmd->add_option("--input", import_args.input, "JSONL records")->required();
  import_cmd->add_option("--out", import_args.out, "Instance file")->required();
  import_cmd->add_option("--seed", import_args.seed, "Seed for rendered text")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_config;
  }

  try {
    if (*generate) return cmd_generate(gen);
    if (*solve) return cmd_solve(solve_args, SolveMode::pipeline);
    if (*solve_direct)
      return cmd_solve(solve_args, solve_args.mode == "cot" ? SolveMode::cot : SolveMode::direct);
    if (*evaluate_cmd) return cmd_evaluate(eval_args);
    if (*import_cmd) return cmd_import(import_args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_config;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_config;
  }
  return exit_config;
}
