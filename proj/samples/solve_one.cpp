// Generates one instance, runs the agent pipeline on its text with the
// offline oracle backend and prints what came back.

#include <iostream>

#include "graphwright/agents/result_json.hpp"
#include "graphwright/dataset/generate.hpp"
#include "graphwright/eval/runner.hpp"
#include "graphwright/knowledge/default_kb.hpp"

using namespace graphwright;

int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::stoull(argv[1]) : 7;
  const auto inst = gen_instance(ProblemType::tsp, Scenario::delivery_logistics, 10, NoiseLevel::standard, seed, "demo");
  std::cout << inst.text << "\n";

  OracleStubBackend backend(oracle_payload(inst));
  PipelineConfig config;
  config.kb = &default_knowledge_base();
  const auto result = run_pipeline(backend, inst.text, config);

  std::cout << "algorithm: " << result.choice.record.algorithm_id << "\n";
  std::cout << "answer:    " << solution_to_json(result.solution).dump() << "\n";
  const auto score = score_instance(result.solution, inst.truth.optimal, inst.task(), inst.graph);
  std::cout << "acc_all:   " << score.acc_all.str() << "\n";
  const auto usage = trail_usage(result.trail);
  std::cout << "tokens:    " << usage.input_tokens << " in, " << usage.output_tokens << " out over "
            << result.trail.size() << " calls\n";
}
