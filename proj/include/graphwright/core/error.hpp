#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace graphwright {

enum class Errc {
  // graph construction and parsing
  duplicate_node,
  unknown_endpoint,
  negative_weight,
  self_loop,
  invalid_name,
  invalid_weight,
  conflicting_weights,
  parse_error,
  dimension_mismatch,
  unrepresentable,
  // solvers
  graph_not_complete,
  too_large,
  invalid_input,
  no_path,
  unknown_node,
  kind_mismatch,
  // knowledge base
  schema_error,
  duplicate_id,
  unknown_problem_type,
  no_applicable_algorithm,
  // agents
  backend_error,
  empty_output,
  parse_failure,
  unsupported_problem_type,
  empty_graph,
  solver_error,
  verification_failed,
  // io / config
  config_error,
  io_error,
  overflow,
};

constexpr std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::duplicate_node: return "DuplicateNode";
    case Errc::unknown_endpoint: return "UnknownEndpoint";
    case Errc::negative_weight: return "NegativeWeight";
    case Errc::self_loop: return "SelfLoop";
    case Errc::invalid_name: return "InvalidName";
    case Errc::invalid_weight: return "InvalidWeight";
    case Errc::conflicting_weights: return "ConflictingWeights";
    case Errc::parse_error: return "ParseError";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::unrepresentable: return "Unrepresentable";
    case Errc::graph_not_complete: return "GraphNotComplete";
    case Errc::too_large: return "TooLarge";
    case Errc::invalid_input: return "InvalidInput";
    case Errc::no_path: return "NoPath";
    case Errc::unknown_node: return "UnknownNode";
    case Errc::kind_mismatch: return "KindMismatch";
    case Errc::schema_error: return "SchemaError";
    case Errc::duplicate_id: return "DuplicateId";
    case Errc::unknown_problem_type: return "UnknownProblemType";
    case Errc::no_applicable_algorithm: return "NoApplicableAlgorithm";
    case Errc::backend_error: return "BackendError";
    case Errc::empty_output: return "EmptyOutput";
    case Errc::parse_failure: return "ParseFailure";
    case Errc::unsupported_problem_type: return "UnsupportedProblemType";
    case Errc::empty_graph: return "EmptyGraph";
    case Errc::solver_error: return "SolverError";
    case Errc::verification_failed: return "VerificationFailed";
    case Errc::config_error: return "ConfigError";
    case Errc::io_error: return "IoError";
    case Errc::overflow: return "Overflow";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (and tests) can branch on the kind without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        message_(message) {}

  Errc code() const noexcept { return code_; }
  const std::string& message() const noexcept { return message_; }

 private:
  Errc code_;
  std::string message_;
};

/// Error annotated with the pipeline stage that raised it.
class StageError : public Error {
 public:
  StageError(std::string stage, const Error& cause)
      : Error(cause.code(), "[" + stage + "] " + cause.message()), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace graphwright
