#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "graphwright/agents/backend.hpp"
#include "graphwright/agents/http_backend.hpp"
#include "graphwright/agents/replay_backend.hpp"
#include "graphwright/core/error.hpp"
#include "graphwright/core/rational.hpp"
#include "json.hpp"

namespace graphwright {

enum class BackendKind { http, stub, replay, record };

/// Backend configuration file (JSON):
///   backend            "http" | "stub" | "replay" | "record"
///   endpoint, model    chat server base URL and model (http, record)
///   api_key_env        name of the environment variable holding the key
///   temperature        sampling temperature, default 0
///   rate_limit         {"requests_per_minute", "max_concurrent"}, 0 = no cap
///   price_per_million  {"input", "output"} in currency units, as "p/q" or decimal text
///   timeout_seconds    per request, default 120
///   fixtures           JSONL fixture file (replay reads it, record appends to it)
///   prompts_dir        directory of prompt template overrides
/// Relative paths are taken from the config file's directory.
struct BackendConfig {
  BackendKind kind = BackendKind::stub;
  std::string endpoint;
  std::string model;
  std::string api_key_env;
  double temperature = 0.0;
  double requests_per_minute = 0.0;
  std::size_t max_concurrent = 0;
  Rational price_input_per_million{0};
  Rational price_output_per_million{0};
  double timeout_seconds = 120.0;
  std::filesystem::path fixtures;
  std::optional<std::filesystem::path> prompts_dir;
};

namespace detail {

inline Rational config_price(const nlohmann::json& v, const char* what) {
  try {
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    if (v.is_string()) return Rational::parse(v.get<std::string>());
    if (v.is_number_float()) return Rational::parse(v.dump());
  } catch (const Error&) {
  }
  throw Error(Errc::config_error, std::string("price ") + what + " must be a number, got " + v.dump());
}

inline double config_number(const nlohmann::json& j, const char* key, double fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number() || it->get<double>() < 0)
    throw Error(Errc::config_error, std::string("'") + key + "' must be a non-negative number");
  return it->get<double>();
}

inline std::string config_string(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) return {};
  if (!it->is_string()) throw Error(Errc::config_error, std::string("'") + key + "' must be a string");
  return it->get<std::string>();
}

}  // namespace detail

/// With `check_environment` off the API key variable may be unset, for
/// callers that only read prices.
inline BackendConfig parse_backend_config(std::string_view source, const std::filesystem::path& base_dir = {},
                                          bool check_environment = true) {
  auto j = nlohmann::json::parse(source, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw Error(Errc::config_error, "backend config must be a JSON object");
  static const std::set<std::string> known{"backend",     "endpoint",          "model",           "api_key_env",
                                           "temperature", "rate_limit",        "price_per_million", "timeout_seconds",
                                           "fixtures",    "prompts_dir"};
  for (const auto& [key, value] : j.items())
    if (!known.contains(key)) throw Error(Errc::config_error, "unknown backend config key '" + key + "'");

  BackendConfig c;
  const auto kind = detail::config_string(j, "backend");
  if (kind == "http") c.kind = BackendKind::http;
  else if (kind == "stub") c.kind = BackendKind::stub;
  else if (kind == "replay") c.kind = BackendKind::replay;
  else if (kind == "record") c.kind = BackendKind::record;
  else throw Error(Errc::config_error, "'backend' must be http, stub, replay or record");

  c.endpoint = detail::config_string(j, "endpoint");
  c.model = detail::config_string(j, "model");
  c.api_key_env = detail::config_string(j, "api_key_env");
  c.temperature = detail::config_number(j, "temperature", 0.0);
  c.timeout_seconds = detail::config_number(j, "timeout_seconds", 120.0);
  if (c.timeout_seconds <= 0) throw Error(Errc::config_error, "'timeout_seconds' must be positive");
  if (auto it = j.find("rate_limit"); it != j.end()) {
    if (!it->is_object()) throw Error(Errc::config_error, "'rate_limit' must be an object");
    c.requests_per_minute = detail::config_number(*it, "requests_per_minute", 0.0);
    c.max_concurrent = static_cast<std::size_t>(detail::config_number(*it, "max_concurrent", 0.0));
  }
  if (auto it = j.find("price_per_million"); it != j.end()) {
    if (!it->is_object()) throw Error(Errc::config_error, "'price_per_million' must be an object");
    if (it->contains("input")) c.price_input_per_million = detail::config_price((*it)["input"], "input");
    if (it->contains("output")) c.price_output_per_million = detail::config_price((*it)["output"], "output");
    if (c.price_input_per_million.is_negative() || c.price_output_per_million.is_negative())
      throw Error(Errc::config_error, "prices must be non-negative");
  }
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
  };
  if (auto f = detail::config_string(j, "fixtures"); !f.empty()) c.fixtures = resolve(f);
  if (auto p = detail::config_string(j, "prompts_dir"); !p.empty()) c.prompts_dir = resolve(p);

  const bool live = c.kind == BackendKind::http || c.kind == BackendKind::record;
  if (live && (c.endpoint.empty() || c.model.empty()))
    throw Error(Errc::config_error, "http and record backends need 'endpoint' and 'model'");
  if ((c.kind == BackendKind::replay || c.kind == BackendKind::record) && c.fixtures.empty())
    throw Error(Errc::config_error, "replay and record backends need a 'fixtures' path");
  if (c.kind == BackendKind::replay && !std::filesystem::exists(c.fixtures))
    throw Error(Errc::config_error, "fixture file '" + c.fixtures.string() + "' does not exist");
  if (c.prompts_dir && !std::filesystem::is_directory(*c.prompts_dir))
    throw Error(Errc::config_error, "prompt directory '" + c.prompts_dir->string() + "' does not exist");
  if (check_environment && live && !c.api_key_env.empty() && !std::getenv(c.api_key_env.c_str()))
    throw Error(Errc::config_error, "environment variable " + c.api_key_env + " is not set");
  return c;
}

inline BackendConfig load_backend_config(const std::filesystem::path& path, bool check_environment = true) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::config_error, "cannot read backend config '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_backend_config(buf.str(), path.parent_path(), check_environment);
}

/// Backend shared by all instances of a run. The oracle stub is built per
/// instance instead, so this returns null for it.
inline std::shared_ptr<ChatBackend> make_shared_backend(const BackendConfig& c) {
  auto live = [&] {
    HttpSettings s;
    s.endpoint = c.endpoint;
    s.model = c.model;
    if (!c.api_key_env.empty()) s.api_key = std::getenv(c.api_key_env.c_str());
    s.timeout_seconds = c.timeout_seconds;
    return std::make_shared<HttpChatBackend>(std::move(s));
  };
  switch (c.kind) {
    case BackendKind::stub: return nullptr;
    case BackendKind::http: return live();
    case BackendKind::replay: return std::make_shared<ReplayBackend>(c.fixtures);
    case BackendKind::record: return std::make_shared<RecordingBackend>(live(), c.fixtures);
  }
  return nullptr;
}

}  // namespace graphwright
