#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>

#include "graphwright/agents/backend.hpp"
#include "graphwright/core/error.hpp"
#include "graphwright/core/rng.hpp"
#include "graphwright/core/text.hpp"
#include "json.hpp"

namespace graphwright {

/// Fixture key of a request: FNV-1a over agent, prompts and temperature.
inline std::string fixture_key(const ChatRequest& r) {
  std::string material = r.agent;
  for (const auto* part : {&r.system, &r.user}) {
    material.push_back('\x1f');
    material += *part;
  }
  material.push_back('\x1f');
  material += nlohmann::json(r.temperature).dump();
  return hex64(fnv1a64(material));
}

/// Answers from a JSONL fixture file written by RecordingBackend. One line
/// per distinct request: {"key", "agent", "system", "user", "text",
/// "input_tokens", "output_tokens"}.
class ReplayBackend final : public ChatBackend {
 public:
  explicit ReplayBackend(const std::filesystem::path& fixtures) {
    std::ifstream in(fixtures, std::ios::binary);
    if (!in) throw Error(Errc::config_error, "cannot open fixture file '" + fixtures.string() + "'");
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (text::trim(line).empty()) continue;
      auto j = nlohmann::json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.is_object() || !j.contains("key") || !j.contains("text"))
        throw Error(Errc::config_error,
                    fixtures.string() + " line " + std::to_string(line_no) + " is not a fixture record");
      ChatReply reply;
      reply.text = j["text"].get<std::string>();
      reply.usage.input_tokens = j.value("input_tokens", std::int64_t{0});
      reply.usage.output_tokens = j.value("output_tokens", std::int64_t{0});
      replies_.emplace(j["key"].get<std::string>(), std::move(reply));
    }
  }

  ChatReply complete(const ChatRequest& request) override {
    auto it = replies_.find(fixture_key(request));
    if (it == replies_.end())
      throw Error(Errc::backend_error, "no recorded reply for this " + request.agent + " request (key " +
                                           fixture_key(request) + ")");
    return it->second;
  }

  std::string backend_id() const override { return "replay"; }
  std::size_t size() const noexcept { return replies_.size(); }

 private:
  std::map<std::string, ChatReply> replies_;
};

/// Passes calls to `inner` and appends each new request/reply pair to a
/// fixture file.
class RecordingBackend final : public ChatBackend {
 public:
  RecordingBackend(std::shared_ptr<ChatBackend> inner, const std::filesystem::path& fixtures)
      : inner_(std::move(inner)), out_(fixtures, std::ios::binary | std::ios::app) {
    if (!out_) throw Error(Errc::config_error, "cannot write fixture file '" + fixtures.string() + "'");
  }

  ChatReply complete(const ChatRequest& request) override {
    ChatReply reply = inner_->complete(request);
    const auto key = fixture_key(request);
    std::lock_guard lock(mutex_);
    if (seen_.insert(key).second) {
      nlohmann::ordered_json j;
      j["key"] = key;
      j["agent"] = request.agent;
      j["system"] = request.system;
      j["user"] = request.user;
      j["text"] = reply.text;
      j["input_tokens"] = reply.usage.input_tokens;
      j["output_tokens"] = reply.usage.output_tokens;
      out_ << j.dump() << '\n';
      out_.flush();
    }
    return reply;
  }

  std::string backend_id() const override { return "record:" + inner_->backend_id(); }
  bool serialized() const override { return inner_->serialized(); }

 private:
  std::shared_ptr<ChatBackend> inner_;
  std::ofstream out_;
  std::mutex mutex_;
  std::set<std::string> seen_;
};

}  // namespace graphwright
