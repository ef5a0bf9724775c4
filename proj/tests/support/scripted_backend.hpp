#pragma once

#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "graphwright/agents/backend.hpp"

namespace graphwright::testkit {

/// Replies queued per agent; the last reply of a queue repeats. A reply of
/// "!throw" raises a backend error instead.
class ScriptedBackend final : public ChatBackend {
 public:
  void script(const std::string& agent, std::vector<std::string> replies) {
    queues_[agent] = std::deque<std::string>(replies.begin(), replies.end());
  }
  void fallback(std::function<std::string(const ChatRequest&)> fn) { fallback_ = std::move(fn); }

  ChatReply complete(const ChatRequest& request) override {
    std::lock_guard lock(mutex_);
    requests.push_back(request);
    std::string text;
    auto it = queues_.find(request.agent);
    if (it != queues_.end() && !it->second.empty()) {
      text = it->second.front();
      if (it->second.size() > 1) it->second.pop_front();
    } else if (fallback_) {
      text = fallback_(request);
    } else {
      throw Error(Errc::backend_error, "nothing scripted for " + request.agent);
    }
    if (text == "!throw") throw Error(Errc::backend_error, "scripted timeout");
    ChatReply reply{text, {whitespace_tokens(request.system) + whitespace_tokens(request.user), whitespace_tokens(text)}};
    billed += reply.usage;
    return reply;
  }
  std::string backend_id() const override { return "scripted"; }

  std::vector<ChatRequest> requests;
  Usage billed;

 private:
  std::map<std::string, std::deque<std::string>> queues_;
  std::function<std::string(const ChatRequest&)> fallback_;
  std::mutex mutex_;
};

}  // namespace graphwright::testkit
