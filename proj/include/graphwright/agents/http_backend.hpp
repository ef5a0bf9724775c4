#pragma once

#include <string>

#include "graphwright/agents/backend.hpp"
#include "graphwright/core/error.hpp"
#include "httplib.h"
#include "json.hpp"

namespace graphwright {

struct HttpSettings {
  std::string endpoint;  // base URL, e.g. https://api.example.com/v1
  std::string model;
  std::string api_key;   // empty: no Authorization header
  double timeout_seconds = 120.0;
};

/// Client for OpenAI-compatible chat completion servers: POST
/// <endpoint>/chat/completions with system and user messages.
class HttpChatBackend final : public ChatBackend {
 public:
  explicit HttpChatBackend(HttpSettings settings) : settings_(std::move(settings)) {
    const auto& url = settings_.endpoint;
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw Error(Errc::config_error, "endpoint '" + url + "' has no scheme");
    const auto scheme = url.substr(0, scheme_end);
    if (scheme != "http" && scheme != "https") throw Error(Errc::config_error, "endpoint scheme must be http or https");
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
    if (scheme == "https") throw Error(Errc::config_error, "this build has no TLS support; use an http endpoint");
#endif
    const auto path_start = url.find('/', scheme_end + 3);
    origin_ = url.substr(0, path_start);
    base_path_ = path_start == std::string::npos ? "" : url.substr(path_start);
    while (!base_path_.empty() && base_path_.back() == '/') base_path_.pop_back();
    if (settings_.model.empty()) throw Error(Errc::config_error, "http backend needs a model name");
  }

  ChatReply complete(const ChatRequest& request) override {
    httplib::Client client(origin_);
    const auto secs = static_cast<time_t>(settings_.timeout_seconds);
    const auto usecs = static_cast<time_t>((settings_.timeout_seconds - static_cast<double>(secs)) * 1e6);
    client.set_connection_timeout(secs, usecs);
    client.set_read_timeout(secs, usecs);
    client.set_write_timeout(secs, usecs);
    httplib::Headers headers;
    if (!settings_.api_key.empty()) headers.emplace("Authorization", "Bearer " + settings_.api_key);

    nlohmann::json body{{"model", settings_.model},
                        {"temperature", request.temperature},
                        {"messages",
                         {{{"role", "system"}, {"content", request.system}}, {{"role", "user"}, {"content", request.user}}}}};
    auto res = client.Post(base_path_ + "/chat/completions", headers, body.dump(), "application/json");
    if (!res) throw Error(Errc::backend_error, "request to " + origin_ + " failed: " + httplib::to_string(res.error()));
    if (res->status != 200)
      throw Error(Errc::backend_error, "server answered " + std::to_string(res->status) + ": " + res->body.substr(0, 300));

    auto j = nlohmann::json::parse(res->body, nullptr, false);
    if (j.is_discarded()) throw Error(Errc::backend_error, "server reply is not JSON");
    const auto* content = &j;
    for (const char* step : {"choices", "0", "message", "content"}) {
      if (content->is_array() && std::string(step) == "0" && !content->empty()) content = &(*content)[0];
      else if (content->is_object() && content->contains(step)) content = &(*content)[step];
      else throw Error(Errc::backend_error, "server reply has no choices[0].message.content");
    }
    ChatReply reply;
    reply.text = content->is_string() ? content->get<std::string>() : std::string();
    if (auto u = j.find("usage"); u != j.end() && u->is_object()) {
      reply.usage.input_tokens = u->value("prompt_tokens", std::int64_t{0});
      reply.usage.output_tokens = u->value("completion_tokens", std::int64_t{0});
    }
    return reply;
  }

  std::string backend_id() const override { return "http:" + settings_.model; }

 private:
  HttpSettings settings_;
  std::string origin_;
  std::string base_path_;
};

}  // namespace graphwright
