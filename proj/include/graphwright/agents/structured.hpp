#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "graphwright/core/error.hpp"
#include "graphwright/core/text.hpp"
#include "json.hpp"

namespace graphwright {

/// Body of the last fenced block opened with ```<tag>. Prose around the
/// fences is ignored; fences are matched on trimmed lines and the tag is
/// case-insensitive. An unterminated block counts as absent.
inline std::optional<std::string> find_block(std::string_view reply, std::string_view tag) {
  const auto wanted = text::lower(tag);
  std::optional<std::string> found;
  const auto lines = text::split_lines(reply);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = text::trim(lines[i]);
    if (!line.starts_with("```")) continue;
    const bool ours = text::lower(text::trim(line.substr(3))) == wanted;
    std::size_t j = i + 1;
    while (j < lines.size() && text::trim(lines[j]) != "```") ++j;
    if (j == lines.size()) break;
    if (ours) {
      std::string body;
      for (std::size_t k = i + 1; k < j; ++k) {
        body.append(lines[k]);
        body.push_back('\n');
      }
      found = std::move(body);
    }
    i = j;
  }
  return found;
}

inline std::string require_block(std::string_view reply, std::string_view tag) {
  auto body = find_block(reply, tag);
  if (!body) throw Error(Errc::parse_failure, "reply has no ```" + std::string(tag) + " block");
  return *body;
}

inline nlohmann::json require_json_block(std::string_view reply, std::string_view tag) {
  const auto body = require_block(reply, tag);
  try {
    auto j = nlohmann::json::parse(body);
    if (!j.is_object()) throw Error(Errc::parse_failure, "```" + std::string(tag) + " block must hold a JSON object");
    return j;
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::parse_failure, "```" + std::string(tag) + " block is not valid JSON: " + e.what());
  }
}

}  // namespace graphwright
