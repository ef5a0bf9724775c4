#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>

#include "graphwright/agents/default_prompts.hpp"
#include "graphwright/core/error.hpp"
#include "graphwright/core/text.hpp"

namespace graphwright {

/// Placeholders a template may use.
inline constexpr std::string_view prompt_placeholders[] = {"problem", "narrative",  "problem_spec",
                                                           "graph",   "kb_excerpt", "solution"};

/// Substitutes {name} for each supplied variable. Other braces, such as
/// JSON examples in the template, are left alone.
inline std::string render_template(std::string_view tmpl, const std::map<std::string, std::string>& vars) {
  return text::fill(tmpl, {vars.begin(), vars.end()});
}

/// Prompt templates keyed by file name: `<agent>.system.txt`,
/// `<agent>.user.txt` and `cot_directive.txt`.
class PromptSet {
 public:
  static PromptSet defaults() {
    PromptSet p;
    for (const auto& [name, text] : default_prompt_files()) p.files_[name] = std::string(text);
    return p;
  }

  /// Defaults, with any same-named file in `dir` taking precedence.
  static PromptSet from_directory(const std::filesystem::path& dir) {
    PromptSet p = defaults();
    if (!std::filesystem::is_directory(dir))
      throw Error(Errc::config_error, "prompt directory '" + dir.string() + "' does not exist");
    for (auto& [name, text] : p.files_) {
      const auto file = dir / name;
      if (!std::filesystem::exists(file)) continue;
      std::ifstream in(file, std::ios::binary);
      if (!in) throw Error(Errc::config_error, "cannot read prompt file '" + file.string() + "'");
      std::stringstream buf;
      buf << in.rdbuf();
      text = buf.str();
    }
    return p;
  }

  const std::string& file(std::string_view name) const {
    auto it = files_.find(name);
    if (it == files_.end()) throw Error(Errc::config_error, "no prompt template '" + std::string(name) + "'");
    return it->second;
  }
  const std::string& system(std::string_view agent) const { return file(std::string(agent) + ".system.txt"); }
  const std::string& user(std::string_view agent) const { return file(std::string(agent) + ".user.txt"); }
  void set(std::string name, std::string text) { files_[std::move(name)] = std::move(text); }

 private:
  std::map<std::string, std::string, std::less<>> files_;
};

}  // namespace graphwright
