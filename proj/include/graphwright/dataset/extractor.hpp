#pragma once

#include <regex>
#include <set>
#include <string>
#include <vector>

#include "graphwright/core/error.hpp"
#include "graphwright/core/text.hpp"
#include "graphwright/dataset/scenario.hpp"
#include "graphwright/graph/graph.hpp"

namespace graphwright {

/// What the pattern-based reader recovers from a rendered problem.
struct ExtractedProblem {
  Graph graph;
  std::string source;
  std::string target;
  std::size_t edge_statements = 0;
};

namespace detail {

struct EdgePattern {
  std::regex re;
  std::string anchor;  // longest literal run, checked before the regex
  bool weighted = false;
  bool directed = false;
  int a = 0, b = 0, w = 0;  // capture group of each slot
};

inline std::string regex_escape(std::string_view s) {
  static const std::string special = R"(\^$.|?*+()[]{}/)";
  std::string out;
  for (char c : s) {
    if (special.find(c) != std::string::npos) out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

inline constexpr std::string_view name_group = R"(([^\s,:;()#]+))";
inline constexpr std::string_view number_group = R"(([0-9]+(?:[./][0-9]+)?))";

inline EdgePattern compile_edge_template(std::string_view tmpl, bool directed) {
  EdgePattern p;
  p.directed = directed;
  std::string re;
  int group = 0;
  std::size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] == '{') {
      const auto close = tmpl.find('}', i);
      const auto slot = tmpl.substr(i + 1, close - i - 1);
      ++group;
      if (slot == "a") p.a = group;
      if (slot == "b") p.b = group;
      if (slot == "w") {
        p.w = group;
        p.weighted = true;
      }
      re += slot == "w" ? number_group : name_group;
      i = close + 1;
      continue;
    }
    const auto next = tmpl.find('{', i);
    const auto literal = tmpl.substr(i, next == std::string_view::npos ? std::string_view::npos : next - i);
    if (literal.size() > p.anchor.size()) p.anchor = std::string(literal);
    re += regex_escape(literal);
    i = next == std::string_view::npos ? tmpl.size() : next;
  }
  p.re = std::regex(re, std::regex::ECMAScript | std::regex::optimize);
  return p;
}

inline const std::vector<EdgePattern>& edge_patterns() {
  static const std::vector<EdgePattern> patterns = [] {
    std::vector<EdgePattern> out;
    std::set<std::string_view> seen;
    auto add = [&](const std::vector<std::string_view>& templates, bool directed) {
      for (auto t : templates)
        if (seen.insert(t).second) out.push_back(compile_edge_template(t, directed));
    };
    for (auto s : all_scenarios) {
      add(scenario_text(s).weighted, false);
      add(scenario_text(s).unweighted, false);
    }
    add(directed_weighted_templates, true);
    add(directed_unweighted_templates, true);
    return out;
  }();
  return patterns;
}

}  // namespace detail

/// Sentences of a text: split after '.', '?' or '!' followed by white
/// space, and at line breaks.
inline std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  auto flush = [&] {
    auto t = text::trim(current);
    if (!t.empty()) out.emplace_back(t);
    current.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\n') {
      flush();
      continue;
    }
    current.push_back(c);
    if ((c == '.' || c == '?' || c == '!') && (i + 1 == text.size() || text::is_space(text[i + 1]))) flush();
  }
  flush();
  return out;
}

/// Reads the roster, every edge statement and the path endpoints back out of
/// a rendered problem, sentence by sentence, using only the sentence
/// templates. Statements naming a node missing from the roster are an
/// error, as is a missing roster.
inline ExtractedProblem extract_reference(std::string_view text) {
  const auto sentences = split_sentences(text);
  std::vector<std::string> names;
  for (const auto& sentence : sentences) {
    for (auto s : all_scenarios) {
      const std::string prefix = std::string(scenario_text(s).roster) + ": ";
      if (!sentence.starts_with(prefix) || sentence.back() != '.') continue;
      for (auto part : text::split(std::string_view(sentence).substr(prefix.size(), sentence.size() - prefix.size() - 1), ',')) {
        auto name = text::trim(part);
        if (!name.empty()) names.emplace_back(name);
      }
    }
    if (!names.empty()) break;
  }
  if (names.empty()) throw Error(Errc::parse_error, "no node roster found");
  const std::set<std::string> known(names.begin(), names.end());
  auto check = [&](const std::string& name) {
    if (!known.contains(name)) throw Error(Errc::unknown_endpoint, "statement names '" + name + "', not in the roster");
    return name;
  };

  ExtractedProblem out;
  std::vector<EdgeSpec> edges;
  bool weighted = false, directed = false;
  static const std::regex endpoints(R"(get from ([^\s,:;()#]+) to ([^\s,:;()#]+)\?)");
  for (const auto& sentence : sentences) {
    std::smatch m;
    for (const auto& p : detail::edge_patterns()) {
      if (sentence.find(p.anchor) == std::string::npos || !std::regex_match(sentence, m, p.re)) continue;
      edges.push_back({check(m[p.a].str()), check(m[p.b].str()), p.weighted ? Rational::parse(m[p.w].str()) : Rational(1)});
      weighted = weighted || p.weighted;
      directed = directed || p.directed;
      break;
    }
    if (sentence.find("get from ") != std::string::npos && std::regex_search(sentence, m, endpoints)) {
      out.source = check(m[1].str());
      out.target = check(m[2].str());
    }
  }
  out.edge_statements = edges.size();
  out.graph = build_graph(names, directed, weighted, edges);
  return out;
}

}  // namespace graphwright
