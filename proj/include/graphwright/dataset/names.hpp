#pragma once

#include <array>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "graphwright/core/error.hpp"
#include "graphwright/core/rng.hpp"
#include "graphwright/dataset/real_words.hpp"

namespace graphwright {

inline constexpr std::size_t min_name_length = 5;
inline constexpr std::size_t max_name_length = 9;

namespace detail {

inline constexpr std::array<std::string_view, 26> name_onsets{"b",  "c",  "d",  "f",  "g",  "h",  "j",  "k",  "l",
                                                              "m",  "n",  "p",  "r",  "s",  "t",  "v",  "w",  "z",
                                                              "br", "dr", "kr", "st", "tr", "sh", "pl", "qu"};
inline constexpr std::array<std::string_view, 8> name_vowels{"a", "e", "i", "o", "u", "ai", "ou", "y"};
inline constexpr std::array<std::string_view, 6> name_codas{"n", "r", "l", "s", "x", "m"};

/// One pronounceable candidate of the given length, or longer if the last
/// syllable overshoots.
inline std::string name_candidate(std::size_t length, Rng& rng) {
  std::string s;
  while (s.size() < length) {
    s += rng.pick(std::span<const std::string_view>(name_onsets));
    s += rng.pick(std::span<const std::string_view>(name_vowels));
    if (rng.chance(0.25)) s += rng.pick(std::span<const std::string_view>(name_codas));
  }
  return s;
}

}  // namespace detail

/// `n` distinct capitalised letter strings of length 5 to 9. Candidates that
/// repeat an earlier name or spell a listed real word are redrawn.
inline std::vector<std::string> gen_node_names(std::size_t n, Rng& rng) {
  if (n == 0) throw Error(Errc::invalid_input, "need at least one name");
  std::vector<std::string> names;
  std::set<std::string> seen;
  std::size_t attempts = 0;
  while (names.size() < n) {
    if (++attempts > 1000 * n + 1000) throw Error(Errc::invalid_input, "could not draw enough distinct names");
    const auto length = static_cast<std::size_t>(rng.uniform(min_name_length, max_name_length));
    auto s = detail::name_candidate(length, rng);
    if (s.size() > max_name_length || is_real_word(s) || !seen.insert(s).second) continue;
    s[0] = static_cast<char>(s[0] - 'a' + 'A');
    names.push_back(std::move(s));
  }
  return names;
}

}  // namespace graphwright
