#!/usr/bin/env python3
"""Regenerates the headers that embed data/knowledge_base.json and prompts/*.txt."""
import pathlib

root = pathlib.Path(__file__).resolve().parent.parent
inc = root / "include" / "graphwright"


def raw(text, delim):
    assert f"){delim}\"" not in text
    return f'R"{delim}({text}){delim}"'


kb = (root / "data" / "knowledge_base.json").read_text()
(inc / "knowledge" / "default_kb.hpp").write_text(
    f"""#pragma once

#include <string_view>

#include "graphwright/knowledge/knowledge_base.hpp"

namespace graphwright {{

// Generated by tools/gen_embedded.py from data/knowledge_base.json.
inline constexpr std::string_view default_knowledge_base_text = {raw(kb, "kb")};

inline const KnowledgeBase& default_knowledge_base() {{
  static const KnowledgeBase kb = load_knowledge_base(default_knowledge_base_text);
  return kb;
}}

}}  // namespace graphwright
""")

entries = []
for path in sorted((root / "prompts").glob("*.txt")):
    entries.append(f'      {{"{path.name}", {raw(path.read_text(), "p")}}},')
body = "\n".join(entries)
(inc / "agents" / "default_prompts.hpp").write_text(
    f"""#pragma once

#include <map>
#include <string>
#include <string_view>

namespace graphwright {{

// Generated by tools/gen_embedded.py from prompts/*.txt.
inline const std::map<std::string, std::string_view, std::less<>>& default_prompt_files() {{
  static const std::map<std::string, std::string_view, std::less<>> files{{
{body}
  }};
  return files;
}}

}}  // namespace graphwright
""")
