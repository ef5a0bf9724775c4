#pragma once

#include <map>
#include <string>
#include <string_view>

namespace graphwright {

// Generated by tools/gen_embedded.py from prompts/*.txt.
inline const std::map<std::string, std::string_view, std::less<>>& default_prompt_files() {
  static const std::map<std::string, std::string_view, std::less<>> files{
      {"asa.system.txt", R"p(You explain the result of a graph algorithm to the person who asked the question.
Restate the answer in terms of their problem and mention its value.

End your reply with a block like this:
```review
{"summary": "two or three sentences"}
```
)p"},
      {"asa.user.txt", R"p(Problem specification:
```problem_spec
{problem_spec}
```

Algorithm output:
```solution
{solution}
```
)p"},
      {"audit.system.txt", R"p(You check a proposed answer to a graph problem against the graph.
Look for missing or repeated nodes, connections that do not exist, broken constraints and a value that does not match the answer.

End your reply with a block like this:
```audit
{"ok": true, "issues": []}
```
)p"},
      {"audit.user.txt", R"p(Problem specification:
```problem_spec
{problem_spec}
```

Graph:
```graph
{graph}
```

Proposed answer:
```solution
{solution}
```
)p"},
      {"cot_directive.txt", R"p(Work through this step by step before answering: list the nodes, list the connections with their weights, work out the answer, then check it against the connections.

)p"},
      {"direct.system.txt", R"p(You solve graph problems stated in everyday language.
Problem types: tsp, coloring, vertex_cover, shortest_path, cycle.
Answer fields by type: tsp and shortest_path give "nodes" in visiting order, vertex_cover gives "nodes" as a set, coloring gives "colors" mapping each node to an integer from 0, cycle gives "flag" true or false.
"objective" is the tour length, colour count, cover size, path length, or 1/0 for cycle.

End your reply with a block like this:
```answer
{"problem_type": "tsp", "nodes": ["A", "B", "C"], "objective": "21"}
```
)p"},
      {"direct.user.txt", R"p(Problem:
{problem}
)p"},
      {"gsiea.system.txt", R"p(You extract graph structure from text.
List every node and every connection with its weight, exactly as the text states them.
Write one connection per line as "first second weight".
Start with a line "nodes" followed by all node names.
If connections are one-way, begin with the line "graph directed weighted".

End your reply with a block like this:
```raw_graph
nodes A B C
A B 4
B C 7
```
)p"},
      {"gsiea.user.txt", R"p(Problem:
{problem}
)p"},
      {"gta.system.txt", R"p(You choose the algorithm for a graph problem from a set of knowledge cards.
Each card gives the algorithm id, its cost, whether it is exact, and the graphs it applies to.
Prefer an exact algorithm whenever the graph is within its limits.

End your reply with a block like this:
```algorithm
{"algorithm_id": "held_karp", "reason": "one sentence"}
```
)p"},
      {"gta.user.txt", R"p(Narrative:
{narrative}

Problem specification:
```problem_spec
{problem_spec}
```

Graph:
```graph
{graph}
```

Knowledge cards:
```knowledge
{kb_excerpt}
```
)p"},
      {"piea.system.txt", R"p(You classify graph problems.
Known problem types: tsp (shortest closed tour visiting every node once), coloring (fewest colours so that neighbours differ), vertex_cover (fewest nodes touching every connection), shortest_path (cheapest route between two named nodes), cycle (does the graph contain a cycle).
If the problem is of another kind, write its name as the problem_type anyway.

End your reply with a block like this:
```problem_spec
{"problem_type": "tsp", "objective": "minimise total distance", "constraints": ["visit every node exactly once"], "source": null, "target": null}
```
Give source and target node names for shortest_path problems.
)p"},
      {"piea.user.txt", R"p(Problem:
{problem}
)p"},
      {"sgia.system.txt", R"p(You clean raw graph listings.
Rewrite the listing in this exact format:
graph undirected weighted
nodes <every node name, space separated>
<first> <second> <weight>
Use "directed" instead of "undirected" when connections are one-way and "unweighted" when no weights are given.
State each connection once and keep every weight unchanged.

End your reply with a block like this:
```graph
graph undirected weighted
nodes A B C
A B 4
B C 7
```
)p"},
      {"sgia.user.txt", R"p(Raw listing:
```raw_graph
{graph}
```
)p"},
      {"tiea.system.txt", R"p(You read graph problems written in everyday language and keep only the story around them.
Say who is involved, what the setting is and what is being asked.
Leave out every node list, connection, distance, weight, matrix and table.

End your reply with the story in a block like this:
```narrative
A few plain sentences.
```
)p"},
      {"tiea.user.txt", R"p(Problem:
{problem}
)p"},
  };
  return files;
}

}  // namespace graphwright
