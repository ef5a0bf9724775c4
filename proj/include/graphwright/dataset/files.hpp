#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "graphwright/core/error.hpp"
#include "graphwright/core/rng.hpp"
#include "graphwright/dataset/generate.hpp"
#include "graphwright/dataset/instance.hpp"
#include "json.hpp"

namespace graphwright {

inline constexpr std::string_view seed_rule = "splitmix64(master_seed XOR fnv1a64(\"<type>/<n>/<k>\"))";

struct GeneratedSet {
  DatasetSpec spec;
  std::vector<ProblemInstance> instances;
};

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot read '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw Error(Errc::io_error, "cannot create '" + path.parent_path().string() + "': " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io_error, "cannot write '" + path.string() + "'");
  out << content;
  if (!out.flush()) throw Error(Errc::io_error, "write to '" + path.string() + "' failed");
}

inline std::string instances_jsonl(const std::vector<ProblemInstance>& instances) {
  std::string out;
  for (const auto& inst : instances) out += instance_to_json(inst).dump() + "\n";
  return out;
}

/// Text-only export: {id, text} per line, for runs that must not see the
/// hidden payload.
inline std::string text_only_jsonl(const std::vector<ProblemInstance>& instances) {
  std::string out;
  for (const auto& inst : instances) {
    nlohmann::ordered_json j;
    j["id"] = inst.id;
    j["text"] = inst.text;
    out += j.dump() + "\n";
  }
  return out;
}

/// Writes <type>.jsonl, <type>.text.jsonl and manifest.json under `dir` and
/// returns the manifest checksum (FNV-1a of the manifest bytes, hex).
inline std::string write_dataset(const std::filesystem::path& dir, const std::vector<GeneratedSet>& sets) {
  nlohmann::ordered_json manifest;
  manifest["format"] = 1;
  manifest["seed_rule"] = std::string(seed_rule);
  auto types = nlohmann::ordered_json::array();
  auto listing = nlohmann::ordered_json::array();
  for (const auto& set : sets) {
    const std::string type(to_string(set.spec.problem_type));
    const auto records = instances_jsonl(set.instances);
    const auto texts = text_only_jsonl(set.instances);
    write_file(dir / (type + ".jsonl"), records);
    write_file(dir / (type + ".text.jsonl"), texts);
    nlohmann::ordered_json t;
    t["problem_type"] = type;
    t["scenario"] = std::string(to_string(set.spec.scenario ? *set.spec.scenario : default_scenario(set.spec.problem_type)));
    t["noise"] = std::string(to_string(set.spec.noise));
    t["master_seed"] = std::to_string(set.spec.master_seed);
    t["n_min"] = set.spec.n_min;
    t["n_max"] = set.spec.n_max;
    t["instances_per_size"] = set.spec.instances_per_size;
    t["file"] = type + ".jsonl";
    t["text_file"] = type + ".text.jsonl";
    t["instances"] = set.instances.size();
    t["checksum"] = hex64(fnv1a64(records));
    t["text_checksum"] = hex64(fnv1a64(texts));
    types.push_back(t);
    for (const auto& inst : set.instances) {
      nlohmann::ordered_json e;
      e["id"] = inst.id;
      e["n"] = inst.node_count();
      e["seed"] = std::to_string(inst.seed);
      e["checksum"] = hex64(fnv1a64(instance_to_json(inst).dump()));
      listing.push_back(e);
    }
  }
  manifest["types"] = types;
  manifest["instances"] = listing;
  const auto text = manifest.dump(2) + "\n";
  write_file(dir / "manifest.json", text);
  return hex64(fnv1a64(text));
}

/// Instance records from a JSONL file; blank lines are skipped.
inline std::vector<ProblemInstance> parse_instances(std::string_view jsonl, const std::string& origin = "instances") {
  std::vector<ProblemInstance> out;
  std::size_t line_no = 0;
  for (auto line : text::split_lines(jsonl)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) throw Error(Errc::schema_error, origin + " line " + std::to_string(line_no) + " is not JSON");
    try {
      out.push_back(instance_from_json(j));
    } catch (const Error& e) {
      throw Error(e.code(), origin + " line " + std::to_string(line_no) + ": " + e.message());
    }
  }
  return out;
}

inline std::vector<ProblemInstance> read_instances(const std::filesystem::path& path) {
  return parse_instances(read_file(path), path.string());
}

/// Every instance file named by a dataset directory's manifest, or a single
/// instance file.
inline std::vector<ProblemInstance> load_dataset(const std::filesystem::path& path) {
  if (!std::filesystem::is_directory(path)) return read_instances(path);
  const auto manifest_path = path / "manifest.json";
  auto manifest = nlohmann::json::parse(read_file(manifest_path), nullptr, false);
  if (manifest.is_discarded() || !manifest.contains("types") || !manifest["types"].is_array())
    throw Error(Errc::schema_error, manifest_path.string() + " is not a dataset manifest");
  std::vector<ProblemInstance> out;
  for (const auto& t : manifest["types"]) {
    if (!t.contains("file") || !t["file"].is_string())
      throw Error(Errc::schema_error, manifest_path.string() + " lists a type without a file");
    auto part = read_instances(path / t["file"].get<std::string>());
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

}  // namespace graphwright
