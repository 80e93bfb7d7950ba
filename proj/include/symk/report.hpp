#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "symk/engine.hpp"
#include "symk/milnor.hpp"

namespace symk {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

struct Check {
  std::string name;
  bool pass = false;
  Json detail = Json::object();
};

// Machine-readable result of one command. The "timing" block (wall times, thread count) is the only
// part that may differ between runs of the same configuration and is excluded from the hash.
struct Report {
  std::string command;
  Json config = Json::object();
  Json results = Json::object();
  std::vector<Check> checks;
  Json timing = Json::object();

  bool passed() const;
  void add_check(std::string name, bool pass, Json detail = Json::object());
  Json to_json() const;  // schema_version, command, config, results, checks, passed, hash, timing
  static Report from_json(const Json& j);
  std::string hash() const;        // FNV-1a over the canonical dump without timing
  std::string canonical() const;   // that dump
  std::string text() const;        // human-readable summary
};

std::string fnv1a_hex(const std::string& s);

Json group_json(const FiniteAbelianGroup& G);
Json stats_json(const SampleStats& s);
Json problem_json(const Problem& p);
// Accepts the problem schema; unknown or mistyped fields raise SchemaError.
Problem parse_problem(const Json& j);
Problem parse_problem_text(const std::string& text);

// Command payloads shared by the CLI and the acceptance suite.
Report cmd_tame(const std::string& field, const std::string& symbol, const std::string& place);
Report cmd_reciprocity(const std::string& curve, int count, u64 seed, int H, int threads);
Report cmd_kgroup(const Problem& p, int threads);
Report cmd_rewrite(const std::string& kind, const std::string& field, const std::string& symbol,
                   const std::string& places);
Report cmd_values(const std::string& base, const std::string& functor, int D);

// Random reciprocity trials on C with functions of degree <= H; trial i depends only on (seed, i).
struct ReciprocityBatch {
  std::size_t count = 0, failures = 0;
  Json failure_tables = Json::array();
};
ReciprocityBatch reciprocity_batch(const CurveRef& C, int count, int H, u64 seed, int threads);

}  // namespace symk
