#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "lexcover/pattern.hpp"
#include "lexcover/permutation.hpp"

namespace lexcover {

/// A symmetry break: the lex constraints G <= pi(G) for every listed pi,
/// equivalently "G matches none of the merged patterns".
struct BreakSpec {
  int order = 0;
  std::vector<Permutation> permutations;
  PatternSet patterns;
  /// "optimal", "partial" or "external" plus run metadata.
  nlohmann::ordered_json provenance = nlohmann::ordered_json::object();
};

BreakSpec make_break(int n, std::span<const Permutation> perms, const std::string& kind = "external");

struct CnfStats {
  std::size_t variables = 0;
  std::size_t clauses = 0;
  std::size_t pattern_clauses = 0;
  std::size_t equality_vars = 0;
};

/// Counts without writing.
CnfStats cnf_stats(const BreakSpec& spec);
/// DIMACS over x_1..x_m, then e variables in first-use order: one clause
/// per pattern plus four defining clauses per e variable.
CnfStats emit_cnf(const BreakSpec& spec, std::ostream& out);

/// Graphs of order spec.order matching no pattern. Orders above 7 need
/// allow_long.
std::uint64_t verify_break(const BreakSpec& spec, bool allow_long = false);

/// (2^m - |cover(perms)|) / count_canonical(n); n <= 7.
double redundancy_ratio(std::span<const Permutation> perms, int n);

nlohmann::ordered_json to_json(const BreakSpec& spec);
BreakSpec break_from_json(const nlohmann::json& j);

void write_break_file(const BreakSpec& spec, const std::string& path);
BreakSpec read_break_file(const std::string& path);

/// Writes text to path via a temporary file and rename.
void write_file_atomic(const std::string& path, const std::string& text);

}  // namespace lexcover
