#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lexcover/graph.hpp"
#include "lexcover/permutation.hpp"

namespace lexcover {

/// One cell of a pattern: a constant or a variable named by the smallest
/// position of its equivalence class.
struct Cell {
  enum class Kind : std::uint8_t { Zero, One, Var };
  Kind kind = Kind::Var;
  std::uint8_t rep = 0;  // 1-based representative position, Var only

  static Cell zero() { return {Kind::Zero, 0}; }
  static Cell one() { return {Kind::One, 0}; }
  static Cell var(int rep) { return {Kind::Var, static_cast<std::uint8_t>(rep)}; }

  bool is_const() const { return kind != Kind::Var; }
  bool operator==(const Cell&) const = default;
};

/// The set of order-n graphs that a permutation makes smaller for the first
/// time at one vec position, as a template over {0, 1, x_rep}.
class Pattern {
 public:
  Pattern() = default;
  Pattern(int order, std::vector<Cell> cells, int first_diff = 0);

  /// Parses "x1,1,0,x4,x5,x6". Variables must name the smallest position
  /// of their class.
  static Pattern parse(int order, std::string_view text);

  int order() const { return order_; }
  int size() const { return static_cast<int>(cells_.size()); }
  const Cell& cell(int pos) const { return cells_[static_cast<std::size_t>(pos - 1)]; }
  std::span<const Cell> cells() const { return cells_; }
  /// Position at which instances get smaller; 0 when unknown (parsed).
  int first_diff() const { return first_diff_; }

  /// Number of distinct variable classes.
  int free_classes() const { return free_classes_; }
  std::uint64_t instance_count() const { return std::uint64_t{1} << free_classes_; }

  bool matches(std::uint64_t bits) const {
    if (((bits ^ const_value_) & const_mask_) != 0) return false;
    for (const auto& [member, rep] : links_) {
      if (((bits >> member) ^ (bits >> rep)) & 1U) return false;
    }
    return true;
  }
  bool matches(const Graph& g) const;

  /// Mask/value of constant cells (bit p-1 for position p).
  std::uint64_t const_mask() const { return const_mask_; }
  std::uint64_t const_value() const { return const_value_; }
  /// (member, representative) pairs, 0-based, for every non-representative
  /// member of a variable class.
  std::span<const std::pair<std::uint8_t, std::uint8_t>> links() const { return links_; }

  std::string to_string() const;

  /// Structural equality over cells only.
  bool operator==(const Pattern& other) const {
    return order_ == other.order_ && cells_ == other.cells_;
  }

 private:
  int order_ = 0;
  std::vector<Cell> cells_;
  int first_diff_ = 0;
  int free_classes_ = 0;
  std::uint64_t const_mask_ = 0;
  std::uint64_t const_value_ = 0;
  std::vector<std::pair<std::uint8_t, std::uint8_t>> links_;
};

struct PatternHash {
  std::size_t operator()(const Pattern& p) const;
};

/// Patterns of one permutation, or a merged deduplicated collection.
struct PatternSet {
  std::optional<Permutation> source;
  std::vector<Pattern> patterns;

  bool covers(const Graph& g) const;
  std::uint64_t instance_total() const;
};

/// Most general unifier of {x_map[j] = x_j : j < i} U {x_map[i] = 0, x_i = 1};
/// std::nullopt stands for bottom.
std::optional<Pattern> pattern_at(const Permutation& pi, int i);

/// All non-bottom patterns of pi in ascending first_diff.
PatternSet patterns_of(const Permutation& pi);

/// Deduplicated union of the patterns of several permutations, in first
/// occurrence order.
PatternSet merge_patterns(std::span<const Permutation> perms);

inline bool matches(const Pattern& p, const Graph& g) { return p.matches(g); }
bool covered_by_set(const PatternSet& set, const Graph& g);
bool covered_by_set(std::span<const PatternSet> sets, const Graph& g);
inline std::uint64_t instance_count(const Pattern& p) { return p.instance_count(); }

inline constexpr std::uint64_t kDefaultInstanceBudget = std::uint64_t{1} << 24;

/// Calls visit(g) for every instance of p in ascending GraphId order.
/// Throws UsageError when the instance count exceeds the budget.
void for_each_instance(const Pattern& p, const std::function<void(const Graph&)>& visit,
                       std::uint64_t budget = kDefaultInstanceBudget);

/// Instances of p accepted by the filter, ascending GraphId.
std::vector<Graph> enumerate_instances(const Pattern& p,
                                       const std::function<bool(const Graph&)>& filter = {},
                                       std::uint64_t budget = kDefaultInstanceBudget);

}  // namespace lexcover
