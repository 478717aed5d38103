#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lexcover/dominance.hpp"
#include "lexcover/encoding.hpp"
#include "lexcover/pattern.hpp"
#include "lexcover/permutation.hpp"

namespace lexcover {

inline constexpr std::size_t kDefaultBound = 10;

/// Non-identity permutations covering g, in enumeration order. When `bound`
/// of them are found the scan stops and `many` is set.
struct CoveringPerms {
  std::vector<Permutation> perms;
  bool many = false;
};

/// Precomputed S_n \ {id} with position maps, shared by covering scans.
class PermutationTable {
 public:
  explicit PermutationTable(int n);
  int order() const { return order_; }
  std::span<const Permutation> perms() const { return perms_; }
  std::span<const PositionMap> maps() const { return maps_; }

  CoveringPerms covering(const Graph& g, std::size_t bound) const;
  bool any_covers(std::uint64_t bits) const;
  std::size_t count_covering(std::uint64_t bits, std::size_t bound) const;

 private:
  int order_;
  std::vector<Permutation> perms_;
  std::vector<PositionMap> maps_;
};

CoveringPerms covering_perms(const Graph& g, std::size_t bound);

struct LeapCounters {
  std::uint64_t visited = 0;
  std::uint64_t status_calls = 0;
  std::uint64_t leaps_covered = 0;
  std::uint64_t leaps_canonical = 0;
  std::uint64_t leaps_many = 0;
  std::uint64_t skipped = 0;
};

/// Backbones found so far with their merged patterns and a dominance
/// checker that holds them as permanent dominators.
class BackboneState {
 public:
  BackboneState(int n, std::size_t bound);

  int order() const { return table_.order(); }
  std::size_t bound() const { return bound_; }
  const std::vector<Permutation>& beta() const { return beta_; }
  const PermutationTable& table() const { return table_; }
  DominanceChecker& checker() { return *checker_; }
  LeapCounters& counters() { return counters_; }
  const LeapCounters& counters() const { return counters_; }

  void add(const Permutation& pi);
  bool contains(const Permutation& pi) const;

  /// -1 when no beta pattern matches g; otherwise the longest all-free
  /// singleton suffix among matching beta patterns.
  int covered_suffix(std::uint64_t bits) const;
  bool covers(std::uint64_t bits) const { return covered_suffix(bits) >= 0; }

 private:
  PermutationTable table_;
  std::size_t bound_;
  std::vector<Permutation> beta_;
  std::vector<Pattern> beta_patterns_;
  std::vector<int> free_suffix_;
  std::unique_ptr<DominanceChecker> checker_;
  LeapCounters counters_;
};

enum class StatusKind { Backbone, Canonical, Covered, Many, Ambiguous };

struct BackboneStatus {
  StatusKind kind;
  std::vector<Permutation> perms;  // Backbone: the one; Ambiguous: refined set
};

std::string to_string(StatusKind kind);

/// Classifies g (not covered by state.beta()) by its refined coverers.
BackboneStatus backbone_status(const Graph& g, BackboneState& state);

struct IterativeOptions {
  std::size_t bound = kDefaultBound;
  /// Re-scan every block skipped by the exact leaps and record violations.
  bool debug_rescan = false;
  /// Leap over a zero suffix when G and every single-flip neighbour have at
  /// least `bound` coverers. Off by default: multi-flip graphs in such blocks
  /// often have few coverers, and the leap then skips every witness.
  bool many_leap = false;
  /// Called every `progress_every` visited graphs.
  std::function<void(const LeapCounters&, std::size_t beta_size)> progress;
  std::uint64_t progress_every = 1 << 16;
};

struct IterativeResult {
  std::vector<Permutation> beta;
  LeapCounters counters;
  std::vector<std::string> rescan_violations;
};

/// Sweeps all graphs in ascending vec order with the three leaps.
IterativeResult find_backbones_iterative(int n, const IterativeOptions& options = {});

/// True iff some graph is covered by pi and by no other member of universe.
bool is_backbone_sat(const Permutation& pi, std::span<const Permutation> universe);

/// Per member and pattern: Exclusive, or Shared (several members own an
/// identical pattern); the first owner of a shared pattern is SharedFirst.
enum class Ownership : std::uint8_t { Exclusive, SharedFirst, Shared };
std::vector<std::vector<Ownership>> pattern_ownership(std::span<const Candidate> pool);

/// One solver over a universe. Tested members get their notCovered clauses
/// guarded by a selector, a binary index over the selectors makes assuming
/// one of them switch off exactly that member; all other clauses are
/// permanent. Keeping the tested set small keeps each call cheap.
class BackboneOracle {
 public:
  explicit BackboneOracle(std::span<const Permutation> universe);
  BackboneOracle(std::span<const Candidate> pool, const std::vector<std::vector<Ownership>>& ownership,
                 std::span<const std::size_t> tested);

  std::size_t size() const { return pool_.size(); }
  /// A graph covered only by member k within the universe, if one exists.
  /// k must be one of the tested members.
  std::optional<Graph> unique_witness(std::size_t k);

  std::uint64_t sat_calls() const { return sat_calls_; }

 private:
  void load(const std::vector<std::vector<Ownership>>& ownership, std::span<const std::size_t> tested);

  std::vector<Candidate> owned_;
  std::span<const Candidate> pool_;
  EncodingContext ctx_;
  std::vector<std::optional<sat::Lit>> selectors_;
  std::vector<std::vector<Ownership>> ownership_;
  std::uint64_t sat_calls_ = 0;
};

struct BackboneSearchStats {
  std::size_t pruned_by_seed = 0;
  std::size_t tested = 0;
  std::uint64_t sat_calls = 0;
};

/// All backbones of the universe: candidates dominated by the seed are
/// dropped first, survivors get the SAT test.
std::vector<Permutation> find_backbones_sat(std::span<const Permutation> universe,
                                            std::span<const Permutation> seed,
                                            BackboneSearchStats* stats = nullptr);

/// One alternation step. Backbones are searched in universe + beta with the
/// old beta as seed, then the universe is refined against them.
struct BackboneRound {
  std::vector<Permutation> beta;      // sorted
  std::vector<Permutation> universe;  // refined, beta excluded
  bool stable = false;                // beta and universe unchanged
  BackboneSearchStats stats;
};
BackboneRound backbone_round(std::span<const Permutation> universe, std::span<const Permutation> beta);

struct BackboneFixpoint {
  std::vector<Permutation> beta;
  std::vector<Permutation> universe;
  std::size_t rounds = 0;
};
/// Rounds until stable. A non-empty seed is taken as the starting beta and
/// the universe is refined against it first.
BackboneFixpoint backbone_fixpoint(std::vector<Permutation> universe, std::vector<Permutation> seed);

}  // namespace lexcover
