#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lexcover/encoding.hpp"
#include "lexcover/pattern.hpp"
#include "lexcover/permutation.hpp"

namespace lexcover {

/// A permutation with its patterns and position map precomputed.
struct Candidate {
  explicit Candidate(const Permutation& pi)
      : perm(pi), patterns(patterns_of(pi)), map(pi) {}

  Permutation perm;
  PatternSet patterns;
  PositionMap map;
};

std::vector<Candidate> make_candidates(std::span<const Permutation> perms);

struct DominanceStats {
  std::uint64_t sat_calls = 0;
  std::uint64_t witness_prunes = 0;
};

/// Incremental dominance oracle: notCovered clauses of a dominator set are
/// loaded once, then candidates are tested pattern by pattern under
/// covered(pattern) assumptions. Dominators can be permanent or guarded by
/// a selector literal that is active only when assumed.
class DominanceChecker {
 public:
  explicit DominanceChecker(int order);

  int order() const { return ctx_.order(); }

  void add_dominator(const Permutation& pi);
  void add_dominator(const PatternSet& pats);

  /// Loads notCovered clauses switched on by the returned selector.
  sat::Lit add_guarded_dominator(const PatternSet& pats);
  /// Permanently switches a guarded dominator off.
  void retire(sat::Lit selector);

  /// result[k] is true iff cover(candidates[k]) lies inside the cover of the
  /// permanent dominators plus the guarded ones whose selectors are active.
  std::vector<bool> dominated(std::span<const Candidate> candidates,
                              std::span<const sat::Lit> active = {});
  /// Same over pool[which[k]].
  std::vector<bool> dominated(std::span<const Candidate> pool, std::span<const std::size_t> which,
                              std::span<const sat::Lit> active = {});

  const DominanceStats& stats() const { return stats_; }
  EncodingContext& context() { return ctx_; }

 private:
  EncodingContext ctx_;
  DominanceStats stats_;
  std::size_t retired_since_simplify_ = 0;
};

/// Members of candidates whose cover lies inside cover(dominators), in
/// candidate order.
std::vector<Permutation> get_dominated(std::span<const Permutation> dominators,
                                       std::span<const Permutation> candidates);

/// Dominance-free subset of s \ beta modulo beta; pick order is ascending
/// permutation order.
std::vector<Permutation> refine(std::span<const Permutation> s, std::span<const Permutation> beta);

/// Same, reusing a checker that already holds exactly beta as permanent
/// dominators.
std::vector<Permutation> refine(std::span<const Permutation> s, std::span<const Permutation> beta,
                                DominanceChecker& beta_checker);

}  // namespace lexcover
