#include "lexcover/dominance.hpp"

#include <algorithm>
#include <set>

namespace lexcover {

using sat::Lit;

namespace {

constexpr std::size_t kSimplifyEvery = 32;

int order_of(std::span<const Permutation> a, std::span<const Permutation> b) {
  if (!a.empty()) return a.front().degree();
  if (!b.empty()) return b.front().degree();
  return 0;
}

}  // namespace

DominanceChecker::DominanceChecker(int order) : ctx_(order) {}

void DominanceChecker::add_dominator(const Permutation& pi) { add_dominator(patterns_of(pi)); }

void DominanceChecker::add_dominator(const PatternSet& pats) {
  for (const auto& gamma : pats.patterns) ctx_.add_not_covered(gamma);
}

Lit DominanceChecker::add_guarded_dominator(const PatternSet& pats) {
  const Lit selector = Lit::pos(ctx_.new_var());
  for (const auto& gamma : pats.patterns) ctx_.add_not_covered(gamma, ~selector);
  return selector;
}

void DominanceChecker::retire(Lit selector) {
  ctx_.solver().add_clause({~selector});
  if (++retired_since_simplify_ >= kSimplifyEvery) {
    ctx_.solver().simplify();
    retired_since_simplify_ = 0;
  }
}

std::vector<bool> DominanceChecker::dominated(std::span<const Candidate> candidates,
                                              std::span<const Lit> active) {
  std::vector<std::size_t> which(candidates.size());
  for (std::size_t k = 0; k < which.size(); ++k) which[k] = k;
  return dominated(candidates, which, active);
}

std::vector<bool> DominanceChecker::dominated(std::span<const Candidate> pool,
                                              std::span<const std::size_t> which,
                                              std::span<const Lit> active) {
  const std::size_t count = which.size();
  std::vector<bool> result(count, false);
  std::vector<bool> refuted(count, false);

  std::vector<Lit> assumptions;
  for (std::size_t k = 0; k < count; ++k) {
    if (refuted[k]) continue;
    bool all_unsat = true;
    for (const auto& gamma : pool[which[k]].patterns.patterns) {
      assumptions.assign(active.begin(), active.end());
      const auto covered = ctx_.covered_literals(gamma);
      assumptions.insert(assumptions.end(), covered.begin(), covered.end());
      ++stats_.sat_calls;
      if (ctx_.solve(assumptions) == sat::Result::Unsat) continue;
      all_unsat = false;
      // The model is a graph covered by this candidate but not by the
      // dominators; it refutes every later candidate that also covers it.
      const std::uint64_t witness = ctx_.model_graph().bits();
      for (std::size_t j = k + 1; j < count; ++j) {
        if (!refuted[j] && pool[which[j]].map.makes_smaller(witness)) {
          refuted[j] = true;
          ++stats_.witness_prunes;
        }
      }
      break;
    }
    result[k] = all_unsat;
  }
  return result;
}

std::vector<Candidate> make_candidates(std::span<const Permutation> perms) {
  std::vector<Candidate> out;
  out.reserve(perms.size());
  for (const auto& pi : perms) out.emplace_back(pi);
  return out;
}

std::vector<Permutation> get_dominated(std::span<const Permutation> dominators,
                                       std::span<const Permutation> candidates) {
  const int n = order_of(dominators, candidates);
  if (candidates.empty() || n < 2) return {};
  for (const auto& pi : candidates) {
    if (pi.is_identity()) throw UsageError("get_dominated: identity is not a valid candidate");
  }
  DominanceChecker checker(n);
  for (const auto& pi : dominators) checker.add_dominator(pi);
  const auto pool = make_candidates(candidates);
  const auto flags = checker.dominated(pool);
  std::vector<Permutation> out;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (flags[k]) out.push_back(candidates[k]);
  }
  return out;
}

std::vector<Permutation> refine(std::span<const Permutation> s, std::span<const Permutation> beta) {
  const int n = order_of(s, beta);
  if (s.empty() || n < 2) return {};
  DominanceChecker checker(n);
  for (const auto& pi : beta) checker.add_dominator(pi);
  return refine(s, beta, checker);
}

std::vector<Permutation> refine(std::span<const Permutation> s, std::span<const Permutation> beta,
                                DominanceChecker& beta_checker) {
  const std::set<Permutation> beta_set(beta.begin(), beta.end());
  std::set<Permutation> ordered;
  for (const auto& pi : s) {
    if (!beta_set.contains(pi) && !pi.is_identity()) ordered.insert(pi);
  }
  std::vector<Permutation> members(ordered.begin(), ordered.end());
  if (members.empty()) return {};
  const auto pool = make_candidates(members);
  const std::size_t count = members.size();

  // Anything already dominated by beta alone contributes nothing.
  std::vector<bool> alive(count, true);
  {
    const auto flags = beta_checker.dominated(pool);
    for (std::size_t k = 0; k < count; ++k) alive[k] = !flags[k];
  }

  std::vector<std::size_t> rest;
  for (std::size_t picked = 0; picked < count; ++picked) {
    if (!alive[picked]) continue;
    rest.clear();
    for (std::size_t k = 0; k < count; ++k) {
      if (alive[k] && k != picked) rest.push_back(k);
    }
    if (rest.empty()) break;
    const Lit selector = beta_checker.add_guarded_dominator(pool[picked].patterns);
    const Lit active[] = {selector};
    const auto flags = beta_checker.dominated(pool, rest, active);
    beta_checker.retire(selector);
    for (std::size_t r = 0; r < rest.size(); ++r) {
      if (flags[r]) alive[rest[r]] = false;
    }
  }

  std::vector<Permutation> out;
  for (std::size_t k = 0; k < count; ++k) {
    if (alive[k]) out.push_back(members[k]);
  }
  return out;
}

}  // namespace lexcover
