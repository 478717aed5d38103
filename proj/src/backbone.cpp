#include "lexcover/backbone.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <unordered_map>

namespace lexcover {

using sat::Lit;

namespace {

// Members tested per oracle instance.
constexpr std::size_t kOracleChunk = 256;

}  // namespace

PermutationTable::PermutationTable(int n) : order_(n), perms_(nontrivial_permutations(n)) {
  maps_.reserve(perms_.size());
  for (const auto& pi : perms_) maps_.emplace_back(pi);
}

CoveringPerms PermutationTable::covering(const Graph& g, std::size_t bound) const {
  if (g.order() != order_) throw UsageError("covering: graph order mismatch");
  CoveringPerms out;
  for (std::size_t k = 0; k < maps_.size(); ++k) {
    if (!maps_[k].makes_smaller(g.bits())) continue;
    out.perms.push_back(perms_[k]);
    if (out.perms.size() >= bound) {
      out.many = true;
      break;
    }
  }
  return out;
}

bool PermutationTable::any_covers(std::uint64_t bits) const {
  return std::any_of(maps_.begin(), maps_.end(),
                     [&](const PositionMap& m) { return m.makes_smaller(bits); });
}

std::size_t PermutationTable::count_covering(std::uint64_t bits, std::size_t bound) const {
  std::size_t count = 0;
  for (const auto& m : maps_) {
    if (m.makes_smaller(bits) && ++count >= bound) break;
  }
  return count;
}

CoveringPerms covering_perms(const Graph& g, std::size_t bound) {
  return PermutationTable(g.order()).covering(g, bound);
}

BackboneState::BackboneState(int n, std::size_t bound)
    : table_(n), bound_(bound), checker_(std::make_unique<DominanceChecker>(n)) {
  if (bound < 1) throw UsageError("bound must be at least 1");
}

bool BackboneState::contains(const Permutation& pi) const {
  return std::find(beta_.begin(), beta_.end(), pi) != beta_.end();
}

void BackboneState::add(const Permutation& pi) {
  if (contains(pi)) return;
  beta_.push_back(pi);
  const PatternSet pats = patterns_of(pi);
  checker_->add_dominator(pats);
  for (const auto& gamma : pats.patterns) {
    const int m = gamma.size();
    std::vector<int> class_size(static_cast<std::size_t>(m) + 1, 0);
    for (const Cell& c : gamma.cells()) {
      if (c.kind == Cell::Kind::Var) ++class_size[c.rep];
    }
    int suffix = 0;
    for (int p = m; p >= 1; --p) {
      const Cell& c = gamma.cell(p);
      if (c.kind != Cell::Kind::Var || c.rep != p || class_size[static_cast<std::size_t>(p)] != 1) break;
      ++suffix;
    }
    beta_patterns_.push_back(gamma);
    free_suffix_.push_back(suffix);
  }
}

int BackboneState::covered_suffix(std::uint64_t bits) const {
  int best = -1;
  for (std::size_t k = 0; k < beta_patterns_.size(); ++k) {
    if (free_suffix_[k] > best && beta_patterns_[k].matches(bits)) best = free_suffix_[k];
  }
  return best;
}

std::string to_string(StatusKind kind) {
  switch (kind) {
    case StatusKind::Backbone: return "backbone";
    case StatusKind::Canonical: return "canonical";
    case StatusKind::Covered: return "covered";
    case StatusKind::Many: return "many";
    case StatusKind::Ambiguous: return "ambiguous";
  }
  return "unknown";
}

BackboneStatus backbone_status(const Graph& g, BackboneState& state) {
  ++state.counters().status_calls;
  auto cov = state.table().covering(g, state.bound());
  if (cov.many) return {StatusKind::Many, {}};
  if (cov.perms.empty()) return {StatusKind::Canonical, {}};
  auto refined = refine(cov.perms, state.beta(), state.checker());
  if (refined.size() == 1) return {StatusKind::Backbone, std::move(refined)};
  if (refined.empty()) return {StatusKind::Covered, {}};
  return {StatusKind::Ambiguous, std::move(refined)};
}

namespace {

// Bits of vec positions m-k+1..m.
std::uint64_t suffix_mask(int m, int k) { return full_mask(m) & ~full_mask(m - k); }

// Number of zero vec positions at the end of g.
int zero_suffix(std::uint64_t bits, int m) {
  if (bits == 0) return m;
  return std::countl_zero(bits << (64 - m));
}

// Rank of g within its 2^k suffix block (position m is the counter lsb).
std::uint64_t suffix_rank(std::uint64_t bits, int m, int k) {
  std::uint64_t rank = 0;
  for (int t = 0; t < k; ++t) {
    if ((bits >> (m - 1 - t)) & 1U) rank |= std::uint64_t{1} << t;
  }
  return rank;
}

}  // namespace

IterativeResult find_backbones_iterative(int n, const IterativeOptions& options) {
  if (n < 2) return {};
  BackboneState state(n, options.bound);
  const int m = num_positions(n);
  auto& counters = state.counters();
  IterativeResult result;

  auto rescan_block = [&](std::uint64_t from, int k, const char* leap) {
    const std::uint64_t last = from | suffix_mask(m, k);
    Graph h(n, from);
    while (h.bits() != last) {
      h = *increment(h);
      if (state.covers(h.bits())) continue;
      if (std::string(leap) == "covered") {
        result.rescan_violations.push_back("covered leap skipped uncovered graph " +
                                           std::to_string(h.id()));
        continue;
      }
      const auto st = backbone_status(h, state);
      if (st.kind == StatusKind::Backbone) {
        result.rescan_violations.push_back(std::string(leap) + " leap skipped backbone graph " +
                                           std::to_string(h.id()) + " of " +
                                           st.perms.front().to_string());
      }
    }
  };

  auto all_flips = [&](std::uint64_t bits, int k, auto&& predicate) {
    for (int t = 0; t < k; ++t) {
      if (!predicate(bits | (std::uint64_t{1} << (m - 1 - t)))) return false;
    }
    return true;
  };

  Graph g = Graph::empty(n);
  for (;;) {
    ++counters.visited;
    if (options.progress && counters.visited % options.progress_every == 0) {
      options.progress(counters, state.beta().size());
    }
    const std::uint64_t bits = g.bits();
    int leap = 0;

    const int suffix = state.covered_suffix(bits);
    if (suffix >= 0) {
      if (suffix > 0) {
        ++counters.leaps_covered;
        leap = suffix;
        if (options.debug_rescan) rescan_block(bits, suffix, "covered");
      }
    } else {
      const auto status = backbone_status(g, state);
      const int zeros = zero_suffix(bits, m);
      switch (status.kind) {
        case StatusKind::Backbone:
          state.add(status.perms.front());
          break;
        case StatusKind::Canonical:
          if (zeros > 0 && all_flips(bits, zeros, [&](std::uint64_t h) {
                return !state.table().any_covers(h);
              })) {
            ++counters.leaps_canonical;
            leap = zeros;
            if (options.debug_rescan) rescan_block(bits, zeros, "canonical");
          }
          break;
        case StatusKind::Many:
          if (options.many_leap && zeros > 0 && all_flips(bits, zeros, [&](std::uint64_t h) {
                return state.table().count_covering(h, state.bound()) >= state.bound();
              })) {
            ++counters.leaps_many;
            leap = zeros;
          }
          break;
        case StatusKind::Covered:
        case StatusKind::Ambiguous:
          break;
      }
    }

    std::uint64_t next_bits = bits;
    if (leap > 0) {
      counters.skipped += (std::uint64_t{1} << leap) - 1 - suffix_rank(bits, m, leap);
      next_bits |= suffix_mask(m, leap);
    }
    const auto next = increment(Graph(n, next_bits));
    if (!next) break;
    g = *next;
  }

  result.beta = state.beta();
  result.counters = counters;
  return result;
}

bool is_backbone_sat(const Permutation& pi, std::span<const Permutation> universe) {
  if (std::find(universe.begin(), universe.end(), pi) == universe.end()) {
    throw UsageError("is_backbone_sat: permutation is not in the universe");
  }
  std::vector<Permutation> others;
  for (const auto& q : universe) {
    if (q != pi) others.push_back(q);
  }
  DominanceChecker checker(pi.degree());
  for (const auto& q : others) checker.add_dominator(q);
  const Candidate candidate(pi);
  return !checker.dominated(std::span<const Candidate>(&candidate, 1)).front();
}

std::vector<std::vector<Ownership>> pattern_ownership(std::span<const Candidate> pool) {
  constexpr std::size_t kMany = static_cast<std::size_t>(-1);
  std::unordered_map<Pattern, std::size_t, PatternHash> owner;
  for (std::size_t k = 0; k < pool.size(); ++k) {
    for (const auto& gamma : pool[k].patterns.patterns) {
      auto [it, fresh] = owner.emplace(gamma, k);
      if (!fresh && it->second != k) it->second = kMany;
    }
  }
  std::vector<std::vector<Ownership>> out(pool.size());
  std::unordered_map<Pattern, bool, PatternHash> seen;
  for (std::size_t k = 0; k < pool.size(); ++k) {
    for (const auto& gamma : pool[k].patterns.patterns) {
      if (owner.at(gamma) != kMany) {
        out[k].push_back(Ownership::Exclusive);
      } else {
        out[k].push_back(seen.emplace(gamma, true).second ? Ownership::SharedFirst : Ownership::Shared);
      }
    }
  }
  return out;
}

BackboneOracle::BackboneOracle(std::span<const Permutation> universe)
    : owned_(make_candidates(universe)),
      pool_(owned_),
      ctx_(universe.empty() ? 2 : universe.front().degree()) {
  std::vector<std::size_t> tested(owned_.size());
  for (std::size_t k = 0; k < tested.size(); ++k) tested[k] = k;
  load(pattern_ownership(pool_), tested);
}

BackboneOracle::BackboneOracle(std::span<const Candidate> pool,
                               const std::vector<std::vector<Ownership>>& ownership,
                               std::span<const std::size_t> tested)
    : pool_(pool), ctx_(pool.empty() ? 2 : pool.front().perm.degree()) {
  load(ownership, tested);
}

void BackboneOracle::load(const std::vector<std::vector<Ownership>>& ownership,
                          std::span<const std::size_t> tested) {
  selectors_.assign(pool_.size(), std::nullopt);
  ownership_.assign(pool_.size(), {});
  for (auto k : tested) ownership_[k] = ownership[k];

  int index_bits = 1;
  while ((std::size_t{1} << index_bits) < tested.size()) ++index_bits;
  std::vector<sat::Var> bit_vars;
  for (int t = 0; t < index_bits; ++t) bit_vars.push_back(ctx_.new_var());
  for (std::size_t slot = 0; slot < tested.size(); ++slot) {
    const auto k = tested[slot];
    const auto& own = ownership[k];
    if (std::none_of(own.begin(), own.end(), [](Ownership o) { return o == Ownership::Exclusive; })) continue;
    const Lit s = Lit::pos(ctx_.new_var());
    selectors_[k] = s;
    for (int t = 0; t < index_bits; ++t) {
      ctx_.solver().add_clause({~s, Lit::make(bit_vars[static_cast<std::size_t>(t)], (slot >> t) & 1U)});
    }
  }

  for (std::size_t k = 0; k < pool_.size(); ++k) {
    const auto& pats = pool_[k].patterns.patterns;
    for (std::size_t i = 0; i < pats.size(); ++i) {
      switch (ownership[k][i]) {
        case Ownership::Shared: break;
        case Ownership::SharedFirst: ctx_.add_not_covered(pats[i]); break;
        case Ownership::Exclusive:
          if (selectors_[k]) {
            ctx_.add_not_covered(pats[i], *selectors_[k]);
          } else {
            ctx_.add_not_covered(pats[i]);
          }
          break;
      }
    }
  }
}

std::optional<Graph> BackboneOracle::unique_witness(std::size_t k) {
  if (!selectors_[k]) return std::nullopt;
  const auto& pats = pool_[k].patterns.patterns;
  std::vector<Lit> assumptions;
  for (std::size_t i = 0; i < pats.size(); ++i) {
    if (ownership_[k][i] != Ownership::Exclusive) continue;
    assumptions.assign(1, *selectors_[k]);
    const auto covered = ctx_.covered_literals(pats[i]);
    assumptions.insert(assumptions.end(), covered.begin(), covered.end());
    ++sat_calls_;
    if (ctx_.solve(assumptions) == sat::Result::Sat) return ctx_.model_graph();
  }
  return std::nullopt;
}

std::vector<Permutation> find_backbones_sat(std::span<const Permutation> universe,
                                            std::span<const Permutation> seed,
                                            BackboneSearchStats* stats) {
  if (universe.empty()) return {};
  const std::set<Permutation> universe_set(universe.begin(), universe.end());
  std::vector<Permutation> seed_in;
  for (const auto& pi : seed) {
    if (!universe_set.contains(pi)) throw UsageError("find_backbones_sat: seed must lie in the universe");
    seed_in.push_back(pi);
  }
  const std::set<Permutation> seed_set(seed_in.begin(), seed_in.end());
  std::vector<Permutation> rest;
  for (const auto& pi : universe) {
    if (!seed_set.contains(pi)) rest.push_back(pi);
  }

  std::set<Permutation> non_backbones;
  if (!seed_in.empty() && !rest.empty()) {
    for (auto& pi : get_dominated(seed_in, rest)) non_backbones.insert(pi);
  }

  const auto pool = make_candidates(universe);
  const auto ownership = pattern_ownership(pool);
  std::vector<std::size_t> candidates;
  for (std::size_t k = 0; k < universe.size(); ++k) {
    if (!non_backbones.contains(universe[k])) candidates.push_back(k);
  }

  std::vector<bool> is_backbone(universe.size(), false);
  std::uint64_t sat_calls = 0;
  for (std::size_t first = 0; first < candidates.size(); first += kOracleChunk) {
    const auto chunk = std::span<const std::size_t>(candidates).subspan(
        first, std::min(kOracleChunk, candidates.size() - first));
    BackboneOracle oracle(pool, ownership, chunk);
    for (auto k : chunk) is_backbone[k] = oracle.unique_witness(k).has_value();
    sat_calls += oracle.sat_calls();
  }

  std::vector<Permutation> out;
  for (std::size_t k = 0; k < universe.size(); ++k) {
    if (is_backbone[k]) out.push_back(universe[k]);
  }
  if (stats) {
    stats->pruned_by_seed = non_backbones.size();
    stats->tested = candidates.size();
    stats->sat_calls = sat_calls;
  }
  return out;
}

BackboneRound backbone_round(std::span<const Permutation> universe, std::span<const Permutation> beta) {
  std::set<Permutation> all(universe.begin(), universe.end());
  all.insert(beta.begin(), beta.end());
  const std::vector<Permutation> pool(all.begin(), all.end());
  std::vector<Permutation> seed(beta.begin(), beta.end());
  std::sort(seed.begin(), seed.end());

  BackboneRound r;
  r.beta = find_backbones_sat(pool, seed, &r.stats);
  std::sort(r.beta.begin(), r.beta.end());
  r.universe = refine(universe, r.beta);
  r.stable = r.beta == seed && std::equal(r.universe.begin(), r.universe.end(), universe.begin(), universe.end());
  return r;
}

BackboneFixpoint backbone_fixpoint(std::vector<Permutation> universe, std::vector<Permutation> seed) {
  std::sort(seed.begin(), seed.end());
  if (!seed.empty()) universe = refine(universe, seed);
  BackboneFixpoint f{std::move(seed), std::move(universe), 0};
  for (;;) {
    auto r = backbone_round(f.universe, f.beta);
    ++f.rounds;
    f.beta = std::move(r.beta);
    f.universe = std::move(r.universe);
    if (r.stable) return f;
  }
}

}  // namespace lexcover
