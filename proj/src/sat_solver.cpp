#include "lexcover/sat_solver.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <ostream>

namespace lexcover::sat {

namespace {

double luby(double y, int x) {
  int size = 1;
  int seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  return std::pow(y, seq);
}

constexpr double kVarDecay = 0.95;
constexpr std::uint64_t kRestartBase = 100;

}  // namespace

Solver::Solver() = default;

Var Solver::new_var() {
  const Var v = num_vars();
  assigns_.push_back(0);
  levels_.push_back(0);
  reasons_.push_back(kNoReason);
  polarity_.push_back(0);
  seen_.push_back(0);
  activity_.push_back(0.0);
  heap_pos_.push_back(-1);
  watches_.emplace_back();
  watches_.emplace_back();
  heap_insert(v);
  return v;
}

Solver::CRef Solver::alloc_clause(std::span<const Lit> lits, bool learnt) {
  const auto c = static_cast<CRef>(arena_.size());
  arena_.push_back(static_cast<std::uint32_t>(lits.size()) << 2 | (learnt ? 2U : 0U));
  arena_.push_back(0);
  for (const Lit l : lits) arena_.push_back(l.index());
  return c;
}

void Solver::attach(CRef c) {
  const Lit* lits = clause_lits(c);
  watches_[(~lits[0]).index()].push_back({c, lits[1]});
  watches_[(~lits[1]).index()].push_back({c, lits[0]});
}

void Solver::enqueue(Lit l, CRef reason) {
  const auto v = static_cast<std::size_t>(l.var());
  assigns_[v] = l.negated() ? -1 : 1;
  levels_[v] = decision_level();
  reasons_[v] = reason;
  trail_.push_back(l);
}

bool Solver::add_clause(std::span<const Lit> input) {
  assert(decision_level() == 0);
  if (!ok_) return false;
  std::vector<Lit> lits(input.begin(), input.end());
  std::sort(lits.begin(), lits.end());
  std::size_t j = 0;
  Lit prev;
  for (const Lit l : lits) {
    if (value(l) > 0 || (!prev.is_undef() && l == ~prev)) return true;
    if (value(l) < 0 || l == prev) continue;
    lits[j++] = prev = l;
  }
  lits.resize(j);

  if (lits.empty()) {
    ok_ = false;
    return false;
  }
  if (lits.size() == 1) {
    enqueue(lits[0], kNoReason);
    units_.push_back(lits[0]);
    if (propagate() != kNoReason) ok_ = false;
    return ok_;
  }
  const CRef c = alloc_clause(lits, false);
  originals_.push_back(c);
  ++num_original_;
  attach(c);
  return true;
}

Solver::CRef Solver::propagate() {
  CRef confl = kNoReason;
  while (qhead_ < trail_.size()) {
    const Lit p = trail_[qhead_++];
    const Lit false_lit = ~p;
    auto& ws = watches_[p.index()];
    ++stats_.propagations;
    std::size_t i = 0;
    std::size_t j = 0;
    const std::size_t end = ws.size();
    while (i < end) {
      const Watcher w = ws[i++];
      if (value(w.blocker) > 0) {
        ws[j++] = w;
        continue;
      }
      Lit* lits = clause_lits(w.cref);
      if (lits[0] == false_lit) std::swap(lits[0], lits[1]);
      const Lit first = lits[0];
      const Watcher kept{w.cref, first};
      if (first != w.blocker && value(first) > 0) {
        ws[j++] = kept;
        continue;
      }
      const std::uint32_t size = clause_size(w.cref);
      bool moved = false;
      for (std::uint32_t k = 2; k < size; ++k) {
        if (value(lits[k]) >= 0) {
          lits[1] = lits[k];
          lits[k] = false_lit;
          watches_[(~lits[1]).index()].push_back(kept);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = kept;
      if (value(first) < 0) {
        confl = w.cref;
        qhead_ = trail_.size();
        while (i < end) ws[j++] = ws[i++];
      } else {
        enqueue(first, w.cref);
      }
    }
    ws.resize(j);
    if (confl != kNoReason) break;
  }
  return confl;
}

bool Solver::literal_redundant(Lit l) const {
  const CRef r = reasons_[static_cast<std::size_t>(l.var())];
  const Lit* lits = clause_lits(r);
  const std::uint32_t size = clause_size(r);
  for (std::uint32_t k = 1; k < size; ++k) {
    const Var v = lits[k].var();
    if (!seen_[static_cast<std::size_t>(v)] && level(v) > 0) return false;
  }
  return true;
}

void Solver::analyze(CRef confl, std::vector<Lit>& out, int& backtrack_level) {
  out.clear();
  out.emplace_back();
  int path = 0;
  Lit p;
  auto index = static_cast<std::ptrdiff_t>(trail_.size()) - 1;
  do {
    const Lit* lits = clause_lits(confl);
    const std::uint32_t size = clause_size(confl);
    for (std::uint32_t k = p.is_undef() ? 0 : 1; k < size; ++k) {
      const Lit q = lits[k];
      const auto v = static_cast<std::size_t>(q.var());
      if (!seen_[v] && levels_[v] > 0) {
        bump(q.var());
        seen_[v] = 1;
        if (levels_[v] >= decision_level()) {
          ++path;
        } else {
          out.push_back(q);
        }
      }
    }
    while (!seen_[static_cast<std::size_t>(trail_[static_cast<std::size_t>(index)].var())]) --index;
    p = trail_[static_cast<std::size_t>(index)];
    --index;
    confl = reasons_[static_cast<std::size_t>(p.var())];
    seen_[static_cast<std::size_t>(p.var())] = 0;
    --path;
  } while (path > 0);
  out[0] = ~p;

  analyze_clear_.clear();
  for (std::size_t k = 1; k < out.size(); ++k) analyze_clear_.push_back(out[k].var());
  std::size_t j = 1;
  for (std::size_t k = 1; k < out.size(); ++k) {
    if (reasons_[static_cast<std::size_t>(out[k].var())] == kNoReason || !literal_redundant(out[k])) {
      out[j++] = out[k];
    }
  }
  out.resize(j);
  for (const Var v : analyze_clear_) seen_[static_cast<std::size_t>(v)] = 0;

  backtrack_level = 0;
  if (out.size() > 1) {
    std::size_t max_k = 1;
    for (std::size_t k = 2; k < out.size(); ++k) {
      if (level(out[k].var()) > level(out[max_k].var())) max_k = k;
    }
    std::swap(out[1], out[max_k]);
    backtrack_level = level(out[1].var());
  }
}

void Solver::cancel_until(int target) {
  if (decision_level() <= target) return;
  const auto stop = static_cast<std::size_t>(trail_lim_[static_cast<std::size_t>(target)]);
  for (std::size_t c = trail_.size(); c-- > stop;) {
    const auto v = static_cast<std::size_t>(trail_[c].var());
    polarity_[v] = assigns_[v] > 0 ? 1 : 0;
    assigns_[v] = 0;
    reasons_[v] = kNoReason;
    if (heap_pos_[v] < 0) heap_insert(static_cast<Var>(v));
  }
  trail_.resize(stop);
  trail_lim_.resize(static_cast<std::size_t>(target));
  qhead_ = trail_.size();
}

Lit Solver::pick_branch() {
  while (!heap_.empty()) {
    const Var v = heap_pop();
    if (assigns_[static_cast<std::size_t>(v)] == 0) {
      return Lit::make(v, polarity_[static_cast<std::size_t>(v)] != 0);
    }
  }
  return Lit();
}

bool Solver::locked(CRef c) const {
  const Lit first = clause_lits(c)[0];
  return value(first) > 0 && reasons_[static_cast<std::size_t>(first.var())] == c;
}

void Solver::reduce_learnts() {
  std::vector<CRef> order = learnts_;
  std::stable_sort(order.begin(), order.end(), [&](CRef a, CRef b) {
    return arena_[a + 1] > arena_[b + 1];  // worst (highest LBD) first
  });
  std::size_t removed = 0;
  const std::size_t target = order.size() / 2;
  for (const CRef c : order) {
    if (removed >= target) break;
    if (arena_[c + 1] <= 2 || locked(c)) continue;
    mark_deleted(c);
    wasted_ += clause_size(c) + 2;
    ++removed;
  }
  std::erase_if(learnts_, [&](CRef c) { return clause_deleted(c); });
  purge_watches();
  maybe_compact();
  max_learnts_ = max_learnts_ + max_learnts_ / 10;
}

void Solver::purge_watches() {
  for (auto& ws : watches_) {
    std::erase_if(ws, [&](const Watcher& w) { return clause_deleted(w.cref); });
  }
}

void Solver::maybe_compact() {
  if (wasted_ * 2 < arena_.size()) return;
  std::vector<std::uint32_t> fresh;
  fresh.reserve(arena_.size() - wasted_);
  auto move_all = [&](std::vector<CRef>& refs) {
    for (CRef& c : refs) {
      const auto nc = static_cast<CRef>(fresh.size());
      const std::uint32_t words = clause_size(c) + 2;
      fresh.insert(fresh.end(), arena_.begin() + c, arena_.begin() + c + words);
      arena_[c + 1] = nc;  // forwarding address
      c = nc;
    }
  };
  move_all(originals_);
  move_all(learnts_);
  for (const Lit l : trail_) {
    auto& r = reasons_[static_cast<std::size_t>(l.var())];
    if (r != kNoReason) r = arena_[r + 1];
  }
  arena_ = std::move(fresh);
  wasted_ = 0;
  for (auto& ws : watches_) ws.clear();
  for (const CRef c : originals_) attach(c);
  for (const CRef c : learnts_) attach(c);
}

void Solver::simplify() {
  assert(decision_level() == 0);
  if (!ok_) return;
  if (propagate() != kNoReason) {
    ok_ = false;
    return;
  }
  for (const Lit l : trail_) reasons_[static_cast<std::size_t>(l.var())] = kNoReason;
  auto drop_satisfied = [&](std::vector<CRef>& refs, bool original) {
    std::erase_if(refs, [&](CRef c) {
      const Lit* lits = clause_lits(c);
      for (std::uint32_t k = 0; k < clause_size(c); ++k) {
        if (value(lits[k]) > 0) {
          mark_deleted(c);
          wasted_ += clause_size(c) + 2;
          if (original) --num_original_;
          return true;
        }
      }
      return false;
    });
  };
  drop_satisfied(originals_, true);
  drop_satisfied(learnts_, false);
  purge_watches();
  maybe_compact();
}

Result Solver::search(std::uint64_t conflict_budget, std::span<const Lit> assumptions, bool& done) {
  std::uint64_t conflicts = 0;
  std::vector<Lit> learnt;
  for (;;) {
    const CRef confl = propagate();
    if (confl != kNoReason) {
      ++stats_.conflicts;
      ++conflicts;
      if (decision_level() == 0) {
        ok_ = false;
        done = true;
        return Result::Unsat;
      }
      int backtrack_level = 0;
      analyze(confl, learnt, backtrack_level);
      cancel_until(backtrack_level);
      if (learnt.size() == 1) {
        enqueue(learnt[0], kNoReason);
      } else {
        const CRef c = alloc_clause(learnt, true);
        // LBD: number of distinct decision levels in the clause.
        std::vector<int> lv;
        for (const Lit l : learnt) lv.push_back(level(l.var()));
        std::sort(lv.begin(), lv.end());
        arena_[c + 1] = static_cast<std::uint32_t>(std::unique(lv.begin(), lv.end()) - lv.begin());
        learnts_.push_back(c);
        attach(c);
        enqueue(learnt[0], c);
      }
      var_inc_ /= kVarDecay;
      continue;
    }

    if (conflicts >= conflict_budget) {
      cancel_until(0);
      done = false;
      return Result::Unsat;
    }
    if (learnts_.size() >= max_learnts_ + trail_.size()) reduce_learnts();

    Lit next;
    while (decision_level() < static_cast<int>(assumptions.size())) {
      const Lit a = assumptions[static_cast<std::size_t>(decision_level())];
      if (value(a) > 0) {
        trail_lim_.push_back(static_cast<int>(trail_.size()));
      } else if (value(a) < 0) {
        done = true;
        return Result::Unsat;
      } else {
        next = a;
        break;
      }
    }
    if (next.is_undef()) {
      ++stats_.decisions;
      next = pick_branch();
      if (next.is_undef()) {
        done = true;
        return Result::Sat;
      }
    }
    trail_lim_.push_back(static_cast<int>(trail_.size()));
    enqueue(next, kNoReason);
  }
}

Result Solver::solve(std::span<const Lit> assumptions) {
  ++stats_.solves;
  if (!ok_) return Result::Unsat;
  if (max_learnts_ == 0) max_learnts_ = std::max<std::size_t>(num_original_ / 3, 4000);
  for (int round = 0;; ++round) {
    bool done = false;
    const auto budget = static_cast<std::uint64_t>(luby(2.0, round) * kRestartBase);
    const Result r = search(budget, assumptions, done);
    if (done) {
      if (r == Result::Sat) model_ = assigns_;
      cancel_until(0);
      return r;
    }
    ++stats_.restarts;
  }
}

void Solver::write_dimacs(std::ostream& out) const {
  std::size_t top_units = 0;
  for (const Lit l : trail_) {
    if (level(l.var()) == 0) ++top_units;
  }
  if (!ok_) {
    out << "p cnf " << num_vars() << " 1\n0\n";
    return;
  }
  out << "p cnf " << num_vars() << ' ' << (num_original_ + top_units) << '\n';
  for (const Lit l : trail_) {
    if (level(l.var()) == 0) out << l.dimacs() << " 0\n";
  }
  for (const CRef c : originals_) {
    const Lit* lits = clause_lits(c);
    for (std::uint32_t k = 0; k < clause_size(c); ++k) out << lits[k].dimacs() << ' ';
    out << "0\n";
  }
}

void Solver::bump(Var v) {
  auto& a = activity_[static_cast<std::size_t>(v)];
  a += var_inc_;
  if (a > 1e100) {
    for (auto& x : activity_) x *= 1e-100;
    var_inc_ *= 1e-100;
  }
  const int pos = heap_pos_[static_cast<std::size_t>(v)];
  if (pos >= 0) heap_up(static_cast<std::size_t>(pos));
}

void Solver::heap_insert(Var v) {
  heap_pos_[static_cast<std::size_t>(v)] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_.size() - 1);
}

void Solver::heap_up(std::size_t i) {
  const Var v = heap_[i];
  while (i > 0) {
    const std::size_t parent = (i - 1) / 2;
    if (!heap_less(v, heap_[parent])) break;
    heap_[i] = heap_[parent];
    heap_pos_[static_cast<std::size_t>(heap_[i])] = static_cast<int>(i);
    i = parent;
  }
  heap_[i] = v;
  heap_pos_[static_cast<std::size_t>(v)] = static_cast<int>(i);
}

void Solver::heap_down(std::size_t i) {
  const Var v = heap_[i];
  for (;;) {
    std::size_t child = 2 * i + 1;
    if (child >= heap_.size()) break;
    if (child + 1 < heap_.size() && heap_less(heap_[child + 1], heap_[child])) ++child;
    if (!heap_less(heap_[child], v)) break;
    heap_[i] = heap_[child];
    heap_pos_[static_cast<std::size_t>(heap_[i])] = static_cast<int>(i);
    i = child;
  }
  heap_[i] = v;
  heap_pos_[static_cast<std::size_t>(v)] = static_cast<int>(i);
}

Var Solver::heap_pop() {
  const Var top = heap_.front();
  heap_pos_[static_cast<std::size_t>(top)] = -1;
  const Var last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_pos_[static_cast<std::size_t>(last)] = 0;
    heap_down(0);
  }
  return top;
}

}  // namespace lexcover::sat
