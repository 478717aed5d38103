#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace lexcover::sat {

using Var = int;

/// Literal encoded as 2*var + negated.
class Lit {
 public:
  constexpr Lit() = default;
  static constexpr Lit pos(Var v) { return Lit(static_cast<std::uint32_t>(v) << 1); }
  static constexpr Lit neg(Var v) { return Lit((static_cast<std::uint32_t>(v) << 1) | 1U); }
  static constexpr Lit make(Var v, bool value) { return value ? pos(v) : neg(v); }

  constexpr Var var() const { return static_cast<Var>(x_ >> 1); }
  constexpr bool negated() const { return x_ & 1U; }
  constexpr std::uint32_t index() const { return x_; }
  constexpr Lit operator~() const { return Lit(x_ ^ 1U); }
  constexpr bool is_undef() const { return x_ == kUndef; }
  /// DIMACS form: +/-(var+1).
  constexpr int dimacs() const { return negated() ? -(var() + 1) : var() + 1; }

  constexpr bool operator==(const Lit&) const = default;
  constexpr auto operator<=>(const Lit&) const = default;

 private:
  static constexpr std::uint32_t kUndef = ~std::uint32_t{0};
  constexpr explicit Lit(std::uint32_t x) : x_(x) {}
  std::uint32_t x_ = kUndef;
};

enum class Result { Sat, Unsat };

struct SolverStats {
  std::uint64_t solves = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t restarts = 0;
};

/// Incremental CDCL solver: permanent clauses, solving under assumptions,
/// model extraction. Single-threaded; independent instances share nothing.
class Solver {
 public:
  Solver();

  Var new_var();
  int num_vars() const { return static_cast<int>(assigns_.size()); }
  /// Number of live problem (non-learnt) clauses, units included.
  std::size_t num_clauses() const { return num_original_ + units_.size(); }

  /// Adds a permanent clause. Returns false once the formula is UNSAT at
  /// the top level.
  bool add_clause(std::span<const Lit> lits);
  bool add_clause(std::initializer_list<Lit> lits) {
    return add_clause(std::span<const Lit>(lits.begin(), lits.size()));
  }

  Result solve(std::span<const Lit> assumptions = {});
  Result solve(std::initializer_list<Lit> assumptions) {
    return solve(std::span<const Lit>(assumptions.begin(), assumptions.size()));
  }

  /// Model of the last Sat answer.
  bool model_value(Var v) const { return model_[static_cast<std::size_t>(v)] > 0; }
  bool model_value(Lit l) const { return model_value(l.var()) != l.negated(); }

  /// False once the clause set itself is unsatisfiable.
  bool okay() const { return ok_; }

  /// Drops clauses satisfied at the top level (e.g. after retiring a guard).
  void simplify();

  /// DIMACS CNF of the problem clauses currently loaded.
  void write_dimacs(std::ostream& out) const;

  const SolverStats& stats() const { return stats_; }

 private:
  using CRef = std::uint32_t;
  static constexpr CRef kNoReason = ~CRef{0};

  struct Watcher {
    CRef cref;
    Lit blocker;
  };

  // Clause arena layout: [header][lbd][lits...]; header = size<<2 | learnt<<1 | deleted.
  std::uint32_t clause_size(CRef c) const { return arena_[c] >> 2; }
  bool clause_learnt(CRef c) const { return (arena_[c] >> 1) & 1U; }
  bool clause_deleted(CRef c) const { return arena_[c] & 1U; }
  void mark_deleted(CRef c) { arena_[c] |= 1U; }
  Lit* clause_lits(CRef c) { return reinterpret_cast<Lit*>(&arena_[c + 2]); }
  const Lit* clause_lits(CRef c) const { return reinterpret_cast<const Lit*>(&arena_[c + 2]); }

  std::int8_t value(Lit l) const {
    const std::int8_t v = assigns_[static_cast<std::size_t>(l.var())];
    return l.negated() ? static_cast<std::int8_t>(-v) : v;
  }
  int level(Var v) const { return levels_[static_cast<std::size_t>(v)]; }
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  CRef alloc_clause(std::span<const Lit> lits, bool learnt);
  void attach(CRef c);
  void enqueue(Lit l, CRef reason);
  CRef propagate();
  void analyze(CRef confl, std::vector<Lit>& learnt, int& backtrack_level);
  bool literal_redundant(Lit l) const;
  void cancel_until(int level);
  Lit pick_branch();
  Result search(std::uint64_t conflict_budget, std::span<const Lit> assumptions, bool& done);
  void reduce_learnts();
  void purge_watches();
  void maybe_compact();
  bool locked(CRef c) const;

  void bump(Var v);
  void heap_insert(Var v);
  void heap_up(std::size_t i);
  void heap_down(std::size_t i);
  Var heap_pop();
  bool heap_less(Var a, Var b) const {
    return activity_[static_cast<std::size_t>(a)] > activity_[static_cast<std::size_t>(b)];
  }

  bool ok_ = true;
  std::vector<std::uint32_t> arena_;
  std::size_t wasted_ = 0;
  std::vector<CRef> originals_;
  std::vector<CRef> learnts_;
  std::vector<Lit> units_;
  std::size_t num_original_ = 0;

  std::vector<std::vector<Watcher>> watches_;
  std::vector<std::int8_t> assigns_;
  std::vector<std::int8_t> model_;
  std::vector<int> levels_;
  std::vector<CRef> reasons_;
  std::vector<std::uint8_t> polarity_;
  std::vector<std::uint8_t> seen_;
  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  std::size_t qhead_ = 0;

  std::vector<double> activity_;
  double var_inc_ = 1.0;
  std::vector<Var> heap_;
  std::vector<int> heap_pos_;

  std::size_t max_learnts_ = 0;
  std::vector<Lit> analyze_stack_;
  std::vector<Var> analyze_clear_;
  SolverStats stats_;
};

}  // namespace lexcover::sat
