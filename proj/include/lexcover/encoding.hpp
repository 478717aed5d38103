#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "lexcover/graph.hpp"
#include "lexcover/pattern.hpp"
#include "lexcover/sat_solver.hpp"

namespace lexcover {

/// CNF vocabulary over one unknown order-n graph: base variables x_1..x_m,
/// on-demand equality variables e_pq <-> (x_p = x_q) and cached activation
/// literals for covered(pattern). Owns its solver.
class EncodingContext {
 public:
  explicit EncodingContext(int order);

  EncodingContext(const EncodingContext&) = delete;
  EncodingContext& operator=(const EncodingContext&) = delete;

  int order() const { return order_; }
  int positions() const { return num_positions(order_); }
  sat::Solver& solver() { return solver_; }
  const sat::Solver& solver() const { return solver_; }

  /// x_pos, pos 1-based.
  sat::Var graph_var(int pos) const { return static_cast<sat::Var>(pos - 1); }

  /// e_pq, created with its four defining clauses on first use.
  sat::Var equality_var(int p, int q);
  std::size_t equality_count() const { return equalities_.size(); }

  /// The clause satisfied exactly by graphs that are not instances of the
  /// pattern. Empty for the universal pattern.
  std::vector<sat::Lit> not_covered_clause(const Pattern& gamma);

  /// Adds not_covered_clause(gamma), optionally disjoined with a guard
  /// literal that switches it off when true.
  void add_not_covered(const Pattern& gamma, std::optional<sat::Lit> guard = std::nullopt);

  /// Activation literal a with permanent clauses a -> covered(gamma).
  sat::Lit covered_activation(const Pattern& gamma);

  /// covered(gamma) as a list of literals over x and e variables, usable
  /// directly as assumptions without adding clauses.
  std::vector<sat::Lit> covered_literals(const Pattern& gamma);

  /// Adds covered(gamma) as permanent unit/equality clauses.
  void assert_covered(const Pattern& gamma);

  sat::Var new_var() { return solver_.new_var(); }
  sat::Result solve(std::span<const sat::Lit> assumptions = {}) { return solver_.solve(assumptions); }

  /// Graph read from the last model.
  Graph model_graph() const;

  /// Enumerates every distinct assignment of x_1..x_m extending to a model
  /// under the assumptions, adding one permanent blocking clause per model.
  /// visit returns false to stop early. Returns the number of models seen.
  std::size_t all_models_projected(std::span<const sat::Lit> assumptions,
                                   const std::function<bool(const Graph&)>& visit);

  void write_dimacs(std::ostream& out) const { solver_.write_dimacs(out); }

 private:
  int order_;
  sat::Solver solver_;
  std::unordered_map<std::uint32_t, sat::Var> equalities_;
  std::unordered_map<Pattern, sat::Lit, PatternHash> activations_;
};

}  // namespace lexcover
