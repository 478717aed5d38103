#include "lexcover/encoding.hpp"

namespace lexcover {

using sat::Lit;
using sat::Var;

EncodingContext::EncodingContext(int order) : order_(order) {
  if (order < 2 || order > kMaxOrder) throw UsageError("encoding: order must lie in [2, 10]");
  for (int p = 0; p < positions(); ++p) solver_.new_var();
}

Var EncodingContext::equality_var(int p, int q) {
  if (p == q) throw UsageError("equality_var: positions must differ");
  if (p > q) std::swap(p, q);
  const auto key = static_cast<std::uint32_t>(p << 8 | q);
  if (auto it = equalities_.find(key); it != equalities_.end()) return it->second;
  const Var e = solver_.new_var();
  const Var xp = graph_var(p);
  const Var xq = graph_var(q);
  solver_.add_clause({Lit::neg(e), Lit::neg(xp), Lit::pos(xq)});
  solver_.add_clause({Lit::neg(e), Lit::pos(xp), Lit::neg(xq)});
  solver_.add_clause({Lit::pos(e), Lit::pos(xp), Lit::pos(xq)});
  solver_.add_clause({Lit::pos(e), Lit::neg(xp), Lit::neg(xq)});
  equalities_.emplace(key, e);
  return e;
}

std::vector<Lit> EncodingContext::not_covered_clause(const Pattern& gamma) {
  if (gamma.order() != order_) throw UsageError("pattern order does not match context");
  std::vector<Lit> clause;
  for (int p = 1; p <= gamma.size(); ++p) {
    const Cell& c = gamma.cell(p);
    switch (c.kind) {
      case Cell::Kind::Zero: clause.push_back(Lit::pos(graph_var(p))); break;
      case Cell::Kind::One: clause.push_back(Lit::neg(graph_var(p))); break;
      case Cell::Kind::Var:
        if (c.rep != p) clause.push_back(Lit::neg(equality_var(c.rep, p)));
        break;
    }
  }
  return clause;
}

void EncodingContext::add_not_covered(const Pattern& gamma, std::optional<Lit> guard) {
  auto clause = not_covered_clause(gamma);
  if (guard) clause.push_back(*guard);
  solver_.add_clause(clause);
}

std::vector<Lit> EncodingContext::covered_literals(const Pattern& gamma) {
  std::vector<Lit> lits;
  for (int p = 1; p <= gamma.size(); ++p) {
    const Cell& c = gamma.cell(p);
    switch (c.kind) {
      case Cell::Kind::Zero: lits.push_back(Lit::neg(graph_var(p))); break;
      case Cell::Kind::One: lits.push_back(Lit::pos(graph_var(p))); break;
      case Cell::Kind::Var:
        if (c.rep != p) lits.push_back(Lit::pos(equality_var(c.rep, p)));
        break;
    }
  }
  return lits;
}

Lit EncodingContext::covered_activation(const Pattern& gamma) {
  if (auto it = activations_.find(gamma); it != activations_.end()) return it->second;
  const Lit a = Lit::pos(solver_.new_var());
  for (int p = 1; p <= gamma.size(); ++p) {
    const Cell& c = gamma.cell(p);
    switch (c.kind) {
      case Cell::Kind::Zero: solver_.add_clause({~a, Lit::neg(graph_var(p))}); break;
      case Cell::Kind::One: solver_.add_clause({~a, Lit::pos(graph_var(p))}); break;
      case Cell::Kind::Var:
        if (c.rep != p) solver_.add_clause({~a, Lit::pos(equality_var(c.rep, p))});
        break;
    }
  }
  activations_.emplace(gamma, a);
  return a;
}

void EncodingContext::assert_covered(const Pattern& gamma) {
  for (int p = 1; p <= gamma.size(); ++p) {
    const Cell& c = gamma.cell(p);
    switch (c.kind) {
      case Cell::Kind::Zero: solver_.add_clause({Lit::neg(graph_var(p))}); break;
      case Cell::Kind::One: solver_.add_clause({Lit::pos(graph_var(p))}); break;
      case Cell::Kind::Var:
        if (c.rep != p) solver_.add_clause({Lit::pos(equality_var(c.rep, p))});
        break;
    }
  }
}

Graph EncodingContext::model_graph() const {
  std::uint64_t bits = 0;
  for (int p = 1; p <= positions(); ++p) {
    if (solver_.model_value(graph_var(p))) bits |= std::uint64_t{1} << (p - 1);
  }
  return Graph(order_, bits);
}

std::size_t EncodingContext::all_models_projected(std::span<const Lit> assumptions,
                                                  const std::function<bool(const Graph&)>& visit) {
  std::size_t count = 0;
  std::vector<Lit> block(static_cast<std::size_t>(positions()));
  while (solver_.solve(assumptions) == sat::Result::Sat) {
    const Graph g = model_graph();
    ++count;
    for (int p = 1; p <= positions(); ++p) {
      block[static_cast<std::size_t>(p - 1)] = Lit::make(graph_var(p), !g.at(p));
    }
    solver_.add_clause(block);
    if (!visit(g)) break;
  }
  return count;
}

}  // namespace lexcover
