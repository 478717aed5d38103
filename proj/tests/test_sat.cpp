#include <doctest.h>

#include <random>

#include "lexcover/encoding.hpp"
#include "lexcover/sat_solver.hpp"
#include "oracle.hpp"

using namespace lexcover;
using sat::Lit;

namespace {

bool satisfiable(int vars, const std::vector<std::vector<Lit>>& clauses, const std::vector<Lit>& assume) {
  for (std::uint32_t a = 0; a < (1U << vars); ++a) {
    auto val = [&](Lit l) { return (((a >> l.var()) & 1U) != 0) != l.negated(); };
    if (!std::all_of(assume.begin(), assume.end(), val)) continue;
    if (std::all_of(clauses.begin(), clauses.end(),
                    [&](const auto& c) { return std::any_of(c.begin(), c.end(), val); })) {
      return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("random 3-CNF agrees with truth tables") {
  std::mt19937 rng(21);
  for (int t = 0; t < 300; ++t) {
    const int vars = 4 + static_cast<int>(rng() % 9);
    const int count = static_cast<int>(rng() % (5 * vars));
    sat::Solver s;
    for (int v = 0; v < vars; ++v) s.new_var();
    std::vector<std::vector<Lit>> clauses;
    for (int c = 0; c < count; ++c) {
      std::vector<Lit> clause;
      const int len = 1 + static_cast<int>(rng() % 3);
      for (int k = 0; k < len; ++k) clause.push_back(Lit::make(static_cast<int>(rng() % vars), rng() & 1U));
      clauses.push_back(clause);
      s.add_clause(clause);
    }
    for (int q = 0; q < 4; ++q) {
      std::vector<Lit> assume;
      for (int k = 0; k < q; ++k) assume.push_back(Lit::make(static_cast<int>(rng() % vars), rng() & 1U));
      const bool expected = satisfiable(vars, clauses, assume);
      const auto r = s.solve(assume);
      CHECK((r == sat::Result::Sat) == expected);
      if (r == sat::Result::Sat) {
        for (const auto& c : clauses) {
          CHECK(std::any_of(c.begin(), c.end(), [&](Lit l) { return s.model_value(l); }));
        }
        for (auto l : assume) CHECK(s.model_value(l));
      }
    }
  }
}

TEST_CASE("empty clause and contradictory units") {
  sat::Solver s;
  const auto x = s.new_var();
  CHECK(s.add_clause({Lit::pos(x)}));
  CHECK(s.solve() == sat::Result::Sat);
  CHECK(s.solve({Lit::neg(x)}) == sat::Result::Unsat);
  CHECK(s.okay());
  CHECK_FALSE(s.add_clause({Lit::neg(x)}));
  CHECK(s.solve() == sat::Result::Unsat);
}

// Models of notCovered(gamma) are exactly the non-instances of gamma.
TEST_CASE("notCovered and covered encodings") {
  for (const auto& pi : nontrivial_permutations(4)) {
    for (const auto& gamma : patterns_of(pi).patterns) {
      EncodingContext ctx(4);
      const auto act = ctx.covered_activation(gamma);
      std::size_t inside = 0;
      ctx.all_models_projected(std::vector<Lit>{act}, [&](const Graph& g) {
        CHECK(gamma.matches(g));
        ++inside;
        return true;
      });
      CHECK(inside == gamma.instance_count());

      EncodingContext neg(4);
      neg.add_not_covered(gamma);
      std::size_t outside = 0;
      neg.all_models_projected({}, [&](const Graph& g) {
        CHECK_FALSE(gamma.matches(g));
        ++outside;
        return true;
      });
      CHECK(outside == 64 - gamma.instance_count());
    }
  }
}

TEST_CASE("covered literals as assumptions") {
  const auto gamma = Pattern::parse(4, "x1,x2,x2,1,0,x6");
  EncodingContext ctx(4);
  const auto lits = ctx.covered_literals(gamma);
  REQUIRE(ctx.solve(lits) == sat::Result::Sat);
  CHECK(gamma.matches(ctx.model_graph()));
  ctx.add_not_covered(gamma);
  CHECK(ctx.solve(lits) == sat::Result::Unsat);
}

TEST_CASE("guarded notCovered switches off under its guard") {
  const auto gamma = Pattern::parse(4, "x1,1,0,x4,x5,x6");
  EncodingContext ctx(4);
  const Lit g = Lit::pos(ctx.new_var());
  ctx.add_not_covered(gamma, g);
  auto lits = ctx.covered_literals(gamma);
  lits.push_back(~g);
  CHECK(ctx.solve(lits) == sat::Result::Unsat);
  lits.back() = g;
  CHECK(ctx.solve(lits) == sat::Result::Sat);
}
