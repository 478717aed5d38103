#include <doctest.h>

#include <set>

#include "lexcover/pattern.hpp"
#include "oracle.hpp"

using namespace lexcover;

TEST_CASE("patterns of [1,2,4,3]") {
  const auto pats = patterns_of(Permutation{1, 2, 4, 3});
  REQUIRE(pats.patterns.size() == 2);
  CHECK(pats.patterns[0].to_string() == "x1,1,0,x4,x5,x6");
  CHECK(pats.patterns[1].to_string() == "x1,x2,x2,1,0,x6");
  CHECK(pats.instance_total() == 24);

  std::vector<GraphId> first;
  for_each_instance(pats.patterns[0], [&](const Graph& g) { first.push_back(g.id()); });
  const std::vector<GraphId> expected{2, 3, 10, 11, 18, 19, 26, 27, 34, 35, 42, 43, 50, 51, 58, 59};
  CHECK(first == expected);
}

TEST_CASE("parse round trip") {
  const auto p = Pattern::parse(4, "x1,x2,x2,1,0,x6");
  CHECK(p.to_string() == "x1,x2,x2,1,0,x6");
  CHECK(p.free_classes() == 3);
  CHECK(p.instance_count() == 8);
  CHECK_THROWS_AS(Pattern::parse(4, "x1,x1,0"), UsageError);
  CHECK_THROWS_AS(Pattern::parse(4, "x2,x2,0,0,0,0"), UsageError);
}

TEST_CASE("identity has no patterns") {
  for (int n = 2; n <= 6; ++n) CHECK(patterns_of(Permutation::identity(n)).patterns.empty());
}

// Patterns of pi are pairwise disjoint and their instances are exactly the
// graphs pi makes smaller.
TEST_CASE("pattern soundness and disjointness for n <= 5") {
  for (int n = 2; n <= 5; ++n) {
    for (const auto& pi : nontrivial_permutations(n)) {
      const auto pats = patterns_of(pi);
      std::uint64_t total = 0;
      for (std::uint64_t g = 0; g < oracle::graphs(n); ++g) {
        int hits = 0;
        for (const auto& gamma : pats.patterns) hits += gamma.matches(g) ? 1 : 0;
        CHECK(hits <= 1);
        CHECK((hits == 1) == oracle::covers(pi, g));
        total += static_cast<std::uint64_t>(hits);
      }
      CHECK(total == pats.instance_total());
      for (std::size_t k = 1; k < pats.patterns.size(); ++k) {
        CHECK(pats.patterns[k - 1].first_diff() < pats.patterns[k].first_diff());
      }
    }
  }
}

TEST_CASE("instances enumerate in ascending id order") {
  for (const auto& pi : nontrivial_permutations(5)) {
    for (const auto& gamma : patterns_of(pi).patterns) {
      const auto inst = enumerate_instances(gamma);
      CHECK(inst.size() == gamma.instance_count());
      for (std::size_t k = 1; k < inst.size(); ++k) CHECK(inst[k - 1].id() < inst[k].id());
      for (const auto& g : inst) CHECK(gamma.matches(g));
    }
  }
  const auto p = patterns_of(Permutation{2, 1, 3, 4, 5, 6}).patterns.front();
  CHECK_THROWS_AS(for_each_instance(p, [](const Graph&) {}, 4), UsageError);
}

TEST_CASE("merge deduplicates and keeps first occurrence order") {
  const std::vector<Permutation> perms{Permutation{1, 2, 4, 3}, Permutation{1, 2, 4, 3}, Permutation{2, 1, 3, 4}};
  const auto merged = merge_patterns(perms);
  std::set<std::string> seen;
  for (const auto& gamma : merged.patterns) CHECK(seen.insert(gamma.to_string()).second);
  CHECK(merged.patterns.front().to_string() == "x1,1,0,x4,x5,x6");
  for (std::uint64_t g = 0; g < 64; ++g) CHECK(merged.covers(Graph(4, g)) == oracle::covered_by_any(perms, g));
}
