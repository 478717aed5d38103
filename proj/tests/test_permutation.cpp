#include <doctest.h>

#include <random>
#include <set>

#include "lexcover/permutation.hpp"
#include "oracle.hpp"

using namespace lexcover;

TEST_CASE("parse and print") {
  const auto pi = Permutation::parse(" [1, 2,4,3] ");
  CHECK(pi.degree() == 4);
  CHECK(pi(3) == 4);
  CHECK(pi.to_string() == "[1,2,4,3]");
  CHECK_THROWS_AS(Permutation::parse("[1,1,2]"), UsageError);
  CHECK_THROWS_AS(Permutation::parse("[1,2"), UsageError);
  CHECK_THROWS_AS(Permutation::parse("[0,1]"), UsageError);
}

TEST_CASE("enumeration sizes and order") {
  CHECK(all_permutations(5).size() == 120);
  const auto nt = nontrivial_permutations(5);
  CHECK(nt.size() == 119);
  CHECK(std::is_sorted(nt.begin(), nt.end()));
  CHECK(std::none_of(nt.begin(), nt.end(), [](const Permutation& p) { return p.is_identity(); }));
  const auto t = transpositions(5);
  CHECK(t.size() == 10);
  CHECK(t.front() == Permutation{2, 1, 3, 4, 5});
  CHECK(t.back() == Permutation{1, 2, 3, 5, 4});
}

TEST_CASE("apply_perm permutes rows and columns") {
  std::mt19937 rng(11);
  for (int t = 0; t < 300; ++t) {
    const int n = 3 + static_cast<int>(rng() % 4);
    const auto pi = oracle::random_perm(n, rng);
    const Graph g(n, rng() & full_mask(num_positions(n)));
    CHECK(apply_perm(pi, g).bits() == oracle::image(pi, g.bits()));
  }
}

TEST_CASE("compose and inverse") {
  std::mt19937 rng(12);
  for (int t = 0; t < 200; ++t) {
    const auto a = oracle::random_perm(6, rng);
    const auto b = oracle::random_perm(6, rng);
    const Graph g(6, rng() & full_mask(15));
    CHECK(apply_perm(a, apply_perm(b, g)) == apply_perm(compose(b, a), g));
    CHECK(compose(a, a.inverse()).is_identity());
  }
}

TEST_CASE("position map of [1,2,4,3] swaps x2,x3 and x4,x5") {
  const PositionMap map(Permutation{1, 2, 4, 3});
  const std::vector<int> expected{1, 3, 2, 5, 4, 6};
  for (int p = 1; p <= 6; ++p) CHECK(map[p] == expected[static_cast<std::size_t>(p - 1)]);
  // A 3-cycle tells the two readings of the action apart.
  const Graph g = Graph::from_vec(4, "100000");  // edge {1,2}
  CHECK(apply_perm(Permutation{2, 3, 1, 4}, g).vec_string() == "010000");  // edge {1,3}
}

TEST_CASE("makes_smaller is pi(G) < G") {
  std::mt19937 rng(13);
  for (int t = 0; t < 2000; ++t) {
    const int n = 3 + static_cast<int>(rng() % 5);
    const auto pi = oracle::random_perm(n, rng);
    const std::uint64_t bits = rng() & full_mask(num_positions(n));
    CHECK(PositionMap(pi).makes_smaller(bits) == oracle::covers(pi, bits));
  }
}
