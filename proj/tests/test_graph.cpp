#include <doctest.h>

#include <random>

#include "lexcover/graph.hpp"
#include "oracle.hpp"

using namespace lexcover;

TEST_CASE("positions enumerate the upper triangle row by row") {
  for (int n = 2; n <= 8; ++n) {
    CHECK(num_positions(n) == n * (n - 1) / 2);
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) CHECK(position_of(n, i, j) == oracle::pos(n, i, j));
    }
  }
}

TEST_CASE("vec strings put position 1 first") {
  const auto g = Graph::from_vec(4, "010011");
  CHECK(g.id() == 0b110010);
  CHECK(g.vec_string() == "010011");
  CHECK(g.at(2));
  CHECK_FALSE(g.at(1));
  CHECK(g.edge(1, 3));
  CHECK(g.edge(3, 4));
  CHECK(g.edge_count() == 3);
  CHECK(g.with(1, true).vec_string() == "110011");
  CHECK_THROWS_AS(Graph::from_vec(4, "0101"), UsageError);
  CHECK_THROWS_AS(Graph::from_vec(4, "01012x"), UsageError);
}

TEST_CASE("vec_compare agrees with string comparison") {
  std::mt19937 rng(7);
  for (int t = 0; t < 500; ++t) {
    const Graph a(5, rng() & full_mask(10));
    const Graph b(5, rng() & full_mask(10));
    const auto expected = a.vec_string() <=> b.vec_string();
    CHECK((vec_compare(a, b) == expected));
  }
}

TEST_CASE("increment walks all vectors in ascending vec order") {
  for (int n = 2; n <= 4; ++n) {
    std::optional<Graph> g = Graph::empty(n);
    std::uint64_t steps = 1;
    std::string prev = g->vec_string();
    while ((g = increment(*g))) {
      CHECK(prev < g->vec_string());
      prev = g->vec_string();
      ++steps;
    }
    CHECK(steps == oracle::graphs(n));
    CHECK(prev == std::string(static_cast<std::size_t>(num_positions(n)), '1'));
  }
}

TEST_CASE("canonical counts match brute force over S_n") {
  for (int n = 1; n <= 5; ++n) CHECK(count_canonical(n) == oracle::canonical_count(n));
  // Isomorphism classes of graphs on 6 and 7 vertices.
  CHECK(count_canonical(6) == 156);
  CHECK(count_canonical(7) == 1044);
  CHECK_THROWS_AS(count_canonical(8), UsageError);
}

TEST_CASE("canonical ids of order 4") {
  const std::vector<GraphId> expected{0, 12, 30, 32, 44, 48, 52, 56, 60, 62, 63};
  CHECK(canonical_ids(4) == expected);
  for (auto id : expected) CHECK(is_canonical_bruteforce(Graph(4, id)));
  CHECK_FALSE(is_canonical_bruteforce(Graph(4, 1)));
}
