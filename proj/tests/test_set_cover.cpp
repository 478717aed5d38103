#include <doctest.h>

#include <random>
#include <sstream>

#include "lexcover/set_cover.hpp"
#include "oracle.hpp"

using namespace lexcover;

namespace {

CoverMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, double density) {
  std::bernoulli_distribution bit(density);
  CoverMatrix m;
  m.order = 0;
  for (std::size_t c = 0; c < cols; ++c) m.col_ids.push_back(c);
  for (std::size_t r = 0; r < rows; ++r) {
    Bitset b(cols);
    for (std::size_t c = 0; c < cols; ++c) {
      if (bit(rng)) b.set(c);
    }
    m.rows.push_back(b);
    m.row_labels.push_back("r" + std::to_string(r));
  }
  // Every column gets at least one row.
  for (std::size_t c = 0; c < cols; ++c) {
    bool any = false;
    for (const auto& b : m.rows) any = any || b.test(c);
    if (!any) m.rows[rng() % rows].set(c);
  }
  return m;
}

std::size_t exhaustive_optimum(const CoverMatrix& m) {
  const std::size_t r = m.num_rows();
  std::size_t best = r + 1;
  for (std::uint32_t mask = 0; mask < (1U << r); ++mask) {
    const auto k = static_cast<std::size_t>(std::popcount(mask));
    if (k >= best) continue;
    Bitset u(m.num_cols());
    for (std::size_t i = 0; i < r; ++i) {
      if ((mask >> i) & 1U) u |= m.rows[i];
    }
    if (u.count() == m.num_cols()) best = k;
  }
  return best;
}

bool is_cover(const CoverMatrix& m, const std::vector<std::string>& labels) {
  Bitset u(m.num_cols());
  for (const auto& l : labels) {
    const auto it = std::find(m.row_labels.begin(), m.row_labels.end(), l);
    if (it == m.row_labels.end()) return false;
    u |= m.rows[static_cast<std::size_t>(it - m.row_labels.begin())];
  }
  return u.count() == m.num_cols();
}

}  // namespace

TEST_CASE("bitset operations") {
  Bitset a(130), b(130), mask(130);
  a.set(0);
  a.set(64);
  a.set(129);
  b.set(64);
  mask.set_all();
  CHECK(mask.count() == 130);
  CHECK(a.count() == 3);
  CHECK(b.subset_within(a, mask));
  CHECK_FALSE(a.subset_within(b, mask));
  CHECK(a.intersects(b));
  mask.reset(64);
  CHECK_FALSE(a.intersects_within(b, mask));
  CHECK(a.count_within(mask) == 2);
  CHECK(a.first_within(mask) == 0);
  a.subtract(b);
  CHECK(a.ones() == std::vector<std::size_t>{0, 129});
  CHECK_FALSE(a.none());
}

TEST_CASE("reduce and solve_exact against exhaustive search") {
  std::mt19937 rng(51);
  for (int t = 0; t < 100; ++t) {
    const std::size_t rows = 1 + rng() % 12;
    const std::size_t cols = 1 + rng() % 20;
    const auto m = random_matrix(rng, rows, cols, 0.1 + 0.3 * (rng() % 4) / 3.0);
    const std::size_t expected = exhaustive_optimum(m);
    const auto direct = solve_exact(m);
    CHECK(direct.optimal);
    CHECK(direct.chosen.size() == expected);
    CHECK(is_cover(m, direct.chosen));
    const auto red = reduce(m);
    const auto sol = solve_exact(red);
    CHECK(sol.chosen.size() == expected);
    CHECK(sol.forced_count == red.forced.size());
    CHECK(is_cover(m, sol.chosen));
  }
}

TEST_CASE("reduction rules on a hand matrix") {
  // r0 is a subset of r1; then column 1 needs r1 and column 3 needs r2.
  CoverMatrix m;
  m.col_ids = {0, 1, 2, 3};
  m.row_labels = {"r0", "r1", "r2"};
  auto row = [](std::initializer_list<std::size_t> on) {
    Bitset b(4);
    for (auto c : on) b.set(c);
    return b;
  };
  m.rows = {row({0}), row({0, 1}), row({2, 3})};
  const auto red = reduce(m);
  CHECK(red.num_rows() == 0);
  CHECK(red.num_cols() == 0);
  CHECK(red.forced == std::vector<std::string>{"r1", "r2"});
  CHECK(solve_exact(red).chosen.size() == 2);
}

TEST_CASE("infeasible columns are reported") {
  CoverMatrix m;
  m.col_ids = {0, 1};
  m.row_labels = {"r0"};
  Bitset b(2);
  b.set(0);
  m.rows = {b};
  CHECK_THROWS(reduce(m));
}

TEST_CASE("initial matrix of order 4") {
  const auto rows = nontrivial_permutations(4);
  const auto m = build_matrix(rows, {});
  CHECK(m.num_rows() == 23);
  CHECK(m.num_cols() == 53);
  std::uint64_t covered = 0;
  for (std::uint64_t g = 0; g < 64; ++g) covered += oracle::covered_by_any(rows, g) ? 1 : 0;
  CHECK(m.num_cols() == covered);
  const auto w = m.row_weights();
  for (std::size_t r = 0; r < m.num_rows(); ++r) {
    CHECK(w[r] == oracle::cover(Permutation::parse(m.row_labels[r])).size());
  }
  CHECK(*std::min_element(w.begin(), w.end()) == 24);
  CHECK(*std::max_element(w.begin(), w.end()) == 30);
  CHECK(solve_exact(reduce(m)).chosen.size() == 3);
}

TEST_CASE("beta columns are excluded and SAT enumeration agrees with expansion") {
  const auto all = nontrivial_permutations(5);
  const std::vector<Permutation> beta{Permutation{2, 1, 3, 4, 5}, Permutation{1, 3, 2, 4, 5}};
  std::vector<Permutation> rows;
  for (const auto& pi : all) {
    if (std::find(beta.begin(), beta.end(), pi) == beta.end()) rows.push_back(pi);
  }
  const auto expanded = build_matrix(rows, beta);
  const auto viasat = build_matrix(rows, beta, 1);
  CHECK(expanded.col_ids == viasat.col_ids);
  CHECK(expanded.rows == viasat.rows);
  for (auto id : expanded.col_ids) CHECK_FALSE(oracle::covered_by_any(beta, id));
  CHECK_THROWS_AS(build_matrix(all, beta), UsageError);
}

TEST_CASE("matrix dump round trip and OPB") {
  const auto m = build_matrix(nontrivial_permutations(4), {});
  std::stringstream s;
  write_matrix(m, s);
  const auto back = read_matrix(s);
  CHECK(back.rows == m.rows);
  CHECK(back.col_ids == m.col_ids);
  CHECK(back.row_labels == m.row_labels);

  std::istringstream plain("2 3\n101\n011\n");
  const auto p = read_matrix(plain);
  CHECK(p.row_labels == std::vector<std::string>{"r1", "r2"});
  CHECK(solve_exact(p).chosen.size() == 2);

  std::ostringstream opb;
  export_opb(p, opb);
  const std::string text = opb.str();
  CHECK(text.find("* #variable= 2 #constraint= 3") != std::string::npos);
  CHECK(text.find("min: +1 x1 +1 x2;") != std::string::npos);
  CHECK(text.find("+1 x1 >= 1;\n") != std::string::npos);
  CHECK(text.find("+1 x1 +1 x2 >= 1;") != std::string::npos);
}
