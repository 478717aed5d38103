#pragma once

// Brute-force reference implementations used as test oracles. Nothing here
// calls the pattern, SAT or dominance code under test.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <span>
#include <vector>

#include "lexcover/graph.hpp"
#include "lexcover/permutation.hpp"

namespace oracle {

using lexcover::Graph;
using lexcover::Permutation;

inline int pos(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  int p = 0;
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) {
      ++p;
      if (a == i && b == j) return p;
    }
  }
  return -1;
}

inline bool edge(int n, std::uint64_t bits, int i, int j) { return (bits >> (pos(n, i, j) - 1)) & 1U; }

/// Permutes rows and columns of the adjacency matrix: out[a][b] = in[pi(a)][pi(b)].
inline std::uint64_t image(const Permutation& pi, std::uint64_t bits) {
  const int n = pi.degree();
  std::uint64_t out = 0;
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) {
      if (edge(n, bits, pi(a), pi(b))) out |= std::uint64_t{1} << (pos(n, a, b) - 1);
    }
  }
  return out;
}

/// Lex order on vec strings, position 1 first.
inline bool vec_less(int m, std::uint64_t a, std::uint64_t b) {
  for (int p = 0; p < m; ++p) {
    const unsigned x = (a >> p) & 1U, y = (b >> p) & 1U;
    if (x != y) return x < y;
  }
  return false;
}

inline bool covers(const Permutation& pi, std::uint64_t bits) {
  const int m = lexcover::num_positions(pi.degree());
  return vec_less(m, image(pi, bits), bits);
}

inline std::uint64_t graphs(int n) { return std::uint64_t{1} << lexcover::num_positions(n); }

inline std::vector<std::uint64_t> cover(const Permutation& pi) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t g = 0; g < graphs(pi.degree()); ++g) {
    if (covers(pi, g)) out.push_back(g);
  }
  return out;
}

inline bool covered_by_any(std::span<const Permutation> perms, std::uint64_t g) {
  return std::any_of(perms.begin(), perms.end(), [&](const Permutation& pi) { return covers(pi, g); });
}

/// cover(a) subset of cover(b_1) U ... U cover(b_k).
inline bool dominated(const Permutation& a, std::span<const Permutation> by) {
  for (std::uint64_t g = 0; g < graphs(a.degree()); ++g) {
    if (covers(a, g) && !covered_by_any(by, g)) return false;
  }
  return true;
}

/// Some graph is covered by universe[k] and by no other member.
inline bool backbone(std::span<const Permutation> universe, std::size_t k) {
  const int n = universe[k].degree();
  for (std::uint64_t g = 0; g < graphs(n); ++g) {
    if (!covers(universe[k], g)) continue;
    bool alone = true;
    for (std::size_t j = 0; j < universe.size() && alone; ++j) {
      if (j != k && covers(universe[j], g)) alone = false;
    }
    if (alone) return true;
  }
  return false;
}

/// Graphs of order n covered by no permutation of S_n.
inline std::uint64_t canonical_count(int n) {
  std::vector<Permutation> all;
  std::vector<int> img(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) img[static_cast<std::size_t>(i)] = i + 1;
  do {
    all.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  std::uint64_t count = 0;
  for (std::uint64_t g = 0; g < graphs(n); ++g) {
    if (!covered_by_any(all, g)) ++count;
  }
  return count;
}

inline Permutation random_perm(int n, std::mt19937& rng) {
  std::vector<int> img(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) img[static_cast<std::size_t>(i)] = i + 1;
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation(img);
}

inline Permutation random_nontrivial(int n, std::mt19937& rng) {
  for (;;) {
    auto pi = random_perm(n, rng);
    if (!pi.is_identity()) return pi;
  }
}

/// min(k, n! - 1) distinct non-identity permutations.
inline std::vector<Permutation> random_set(int n, std::size_t k, std::mt19937& rng) {
  std::size_t fact = 1;
  for (int i = 2; i <= n; ++i) fact *= static_cast<std::size_t>(i);
  k = std::min(k, fact - 1);
  std::set<Permutation> s;
  while (s.size() < k) s.insert(random_nontrivial(n, rng));
  std::vector<Permutation> out(s.begin(), s.end());
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

}  // namespace oracle
