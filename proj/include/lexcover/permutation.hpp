#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lexcover/graph.hpp"

namespace lexcover {

/// A permutation of {1..n} in one-line image notation, image[i-1] = pi(i).
/// Ordering is lexicographic on the image sequence.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::span<const int> image);
  Permutation(std::initializer_list<int> image);

  static Permutation identity(int n);
  /// Parses "[1,2,4,3]" (whitespace tolerated).
  static Permutation parse(std::string_view text);

  int degree() const { return degree_; }
  int operator()(int i) const { return image_[i - 1]; }
  bool is_identity() const;
  Permutation inverse() const;
  std::vector<int> image() const;

  std::string to_string() const;

  auto operator<=>(const Permutation&) const = default;
  bool operator==(const Permutation&) const = default;

 private:
  std::uint8_t degree_ = 0;
  std::array<std::uint8_t, kMaxOrder> image_{};
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const;
};

/// (outer . inner)(i) = outer(inner(i)). The action on graphs is a right
/// action: apply_perm(s, apply_perm(p, g)) == apply_perm(compose(p, s), g).
Permutation compose(const Permutation& outer, const Permutation& inner);

/// Induced map on vec positions: vec(pi(G))[p] = vec(G)[map[p]].
class PositionMap {
 public:
  PositionMap() = default;
  explicit PositionMap(const Permutation& pi);

  int degree() const { return degree_; }
  int size() const { return num_positions(degree_); }
  /// 1-based in, 1-based out.
  int operator[](int p) const { return map_[p - 1] + 1; }

  Graph apply(const Graph& g) const;
  /// True iff pi(g) < g, scanning from position 1 with early exit.
  bool makes_smaller(std::uint64_t bits) const {
    for (int p = 0; p < size_; ++p) {
      const unsigned mine = (bits >> p) & 1U;
      const unsigned theirs = (bits >> map_[p]) & 1U;
      if (mine != theirs) return theirs < mine;
    }
    return false;
  }

  bool operator==(const PositionMap&) const = default;

 private:
  int degree_ = 0;
  int size_ = 0;
  std::array<std::uint8_t, num_positions(kMaxOrder)> map_{};
};

inline PositionMap position_map(const Permutation& pi) { return PositionMap(pi); }

Graph apply_perm(const Permutation& pi, const Graph& g);

/// pi covers g iff pi(g) < g.
inline bool covers(const Permutation& pi, const Graph& g) {
  return PositionMap(pi).makes_smaller(g.bits());
}

/// All n! permutations in lexicographic order of their images.
std::vector<Permutation> all_permutations(int n);

/// S_n without the identity, in the same order.
std::vector<Permutation> nontrivial_permutations(int n);

/// The n(n-1)/2 transpositions (i j), i < j, in lexicographic (i, j) order.
std::vector<Permutation> transpositions(int n);

}  // namespace lexcover
