#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lexcover {

/// Raised on violated preconditions (mismatched orders, orders too large for
/// brute force, malformed text input). The CLI maps it to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxOrder = 10;

/// Number of vec positions of an order-n graph, m = n(n-1)/2.
constexpr int num_positions(int n) { return n * (n - 1) / 2; }

/// 1-based vec position of the upper-triangle pair (i,j), 1 <= i < j <= n.
constexpr int position_of(int n, int i, int j) {
  return (i - 1) * n - i * (i + 1) / 2 + j;
}

/// Integer name of a graph: bit k holds vec position k+1 (lsb first).
using GraphId = std::uint64_t;

/// A simple graph of order n stored as its vec bits in one machine word.
/// Position p of vec(G) lives in bit p-1, so bits() is also the GraphId.
class Graph {
 public:
  Graph(int order, std::uint64_t bits);

  static Graph empty(int order) { return Graph(order, 0); }
  static Graph from_id(int order, GraphId id) { return Graph(order, id); }
  /// Parses a 0/1 vec string with position 1 leftmost.
  static Graph from_vec(int order, std::string_view vec);

  int order() const { return order_; }
  int size() const { return num_positions(order_); }
  std::uint64_t bits() const { return bits_; }
  GraphId id() const { return bits_; }

  bool at(int pos) const { return (bits_ >> (pos - 1)) & 1U; }
  bool edge(int i, int j) const;
  Graph with(int pos, bool value) const;
  int edge_count() const;

  std::string vec_string() const;

  bool operator==(const Graph&) const = default;

 private:
  int order_;
  std::uint64_t bits_;
};

/// Mask with the low m bits set.
constexpr std::uint64_t full_mask(int m) {
  return m >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
}

/// Lexicographic order on vec strings, position 1 most significant.
std::strong_ordering vec_compare(const Graph& a, const Graph& b);

/// Next graph in ascending vec order (position m is the counter's lsb);
/// std::nullopt past the all-ones vector.
std::optional<Graph> increment(const Graph& g);

/// True iff no permutation of the vertices yields a vec-smaller graph.
bool is_canonical_bruteforce(const Graph& g, int max_order = 8);

/// Number of canonical graphs (= isomorphism classes) of order n.
std::uint64_t count_canonical(int n, int max_order = 7);

/// Ids of all canonical graphs of order n in ascending id order.
std::vector<GraphId> canonical_ids(int n, int max_order = 7);

}  // namespace lexcover
