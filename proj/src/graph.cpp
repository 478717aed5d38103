#include "lexcover/graph.hpp"

#include <bit>

#include "lexcover/permutation.hpp"

namespace lexcover {

Graph::Graph(int order, std::uint64_t bits) : order_(order), bits_(bits) {
  if (order < 1 || order > kMaxOrder) {
    throw UsageError("graph order must lie in [1, " + std::to_string(kMaxOrder) + "], got " +
                     std::to_string(order));
  }
  if ((bits & ~full_mask(num_positions(order))) != 0) {
    throw UsageError("graph id " + std::to_string(bits) + " out of range for order " +
                     std::to_string(order));
  }
}

Graph Graph::from_vec(int order, std::string_view vec) {
  if (static_cast<int>(vec.size()) != num_positions(order)) {
    throw UsageError("vec string of length " + std::to_string(vec.size()) +
                     " does not match order " + std::to_string(order));
  }
  std::uint64_t bits = 0;
  for (std::size_t p = 0; p < vec.size(); ++p) {
    if (vec[p] == '1') {
      bits |= std::uint64_t{1} << p;
    } else if (vec[p] != '0') {
      throw UsageError("vec string may only contain 0 and 1");
    }
  }
  return Graph(order, bits);
}

bool Graph::edge(int i, int j) const {
  if (i == j) return false;
  if (i > j) std::swap(i, j);
  return at(position_of(order_, i, j));
}

Graph Graph::with(int pos, bool value) const {
  const std::uint64_t bit = std::uint64_t{1} << (pos - 1);
  return Graph(order_, value ? (bits_ | bit) : (bits_ & ~bit));
}

int Graph::edge_count() const { return std::popcount(bits_); }

std::string Graph::vec_string() const {
  std::string out(static_cast<std::size_t>(size()), '0');
  for (int p = 1; p <= size(); ++p) {
    if (at(p)) out[p - 1] = '1';
  }
  return out;
}

std::strong_ordering vec_compare(const Graph& a, const Graph& b) {
  if (a.order() != b.order()) {
    throw UsageError("vec_compare on graphs of different order");
  }
  const std::uint64_t diff = a.bits() ^ b.bits();
  if (diff == 0) return std::strong_ordering::equal;
  // Lowest differing bit is the first differing vec position.
  const int k = std::countr_zero(diff);
  return ((a.bits() >> k) & 1U) ? std::strong_ordering::greater : std::strong_ordering::less;
}

std::optional<Graph> increment(const Graph& g) {
  const std::uint64_t mask = full_mask(g.size());
  const std::uint64_t zeros = ~g.bits() & mask;
  if (zeros == 0) return std::nullopt;
  // The last zero position flips to one; every later position resets.
  const int k = 63 - std::countl_zero(zeros);
  const std::uint64_t keep = full_mask(k);
  return Graph(g.order(), (g.bits() & keep) | (std::uint64_t{1} << k));
}

namespace {

std::vector<PositionMap> nontrivial_maps(int n) {
  std::vector<PositionMap> maps;
  for (const auto& pi : nontrivial_permutations(n)) maps.emplace_back(pi);
  return maps;
}

bool canonical_under(const std::vector<PositionMap>& maps, std::uint64_t bits) {
  for (const auto& map : maps) {
    if (map.makes_smaller(bits)) return false;
  }
  return true;
}

void check_order(int n, int max_order, const char* what) {
  if (n < 1) throw UsageError(std::string(what) + ": order must be positive");
  if (n > max_order) {
    throw UsageError(std::string(what) + ": order " + std::to_string(n) +
                     " exceeds the brute-force limit " + std::to_string(max_order));
  }
}

}  // namespace

bool is_canonical_bruteforce(const Graph& g, int max_order) {
  check_order(g.order(), max_order, "is_canonical_bruteforce");
  return canonical_under(nontrivial_maps(g.order()), g.bits());
}

std::vector<GraphId> canonical_ids(int n, int max_order) {
  check_order(n, max_order, "canonical_ids");
  const auto maps = nontrivial_maps(n);
  const std::uint64_t count = std::uint64_t{1} << num_positions(n);
  std::vector<GraphId> ids;
  for (std::uint64_t bits = 0; bits < count; ++bits) {
    if (canonical_under(maps, bits)) ids.push_back(bits);
  }
  return ids;
}

std::uint64_t count_canonical(int n, int max_order) {
  return canonical_ids(n, max_order).size();
}

}  // namespace lexcover
