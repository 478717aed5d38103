#include "lexcover/permutation.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace lexcover {

Permutation::Permutation(std::span<const int> image) {
  const int n = static_cast<int>(image.size());
  if (n < 1 || n > kMaxOrder) {
    throw UsageError("permutation degree must lie in [1, " + std::to_string(kMaxOrder) + "]");
  }
  std::array<bool, kMaxOrder + 1> seen{};
  for (int i = 0; i < n; ++i) {
    const int v = image[static_cast<std::size_t>(i)];
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]) {
      throw UsageError("not a permutation of {1.." + std::to_string(n) + "}");
    }
    seen[static_cast<std::size_t>(v)] = true;
    image_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v);
  }
  degree_ = static_cast<std::uint8_t>(n);
}

Permutation::Permutation(std::initializer_list<int> image)
    : Permutation(std::span<const int>(image.begin(), image.size())) {}

Permutation Permutation::identity(int n) {
  std::vector<int> image(static_cast<std::size_t>(n));
  std::iota(image.begin(), image.end(), 1);
  return Permutation(image);
}

Permutation Permutation::parse(std::string_view text) {
  std::vector<int> image;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  skip_ws();
  if (i >= text.size() || text[i] != '[') throw UsageError("permutation must start with '['");
  ++i;
  while (true) {
    skip_ws();
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
    if (ec != std::errc{}) throw UsageError("malformed permutation: " + std::string(text));
    i = static_cast<std::size_t>(ptr - text.data());
    image.push_back(value);
    skip_ws();
    if (i < text.size() && text[i] == ',') {
      ++i;
      continue;
    }
    if (i < text.size() && text[i] == ']') {
      ++i;
      break;
    }
    throw UsageError("malformed permutation: " + std::string(text));
  }
  skip_ws();
  if (i != text.size()) throw UsageError("trailing characters after permutation");
  return Permutation(image);
}

bool Permutation::is_identity() const {
  for (int i = 0; i < degree_; ++i) {
    if (image_[static_cast<std::size_t>(i)] != i + 1) return false;
  }
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(degree_);
  for (int i = 1; i <= degree_; ++i) inv[static_cast<std::size_t>((*this)(i) - 1)] = i;
  return Permutation(inv);
}

std::vector<int> Permutation::image() const {
  return std::vector<int>(image_.begin(), image_.begin() + degree_);
}

std::string Permutation::to_string() const {
  std::string out = "[";
  for (int i = 0; i < degree_; ++i) {
    if (i > 0) out += ',';
    out += std::to_string(image_[static_cast<std::size_t>(i)]);
  }
  out += ']';
  return out;
}

std::size_t PermutationHash::operator()(const Permutation& p) const {
  std::size_t h = static_cast<std::size_t>(p.degree());
  for (int i = 1; i <= p.degree(); ++i) h = h * 11 + static_cast<std::size_t>(p(i));
  return h;
}

Permutation compose(const Permutation& outer, const Permutation& inner) {
  if (outer.degree() != inner.degree()) throw UsageError("compose: degree mismatch");
  std::vector<int> image(static_cast<std::size_t>(outer.degree()));
  for (int i = 1; i <= outer.degree(); ++i) image[static_cast<std::size_t>(i - 1)] = outer(inner(i));
  return Permutation(image);
}

PositionMap::PositionMap(const Permutation& pi)
    : degree_(pi.degree()), size_(num_positions(pi.degree())) {
  // Rows and columns are both permuted by pi: output pair (a,b) reads input
  // pair (pi(a), pi(b)).
  const int n = degree_;
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) {
      int i = pi(a);
      int j = pi(b);
      if (i > j) std::swap(i, j);
      map_[static_cast<std::size_t>(position_of(n, a, b) - 1)] =
          static_cast<std::uint8_t>(position_of(n, i, j) - 1);
    }
  }
}

Graph PositionMap::apply(const Graph& g) const {
  if (g.order() != degree_) throw UsageError("apply_perm: degree does not match graph order");
  std::uint64_t out = 0;
  for (int p = 0; p < size_; ++p) {
    out |= ((g.bits() >> map_[static_cast<std::size_t>(p)]) & 1U) << p;
  }
  return Graph(degree_, out);
}

Graph apply_perm(const Permutation& pi, const Graph& g) { return PositionMap(pi).apply(g); }

std::vector<Permutation> all_permutations(int n) {
  if (n < 1 || n > kMaxOrder) {
    throw UsageError("all_permutations: order must lie in [1, " + std::to_string(kMaxOrder) + "]");
  }
  std::vector<int> image(static_cast<std::size_t>(n));
  std::iota(image.begin(), image.end(), 1);
  std::vector<Permutation> out;
  do {
    out.emplace_back(image);
  } while (std::next_permutation(image.begin(), image.end()));
  return out;
}

std::vector<Permutation> nontrivial_permutations(int n) {
  auto perms = all_permutations(n);
  perms.erase(perms.begin());  // identity is first in lex order
  return perms;
}

std::vector<Permutation> transpositions(int n) {
  if (n < 2) throw UsageError("transpositions: order must be at least 2");
  std::vector<Permutation> out;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      std::vector<int> image(static_cast<std::size_t>(n));
      std::iota(image.begin(), image.end(), 1);
      std::swap(image[static_cast<std::size_t>(i - 1)], image[static_cast<std::size_t>(j - 1)]);
      out.emplace_back(image);
    }
  }
  return out;
}

}  // namespace lexcover
