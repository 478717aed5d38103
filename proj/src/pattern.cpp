#include "lexcover/pattern.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_set>

namespace lexcover {

namespace {

// Union-find over vec positions where a class may be bound to a constant.
// Roots are always the smallest position of their class.
class Unifier {
 public:
  explicit Unifier(int size) : parent_(static_cast<std::size_t>(size)), bound_(parent_.size(), -1) {
    for (int p = 0; p < size; ++p) parent_[static_cast<std::size_t>(p)] = p;
  }

  int find(int p) {
    while (parent_[static_cast<std::size_t>(p)] != p) {
      auto& up = parent_[static_cast<std::size_t>(p)];
      up = parent_[static_cast<std::size_t>(up)];
      p = up;
    }
    return p;
  }

  bool unify(int p, int q) {
    p = find(p);
    q = find(q);
    if (p == q) return true;
    if (q < p) std::swap(p, q);
    const int bp = bound_[static_cast<std::size_t>(p)];
    const int bq = bound_[static_cast<std::size_t>(q)];
    if (bp >= 0 && bq >= 0 && bp != bq) return false;
    parent_[static_cast<std::size_t>(q)] = p;
    if (bp < 0) bound_[static_cast<std::size_t>(p)] = bq;
    return true;
  }

  bool bind(int p, int value) {
    p = find(p);
    auto& b = bound_[static_cast<std::size_t>(p)];
    if (b >= 0) return b == value;
    b = value;
    return true;
  }

  int bound(int p) { return bound_[static_cast<std::size_t>(find(p))]; }

 private:
  std::vector<int> parent_;
  std::vector<int> bound_;
};

}  // namespace

Pattern::Pattern(int order, std::vector<Cell> cells, int first_diff)
    : order_(order), cells_(std::move(cells)), first_diff_(first_diff) {
  if (static_cast<int>(cells_.size()) != num_positions(order)) {
    throw UsageError("pattern length does not match order " + std::to_string(order));
  }
  for (int p = 1; p <= size(); ++p) {
    const Cell& c = cell(p);
    const std::uint64_t bit = std::uint64_t{1} << (p - 1);
    switch (c.kind) {
      case Cell::Kind::Zero:
        const_mask_ |= bit;
        break;
      case Cell::Kind::One:
        const_mask_ |= bit;
        const_value_ |= bit;
        break;
      case Cell::Kind::Var:
        if (c.rep < 1 || c.rep > p || cell(c.rep) != Cell::var(c.rep)) {
          throw UsageError("pattern variable x" + std::to_string(c.rep) + " at position " +
                           std::to_string(p) + " is not a class representative");
        }
        if (c.rep == p) {
          ++free_classes_;
        } else {
          links_.emplace_back(static_cast<std::uint8_t>(p - 1), static_cast<std::uint8_t>(c.rep - 1));
        }
        break;
    }
  }
}

Pattern Pattern::parse(int order, std::string_view text) {
  std::vector<Cell> cells;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(start, end - start);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (tok == "0") {
      cells.push_back(Cell::zero());
    } else if (tok == "1") {
      cells.push_back(Cell::one());
    } else if (tok.size() >= 2 && tok[0] == 'x') {
      int rep = 0;
      const auto [ptr, ec] = std::from_chars(tok.data() + 1, tok.data() + tok.size(), rep);
      if (ec != std::errc{} || ptr != tok.data() + tok.size() || rep < 1 || rep > 255) {
        throw UsageError("malformed pattern cell '" + std::string(tok) + "'");
      }
      cells.push_back(Cell::var(rep));
    } else {
      throw UsageError("malformed pattern cell '" + std::string(tok) + "'");
    }
    start = end + 1;
  }
  return Pattern(order, std::move(cells));
}

bool Pattern::matches(const Graph& g) const {
  if (g.order() != order_) throw UsageError("pattern/graph order mismatch");
  return matches(g.bits());
}

std::string Pattern::to_string() const {
  std::string out;
  for (int p = 1; p <= size(); ++p) {
    if (p > 1) out += ',';
    const Cell& c = cell(p);
    switch (c.kind) {
      case Cell::Kind::Zero: out += '0'; break;
      case Cell::Kind::One: out += '1'; break;
      case Cell::Kind::Var: out += 'x' + std::to_string(c.rep); break;
    }
  }
  return out;
}

std::size_t PatternHash::operator()(const Pattern& p) const {
  std::size_t h = static_cast<std::size_t>(p.order());
  for (const Cell& c : p.cells()) {
    h = h * 1099511628211ULL + (static_cast<std::size_t>(c.kind) << 8 | c.rep);
  }
  return h;
}

bool PatternSet::covers(const Graph& g) const {
  return std::any_of(patterns.begin(), patterns.end(),
                     [&](const Pattern& p) { return p.matches(g.bits()); });
}

std::uint64_t PatternSet::instance_total() const {
  std::uint64_t total = 0;
  for (const auto& p : patterns) total += p.instance_count();
  return total;
}

std::optional<Pattern> pattern_at(const Permutation& pi, int i) {
  const int n = pi.degree();
  const int m = num_positions(n);
  if (i < 1 || i > m) throw UsageError("pattern_at: position out of range");
  const PositionMap map(pi);
  Unifier u(m);
  for (int j = 1; j < i; ++j) {
    if (!u.unify(map[j] - 1, j - 1)) return std::nullopt;
  }
  if (!u.bind(map[i] - 1, 0) || !u.bind(i - 1, 1)) return std::nullopt;

  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(m));
  for (int p = 0; p < m; ++p) {
    switch (u.bound(p)) {
      case 0: cells.push_back(Cell::zero()); break;
      case 1: cells.push_back(Cell::one()); break;
      default: cells.push_back(Cell::var(u.find(p) + 1)); break;
    }
  }
  return Pattern(n, std::move(cells), i);
}

PatternSet patterns_of(const Permutation& pi) {
  PatternSet set;
  set.source = pi;
  const int m = num_positions(pi.degree());
  for (int i = 1; i <= m; ++i) {
    if (auto p = pattern_at(pi, i)) set.patterns.push_back(std::move(*p));
  }
  return set;
}

PatternSet merge_patterns(std::span<const Permutation> perms) {
  PatternSet merged;
  std::unordered_set<Pattern, PatternHash> seen;
  for (const auto& pi : perms) {
    for (auto& p : patterns_of(pi).patterns) {
      if (seen.insert(p).second) merged.patterns.push_back(std::move(p));
    }
  }
  return merged;
}

bool covered_by_set(const PatternSet& set, const Graph& g) { return set.covers(g); }

bool covered_by_set(std::span<const PatternSet> sets, const Graph& g) {
  return std::any_of(sets.begin(), sets.end(), [&](const PatternSet& s) { return s.covers(g); });
}

void for_each_instance(const Pattern& p, const std::function<void(const Graph&)>& visit,
                       std::uint64_t budget) {
  if (p.instance_count() > budget) {
    throw UsageError("pattern has " + std::to_string(p.instance_count()) +
                     " instances, above the enumeration budget; use SAT enumeration");
  }
  // Free classes ordered by their largest position: a class whose maximum is
  // later dominates every class below it in GraphId value, so a binary
  // counter over them yields ascending ids.
  const int m = p.size();
  std::vector<std::uint64_t> class_mask(static_cast<std::size_t>(m) + 1, 0);
  std::vector<int> class_max(static_cast<std::size_t>(m) + 1, 0);
  for (int q = 1; q <= m; ++q) {
    const Cell& c = p.cell(q);
    if (c.kind != Cell::Kind::Var) continue;
    class_mask[c.rep] |= std::uint64_t{1} << (q - 1);
    class_max[c.rep] = q;
  }
  std::vector<int> reps;
  for (int r = 1; r <= m; ++r) {
    if (class_mask[static_cast<std::size_t>(r)] != 0) reps.push_back(r);
  }
  std::sort(reps.begin(), reps.end(),
            [&](int a, int b) { return class_max[static_cast<std::size_t>(a)] < class_max[static_cast<std::size_t>(b)]; });
  const std::uint64_t total = p.instance_count();
  for (std::uint64_t counter = 0; counter < total; ++counter) {
    std::uint64_t bits = p.const_value();
    for (std::size_t k = 0; k < reps.size(); ++k) {
      if ((counter >> k) & 1U) bits |= class_mask[static_cast<std::size_t>(reps[k])];
    }
    visit(Graph(p.order(), bits));
  }
}

std::vector<Graph> enumerate_instances(const Pattern& p,
                                       const std::function<bool(const Graph&)>& filter,
                                       std::uint64_t budget) {
  std::vector<Graph> out;
  for_each_instance(
      p,
      [&](const Graph& g) {
        if (!filter || filter(g)) out.push_back(g);
      },
      budget);
  return out;
}

}  // namespace lexcover
