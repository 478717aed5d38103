#include "lexcover/set_cover.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "lexcover/encoding.hpp"

namespace lexcover {

// ---------------------------------------------------------------- Bitset

void Bitset::set_all() {
  std::fill(words_.begin(), words_.end(), ~std::uint64_t{0});
  if (size_ % 64 != 0 && !words_.empty()) words_.back() = (std::uint64_t{1} << (size_ % 64)) - 1;
}

std::size_t Bitset::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::size_t Bitset::count_within(const Bitset& mask) const {
  std::size_t c = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) c += static_cast<std::size_t>(std::popcount(words_[i] & mask.words_[i]));
  return c;
}

bool Bitset::none() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

bool Bitset::subset_within(const Bitset& other, const Bitset& mask) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & mask.words_[i] & ~other.words_[i]) return false;
  }
  return true;
}

bool Bitset::intersects(const Bitset& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & other.words_[i]) return true;
  }
  return false;
}

bool Bitset::intersects_within(const Bitset& other, const Bitset& mask) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & other.words_[i] & mask.words_[i]) return true;
  }
  return false;
}

std::size_t Bitset::first_within(const Bitset& mask) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (const auto w = words_[i] & mask.words_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(w));
  }
  return size_;
}

Bitset& Bitset::operator&=(const Bitset& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

Bitset& Bitset::operator|=(const Bitset& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

Bitset& Bitset::subtract(const Bitset& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

std::vector<std::size_t> Bitset::ones() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    for (auto w = words_[i]; w; w &= w - 1) out.push_back(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
  }
  return out;
}

namespace {

template <class F>
void for_each_within(const Bitset& a, const Bitset& mask, F&& f) {
  const auto wa = a.words();
  const auto wm = mask.words();
  for (std::size_t i = 0; i < wa.size(); ++i) {
    for (auto w = wa[i] & wm[i]; w; w &= w - 1) {
      if (!f(i * 64 + static_cast<std::size_t>(std::countr_zero(w)))) return;
    }
  }
}

}  // namespace

// ------------------------------------------------------------- Incidence

Incidence Incidence::from_rows(std::size_t cols, std::vector<Bitset> by_row) {
  Incidence inc;
  inc.rows = by_row.size();
  inc.cols = cols;
  inc.by_col.assign(cols, Bitset(inc.rows));
  for (std::size_t r = 0; r < inc.rows; ++r) {
    if (by_row[r].size() != cols) throw UsageError("incidence: row width mismatch");
    for (auto c : by_row[r].ones()) inc.by_col[c].set(r);
  }
  inc.by_row = std::move(by_row);
  return inc;
}

ReduceState ReduceState::all(const Incidence& inc) {
  ReduceState st{Bitset(inc.rows), Bitset(inc.cols), {}};
  st.rows_alive.set_all();
  st.cols_alive.set_all();
  return st;
}

namespace {

void commit_row(const Incidence& inc, ReduceState& st, std::size_t r) {
  st.forced.push_back(r);
  st.rows_alive.reset(r);
  st.cols_alive.subtract(inc.by_row[r]);
}

// False when some live column lost all its rows.
bool reduce_feasible(const Incidence& inc, ReduceState& st) {
  bool changed = true;
  while (changed) {
    changed = false;

    for (auto c : st.cols_alive.ones()) {
      if (!st.cols_alive.test(c)) continue;
      const auto support = inc.by_col[c].count_within(st.rows_alive);
      if (support == 0) return false;
      if (support == 1) {
        commit_row(inc, st, inc.by_col[c].first_within(st.rows_alive));
        changed = true;
      }
    }

    std::vector<std::pair<std::size_t, std::size_t>> rows;  // (weight, index)
    for (auto r : st.rows_alive.ones()) {
      const auto w = inc.by_row[r].count_within(st.cols_alive);
      if (w == 0) {
        st.rows_alive.reset(r);
        changed = true;
      } else {
        rows.emplace_back(w, r);
      }
    }

    // Rows: a row contained in another live row goes. Heavier rows come
    // first, so every potential container is already in the kept list.
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<std::size_t> kept_rows;
    for (const auto& [w, r] : rows) {
      const bool dominated = std::any_of(kept_rows.begin(), kept_rows.end(), [&](std::size_t k) {
        return inc.by_row[r].subset_within(inc.by_row[k], st.cols_alive);
      });
      if (dominated) {
        st.rows_alive.reset(r);
        changed = true;
      } else {
        kept_rows.push_back(r);
      }
    }

    // Columns: a column whose rows contain another live column's rows goes.
    std::vector<std::pair<std::size_t, std::size_t>> cols;  // (support, index)
    for (auto c : st.cols_alive.ones()) cols.emplace_back(inc.by_col[c].count_within(st.rows_alive), c);
    std::stable_sort(cols.begin(), cols.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::vector<std::size_t>> kept_by_first(inc.rows);
    for (const auto& [support, c] : cols) {
      if (support == 0) return false;
      bool dominated = false;
      for_each_within(inc.by_col[c], st.rows_alive, [&](std::size_t r) {
        for (auto k : kept_by_first[r]) {
          if (inc.by_col[k].subset_within(inc.by_col[c], st.rows_alive)) {
            dominated = true;
            return false;
          }
        }
        return true;
      });
      if (dominated) {
        st.cols_alive.reset(c);
        changed = true;
      } else {
        kept_by_first[inc.by_col[c].first_within(st.rows_alive)].push_back(c);
      }
    }
  }
  return true;
}

struct BranchAndBound {
  const Incidence& inc;
  std::vector<std::size_t> best;
  bool have_best = false;
  std::uint64_t nodes = 0;

  // Size of a maximal set of live columns with pairwise disjoint rows.
  std::size_t lower_bound(const ReduceState& st) const {
    std::vector<std::pair<std::size_t, std::size_t>> cols;
    for (auto c : st.cols_alive.ones()) cols.emplace_back(inc.by_col[c].count_within(st.rows_alive), c);
    std::stable_sort(cols.begin(), cols.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    Bitset used(inc.rows);
    std::size_t count = 0;
    for (const auto& [support, c] : cols) {
      if (inc.by_col[c].intersects_within(used, st.rows_alive)) continue;
      used |= inc.by_col[c];
      ++count;
    }
    return count;
  }

  void greedy(ReduceState st) {
    while (!st.cols_alive.none()) {
      std::size_t pick = inc.rows;
      std::size_t weight = 0;
      for (auto r : st.rows_alive.ones()) {
        const auto w = inc.by_row[r].count_within(st.cols_alive);
        if (w > weight) {
          weight = w;
          pick = r;
        }
      }
      if (pick == inc.rows) return;
      commit_row(inc, st, pick);
    }
    offer(st.forced);
  }

  void offer(const std::vector<std::size_t>& chosen) {
    if (!have_best || chosen.size() < best.size()) {
      best = chosen;
      have_best = true;
    }
  }

  void search(ReduceState st) {
    ++nodes;
    if (!reduce_feasible(inc, st)) return;
    if (st.cols_alive.none()) {
      offer(st.forced);
      return;
    }
    if (have_best && st.forced.size() + lower_bound(st) >= best.size()) return;

    std::size_t branch_col = inc.cols;
    std::size_t branch_support = std::numeric_limits<std::size_t>::max();
    for (auto c : st.cols_alive.ones()) {
      const auto s = inc.by_col[c].count_within(st.rows_alive);
      if (s < branch_support) {
        branch_support = s;
        branch_col = c;
      }
    }
    std::vector<std::pair<std::size_t, std::size_t>> options;
    for_each_within(inc.by_col[branch_col], st.rows_alive, [&](std::size_t r) {
      options.emplace_back(inc.by_row[r].count_within(st.cols_alive), r);
      return true;
    });
    std::stable_sort(options.begin(), options.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [w, r] : options) {
      ReduceState child = st;
      commit_row(inc, child, r);
      search(std::move(child));
      // Every cover containing r has now been seen.
      st.rows_alive.reset(r);
    }
  }
};

}  // namespace

void reduce_in_place(const Incidence& inc, ReduceState& state) {
  if (!reduce_feasible(inc, state)) throw std::runtime_error("set cover: a column has no covering row");
}

ExactResult solve_incidence(const Incidence& inc, ReduceState state) {
  reduce_in_place(inc, state);
  ExactResult result;
  result.forced_count = state.forced.size();
  BranchAndBound bb{inc, {}, false, 0};
  bb.greedy(state);
  bb.search(std::move(state));
  result.chosen = bb.best;
  std::sort(result.chosen.begin(), result.chosen.end());
  result.nodes = bb.nodes;
  return result;
}

// ----------------------------------------------------------- CoverMatrix

std::vector<std::size_t> CoverMatrix::row_weights() const {
  std::vector<std::size_t> out;
  for (const auto& r : rows) out.push_back(r.count());
  return out;
}

std::vector<std::size_t> CoverMatrix::column_supports() const {
  std::vector<std::size_t> out(num_cols(), 0);
  for (const auto& r : rows) {
    for (auto c : r.ones()) ++out[c];
  }
  return out;
}

namespace {

std::vector<Permutation> parse_labels(const std::vector<std::string>& labels) {
  std::vector<Permutation> out;
  for (const auto& l : labels) out.push_back(Permutation::parse(l));
  return out;
}

int order_of(std::span<const Permutation> a, std::span<const Permutation> b) {
  if (!a.empty()) return a.front().degree();
  if (!b.empty()) return b.front().degree();
  return 0;
}

}  // namespace

std::vector<Permutation> CoverMatrix::row_perms() const { return parse_labels(row_labels); }
std::vector<Permutation> CoverMatrix::forced_perms() const { return parse_labels(forced); }
std::vector<Permutation> CoverSolution::perms() const { return parse_labels(chosen); }

CoverMatrix build_matrix(std::span<const Permutation> rows, std::span<const Permutation> beta,
                         std::uint64_t budget) {
  CoverMatrix mat;
  mat.order = order_of(rows, beta);
  if (rows.empty()) return mat;
  for (const auto& pi : rows) {
    if (std::find(beta.begin(), beta.end(), pi) != beta.end()) {
      throw UsageError("build_matrix: rows and beta must be disjoint");
    }
  }

  const PatternSet row_patterns = merge_patterns(rows);
  const PatternSet beta_patterns = merge_patterns(beta);
  std::uint64_t total = 0;
  for (const auto& gamma : row_patterns.patterns) {
    total += gamma.instance_count();
    if (total > budget) break;
  }

  std::vector<GraphId> ids;
  if (total <= budget) {
    for (const auto& gamma : row_patterns.patterns) {
      for_each_instance(gamma, [&](const Graph& g) {
        if (beta_patterns.patterns.empty() || !beta_patterns.covers(g)) ids.push_back(g.id());
      }, budget);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  } else {
    EncodingContext ctx(mat.order);
    for (const auto& gamma : beta_patterns.patterns) ctx.add_not_covered(gamma);
    for (const auto& gamma : row_patterns.patterns) {
      const auto lits = ctx.covered_literals(gamma);
      ctx.all_models_projected(lits, [&](const Graph& g) {
        ids.push_back(g.id());
        return true;
      });
    }
    std::sort(ids.begin(), ids.end());
  }
  mat.col_ids = ids;

  for (const auto& pi : rows) {
    const PositionMap map(pi);
    Bitset bits(ids.size());
    for (std::size_t c = 0; c < ids.size(); ++c) {
      if (map.makes_smaller(ids[c])) bits.set(c);
    }
    if (bits.none()) continue;
    mat.row_labels.push_back(pi.to_string());
    mat.rows.push_back(std::move(bits));
  }
  return mat;
}

CoverMatrix reduce(const CoverMatrix& mat) {
  const Incidence inc = mat.incidence();
  ReduceState st = ReduceState::all(inc);
  reduce_in_place(inc, st);

  CoverMatrix out;
  out.order = mat.order;
  out.forced = mat.forced;
  for (auto r : st.forced) out.forced.push_back(mat.row_labels[r]);
  const auto live_cols = st.cols_alive.ones();
  for (auto c : live_cols) out.col_ids.push_back(mat.col_ids[c]);
  for (auto r : st.rows_alive.ones()) {
    Bitset bits(live_cols.size());
    for (std::size_t k = 0; k < live_cols.size(); ++k) {
      if (mat.rows[r].test(live_cols[k])) bits.set(k);
    }
    out.row_labels.push_back(mat.row_labels[r]);
    out.rows.push_back(std::move(bits));
  }
  return out;
}

CoverSolution solve_exact(const CoverMatrix& mat) {
  const Incidence inc = mat.incidence();
  const auto result = solve_incidence(inc, ReduceState::all(inc));
  CoverSolution sol;
  sol.chosen = mat.forced;
  for (auto r : result.chosen) sol.chosen.push_back(mat.row_labels[r]);
  sol.forced_count = mat.forced.size() + result.forced_count;
  sol.optimal = result.optimal;
  sol.nodes = result.nodes;
  return sol;
}

void export_opb(const CoverMatrix& mat, std::ostream& out) {
  out << "* #variable= " << mat.num_rows() << " #constraint= " << mat.num_cols() << "\n";
  for (std::size_t r = 0; r < mat.num_rows(); ++r) out << "* x" << r + 1 << " = " << mat.row_labels[r] << "\n";
  out << "min:";
  for (std::size_t r = 0; r < mat.num_rows(); ++r) out << " +1 x" << r + 1;
  out << ";\n";
  const Incidence inc = mat.incidence();
  for (std::size_t c = 0; c < mat.num_cols(); ++c) {
    for (auto r : inc.by_col[c].ones()) out << "+1 x" << r + 1 << " ";
    out << ">= 1;\n";
  }
}

void write_matrix(const CoverMatrix& mat, std::ostream& out) {
  out << "# order " << mat.order << "\n# columns";
  for (auto id : mat.col_ids) out << ' ' << id;
  out << '\n';
  for (const auto& f : mat.forced) out << "# forced " << f << '\n';
  for (const auto& l : mat.row_labels) out << "# row " << l << '\n';
  out << mat.num_rows() << ' ' << mat.num_cols() << '\n';
  for (const auto& r : mat.rows) {
    std::string line(mat.num_cols(), '0');
    for (auto c : r.ones()) line[c] = '1';
    out << line << '\n';
  }
}

CoverMatrix read_matrix(std::istream& in) {
  CoverMatrix mat;
  std::string line;
  bool have_header = false;
  bool have_columns = false;
  std::size_t nrows = 0;
  std::size_t ncols = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ss(line.substr(1));
      std::string key;
      ss >> key;
      std::string rest;
      std::getline(ss >> std::ws, rest);
      if (key == "order") {
        mat.order = std::stoi(rest);
      } else if (key == "columns") {
        std::istringstream ids(rest);
        for (GraphId id; ids >> id;) mat.col_ids.push_back(id);
        have_columns = true;
      } else if (key == "forced") {
        mat.forced.push_back(rest);
      } else if (key == "row") {
        mat.row_labels.push_back(rest);
      }
      continue;
    }
    if (!have_header) {
      std::istringstream ss(line);
      if (!(ss >> nrows >> ncols)) throw UsageError("matrix: malformed header '" + line + "'");
      have_header = true;
      continue;
    }
    if (line.size() != ncols || line.find_first_not_of("01") != std::string::npos) {
      throw UsageError("matrix: malformed row '" + line + "'");
    }
    Bitset bits(ncols);
    for (std::size_t c = 0; c < ncols; ++c) {
      if (line[c] == '1') bits.set(c);
    }
    mat.rows.push_back(std::move(bits));
  }
  if (!have_header) throw UsageError("matrix: missing 'rows cols' header");
  if (mat.rows.size() != nrows) throw UsageError("matrix: row count does not match header");
  if (!have_columns) {
    mat.col_ids.resize(ncols);
    std::iota(mat.col_ids.begin(), mat.col_ids.end(), GraphId{0});
  }
  if (mat.col_ids.size() != ncols) throw UsageError("matrix: column table does not match header");
  if (mat.row_labels.empty()) {
    for (std::size_t r = 0; r < nrows; ++r) mat.row_labels.push_back("r" + std::to_string(r + 1));
  }
  if (mat.row_labels.size() != nrows) throw UsageError("matrix: row labels do not match header");
  return mat;
}

}  // namespace lexcover
