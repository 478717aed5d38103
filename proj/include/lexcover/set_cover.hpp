#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lexcover/graph.hpp"
#include "lexcover/pattern.hpp"
#include "lexcover/permutation.hpp"

namespace lexcover {

/// Fixed-size packed bitset.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const { return size_; }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void set_all();

  std::size_t count() const;
  /// Popcount of *this & mask.
  std::size_t count_within(const Bitset& mask) const;
  bool none() const;
  /// (*this & mask) is a subset of other.
  bool subset_within(const Bitset& other, const Bitset& mask) const;
  bool intersects(const Bitset& other) const;
  bool intersects_within(const Bitset& other, const Bitset& mask) const;
  /// Index of the first set bit of *this & mask, or size().
  std::size_t first_within(const Bitset& mask) const;

  Bitset& operator&=(const Bitset& other);
  Bitset& operator|=(const Bitset& other);
  /// *this &= ~other
  Bitset& subtract(const Bitset& other);

  std::vector<std::size_t> ones() const;
  std::span<const std::uint64_t> words() const { return words_; }

  bool operator==(const Bitset&) const = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// 0/1 incidence with both orientations, the shared core of reduce and
/// solve_exact. Row r covers column c iff by_row[r].test(c).
struct Incidence {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Bitset> by_row;
  std::vector<Bitset> by_col;

  static Incidence from_rows(std::size_t cols, std::vector<Bitset> by_row);
};

/// Live rows/columns of an Incidence plus the rows committed so far.
struct ReduceState {
  Bitset rows_alive;
  Bitset cols_alive;
  std::vector<std::size_t> forced;

  static ReduceState all(const Incidence& inc);
};

/// Row dominance, column dominance and essential rows to a fixpoint.
/// Throws std::runtime_error if a live column has no live row.
void reduce_in_place(const Incidence& inc, ReduceState& state);

struct ExactResult {
  std::vector<std::size_t> chosen;  // ascending row indices, forced included
  std::size_t forced_count = 0;
  bool optimal = true;
  std::uint64_t nodes = 0;
};

/// Minimum cover of the live columns by live rows, forced rows included.
ExactResult solve_incidence(const Incidence& inc, ReduceState state);

/// Explicit cover matrix. Rows are labelled (permutation images for real
/// matrices, r<k> for synthetic ones); columns carry GraphIds.
struct CoverMatrix {
  int order = 0;
  std::vector<std::string> row_labels;
  std::vector<Bitset> rows;
  std::vector<GraphId> col_ids;
  std::vector<std::string> forced;

  std::size_t num_rows() const { return rows.size(); }
  std::size_t num_cols() const { return col_ids.size(); }
  std::vector<std::size_t> row_weights() const;
  std::vector<std::size_t> column_supports() const;
  bool empty() const { return rows.empty() && col_ids.empty(); }

  Incidence incidence() const { return Incidence::from_rows(num_cols(), rows); }
  /// Row labels parsed back into permutations.
  std::vector<Permutation> row_perms() const;
  std::vector<Permutation> forced_perms() const;
};

/// Columns = cover(rows) \ cover(beta), ascending GraphId; rows with no
/// column are dropped. Column enumeration expands patterns when the total
/// instance count fits the budget and falls back to allSAT otherwise.
CoverMatrix build_matrix(std::span<const Permutation> rows, std::span<const Permutation> beta,
                         std::uint64_t budget = kDefaultInstanceBudget);

CoverMatrix reduce(const CoverMatrix& mat);

struct CoverSolution {
  std::vector<std::string> chosen;  // row labels: forced first, then residual picks
  std::size_t forced_count = 0;
  bool optimal = true;
  std::uint64_t nodes = 0;

  std::vector<Permutation> perms() const;
};

CoverSolution solve_exact(const CoverMatrix& mat);

void export_opb(const CoverMatrix& mat, std::ostream& out);

/// Dump: "# order n", "# columns id...", "# row label" lines, then
/// "rows cols" and one bitstring per row. Plain dumps without the comment
/// lines are accepted by the reader.
void write_matrix(const CoverMatrix& mat, std::ostream& out);
CoverMatrix read_matrix(std::istream& in);

}  // namespace lexcover
