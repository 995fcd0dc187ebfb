#pragma once

// Table shapes, cell subsets, monomials as exponent tables, the semigroup
// map pi, and recognition of triangular / 2x2 block diagonal subsets.
//
// Every public index is 1-based: rows 1..m, columns 1..n.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace subtable {

struct TableShape {
  int m = 1;
  int n = 1;

  TableShape() = default;
  TableShape(int rows, int cols);

  std::size_t cells() const { return static_cast<std::size_t>(m) * static_cast<std::size_t>(n); }
  /// Row-major flat index of the 1-based cell (i, j).
  std::size_t flat(int i, int j) const;
  bool contains(int i, int j) const { return i >= 1 && i <= m && j >= 1 && j <= n; }

  friend bool operator==(const TableShape&, const TableShape&) = default;
};

struct Cell {
  int i = 1;
  int j = 1;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// A subset S of the full index set T, stored as an m x n boolean matrix.
class Subset {
 public:
  explicit Subset(TableShape shape);
  Subset(TableShape shape, const std::vector<Cell>& cells);

  static Subset full(TableShape shape);
  /// Build from rows of '0'/'1' characters, e.g. {"110", "100"}.
  static Subset from_rows(const std::vector<std::string>& rows);

  const TableShape& shape() const { return shape_; }
  bool contains(int i, int j) const { return cells_[shape_.flat(i, j)] != 0; }
  bool contains(Cell c) const { return contains(c.i, c.j); }
  void set(int i, int j, bool value = true);

  std::size_t size() const;
  std::vector<Cell> members() const;
  /// Bitmask of columns j (bit j-1) with (i, j) in S. Requires n <= 64.
  std::uint64_t row_support(int i) const;
  /// Bitmask of rows i (bit i-1) with (i, j) in S. Requires m <= 64.
  std::uint64_t column_support(int j) const;

  std::vector<std::string> to_rows() const;

  friend bool operator==(const Subset&, const Subset&) = default;
  friend auto operator<=>(const Subset& a, const Subset& b) {
    return std::tie(a.shape_.m, a.shape_.n, a.cells_) <=> std::tie(b.shape_.m, b.shape_.n, b.cells_);
  }

 private:
  TableShape shape_;
  std::vector<std::uint8_t> cells_;
};

/// A monomial in the variables x_{i,j}: a table of nonnegative exponents.
class CellTable {
 public:
  explicit CellTable(TableShape shape);
  CellTable(TableShape shape, std::vector<int> row_major);

  /// Product of the listed variables (repeats allowed).
  static CellTable monomial(TableShape shape, const std::vector<Cell>& vars);

  const TableShape& shape() const { return shape_; }
  int at(int i, int j) const { return exps_[shape_.flat(i, j)]; }
  int at(Cell c) const { return at(c.i, c.j); }
  void set(int i, int j, int exponent);
  void add(int i, int j, int delta);

  const std::vector<int>& exponents() const { return exps_; }
  int degree() const;
  bool is_squarefree() const;
  bool is_one() const { return degree() == 0; }

  friend bool operator==(const CellTable&, const CellTable&) = default;
  /// Lexicographic on the flattened row-major entries (not the monomial order).
  friend auto operator<=>(const CellTable& a, const CellTable& b) {
    return std::tie(a.shape_.m, a.shape_.n, a.exps_) <=> std::tie(b.shape_.m, b.shape_.n, b.exps_);
  }

 private:
  TableShape shape_;
  std::vector<int> exps_;
};

CellTable operator*(const CellTable& a, const CellTable& b);
bool divides(const CellTable& divisor, const CellTable& dividend);
/// dividend / divisor; throws std::invalid_argument if not divisible.
CellTable quotient(const CellTable& dividend, const CellTable& divisor);
CellTable lcm(const CellTable& a, const CellTable& b);
CellTable gcd(const CellTable& a, const CellTable& b);
bool coprime(const CellTable& a, const CellTable& b);

/// Exponent vector of pi(mono) in the semigroup ring R_S.
struct PiImage {
  std::vector<int> row_deg;
  std::vector<int> col_deg;
  int w_deg = 0;
  int t_deg = 0;

  int degree() const { return w_deg + t_deg; }
  bool consistent() const;

  friend auto operator<=>(const PiImage&, const PiImage&) = default;
  friend bool operator==(const PiImage&, const PiImage&) = default;
};

PiImage operator+(const PiImage& a, const PiImage& b);

PiImage pi_image(const Subset& s, const CellTable& mono);

/// Row and column permutations. row_perm[i-1] is the new position of
/// original row i (1-based), likewise for columns.
struct PermPair {
  std::vector<int> row_perm;
  std::vector<int> col_perm;

  static PermPair identity(TableShape shape);
  bool valid_for(TableShape shape) const;
  PermPair inverse() const;

  friend bool operator==(const PermPair&, const PermPair&) = default;
};

Subset apply(const PermPair& p, const Subset& s);
CellTable apply(const PermPair& p, const CellTable& t);
Cell apply(const PermPair& p, Cell c);

struct BlockWitness {
  int r = 0;
  int c = 0;
  PermPair perms;

  friend bool operator==(const BlockWitness&, const BlockWitness&) = default;
};

struct Classification {
  std::optional<PermPair> triangular;
  std::optional<BlockWitness> block_diagonal;

  bool is_triangular() const { return triangular.has_value(); }
  bool is_block_diagonal() const { return block_diagonal.has_value(); }
  bool neither() const { return !triangular && !block_diagonal; }
};

/// True iff S is downward closed as given: (i,j) in S implies (i2,j2) in S
/// for all i2 <= i, j2 <= j.
bool is_triangular_in_place(const Subset& s);

/// The block pattern {i<=r, j<=c} u {i>r, j>c} for the given (r, c).
Subset block_pattern(TableShape shape, int r, int c);

/// First (r, c) realizing the two-block pattern without permutation.
/// Candidates are scanned with r descending, then c descending, so the
/// full table reports (m, n).
std::optional<std::pair<int, int>> is_block_diagonal_in_place(const Subset& s);

/// Fast recognition via row supports. Requires m, n <= 64.
Classification classify(const Subset& s);

struct OracleBudget {
  std::uint64_t max_permutation_pairs = 120ull * 120ull;  // m, n <= 5
};

/// Exhaustive check over all m! * n! row/column permutation pairs.
Classification classify_oracle(const Subset& s, OracleBudget budget = {});

bool validates(const Subset& s, const PermPair& triangular_witness);
bool validates(const Subset& s, const BlockWitness& block_witness);

}  // namespace subtable
