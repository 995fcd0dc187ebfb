#include "subtable/table_core.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "subtable/error.hpp"

namespace subtable {

TableShape::TableShape(int rows, int cols) : m(rows), n(cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("table shape must be at least 1x1");
}

std::size_t TableShape::flat(int i, int j) const {
  if (!contains(i, j)) {
    throw std::out_of_range("cell (" + std::to_string(i) + "," + std::to_string(j) + ") outside " +
                            std::to_string(m) + "x" + std::to_string(n) + " table");
  }
  return static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j - 1);
}

// ---------------------------------------------------------------------------
// Subset

Subset::Subset(TableShape shape) : shape_(shape), cells_(shape.cells(), 0) {}

Subset::Subset(TableShape shape, const std::vector<Cell>& cells) : Subset(shape) {
  for (const Cell& c : cells) set(c.i, c.j, true);
}

Subset Subset::full(TableShape shape) {
  Subset s(shape);
  std::fill(s.cells_.begin(), s.cells_.end(), 1);
  return s;
}

Subset Subset::from_rows(const std::vector<std::string>& rows) {
  if (rows.empty()) throw ParseError("subset has no rows");
  const int m = static_cast<int>(rows.size());
  const int n = static_cast<int>(rows.front().size());
  if (n == 0) throw ParseError("subset row is empty");
  Subset s(TableShape(m, n));
  for (int i = 1; i <= m; ++i) {
    const std::string& row = rows[i - 1];
    if (static_cast<int>(row.size()) != n) throw ParseError("subset rows have unequal length");
    for (int j = 1; j <= n; ++j) {
      const char ch = row[j - 1];
      if (ch != '0' && ch != '1') throw ParseError(std::string("unexpected character '") + ch + "' in subset row");
      s.set(i, j, ch == '1');
    }
  }
  return s;
}

void Subset::set(int i, int j, bool value) { cells_[shape_.flat(i, j)] = value ? 1 : 0; }

std::size_t Subset::size() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

std::vector<Cell> Subset::members() const {
  std::vector<Cell> out;
  for (int i = 1; i <= shape_.m; ++i)
    for (int j = 1; j <= shape_.n; ++j)
      if (contains(i, j)) out.push_back({i, j});
  return out;
}

std::uint64_t Subset::row_support(int i) const {
  if (shape_.n > 64) throw std::invalid_argument("row_support requires n <= 64");
  std::uint64_t mask = 0;
  for (int j = 1; j <= shape_.n; ++j)
    if (contains(i, j)) mask |= std::uint64_t{1} << (j - 1);
  return mask;
}

std::uint64_t Subset::column_support(int j) const {
  if (shape_.m > 64) throw std::invalid_argument("column_support requires m <= 64");
  std::uint64_t mask = 0;
  for (int i = 1; i <= shape_.m; ++i)
    if (contains(i, j)) mask |= std::uint64_t{1} << (i - 1);
  return mask;
}

std::vector<std::string> Subset::to_rows() const {
  std::vector<std::string> rows;
  for (int i = 1; i <= shape_.m; ++i) {
    std::string row;
    for (int j = 1; j <= shape_.n; ++j) row.push_back(contains(i, j) ? '1' : '0');
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// CellTable

CellTable::CellTable(TableShape shape) : shape_(shape), exps_(shape.cells(), 0) {}

CellTable::CellTable(TableShape shape, std::vector<int> row_major) : shape_(shape), exps_(std::move(row_major)) {
  if (exps_.size() != shape_.cells()) throw std::invalid_argument("exponent table size does not match shape");
  for (int e : exps_)
    if (e < 0) throw std::invalid_argument("exponents must be nonnegative");
}

CellTable CellTable::monomial(TableShape shape, const std::vector<Cell>& vars) {
  CellTable t(shape);
  for (const Cell& c : vars) t.add(c.i, c.j, 1);
  return t;
}

void CellTable::set(int i, int j, int exponent) {
  if (exponent < 0) throw std::invalid_argument("exponents must be nonnegative");
  exps_[shape_.flat(i, j)] = exponent;
}

void CellTable::add(int i, int j, int delta) {
  int& e = exps_[shape_.flat(i, j)];
  if (e + delta < 0) throw std::invalid_argument("exponents must be nonnegative");
  e += delta;
}

int CellTable::degree() const { return std::accumulate(exps_.begin(), exps_.end(), 0); }

bool CellTable::is_squarefree() const {
  return std::all_of(exps_.begin(), exps_.end(), [](int e) { return e <= 1; });
}

namespace {

void require_same_shape(const TableShape& a, const TableShape& b) {
  if (!(a == b)) throw std::invalid_argument("table shapes differ");
}

template <typename Op>
CellTable combine(const CellTable& a, const CellTable& b, Op op) {
  require_same_shape(a.shape(), b.shape());
  std::vector<int> out(a.exponents().size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = op(a.exponents()[k], b.exponents()[k]);
  return CellTable(a.shape(), std::move(out));
}

}  // namespace

CellTable operator*(const CellTable& a, const CellTable& b) {
  return combine(a, b, [](int x, int y) { return x + y; });
}

bool divides(const CellTable& divisor, const CellTable& dividend) {
  require_same_shape(divisor.shape(), dividend.shape());
  const auto& d = divisor.exponents();
  const auto& e = dividend.exponents();
  for (std::size_t k = 0; k < d.size(); ++k)
    if (d[k] > e[k]) return false;
  return true;
}

CellTable quotient(const CellTable& dividend, const CellTable& divisor) {
  if (!divides(divisor, dividend)) throw std::invalid_argument("monomial does not divide");
  return combine(dividend, divisor, [](int x, int y) { return x - y; });
}

CellTable lcm(const CellTable& a, const CellTable& b) {
  return combine(a, b, [](int x, int y) { return std::max(x, y); });
}

CellTable gcd(const CellTable& a, const CellTable& b) {
  return combine(a, b, [](int x, int y) { return std::min(x, y); });
}

bool coprime(const CellTable& a, const CellTable& b) { return gcd(a, b).is_one(); }

// ---------------------------------------------------------------------------
// pi

bool PiImage::consistent() const {
  const int rows = std::accumulate(row_deg.begin(), row_deg.end(), 0);
  const int cols = std::accumulate(col_deg.begin(), col_deg.end(), 0);
  const bool nonneg = std::all_of(row_deg.begin(), row_deg.end(), [](int v) { return v >= 0; }) &&
                      std::all_of(col_deg.begin(), col_deg.end(), [](int v) { return v >= 0; }) &&
                      w_deg >= 0 && t_deg >= 0;
  return nonneg && rows == cols && rows == w_deg + t_deg;
}

PiImage operator+(const PiImage& a, const PiImage& b) {
  if (a.row_deg.size() != b.row_deg.size() || a.col_deg.size() != b.col_deg.size())
    throw std::invalid_argument("pi images of different shapes");
  PiImage out = a;
  for (std::size_t i = 0; i < out.row_deg.size(); ++i) out.row_deg[i] += b.row_deg[i];
  for (std::size_t j = 0; j < out.col_deg.size(); ++j) out.col_deg[j] += b.col_deg[j];
  out.w_deg += b.w_deg;
  out.t_deg += b.t_deg;
  return out;
}

PiImage pi_image(const Subset& s, const CellTable& mono) {
  require_same_shape(s.shape(), mono.shape());
  const TableShape& sh = s.shape();
  PiImage img;
  img.row_deg.assign(static_cast<std::size_t>(sh.m), 0);
  img.col_deg.assign(static_cast<std::size_t>(sh.n), 0);
  for (int i = 1; i <= sh.m; ++i) {
    for (int j = 1; j <= sh.n; ++j) {
      const int e = mono.at(i, j);
      img.row_deg[i - 1] += e;
      img.col_deg[j - 1] += e;
      (s.contains(i, j) ? img.w_deg : img.t_deg) += e;
    }
  }
  return img;
}

// ---------------------------------------------------------------------------
// Permutations

namespace {

bool is_permutation_of_1_to(const std::vector<int>& p, int size) {
  if (static_cast<int>(p.size()) != size) return false;
  std::vector<char> seen(static_cast<std::size_t>(size), 0);
  for (int v : p) {
    if (v < 1 || v > size || seen[v - 1]) return false;
    seen[v - 1] = 1;
  }
  return true;
}

std::vector<int> invert(const std::vector<int>& p) {
  std::vector<int> inv(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) inv[p[k] - 1] = static_cast<int>(k) + 1;
  return inv;
}

void require_valid(const PermPair& p, TableShape shape) {
  if (!p.valid_for(shape)) throw std::invalid_argument("permutation pair does not match table shape");
}

}  // namespace

PermPair PermPair::identity(TableShape shape) {
  PermPair p;
  p.row_perm.resize(static_cast<std::size_t>(shape.m));
  p.col_perm.resize(static_cast<std::size_t>(shape.n));
  std::iota(p.row_perm.begin(), p.row_perm.end(), 1);
  std::iota(p.col_perm.begin(), p.col_perm.end(), 1);
  return p;
}

bool PermPair::valid_for(TableShape shape) const {
  return is_permutation_of_1_to(row_perm, shape.m) && is_permutation_of_1_to(col_perm, shape.n);
}

PermPair PermPair::inverse() const { return PermPair{invert(row_perm), invert(col_perm)}; }

Cell apply(const PermPair& p, Cell c) { return Cell{p.row_perm.at(c.i - 1), p.col_perm.at(c.j - 1)}; }

Subset apply(const PermPair& p, const Subset& s) {
  require_valid(p, s.shape());
  Subset out(s.shape());
  for (int i = 1; i <= s.shape().m; ++i)
    for (int j = 1; j <= s.shape().n; ++j)
      if (s.contains(i, j)) out.set(p.row_perm[i - 1], p.col_perm[j - 1], true);
  return out;
}

CellTable apply(const PermPair& p, const CellTable& t) {
  require_valid(p, t.shape());
  CellTable out(t.shape());
  for (int i = 1; i <= t.shape().m; ++i)
    for (int j = 1; j <= t.shape().n; ++j) out.set(p.row_perm[i - 1], p.col_perm[j - 1], t.at(i, j));
  return out;
}

// ---------------------------------------------------------------------------
// Recognition

bool is_triangular_in_place(const Subset& s) {
  const TableShape& sh = s.shape();
  // Downward closure is equivalent to closure under single steps up or left.
  for (int i = 1; i <= sh.m; ++i) {
    for (int j = 1; j <= sh.n; ++j) {
      if (!s.contains(i, j)) continue;
      if (i > 1 && !s.contains(i - 1, j)) return false;
      if (j > 1 && !s.contains(i, j - 1)) return false;
    }
  }
  return true;
}

Subset block_pattern(TableShape shape, int r, int c) {
  if (r < 0 || r > shape.m || c < 0 || c > shape.n) throw std::invalid_argument("block size out of range");
  Subset s(shape);
  for (int i = 1; i <= shape.m; ++i)
    for (int j = 1; j <= shape.n; ++j)
      if ((i <= r && j <= c) || (i > r && j > c)) s.set(i, j, true);
  return s;
}

namespace {

bool matches_block(const Subset& s, int r, int c) {
  const TableShape& sh = s.shape();
  for (int i = 1; i <= sh.m; ++i)
    for (int j = 1; j <= sh.n; ++j) {
      const bool expected = (i <= r && j <= c) || (i > r && j > c);
      if (s.contains(i, j) != expected) return false;
    }
  return true;
}

}  // namespace

std::optional<std::pair<int, int>> is_block_diagonal_in_place(const Subset& s) {
  const TableShape& sh = s.shape();
  for (int r = sh.m; r >= 0; --r)
    for (int c = sh.n; c >= 0; --c)
      if (matches_block(s, r, c)) return std::make_pair(r, c);
  return std::nullopt;
}

bool validates(const Subset& s, const PermPair& triangular_witness) {
  return triangular_witness.valid_for(s.shape()) && is_triangular_in_place(apply(triangular_witness, s));
}

bool validates(const Subset& s, const BlockWitness& w) {
  const TableShape& sh = s.shape();
  if (!w.perms.valid_for(sh) || w.r < 0 || w.r > sh.m || w.c < 0 || w.c > sh.n) return false;
  return matches_block(apply(w.perms, s), w.r, w.c);
}

namespace {

// Position assignment from an ordered list of original indices.
std::vector<int> positions_from_order(const std::vector<int>& order) {
  std::vector<int> perm(order.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) perm[order[pos] - 1] = static_cast<int>(pos) + 1;
  return perm;
}

std::optional<PermPair> triangular_witness(const Subset& s) {
  const TableShape& sh = s.shape();
  std::vector<std::uint64_t> support(static_cast<std::size_t>(sh.m));
  for (int i = 1; i <= sh.m; ++i) support[i - 1] = s.row_support(i);

  std::vector<int> rows(static_cast<std::size_t>(sh.m));
  std::iota(rows.begin(), rows.end(), 1);
  std::stable_sort(rows.begin(), rows.end(), [&](int a, int b) {
    return std::popcount(support[a - 1]) > std::popcount(support[b - 1]);
  });
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const std::uint64_t wider = support[rows[k - 1] - 1];
    const std::uint64_t narrower = support[rows[k] - 1];
    if ((narrower & ~wider) != 0) return std::nullopt;
  }

  std::vector<int> cols(static_cast<std::size_t>(sh.n));
  std::iota(cols.begin(), cols.end(), 1);
  std::stable_sort(cols.begin(), cols.end(), [&](int a, int b) {
    return std::popcount(s.column_support(a)) > std::popcount(s.column_support(b));
  });
  return PermPair{positions_from_order(rows), positions_from_order(cols)};
}

std::optional<BlockWitness> block_witness(const Subset& s) {
  const TableShape& sh = s.shape();
  const std::uint64_t all_cols = sh.n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << sh.n) - 1;

  std::vector<std::uint64_t> distinct;
  std::vector<int> empty_rows;
  for (int i = 1; i <= sh.m; ++i) {
    const std::uint64_t sup = s.row_support(i);
    if (sup == 0) {
      empty_rows.push_back(i);
    } else if (std::find(distinct.begin(), distinct.end(), sup) == distinct.end()) {
      distinct.push_back(sup);
    }
  }

  std::vector<int> identity_rows(static_cast<std::size_t>(sh.m));
  std::iota(identity_rows.begin(), identity_rows.end(), 1);

  // Rows whose support equals `first` go on top, the rest below; likewise
  // columns in `first` go left, the rest right. Both orders are stable.
  auto assemble = [&](std::uint64_t first, int r, int c) {
    std::vector<int> row_order;
    std::vector<int> rest;
    for (int i = 1; i <= sh.m; ++i) (s.row_support(i) == first && first != 0 ? row_order : rest).push_back(i);
    row_order.insert(row_order.end(), rest.begin(), rest.end());
    std::vector<int> col_order;
    std::vector<int> right;
    for (int j = 1; j <= sh.n; ++j) ((first >> (j - 1)) & 1u ? col_order : right).push_back(j);
    col_order.insert(col_order.end(), right.begin(), right.end());
    return BlockWitness{r, c, PermPair{positions_from_order(row_order), positions_from_order(col_order)}};
  };

  if (distinct.empty()) {
    // Empty S: every row goes to the (empty) second block.
    return BlockWitness{0, sh.n, PermPair::identity(sh)};
  }
  if (distinct.size() == 1) {
    const std::uint64_t a = distinct.front();
    const int width = std::popcount(a);
    if (empty_rows.empty()) return assemble(a, sh.m, width);
    if (a == all_cols) return assemble(a, sh.m - static_cast<int>(empty_rows.size()), sh.n);
    return std::nullopt;
  }
  if (distinct.size() == 2) {
    const std::uint64_t a = distinct[0];
    const std::uint64_t b = distinct[1];
    if ((a & b) != 0 || (a | b) != all_cols || !empty_rows.empty()) return std::nullopt;
    int top = 0;
    for (int i = 1; i <= sh.m; ++i) top += s.row_support(i) == a ? 1 : 0;
    return assemble(a, top, std::popcount(a));
  }
  return std::nullopt;
}

}  // namespace

Classification classify(const Subset& s) {
  if (s.shape().m > 64 || s.shape().n > 64) throw std::invalid_argument("classify supports at most 64 rows/columns");
  Classification out;
  out.triangular = triangular_witness(s);
  out.block_diagonal = block_witness(s);
  if (out.triangular) detail::ensure(validates(s, *out.triangular), "triangular witness validates");
  if (out.block_diagonal) detail::ensure(validates(s, *out.block_diagonal), "block witness validates");
  return out;
}

namespace {

std::uint64_t saturating_factorial(int k) {
  std::uint64_t f = 1;
  for (int v = 2; v <= k; ++v) {
    if (f > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(v))
      return std::numeric_limits<std::uint64_t>::max();
    f *= static_cast<std::uint64_t>(v);
  }
  return f;
}

}  // namespace

Classification classify_oracle(const Subset& s, OracleBudget budget) {
  const TableShape& sh = s.shape();
  const std::uint64_t fm = saturating_factorial(sh.m);
  const std::uint64_t fn = saturating_factorial(sh.n);
  if (fm > budget.max_permutation_pairs || fn > budget.max_permutation_pairs / fm) {
    throw BudgetExceeded("classify_oracle: " + std::to_string(sh.m) + "! * " + std::to_string(sh.n) +
                         "! permutation pairs exceed the budget of " +
                         std::to_string(budget.max_permutation_pairs));
  }

  Classification out;
  PermPair p = PermPair::identity(sh);
  const std::vector<Cell> members = s.members();
  Subset permuted(sh);
  do {
    std::iota(p.row_perm.begin(), p.row_perm.end(), 1);
    do {
      for (const Cell& c : members) permuted.set(p.row_perm[c.i - 1], p.col_perm[c.j - 1], true);
      if (!out.triangular && is_triangular_in_place(permuted)) out.triangular = p;
      if (!out.block_diagonal) {
        if (auto rc = is_block_diagonal_in_place(permuted)) out.block_diagonal = BlockWitness{rc->first, rc->second, p};
      }
      if (out.triangular && out.block_diagonal) return out;
      for (const Cell& c : members) permuted.set(p.row_perm[c.i - 1], p.col_perm[c.j - 1], false);
    } while (std::next_permutation(p.row_perm.begin(), p.row_perm.end()));
  } while (std::next_permutation(p.col_perm.begin(), p.col_perm.end()));
  return out;
}

}  // namespace subtable
