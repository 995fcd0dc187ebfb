#pragma once

// Pure-difference binomials x^a - x^b under a lexicographic monomial order:
// orientation, S-polynomials, division, and Buchberger's criterion.
//
// Coefficients are always +1 / -1 and are never stored. The zero binomial
// is represented by an empty std::optional.

#include <compare>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "subtable/table_core.hpp"

namespace subtable {

/// A lex order given by a variable precedence list.
///
/// The engine compares monomials by reading exponents in precedence order;
/// any permutation of the cells defines a valid lex order. Only the default
/// precedence is used by the rest of the library:
///   x_{m,1} > x_{m,2} > ... > x_{m,n} > x_{m-1,1} > ... > x_{1,n}.
class MonomialOrder {
 public:
  enum class Kind { DefaultLex, CustomLex };

  static MonomialOrder default_lex(TableShape shape);
  /// Lex order with an explicit precedence (highest variable first).
  static MonomialOrder custom_lex(TableShape shape, std::vector<Cell> precedence);

  const TableShape& shape() const { return shape_; }
  Kind kind() const { return kind_; }
  const std::vector<std::size_t>& precedence() const { return precedence_; }

 private:
  MonomialOrder(TableShape shape, Kind kind, std::vector<std::size_t> precedence);

  TableShape shape_;
  Kind kind_;
  std::vector<std::size_t> precedence_;  // flat indices, highest variable first
};

std::strong_ordering lex_compare(const CellTable& a, const CellTable& b, const MonomialOrder& ord);

/// plus - minus. When oriented, plus is the leading (greater) monomial.
class Binomial {
 public:
  /// Throws std::invalid_argument if plus == minus or shapes differ.
  Binomial(CellTable plus, CellTable minus);

  const CellTable& plus() const { return plus_; }
  const CellTable& minus() const { return minus_; }
  bool oriented() const { return oriented_; }

  /// Leading / trailing monomial; only meaningful when oriented.
  const CellTable& leading() const { return plus_; }
  const CellTable& trailing() const { return minus_; }

  Binomial negated() const;

  friend bool operator==(const Binomial&, const Binomial&) = default;

 private:
  friend Binomial orient(const Binomial& f, const MonomialOrder& ord);

  CellTable plus_;
  CellTable minus_;
  bool oriented_ = false;
};

using MaybeBinomial = std::optional<Binomial>;

/// Makes x^a - x^b, or Zero when a == b.
MaybeBinomial make_binomial(CellTable plus, CellTable minus);

/// Swaps the terms if needed so that plus > minus. Idempotent.
Binomial orient(const Binomial& f, const MonomialOrder& ord);

/// (L/lt(g1)) g1 - (L/lt(g2)) g2 with L = lcm(lt(g1), lt(g2)), oriented.
/// Common factors of the two resulting terms are kept.
MaybeBinomial s_polynomial(const Binomial& g1, const Binomial& g2, const MonomialOrder& ord);

struct ReductionStep {
  enum class Term { Leading, Trailing };

  std::size_t generator_index = 0;
  Term term = Term::Leading;
  /// The monomial that was rewritten in this step.
  CellTable rewritten;
  Binomial before;
  MaybeBinomial after;
};

struct NormalForm {
  MaybeBinomial remainder;
  std::vector<ReductionStep> trace;
};

/// Division by G with a first-divisor-in-list-order strategy. The leading
/// term is reduced until irreducible (or the value cancels), then the
/// trailing term. Every step rewrites a strictly smaller monomial than the
/// one before it.
NormalForm normal_form(const MaybeBinomial& f, const std::vector<Binomial>& generators, const MonomialOrder& ord);

struct BuchbergerFailure {
  std::size_t first = 0;
  std::size_t second = 0;
  Binomial remainder;
};

struct BuchbergerReport {
  bool pass = true;
  std::size_t checked_pairs = 0;
  std::size_t skipped_coprime = 0;
  std::optional<BuchbergerFailure> failure;
};

/// Buchberger's criterion: every S-pair with non-coprime leading terms must
/// reduce to zero. Coprime pairs are skipped and counted. All pairs are
/// examined; the failure reported is the first in (i, j) order.
BuchbergerReport buchberger_check(const std::vector<Binomial>& generators, const MonomialOrder& ord);

}  // namespace subtable
