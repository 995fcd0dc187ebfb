#pragma once

// Quadratic binomials x_{i,l} x_{j,k} - x_{i,k} x_{j,l} of the toric ideal
// I_S, the generator set G, and the block diagonal reduction S -> S'.
//
// I_S itself is never materialized: a binomial lies in I_S exactly when
// its two monomials have the same pi image.

#include <compare>
#include <vector>

#include "subtable/binomial_engine.hpp"
#include "subtable/table_core.hpp"

namespace subtable {

/// Index quadruple with 1 <= i < j <= m and 1 <= k < l <= n.
struct QuadGen {
  int i = 1;
  int j = 2;
  int k = 1;
  int l = 2;

  bool valid_for(TableShape shape) const;
  /// x_{i,l} x_{j,k}, the leading term under the default lex order.
  CellTable antidiagonal(TableShape shape) const;
  /// x_{i,k} x_{j,l}
  CellTable diagonal(TableShape shape) const;
  /// antidiagonal - diagonal (not yet oriented).
  Binomial to_binomial(TableShape shape) const;

  friend auto operator<=>(const QuadGen&, const QuadGen&) = default;
};

/// Every quadruple of the shape, in (i, j, k, l) lexicographic order.
std::vector<QuadGen> all_quadgens(TableShape shape);

/// Relabel rows and columns; the result is normalized so i < j, k < l.
QuadGen apply(const PermPair& p, const QuadGen& q);

struct GeneratorSet {
  Subset subset;
  std::vector<QuadGen> gens;  // sorted, duplicate free

  /// Expanded binomials, oriented under `ord`, in the order of `gens`.
  std::vector<Binomial> binomials(const MonomialOrder& ord) const;
};

GeneratorSet build_generators(const Subset& s);

/// S meets {(i,l),(j,k),(i,k),(j,l)} in exactly {(i,k)} or in exactly
/// {(i,k),(i,l),(j,k)}. For downward closed S this is the precise
/// condition for q to be missing from G.
bool sharp_excluded(const Subset& s, const QuadGen& q);

/// Whether the expanded binomial of q lies in I_S, decided by comparing
/// pi images.
bool quad_membership(const Subset& s, const QuadGen& q);

/// S' = the top-left r x c block of S in the witness's permuted frame.
/// Throws std::invalid_argument if the witness does not validate.
Subset block_reduce(const Subset& s, const BlockWitness& w);

}  // namespace subtable
