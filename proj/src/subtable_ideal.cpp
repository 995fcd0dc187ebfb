#include "subtable/subtable_ideal.hpp"

#include <algorithm>
#include <stdexcept>

namespace subtable {

bool QuadGen::valid_for(TableShape shape) const {
  return 1 <= i && i < j && j <= shape.m && 1 <= k && k < l && l <= shape.n;
}

CellTable QuadGen::antidiagonal(TableShape shape) const {
  return CellTable::monomial(shape, {{i, l}, {j, k}});
}

CellTable QuadGen::diagonal(TableShape shape) const {
  return CellTable::monomial(shape, {{i, k}, {j, l}});
}

Binomial QuadGen::to_binomial(TableShape shape) const {
  if (!valid_for(shape)) throw std::invalid_argument("quadruple out of range for the table shape");
  return Binomial(antidiagonal(shape), diagonal(shape));
}

std::vector<QuadGen> all_quadgens(TableShape shape) {
  std::vector<QuadGen> out;
  for (int i = 1; i <= shape.m; ++i)
    for (int j = i + 1; j <= shape.m; ++j)
      for (int k = 1; k <= shape.n; ++k)
        for (int l = k + 1; l <= shape.n; ++l) out.push_back({i, j, k, l});
  return out;
}

QuadGen apply(const PermPair& p, const QuadGen& q) {
  const int a = p.row_perm.at(q.i - 1);
  const int b = p.row_perm.at(q.j - 1);
  const int c = p.col_perm.at(q.k - 1);
  const int d = p.col_perm.at(q.l - 1);
  return QuadGen{std::min(a, b), std::max(a, b), std::min(c, d), std::max(c, d)};
}

std::vector<Binomial> GeneratorSet::binomials(const MonomialOrder& ord) const {
  std::vector<Binomial> out;
  out.reserve(gens.size());
  for (const QuadGen& q : gens) out.push_back(orient(q.to_binomial(subset.shape()), ord));
  return out;
}

GeneratorSet build_generators(const Subset& s) {
  GeneratorSet out{s, {}};
  // Row and column degrees of the two monomials always agree; only the
  // number of factors inside S can differ.
  for (const QuadGen& q : all_quadgens(s.shape())) {
    const int anti = int{s.contains(q.i, q.l)} + int{s.contains(q.j, q.k)};
    const int diag = int{s.contains(q.i, q.k)} + int{s.contains(q.j, q.l)};
    if (anti == diag) out.gens.push_back(q);
  }
  return out;
}

bool sharp_excluded(const Subset& s, const QuadGen& q) {
  const bool ik = s.contains(q.i, q.k);
  const bool il = s.contains(q.i, q.l);
  const bool jk = s.contains(q.j, q.k);
  const bool jl = s.contains(q.j, q.l);
  const bool only_corner = ik && !il && !jk && !jl;
  const bool corner_hook = ik && il && jk && !jl;
  return only_corner || corner_hook;
}

bool quad_membership(const Subset& s, const QuadGen& q) {
  if (!q.valid_for(s.shape())) throw std::invalid_argument("quadruple out of range for the table shape");
  return pi_image(s, q.antidiagonal(s.shape())) == pi_image(s, q.diagonal(s.shape()));
}

Subset block_reduce(const Subset& s, const BlockWitness& w) {
  if (!validates(s, w)) throw std::invalid_argument("block witness does not validate against the subset");
  Subset reduced(s.shape());
  for (int i = 1; i <= w.r; ++i)
    for (int j = 1; j <= w.c; ++j) reduced.set(i, j, true);
  return reduced;
}

}  // namespace subtable
