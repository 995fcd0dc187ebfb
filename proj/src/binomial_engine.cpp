#include "subtable/binomial_engine.hpp"

#include <algorithm>
#include <stdexcept>

#include "subtable/error.hpp"

namespace subtable {

MonomialOrder::MonomialOrder(TableShape shape, Kind kind, std::vector<std::size_t> precedence)
    : shape_(shape), kind_(kind), precedence_(std::move(precedence)) {}

MonomialOrder MonomialOrder::default_lex(TableShape shape) {
  std::vector<std::size_t> prec;
  prec.reserve(shape.cells());
  for (int i = shape.m; i >= 1; --i)
    for (int j = 1; j <= shape.n; ++j) prec.push_back(shape.flat(i, j));
  return MonomialOrder(shape, Kind::DefaultLex, std::move(prec));
}

MonomialOrder MonomialOrder::custom_lex(TableShape shape, std::vector<Cell> precedence) {
  if (precedence.size() != shape.cells()) throw std::invalid_argument("precedence must list every cell once");
  std::vector<std::size_t> prec;
  std::vector<char> seen(shape.cells(), 0);
  for (const Cell& c : precedence) {
    const std::size_t k = shape.flat(c.i, c.j);
    if (seen[k]) throw std::invalid_argument("precedence lists a cell twice");
    seen[k] = 1;
    prec.push_back(k);
  }
  return MonomialOrder(shape, Kind::CustomLex, std::move(prec));
}

std::strong_ordering lex_compare(const CellTable& a, const CellTable& b, const MonomialOrder& ord) {
  if (!(a.shape() == ord.shape()) || !(b.shape() == ord.shape()))
    throw std::invalid_argument("lex_compare: monomial shape does not match the order");
  const auto& ea = a.exponents();
  const auto& eb = b.exponents();
  for (std::size_t k : ord.precedence()) {
    if (ea[k] != eb[k]) return ea[k] <=> eb[k];
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------

Binomial::Binomial(CellTable plus, CellTable minus) : plus_(std::move(plus)), minus_(std::move(minus)) {
  if (!(plus_.shape() == minus_.shape())) throw std::invalid_argument("binomial terms have different shapes");
  if (plus_ == minus_) throw std::invalid_argument("binomial terms coincide (this is the zero binomial)");
}

Binomial Binomial::negated() const { return Binomial(minus_, plus_); }

MaybeBinomial make_binomial(CellTable plus, CellTable minus) {
  if (plus == minus) return std::nullopt;
  return Binomial(std::move(plus), std::move(minus));
}

Binomial orient(const Binomial& f, const MonomialOrder& ord) {
  Binomial out = lex_compare(f.plus_, f.minus_, ord) == std::strong_ordering::greater ? f : f.negated();
  out.oriented_ = true;
  return out;
}

MaybeBinomial s_polynomial(const Binomial& g1, const Binomial& g2, const MonomialOrder& ord) {
  const Binomial a = orient(g1, ord);
  const Binomial b = orient(g2, ord);
  const CellTable l = lcm(a.leading(), b.leading());
  // (L/lt a)(lt a - tr a) - (L/lt b)(lt b - tr b) = (L/lt b) tr b - (L/lt a) tr a
  CellTable first = quotient(l, b.leading()) * b.trailing();
  CellTable second = quotient(l, a.leading()) * a.trailing();
  MaybeBinomial s = make_binomial(std::move(first), std::move(second));
  if (!s) return s;
  return orient(*s, ord);
}

namespace {

std::optional<std::size_t> first_divisor(const CellTable& mono, const std::vector<Binomial>& gens) {
  for (std::size_t k = 0; k < gens.size(); ++k)
    if (divides(gens[k].leading(), mono)) return k;
  return std::nullopt;
}

bool less(const CellTable& a, const CellTable& b, const MonomialOrder& ord) {
  return lex_compare(a, b, ord) == std::strong_ordering::less;
}

}  // namespace

NormalForm normal_form(const MaybeBinomial& f, const std::vector<Binomial>& generators, const MonomialOrder& ord) {
  NormalForm out;
  if (!f) return out;

  std::vector<Binomial> gens;
  gens.reserve(generators.size());
  for (const Binomial& g : generators) gens.push_back(orient(g, ord));

  Binomial cur = orient(*f, ord);
  std::optional<CellTable> last_rewritten;

  auto record = [&](std::size_t k, ReductionStep::Term term, const CellTable& rewritten, MaybeBinomial next) {
    if (last_rewritten) detail::ensure(less(rewritten, *last_rewritten, ord), "rewritten monomials decrease");
    last_rewritten = rewritten;
    out.trace.push_back(ReductionStep{k, term, rewritten, cur, next});
  };

  // Leading term.
  while (auto k = first_divisor(cur.leading(), gens)) {
    const Binomial& g = gens[*k];
    CellTable replaced = quotient(cur.leading(), g.leading()) * g.trailing();
    detail::ensure(less(replaced, cur.leading(), ord), "reduction lowers the rewritten term");
    MaybeBinomial next = make_binomial(std::move(replaced), cur.trailing());
    if (next) next = orient(*next, ord);
    const CellTable rewritten = cur.leading();
    record(*k, ReductionStep::Term::Leading, rewritten, next);
    if (!next) return out;
    detail::ensure(less(next->leading(), rewritten, ord), "leading monomial strictly decreases");
    cur = *next;
  }

  // Trailing term; the leading term is irreducible from here on.
  while (auto k = first_divisor(cur.trailing(), gens)) {
    const Binomial& g = gens[*k];
    CellTable replaced = quotient(cur.trailing(), g.leading()) * g.trailing();
    detail::ensure(less(replaced, cur.trailing(), ord), "reduction lowers the rewritten term");
    Binomial next = orient(Binomial(cur.leading(), std::move(replaced)), ord);
    detail::ensure(next.leading() == cur.leading(), "leading term fixed while reducing the tail");
    const CellTable rewritten = cur.trailing();
    record(*k, ReductionStep::Term::Trailing, rewritten, next);
    cur = next;
  }

  out.remainder = cur;
  return out;
}

BuchbergerReport buchberger_check(const std::vector<Binomial>& generators, const MonomialOrder& ord) {
  std::vector<Binomial> gens;
  gens.reserve(generators.size());
  for (const Binomial& g : generators) gens.push_back(orient(g, ord));

  BuchbergerReport report;
  for (std::size_t a = 0; a < gens.size(); ++a) {
    for (std::size_t b = a + 1; b < gens.size(); ++b) {
      if (coprime(gens[a].leading(), gens[b].leading())) {
        ++report.skipped_coprime;
        continue;
      }
      ++report.checked_pairs;
      NormalForm nf = normal_form(s_polynomial(gens[a], gens[b], ord), gens, ord);
      if (nf.remainder && !report.failure) {
        report.pass = false;
        report.failure = BuchbergerFailure{a, b, *nf.remainder};
      }
    }
  }
  return report;
}

}  // namespace subtable
