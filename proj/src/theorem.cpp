#include "subtable/theorem.hpp"

#include <algorithm>
#include <string>

#include "subtable/error.hpp"

namespace subtable {

const TriangularCertificate* TheoremReport::primary_certificate() const {
  if (triangular) return &*triangular;
  if (block_reduction) return &block_reduction->reduced_certificate;
  return nullptr;
}

namespace {

void check(bool ok, const std::string& what) {
  if (!ok) throw TheoremViolation(what);
}

}  // namespace

TriangularCertificate certify_triangular(const Subset& s, const PermPair& witness,
                                         const std::vector<DegreeCatalog>& catalogs) {
  const Subset canonical = apply(witness, s);
  check(is_triangular_in_place(canonical), "triangular witness does not produce a downward closed subset");

  const MonomialOrder ord = MonomialOrder::default_lex(s.shape());
  const GeneratorSet g = build_generators(canonical);
  const std::vector<Binomial> binomials = g.binomials(ord);

  TriangularCertificate cert{canonical, witness, g.gens, buchberger_check(binomials, ord), {}, true};
  for (const Binomial& b : binomials)
    cert.leading_terms_squarefree = cert.leading_terms_squarefree && b.leading().is_squarefree();
  cert.census = initial_ideal_census(canonical, g, ord, catalogs);

  check(cert.gb.pass, "Buchberger criterion fails for the generators of a triangular subset");
  check(cert.leading_terms_squarefree, "a leading term of a triangular generator set is not squarefree");
  for (const CensusRow& row : cert.census)
    check(row.balanced(), "initial ideal census does not balance in degree " + std::to_string(row.degree));
  return cert;
}

TheoremReport verify_theorem(const Subset& s, int degree_bound, const VerifyOptions& options) {
  const std::vector<DegreeCatalog> catalogs = catalogs_up_to(s.shape(), degree_bound, options.budget);

  TheoremReport report{s, degree_bound, options.use_oracle ? classify_oracle(s, options.oracle_budget) : classify(s),
                       std::nullopt, std::nullopt, std::nullopt};
  const Classification& cls = report.classification;

  if (cls.triangular) report.triangular = certify_triangular(s, *cls.triangular, catalogs);

  if (cls.block_diagonal) {
    const BlockWitness& w = *cls.block_diagonal;
    const Subset permuted = apply(w.perms, s);
    const Subset reduced = block_reduce(s, w);
    const bool gens_equal = build_generators(permuted).gens == build_generators(reduced).gens;
    const bool fibers_equal = fiber_partitions_equal(permuted, reduced, catalogs);
    check(gens_equal, "generator sets of S and S' differ");
    check(fibers_equal, "fiber partitions of S and S' differ");
    report.block_reduction = BlockReduction{w, permuted, reduced, gens_equal, fibers_equal,
                                            certify_triangular(reduced, PermPair::identity(s.shape()), catalogs)};
  }

  if (cls.neither()) {
    GenerationResult gen = generation_check(s, build_generators(s), degree_bound, options.budget);
    report.neither_witness = NeitherWitness{degree_bound, std::move(gen.witness)};
  }
  return report;
}

}  // namespace subtable
