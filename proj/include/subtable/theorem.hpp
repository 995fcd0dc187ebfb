#pragma once

// End-to-end check that a subset's classification and the algebra of its
// toric ideal agree:
//   triangular      -> G is a quadratic Groebner basis with squarefree
//                      leading terms, and the census balances up to D;
//   block diagonal  -> G(S) = G(S') and the fibers of S and S' coincide up
//                      to D, then the triangular checks run on S';
//   neither         -> a fiber of degree <= D disconnected by G-moves.
//
// Normality and Koszulness of R_S are not computed; the report only marks
// them as implied by a squarefree initial ideal / quadratic Groebner basis.

#include <optional>
#include <vector>

#include "subtable/binomial_engine.hpp"
#include "subtable/fiber_lab.hpp"
#include "subtable/subtable_ideal.hpp"
#include "subtable/table_core.hpp"

namespace subtable {

struct TriangularCertificate {
  Subset canonical;              // downward closed
  PermPair perms;                // original frame -> canonical frame
  std::vector<QuadGen> generators;
  BuchbergerReport gb;
  std::vector<CensusRow> census;
  bool leading_terms_squarefree = false;
};

struct BlockReduction {
  BlockWitness witness;
  Subset permuted;  // S in the witness frame
  Subset reduced;   // S', the top-left block of `permuted`
  bool generators_equal = false;
  bool fiber_partitions_equal = false;
  TriangularCertificate reduced_certificate;
};

struct NeitherWitness {
  int searched_degree = 0;
  std::optional<DisconnectedFiber> fiber;  // empty: no witness up to the bound
};

struct TheoremReport {
  Subset subset;
  int degree_bound = 0;
  Classification classification;
  std::optional<TriangularCertificate> triangular;
  std::optional<BlockReduction> block_reduction;
  std::optional<NeitherWitness> neither_witness;

  /// Certificate whose gb / census the report leads with: the triangular
  /// branch on S if present, otherwise the one computed on S'.
  const TriangularCertificate* primary_certificate() const;
};

struct VerifyOptions {
  FiberBudget budget;
  bool use_oracle = false;  // classify by exhaustive permutation search
  OracleBudget oracle_budget;
};

/// Runs the checks for every branch the classification selects (both for
/// subsets that are triangular and block diagonal at once). Throws
/// TheoremViolation if a branch check fails and BudgetExceeded if the
/// degree bound or enumeration size is over budget.
TheoremReport verify_theorem(const Subset& s, int degree_bound, const VerifyOptions& options = {});

/// The triangular branch alone, for a witness mapping S to a downward
/// closed pattern. Throws TheoremViolation if a check fails.
TriangularCertificate certify_triangular(const Subset& s, const PermPair& witness,
                                         const std::vector<DegreeCatalog>& catalogs);

}  // namespace subtable
