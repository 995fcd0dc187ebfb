#pragma once

// Exhaustive fiber oracles: enumeration of tables with fixed margins and
// subtable sum, connectivity under quadratic moves, the standard monomial
// census, and a reproducible lazy random walk.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "subtable/binomial_engine.hpp"
#include "subtable/subtable_ideal.hpp"
#include "subtable/table_core.hpp"

namespace subtable {

/// Hard limits. Exceeding any of them raises BudgetExceeded.
struct FiberBudget {
  int max_degree = 6;
  std::size_t max_fiber_size = 1'000'000;
  std::size_t max_tables_per_degree = 2'000'000;
};

struct Fiber {
  PiImage key;
  std::vector<CellTable> tables;  // sorted by flattened entries
};

/// All nonnegative tables with the key's margins and S-sum, by
/// backtracking in row-major cell order.
Fiber enumerate_fiber(const Subset& s, const PiImage& key, const FiberBudget& budget = {});

/// Number of degree-d monomials in m*n variables (saturating).
std::uint64_t count_tables(TableShape shape, int degree);

/// Every table of the given degree, in increasing flattened order.
std::vector<CellTable> enumerate_tables(TableShape shape, int degree, const FiberBudget& budget = {});

/// Every table of one degree for one shape, with each table's row/column
/// margin class and cell-support bitmask precomputed. Subset-dependent data
/// (the S-sum) is derived on demand, so one catalog serves many subsets.
class DegreeCatalog {
 public:
  DegreeCatalog(TableShape shape, int degree, const FiberBudget& budget = {});

  const TableShape& shape() const { return shape_; }
  int degree() const { return degree_; }
  const std::vector<CellTable>& tables() const { return tables_; }
  /// Tables with equal ids have equal row and column margins.
  std::size_t margin_id(std::size_t k) const { return margin_ids_[k]; }
  std::size_t margin_classes() const { return margin_classes_; }
  /// Bit c set iff flat cell c has a positive exponent. Needs m*n <= 64.
  std::uint64_t support_mask(std::size_t k) const { return masks_[k]; }
  int s_sum(const Subset& s, std::size_t k) const;

 private:
  TableShape shape_;
  int degree_;
  std::vector<CellTable> tables_;
  std::vector<std::size_t> margin_ids_;
  std::size_t margin_classes_ = 0;
  std::vector<std::uint64_t> masks_;
};

/// All fibers of one degree, keyed and ordered by pi image.
std::vector<Fiber> fibers_of_degree(const Subset& s, int degree, const FiberBudget& budget = {});

/// Table moves: for q = (i,j,k,l), sign +1 adds one at (i,k),(j,l) and
/// removes one at (i,l),(j,k); sign -1 does the opposite.
struct MoveSet {
  std::vector<QuadGen> moves;

  static MoveSet from(const GeneratorSet& g) { return MoveSet{g.gens}; }
};

std::optional<CellTable> apply_move(const CellTable& t, const QuadGen& q, int sign);

using Component = std::vector<CellTable>;

/// Connected components of the fiber graph, largest first; ties broken by
/// smallest table. Tables inside a component keep fiber order.
std::vector<Component> fiber_components(const Fiber& f, const MoveSet& moves);

struct DisconnectedFiber {
  int degree = 0;
  Fiber fiber;
  std::vector<Component> components;
};

struct GenerationResult {
  bool pass = true;
  int degree_bound = 0;
  std::size_t fibers_checked = 0;
  std::optional<DisconnectedFiber> witness;  // first disconnected fiber
};

/// Checks that every fiber of degree <= D is connected by G-moves.
GenerationResult generation_check(const Subset& s, const GeneratorSet& g, int degree_bound,
                                  const FiberBudget& budget = {});

struct CensusRow {
  int degree = 0;
  std::uint64_t standard_count = 0;
  std::uint64_t fiber_count = 0;

  bool balanced() const { return standard_count == fiber_count; }
  friend bool operator==(const CensusRow&, const CensusRow&) = default;
};

/// Per degree d <= D: monomials divisible by no leading term of G versus
/// distinct pi images. Equal counts in degree d mean the leading terms of G
/// span the degree-d part of the initial ideal of I_S.
std::vector<CensusRow> initial_ideal_census(const Subset& s, const GeneratorSet& g, const MonomialOrder& ord,
                                            int degree_bound, const FiberBudget& budget = {});

std::vector<CensusRow> initial_ideal_census(const Subset& s, const GeneratorSet& g, const MonomialOrder& ord,
                                            const std::vector<DegreeCatalog>& catalogs);

/// True iff pi_S and pi_T induce the same partition of the monomials of
/// every degree <= D.
bool fiber_partitions_equal(const Subset& a, const Subset& b, int degree_bound, const FiberBudget& budget = {});
bool fiber_partitions_equal(const Subset& a, const Subset& b, const std::vector<DegreeCatalog>& catalogs);

/// Catalogs for degrees 0..D.
std::vector<DegreeCatalog> catalogs_up_to(TableShape shape, int degree_bound, const FiberBudget& budget = {});

struct WalkTrace {
  std::uint64_t seed = 0;
  std::uint64_t steps = 0;
  /// Visits including the start state, so the counts sum to steps + 1.
  std::map<CellTable, std::uint64_t> visit_counts;
  CellTable final;
};

/// Lazy symmetric walk: each step draws a move and a sign uniformly, and
/// either applies it or stays put if an entry would go negative. The
/// generator is std::mt19937_64 with platform-independent index draws.
WalkTrace random_walk(const Subset& s, const CellTable& start, const MoveSet& moves, std::uint64_t steps,
                      std::uint64_t seed);

/// Total variation distance between the empirical visit distribution and
/// the uniform law on `fiber`.
double total_variation_to_uniform(const WalkTrace& trace, const Fiber& fiber);

double walk_vs_exact(const Subset& s, const CellTable& start, const MoveSet& moves, std::uint64_t steps,
                     std::uint64_t seed, const FiberBudget& budget = {});

}  // namespace subtable
