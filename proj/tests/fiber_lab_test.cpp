#include "subtable/fiber_lab.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "subtable/error.hpp"
#include "test_util.hpp"

namespace subtable {
namespace {

using testutil::random_subset;

PiImage key(std::vector<int> rows, std::vector<int> cols, int w) {
  const int total = std::accumulate(rows.begin(), rows.end(), 0);
  return PiImage{std::move(rows), std::move(cols), w, total - w};
}

const Subset& diagonal3() {
  static const Subset s(TableShape(3, 3), {{1, 1}, {2, 2}, {3, 3}});
  return s;
}

// The 3x3 permutation matrices with no entry on the diagonal.
std::vector<CellTable> derangements3() {
  const TableShape sh(3, 3);
  std::vector<CellTable> out;
  std::vector<int> p{1, 2, 3};
  do {
    if (p[0] != 1 && p[1] != 2 && p[2] != 3) out.push_back(CellTable::monomial(sh, {{1, p[0]}, {2, p[1]}, {3, p[2]}}));
  } while (std::next_permutation(p.begin(), p.end()));
  std::sort(out.begin(), out.end());
  return out;
}

TEST(CountTablesTest, StarsAndBars) {
  EXPECT_EQ(count_tables(TableShape(2, 2), 0), 1u);
  EXPECT_EQ(count_tables(TableShape(2, 2), 2), 10u);
  EXPECT_EQ(count_tables(TableShape(3, 3), 4), 495u);
  EXPECT_EQ(count_tables(TableShape(4, 4), 4), 3876u);
  EXPECT_EQ(enumerate_tables(TableShape(3, 2), 3).size(), count_tables(TableShape(3, 2), 3));
}

TEST(EnumerateTablesTest, SortedAndDistinct) {
  const std::vector<CellTable> t = enumerate_tables(TableShape(2, 3), 3);
  EXPECT_TRUE(std::is_sorted(t.begin(), t.end()));
  EXPECT_EQ(std::set<CellTable>(t.begin(), t.end()).size(), t.size());
  for (const CellTable& x : t) EXPECT_EQ(x.degree(), 3);
}

TEST(EnumerateFiberTest, SingleCellSubset) {
  const TableShape sh(2, 2);
  const Subset s(sh, {{1, 1}});
  const Fiber w1 = enumerate_fiber(s, key({1, 1}, {1, 1}, 1));
  ASSERT_EQ(w1.tables.size(), 1u);
  EXPECT_EQ(w1.tables[0], CellTable::monomial(sh, {{1, 1}, {2, 2}}));
  const Fiber w0 = enumerate_fiber(s, key({1, 1}, {1, 1}, 0));
  ASSERT_EQ(w0.tables.size(), 1u);
  EXPECT_EQ(w0.tables[0], CellTable::monomial(sh, {{1, 2}, {2, 1}}));
  EXPECT_TRUE(enumerate_fiber(s, key({1, 1}, {1, 1}, 2)).tables.empty());
}

TEST(EnumerateFiberTest, FullSubsetGivesAllMarginTables) {
  const TableShape sh(2, 2);
  EXPECT_EQ(enumerate_fiber(Subset::full(sh), key({1, 1}, {1, 1}, 2)).tables.size(), 2u);
  // Tables with margins (2,2),(2,2): [[a,2-a],[2-a,a]] for a = 0..2.
  EXPECT_EQ(enumerate_fiber(Subset::full(sh), key({2, 2}, {2, 2}, 4)).tables.size(), 3u);
}

TEST(EnumerateFiberTest, Errors) {
  const Subset s(TableShape(2, 2));
  EXPECT_THROW(enumerate_fiber(s, PiImage{{1, 1}, {1, 0}, 0, 2}), std::invalid_argument);
  EXPECT_THROW(enumerate_fiber(s, key({1, 1, 0}, {1, 1}, 0)), std::invalid_argument);
  EXPECT_THROW(enumerate_fiber(s, key({5, 5}, {5, 5}, 0), FiberBudget{6, 3, 100}), BudgetExceeded);
  EXPECT_THROW(enumerate_tables(TableShape(2, 2), 7), BudgetExceeded);
  EXPECT_THROW(enumerate_tables(TableShape(5, 5), 6, FiberBudget{6, 100, 1000}), BudgetExceeded);
  EXPECT_THROW(enumerate_tables(TableShape(2, 2), -1), std::invalid_argument);
}

TEST(EnumerateFiberTest, AgreesWithTheDegreeSweep) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const TableShape sh(2 + trial % 2, 2 + (trial / 2) % 3);
    const Subset s = random_subset(sh, rng);
    const int d = 1 + trial % 3;
    const std::vector<Fiber> fibers = fibers_of_degree(s, d);
    std::size_t total = 0;
    std::set<PiImage> keys;
    for (const Fiber& f : fibers) {
      total += f.tables.size();
      EXPECT_TRUE(keys.insert(f.key).second);
      EXPECT_EQ(enumerate_fiber(s, f.key).tables, f.tables);
      for (const CellTable& t : f.tables) EXPECT_EQ(pi_image(s, t), f.key);
    }
    EXPECT_EQ(total, count_tables(sh, d));
  }
}

TEST(ComponentsTest, DerangementFiberOfTheDiagonalSplits) {
  const Subset& s = diagonal3();
  const Fiber f = enumerate_fiber(s, key({1, 1, 1}, {1, 1, 1}, 0));
  EXPECT_EQ(f.tables, derangements3());
  const auto comps = fiber_components(f, MoveSet::from(build_generators(s)));
  ASSERT_EQ(comps.size(), 2u);
  EXPECT_EQ(comps[0].size(), 1u);
  EXPECT_EQ(comps[1].size(), 1u);
  EXPECT_LT(comps[0][0], comps[1][0]);
}

TEST(ComponentsTest, FullMoveSetConnectsPermutationMatrices) {
  const TableShape sh(3, 3);
  const Fiber f = enumerate_fiber(Subset(sh), key({1, 1, 1}, {1, 1, 1}, 0));
  EXPECT_EQ(f.tables.size(), 6u);
  EXPECT_EQ(fiber_components(f, MoveSet{all_quadgens(sh)}).size(), 1u);
  const auto alone = fiber_components(f, MoveSet{});
  EXPECT_EQ(alone.size(), 6u);
  EXPECT_TRUE(std::is_sorted(alone.begin(), alone.end()));
}

TEST(GenerationCheckTest, DiagonalWitnessIsTheDerangementFiber) {
  const Subset& s = diagonal3();
  const GenerationResult r = generation_check(s, build_generators(s), 3);
  EXPECT_FALSE(r.pass);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->degree, 3);
  EXPECT_EQ(r.witness->fiber.key, key({1, 1, 1}, {1, 1, 1}, 0));
  EXPECT_EQ(r.witness->fiber.tables, derangements3());
  ASSERT_EQ(r.witness->components.size(), 2u);
  EXPECT_EQ(r.witness->components[0], (Component{CellTable(TableShape(3, 3), {0, 0, 1, 1, 0, 0, 0, 1, 0})}));
  EXPECT_EQ(r.witness->components[1], (Component{CellTable(TableShape(3, 3), {0, 1, 0, 0, 0, 1, 1, 0, 0})}));
}

TEST(GenerationCheckTest, TriangularPassesAndLowBoundsAreVacuous) {
  const TableShape sh(3, 3);
  const Subset stair(sh, {{1, 1}, {1, 2}, {2, 1}});
  const GenerationResult r = generation_check(stair, build_generators(stair), 4);
  EXPECT_TRUE(r.pass);
  EXPECT_FALSE(r.witness.has_value());
  EXPECT_GT(r.fibers_checked, 0u);
  EXPECT_TRUE(generation_check(diagonal3(), build_generators(diagonal3()), 1).pass);
  EXPECT_TRUE(generation_check(diagonal3(), build_generators(diagonal3()), 2).pass);
}

TEST(CensusTest, FullTwoByTwoByHand) {
  const TableShape sh(2, 2);
  const Subset s = Subset::full(sh);
  const MonomialOrder ord = MonomialOrder::default_lex(sh);
  const std::vector<CensusRow> rows = initial_ideal_census(s, build_generators(s), ord, 2);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], (CensusRow{0, 1, 1}));
  EXPECT_EQ(rows[1], (CensusRow{1, 4, 4}));

  // Independent count in degree 2: monomials a11 a12 a21 a22 avoiding
  // x12 x21, and distinct (row, column) margins.
  std::uint64_t standard = 0;
  std::set<std::vector<int>> images;
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; a + b <= 2; ++b)
      for (int c = 0; a + b + c <= 2; ++c) {
        const int d = 2 - a - b - c;
        if (!(b >= 1 && c >= 1)) ++standard;
        images.insert({a + b, c + d, a + c, b + d});
      }
  EXPECT_EQ(rows[2], (CensusRow{2, standard, images.size()}));
  EXPECT_EQ(rows[2], (CensusRow{2, 9, 9}));
}

TEST(CensusTest, StandardCountNeverBelowFiberCount) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 60; ++trial) {
    const TableShape sh(3, 3);
    const Subset s = random_subset(sh, rng);
    const MonomialOrder ord = MonomialOrder::default_lex(sh);
    for (const CensusRow& row : initial_ideal_census(s, build_generators(s), ord, 3)) {
      EXPECT_GE(row.standard_count, row.fiber_count);
      if (row.degree <= 1) EXPECT_TRUE(row.balanced());
    }
  }
}

TEST(CensusTest, DiagonalIsUnbalancedInDegreeThree) {
  const MonomialOrder ord = MonomialOrder::default_lex(TableShape(3, 3));
  const auto rows = initial_ideal_census(diagonal3(), build_generators(diagonal3()), ord, 3);
  EXPECT_GT(rows[3].standard_count, rows[3].fiber_count);
}

TEST(MoveTest, MovesStayInTheFiber) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const TableShape sh(3, 4);
    const Subset s = random_subset(sh, rng);
    const GeneratorSet g = build_generators(s);
    if (g.gens.empty()) continue;
    const std::vector<CellTable> tables = enumerate_tables(sh, 2);
    const CellTable& t = tables[rng() % tables.size()];
    for (const QuadGen& q : g.gens)
      for (int sign : {1, -1})
        if (const auto next = apply_move(t, q, sign)) {
          EXPECT_EQ(pi_image(s, *next), pi_image(s, t));
          EXPECT_EQ(apply_move(*next, q, -sign), t);
        }
  }
  const TableShape sh(2, 2);
  EXPECT_EQ(apply_move(CellTable::monomial(sh, {{1, 2}, {2, 1}}), {1, 2, 1, 2}, 1),
            CellTable::monomial(sh, {{1, 1}, {2, 2}}));
  EXPECT_FALSE(apply_move(CellTable::monomial(sh, {{1, 2}, {2, 1}}), {1, 2, 1, 2}, -1).has_value());
  EXPECT_THROW(apply_move(CellTable(sh), {1, 2, 1, 2}, 0), std::invalid_argument);
}

TEST(MoveTest, ZeroNormalFormImpliesConnected) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 40; ++trial) {
    const TableShape sh(3, 3);
    const Subset s = trial % 2 ? random_subset(sh, rng) : testutil::staircases(sh)[rng() % 20];
    const bool triangular = is_triangular_in_place(s);
    const GeneratorSet g = build_generators(s);
    const MonomialOrder ord = MonomialOrder::default_lex(sh);
    const std::vector<Binomial> gb = g.binomials(ord);
    for (const Fiber& f : fibers_of_degree(s, 3)) {
      if (f.tables.size() < 2) continue;
      const auto comps = fiber_components(f, MoveSet::from(g));
      auto component_of = [&](const CellTable& t) {
        for (std::size_t c = 0; c < comps.size(); ++c)
          if (std::binary_search(comps[c].begin(), comps[c].end(), t)) return c;
        return comps.size();
      };
      for (std::size_t b = 1; b < f.tables.size(); ++b) {
        const bool zero = !normal_form(make_binomial(f.tables[0], f.tables[b]), gb, ord).remainder.has_value();
        const bool connected = component_of(f.tables[0]) == component_of(f.tables[b]);
        if (zero) EXPECT_TRUE(connected);
        if (triangular) EXPECT_TRUE(zero && connected);
      }
    }
  }
}

TEST(WalkTest, ZeroStepsStaysAtTheStart) {
  const TableShape sh(2, 2);
  const Subset s = Subset::full(sh);
  const CellTable start = CellTable::monomial(sh, {{1, 1}, {2, 2}});
  const WalkTrace w = random_walk(s, start, MoveSet::from(build_generators(s)), 0, 5);
  EXPECT_EQ(w.final, start);
  EXPECT_EQ(w.visit_counts.size(), 1u);
  EXPECT_EQ(w.visit_counts.at(start), 1u);
  const Fiber f = enumerate_fiber(s, pi_image(s, start));
  EXPECT_DOUBLE_EQ(total_variation_to_uniform(w, f), 0.5);
}

TEST(WalkTest, TwoStateFiberIsVisitedEvenly) {
  const TableShape sh(2, 2);
  const Subset s = Subset::full(sh);
  const CellTable start = CellTable::monomial(sh, {{1, 1}, {2, 2}});
  const WalkTrace w = random_walk(s, start, MoveSet::from(build_generators(s)), 10000, 1);
  ASSERT_EQ(w.visit_counts.size(), 2u);
  std::uint64_t total = 0;
  for (const auto& [t, c] : w.visit_counts) {
    EXPECT_EQ(pi_image(s, t), pi_image(s, start));
    EXPECT_NEAR(double(c) / 10001.0, 0.5, 0.05);
    total += c;
  }
  EXPECT_EQ(total, 10001u);
}

TEST(WalkTest, ReproducibleForAFixedSeed) {
  const TableShape sh(3, 3);
  const Subset s(sh, {{1, 1}, {1, 2}, {2, 1}});
  const CellTable start(sh, {1, 1, 0, 0, 1, 1, 1, 0, 1});
  const MoveSet moves = MoveSet::from(build_generators(s));
  const WalkTrace a = random_walk(s, start, moves, 5000, 77);
  const WalkTrace b = random_walk(s, start, moves, 5000, 77);
  const WalkTrace c = random_walk(s, start, moves, 5000, 78);
  EXPECT_EQ(a.visit_counts, b.visit_counts);
  EXPECT_EQ(a.final, b.final);
  EXPECT_NE(a.visit_counts, c.visit_counts);
}

TEST(WalkTest, ConvergesToUniformOnAConnectedFiber) {
  const TableShape sh(3, 3);
  const Subset s(sh, {{1, 1}, {1, 2}, {2, 1}});
  const CellTable start(sh, {1, 1, 0, 0, 1, 1, 1, 0, 1});
  const MoveSet moves = MoveSet::from(build_generators(s));
  const Fiber f = enumerate_fiber(s, pi_image(s, start));
  ASSERT_GT(f.tables.size(), 2u);
  const WalkTrace w = random_walk(s, start, moves, 200000, 1);
  for (const auto& [t, c] : w.visit_counts) EXPECT_TRUE(std::binary_search(f.tables.begin(), f.tables.end(), t));
  EXPECT_LT(total_variation_to_uniform(w, f), 0.05);
  EXPECT_DOUBLE_EQ(walk_vs_exact(s, start, moves, 200000, 1), total_variation_to_uniform(w, f));
}

TEST(WalkTest, TrappedInOneComponent) {
  const Subset& s = diagonal3();
  const std::vector<CellTable> d = derangements3();
  const WalkTrace w = random_walk(s, d[0], MoveSet::from(build_generators(s)), 1000, 3);
  EXPECT_EQ(w.visit_counts.size(), 1u);
  EXPECT_DOUBLE_EQ(walk_vs_exact(s, d[0], MoveSet::from(build_generators(s)), 1000, 3), 0.5);
}

TEST(WalkTest, RejectsMovesOutsideTheIdeal) {
  const Subset& s = diagonal3();
  EXPECT_THROW(random_walk(s, derangements3()[0], MoveSet{{QuadGen{1, 2, 1, 2}}}, 10, 1), std::invalid_argument);
}

}  // namespace
}  // namespace subtable
