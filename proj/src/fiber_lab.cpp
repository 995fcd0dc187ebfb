#include "subtable/fiber_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "subtable/error.hpp"

namespace subtable {

namespace {

void require_degree(int degree, const FiberBudget& budget) {
  if (degree < 0) throw std::invalid_argument("degree must be nonnegative");
  if (degree > budget.max_degree) {
    throw BudgetExceeded("degree " + std::to_string(degree) + " exceeds the budget of " +
                         std::to_string(budget.max_degree));
  }
}

void require_key(const Subset& s, const PiImage& key) {
  if (key.row_deg.size() != static_cast<std::size_t>(s.shape().m) ||
      key.col_deg.size() != static_cast<std::size_t>(s.shape().n))
    throw std::invalid_argument("fiber key does not match the table shape");
  if (!key.consistent()) throw std::invalid_argument("fiber key margins are inconsistent");
}

}  // namespace

Fiber enumerate_fiber(const Subset& s, const PiImage& key, const FiberBudget& budget) {
  require_key(s, key);
  require_degree(key.degree(), budget);
  const TableShape sh = s.shape();

  Fiber fiber{key, {}};
  std::vector<int> rows = key.row_deg;
  std::vector<int> cols = key.col_deg;
  int w_left = key.w_deg;
  int t_left = key.t_deg;
  std::vector<int> entries(sh.cells(), 0);

  // Row-major DFS with ascending values yields tables in flattened order.
  auto place = [&](auto&& self, std::size_t cell) -> void {
    if (cell == entries.size()) {
      if (w_left == 0 && t_left == 0) {
        if (fiber.tables.size() >= budget.max_fiber_size)
          throw BudgetExceeded("fiber size exceeds the budget of " + std::to_string(budget.max_fiber_size));
        fiber.tables.emplace_back(sh, entries);
      }
      return;
    }
    const int i = static_cast<int>(cell / static_cast<std::size_t>(sh.n)) + 1;
    const int j = static_cast<int>(cell % static_cast<std::size_t>(sh.n)) + 1;
    const bool in_s = s.contains(i, j);
    int& budget_left = in_s ? w_left : t_left;
    const int cap = std::min({rows[i - 1], cols[j - 1], budget_left});

    int lo = 0;
    int hi = cap;
    if (j == sh.n) lo = rows[i - 1];  // last cell of a row takes the remainder
    if (i == sh.m) lo = std::max(lo, cols[j - 1]);
    if (lo > hi) return;
    if (j == sh.n || i == sh.m) hi = lo;

    for (int v = lo; v <= hi; ++v) {
      rows[i - 1] -= v;
      cols[j - 1] -= v;
      budget_left -= v;
      entries[cell] = v;
      self(self, cell + 1);
      rows[i - 1] += v;
      cols[j - 1] += v;
      budget_left += v;
    }
    entries[cell] = 0;
  };
  place(place, 0);
  return fiber;
}

std::uint64_t count_tables(TableShape shape, int degree) {
  // C(degree + N - 1, degree) with saturation.
  const std::uint64_t vars = shape.cells();
  std::uint64_t acc = 1;
  for (int t = 1; t <= degree; ++t) {
    const std::uint64_t factor = vars - 1 + static_cast<std::uint64_t>(t);
    if (acc > std::numeric_limits<std::uint64_t>::max() / factor) return std::numeric_limits<std::uint64_t>::max();
    acc = acc * factor / static_cast<std::uint64_t>(t);  // exact: acc becomes C(vars - 1 + t, t)
  }
  return acc;
}

std::vector<CellTable> enumerate_tables(TableShape shape, int degree, const FiberBudget& budget) {
  require_degree(degree, budget);
  const std::uint64_t total = count_tables(shape, degree);
  if (total > budget.max_tables_per_degree) {
    throw BudgetExceeded(std::to_string(total) + " tables of degree " + std::to_string(degree) +
                         " exceed the budget of " + std::to_string(budget.max_tables_per_degree));
  }
  std::vector<CellTable> out;
  out.reserve(static_cast<std::size_t>(total));
  std::vector<int> entries(shape.cells(), 0);
  auto place = [&](auto&& self, std::size_t cell, int left) -> void {
    if (cell + 1 == entries.size()) {
      entries[cell] = left;
      out.emplace_back(shape, entries);
      entries[cell] = 0;
      return;
    }
    for (int v = 0; v <= left; ++v) {
      entries[cell] = v;
      self(self, cell + 1, left - v);
    }
    entries[cell] = 0;
  };
  place(place, 0, degree);
  return out;
}

// ---------------------------------------------------------------------------

DegreeCatalog::DegreeCatalog(TableShape shape, int degree, const FiberBudget& budget)
    : shape_(shape), degree_(degree), tables_(enumerate_tables(shape, degree, budget)) {
  if (shape.cells() > 64) throw std::invalid_argument("DegreeCatalog supports at most 64 cells");
  std::map<std::pair<std::vector<int>, std::vector<int>>, std::size_t> ids;
  margin_ids_.reserve(tables_.size());
  masks_.reserve(tables_.size());
  for (const CellTable& t : tables_) {
    const PiImage img = pi_image(Subset(shape), t);
    auto [it, inserted] = ids.try_emplace({img.row_deg, img.col_deg}, ids.size());
    margin_ids_.push_back(it->second);
    std::uint64_t mask = 0;
    for (std::size_t c = 0; c < t.exponents().size(); ++c)
      if (t.exponents()[c] > 0) mask |= std::uint64_t{1} << c;
    masks_.push_back(mask);
  }
  margin_classes_ = ids.size();
}

int DegreeCatalog::s_sum(const Subset& s, std::size_t k) const {
  const auto& e = tables_[k].exponents();
  int sum = 0;
  for (int i = 1; i <= shape_.m; ++i)
    for (int j = 1; j <= shape_.n; ++j)
      if (s.contains(i, j)) sum += e[shape_.flat(i, j)];
  return sum;
}

std::vector<DegreeCatalog> catalogs_up_to(TableShape shape, int degree_bound, const FiberBudget& budget) {
  require_degree(degree_bound, budget);
  std::vector<DegreeCatalog> out;
  for (int d = 0; d <= degree_bound; ++d) out.emplace_back(shape, d, budget);
  return out;
}

std::vector<Fiber> fibers_of_degree(const Subset& s, int degree, const FiberBudget& budget) {
  std::map<PiImage, std::vector<CellTable>> groups;
  for (CellTable& t : enumerate_tables(s.shape(), degree, budget)) {
    PiImage key = pi_image(s, t);
    auto& bucket = groups[std::move(key)];
    if (bucket.size() >= budget.max_fiber_size)
      throw BudgetExceeded("fiber size exceeds the budget of " + std::to_string(budget.max_fiber_size));
    bucket.push_back(std::move(t));
  }
  std::vector<Fiber> out;
  out.reserve(groups.size());
  for (auto& [key, tables] : groups) out.push_back(Fiber{key, std::move(tables)});
  return out;
}

// ---------------------------------------------------------------------------

std::optional<CellTable> apply_move(const CellTable& t, const QuadGen& q, int sign) {
  if (!q.valid_for(t.shape())) throw std::invalid_argument("move out of range for the table shape");
  if (sign != 1 && sign != -1) throw std::invalid_argument("move sign must be +1 or -1");
  const Cell up[2] = {{q.i, q.k}, {q.j, q.l}};
  const Cell down[2] = {{q.i, q.l}, {q.j, q.k}};
  const Cell* raise = sign > 0 ? up : down;
  const Cell* lower = sign > 0 ? down : up;
  if (t.at(lower[0]) < 1 || t.at(lower[1]) < 1) return std::nullopt;
  CellTable out = t;
  for (int k = 0; k < 2; ++k) {
    out.add(raise[k].i, raise[k].j, 1);
    out.add(lower[k].i, lower[k].j, -1);
  }
  return out;
}

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;

  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }

  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

std::vector<Component> fiber_components(const Fiber& f, const MoveSet& moves) {
  std::map<CellTable, std::size_t> index;
  for (std::size_t k = 0; k < f.tables.size(); ++k) index.emplace(f.tables[k], k);

  DisjointSets sets(f.tables.size());
  for (std::size_t k = 0; k < f.tables.size(); ++k) {
    for (const QuadGen& q : moves.moves) {
      for (int sign : {1, -1}) {
        auto next = apply_move(f.tables[k], q, sign);
        if (!next) continue;
        auto it = index.find(*next);
        if (it != index.end()) sets.unite(k, it->second);
      }
    }
  }

  std::map<std::size_t, Component> by_root;
  for (std::size_t k = 0; k < f.tables.size(); ++k) by_root[sets.find(k)].push_back(f.tables[k]);
  std::vector<Component> out;
  out.reserve(by_root.size());
  for (auto& [root, comp] : by_root) out.push_back(std::move(comp));
  std::stable_sort(out.begin(), out.end(), [](const Component& a, const Component& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });
  return out;
}

GenerationResult generation_check(const Subset& s, const GeneratorSet& g, int degree_bound, const FiberBudget& budget) {
  require_degree(degree_bound, budget);
  const MoveSet moves = MoveSet::from(g);
  GenerationResult result;
  result.degree_bound = degree_bound;
  for (int d = 0; d <= degree_bound; ++d) {
    for (Fiber& f : fibers_of_degree(s, d, budget)) {
      ++result.fibers_checked;
      if (f.tables.size() < 2) continue;
      std::vector<Component> comps = fiber_components(f, moves);
      if (comps.size() > 1) {
        result.pass = false;
        result.witness = DisconnectedFiber{d, std::move(f), std::move(comps)};
        return result;
      }
    }
  }
  return result;
}

// ---------------------------------------------------------------------------

std::vector<CensusRow> initial_ideal_census(const Subset& s, const GeneratorSet& g, const MonomialOrder& ord,
                                            const std::vector<DegreeCatalog>& catalogs) {
  std::vector<CellTable> leads;
  bool squarefree = true;
  for (const Binomial& b : g.binomials(ord)) {
    leads.push_back(b.leading());
    squarefree = squarefree && b.leading().is_squarefree();
  }
  std::vector<std::uint64_t> lead_masks;
  if (squarefree) {
    for (const CellTable& lt : leads) {
      std::uint64_t mask = 0;
      for (std::size_t c = 0; c < lt.exponents().size(); ++c)
        if (lt.exponents()[c] > 0) mask |= std::uint64_t{1} << c;
      lead_masks.push_back(mask);
    }
  }

  const bool all_in_ideal =
      std::all_of(g.gens.begin(), g.gens.end(), [&](const QuadGen& q) { return quad_membership(s, q); });

  std::vector<CensusRow> rows;
  for (const DegreeCatalog& cat : catalogs) {
    if (!(cat.shape() == s.shape())) throw std::invalid_argument("catalog shape does not match the subset");
    CensusRow row{cat.degree(), 0, 0};
    std::set<std::pair<std::size_t, int>> images;
    for (std::size_t k = 0; k < cat.tables().size(); ++k) {
      images.emplace(cat.margin_id(k), cat.s_sum(s, k));
      bool standard = true;
      if (squarefree) {
        const std::uint64_t supp = cat.support_mask(k);
        for (std::uint64_t lm : lead_masks)
          if ((supp & lm) == lm) {
            standard = false;
            break;
          }
      } else {
        for (const CellTable& lt : leads)
          if (divides(lt, cat.tables()[k])) {
            standard = false;
            break;
          }
      }
      row.standard_count += standard ? 1 : 0;
    }
    row.fiber_count = images.size();
    if (all_in_ideal) detail::ensure(row.standard_count >= row.fiber_count, "standard count bounds fiber count");
    rows.push_back(row);
  }
  return rows;
}

std::vector<CensusRow> initial_ideal_census(const Subset& s, const GeneratorSet& g, const MonomialOrder& ord,
                                            int degree_bound, const FiberBudget& budget) {
  return initial_ideal_census(s, g, ord, catalogs_up_to(s.shape(), degree_bound, budget));
}

bool fiber_partitions_equal(const Subset& a, const Subset& b, const std::vector<DegreeCatalog>& catalogs) {
  if (!(a.shape() == b.shape())) throw std::invalid_argument("subsets have different shapes");
  for (const DegreeCatalog& cat : catalogs) {
    // Equal partitions iff the class labels correspond one-to-one.
    std::map<std::pair<std::size_t, int>, int> a_to_b;
    std::map<std::pair<std::size_t, int>, int> b_to_a;
    for (std::size_t k = 0; k < cat.tables().size(); ++k) {
      const int wa = cat.s_sum(a, k);
      const int wb = cat.s_sum(b, k);
      auto [ia, fresh_a] = a_to_b.try_emplace({cat.margin_id(k), wa}, wb);
      auto [ib, fresh_b] = b_to_a.try_emplace({cat.margin_id(k), wb}, wa);
      if (ia->second != wb || ib->second != wa) return false;
    }
  }
  return true;
}

bool fiber_partitions_equal(const Subset& a, const Subset& b, int degree_bound, const FiberBudget& budget) {
  return fiber_partitions_equal(a, b, catalogs_up_to(a.shape(), degree_bound, budget));
}

// ---------------------------------------------------------------------------

namespace {

// Unbiased draw from [0, bound) using only the raw 64-bit engine output,
// so the sequence is identical on every standard library.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % bound;
  }
}

}  // namespace

WalkTrace random_walk(const Subset& s, const CellTable& start, const MoveSet& moves, std::uint64_t steps,
                      std::uint64_t seed) {
  for (const QuadGen& q : moves.moves)
    if (!quad_membership(s, q)) throw std::invalid_argument("move does not preserve the fiber of the start table");

  const PiImage key = pi_image(s, start);
  WalkTrace trace{seed, steps, {}, start};
  std::mt19937_64 rng(seed);
  CellTable cur = start;
  ++trace.visit_counts[cur];
  const std::uint64_t choices = 2 * static_cast<std::uint64_t>(moves.moves.size());
  for (std::uint64_t step = 0; step < steps; ++step) {
    if (choices > 0) {
      const std::uint64_t pick = uniform_below(rng, choices);
      const QuadGen& q = moves.moves[static_cast<std::size_t>(pick / 2)];
      if (auto next = apply_move(cur, q, pick % 2 == 0 ? 1 : -1)) {
        detail::ensure(pi_image(s, *next) == key, "walk stays in the start fiber");
        cur = std::move(*next);
      }
    }
    ++trace.visit_counts[cur];
  }
  trace.final = cur;
  return trace;
}

double total_variation_to_uniform(const WalkTrace& trace, const Fiber& fiber) {
  if (fiber.tables.empty()) throw std::invalid_argument("empty fiber");
  const double total = static_cast<double>(trace.steps + 1);
  const double uniform = 1.0 / static_cast<double>(fiber.tables.size());
  double tv = 0.0;
  std::uint64_t inside = 0;
  for (const CellTable& t : fiber.tables) {
    auto it = trace.visit_counts.find(t);
    const std::uint64_t count = it == trace.visit_counts.end() ? 0 : it->second;
    inside += count;
    tv += std::abs(static_cast<double>(count) / total - uniform);
  }
  tv += static_cast<double>(trace.steps + 1 - inside) / total;
  return tv / 2.0;
}

double walk_vs_exact(const Subset& s, const CellTable& start, const MoveSet& moves, std::uint64_t steps,
                     std::uint64_t seed, const FiberBudget& budget) {
  const Fiber fiber = enumerate_fiber(s, pi_image(s, start), budget);
  return total_variation_to_uniform(random_walk(s, start, moves, steps, seed), fiber);
}

}  // namespace subtable
