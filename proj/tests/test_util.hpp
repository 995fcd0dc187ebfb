#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "subtable/table_core.hpp"

namespace subtable::testutil {

// Bit (i-1)*n + (j-1) of `mask` selects cell (i, j).
inline Subset subset_from_mask(TableShape shape, std::uint64_t mask) {
  Subset s(shape);
  for (int i = 1; i <= shape.m; ++i)
    for (int j = 1; j <= shape.n; ++j)
      if ((mask >> ((i - 1) * shape.n + (j - 1))) & 1u) s.set(i, j, true);
  return s;
}

inline Subset random_subset(TableShape shape, std::mt19937_64& rng, double density = 0.5) {
  std::bernoulli_distribution coin(density);
  Subset s(shape);
  for (int i = 1; i <= shape.m; ++i)
    for (int j = 1; j <= shape.n; ++j)
      if (coin(rng)) s.set(i, j, true);
  return s;
}

inline PermPair random_perms(TableShape shape, std::mt19937_64& rng) {
  PermPair p = PermPair::identity(shape);
  std::shuffle(p.row_perm.begin(), p.row_perm.end(), rng);
  std::shuffle(p.col_perm.begin(), p.col_perm.end(), rng);
  return p;
}

// Young diagrams in the m x n box, built from nonincreasing row lengths.
inline std::vector<Subset> staircases(TableShape shape) {
  std::vector<Subset> out;
  std::vector<int> lengths(static_cast<std::size_t>(shape.m), 0);
  std::function<void(int, int)> rec = [&](int row, int cap) {
    if (row > shape.m) {
      Subset s(shape);
      for (int i = 1; i <= shape.m; ++i)
        for (int j = 1; j <= lengths[i - 1]; ++j) s.set(i, j, true);
      out.push_back(s);
      return;
    }
    for (int len = 0; len <= cap; ++len) {
      lengths[row - 1] = len;
      rec(row + 1, len);
    }
  };
  rec(1, shape.n);
  return out;
}

// Every row permutation paired with every column permutation.
inline std::vector<PermPair> all_perm_pairs(TableShape shape) {
  std::vector<PermPair> out;
  PermPair p = PermPair::identity(shape);
  do {
    do {
      out.push_back(p);
    } while (std::next_permutation(p.row_perm.begin(), p.row_perm.end()));
  } while (std::next_permutation(p.col_perm.begin(), p.col_perm.end()));
  return out;
}

}  // namespace subtable::testutil
