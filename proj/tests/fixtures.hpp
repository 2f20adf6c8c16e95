#pragma once

#include "carpet/carpet.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

namespace fixtures {

using carpet::build_carpet;
using carpet::Digit;
using carpet::DigitSet;

inline DigitSet A() { return build_carpet(3, 2, {{0, 0}, {2, 0}}); }
inline DigitSet B() { return build_carpet(3, 2, {{0, 0}, {1, 0}}); }
inline DigitSet C() { return build_carpet(3, 2, {{0, 1}, {2, 1}}); }
inline DigitSet X() { return build_carpet(3, 2, {{0, 0}, {0, 1}}); }
inline DigitSet G9() { return build_carpet(9, 3, {{0, 0}, {2, 0}, {0, 2}, {2, 2}}); }
inline DigitSet H9() {
  std::vector<Digit> d;
  for (std::uint32_t i = 0; i < 8; ++i) d.push_back({i, 0});
  return build_carpet(9, 3, d);
}
inline DigitSet F5a() { return build_carpet(5, 2, {{0, 0}, {2, 0}}); }
inline DigitSet F5b() { return build_carpet(5, 2, {{0, 0}, {2, 0}, {4, 0}}); }

inline std::vector<DigitSet> oracle_suite() { return {A(), B(), C(), G9(), H9(), F5a(), F5b()}; }

/// Uniformly random digit set with N >= 2 on an n x m grid.
inline DigitSet random_carpet(std::mt19937_64& rng, std::uint32_t max_n, std::uint32_t max_m) {
  while (true) {
    const std::uint32_t m = std::uniform_int_distribution<std::uint32_t>(2, max_m)(rng);
    const std::uint32_t n = std::uniform_int_distribution<std::uint32_t>(m + 1, std::max(max_n, m + 1))(rng);
    std::vector<Digit> d;
    std::bernoulli_distribution keep(0.35);
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < m; ++j)
        if (keep(rng)) d.push_back({i, j});
    if (d.size() >= 2) return build_carpet(n, m, d);
  }
}

/// Random row permutation combined with an independent column relabelling inside every row.
inline DigitSet relabel(std::mt19937_64& rng, const DigitSet& c) {
  std::vector<std::uint32_t> row_perm(c.m());
  std::iota(row_perm.begin(), row_perm.end(), 0u);
  std::shuffle(row_perm.begin(), row_perm.end(), rng);
  std::vector<std::vector<std::uint32_t>> col_perm(c.m(), std::vector<std::uint32_t>(c.n()));
  for (auto& p : col_perm) {
    std::iota(p.begin(), p.end(), 0u);
    std::shuffle(p.begin(), p.end(), rng);
  }
  std::vector<Digit> d;
  for (const auto& x : c.digits()) d.push_back({col_perm[x.j][x.i], row_perm[x.j]});
  return build_carpet(c.n(), c.m(), d);
}

}  // namespace fixtures
