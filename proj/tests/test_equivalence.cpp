#include "doctest.h"

#include "carpet/components.hpp"
#include "carpet/equivalence.hpp"
#include "carpet/error.hpp"
#include "carpet/sigma.hpp"
#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

using namespace carpet;

namespace {

/// Random carpet in the class: vacant rows, uniform fibers with a < n, at least two digits.
DigitSet random_in_class(std::mt19937_64& rng, std::uint32_t n, std::uint32_t m) {
  while (true) {
    std::vector<std::uint32_t> rows;
    for (std::uint32_t j = 0; j < m; ++j)
      if (rng() % 2) rows.push_back(j);
    if (rows.empty() || rows.size() == m) continue;
    const std::uint32_t a = 1 + static_cast<std::uint32_t>(rng() % (n - 1));
    if (a * rows.size() < 2) continue;
    std::vector<Digit> d;
    for (auto j : rows) {
      std::vector<std::uint32_t> cols(n);
      std::iota(cols.begin(), cols.end(), 0u);
      std::shuffle(cols.begin(), cols.end(), rng);
      for (std::uint32_t t = 0; t < a; ++t) d.push_back({cols[t], j});
    }
    auto c = build_carpet(n, m, d);
    if (classify(c).in_tvr()) return c;
  }
}

/// Brute force: try every assignment of items to bins.
bool bins_possible(const std::vector<std::uint64_t>& values, std::uint64_t bins, std::uint64_t target) {
  std::vector<std::uint64_t> load(bins, 0);
  std::function<bool(std::size_t)> go = [&](std::size_t i) {
    if (i == values.size()) return std::all_of(load.begin(), load.end(), [&](auto l) { return l == target; });
    for (std::uint64_t b = 0; b < bins; ++b) {
      if (load[b] + values[i] > target) continue;
      load[b] += values[i];
      if (go(i + 1)) return true;
      load[b] -= values[i];
    }
    return false;
  };
  return go(0);
}

}  // namespace

TEST_CASE("decider goldens") {
  auto ac = decide_equivalence(fixtures::A(), fixtures::C());
  CHECK(ac.verdict == Verdict::Equivalent);
  CHECK(ac.reason == VerdictReason::IrrationalPermutation);

  auto gh = decide_equivalence(fixtures::G9(), fixtures::H9());
  CHECK(gh.verdict == Verdict::Equivalent);
  CHECK(gh.reason == VerdictReason::RationalDimension);
  CHECK(gh.n_star_first == BigInt(8));
  CHECK(gh.n_star_second == BigInt(8));
  CHECK(std::abs(dimensions(fixtures::G9()).hausdorff - dimensions(fixtures::H9()).hausdorff) < 1e-12);

  auto ff = decide_equivalence(fixtures::F5a(), fixtures::F5b());
  CHECK(ff.verdict == Verdict::NotEquivalent);
  CHECK(ff.reason == VerdictReason::IrrationalPermutation);

  auto ax = decide_equivalence(fixtures::A(), fixtures::X());
  CHECK(ax.verdict == Verdict::OutsideClass);

  CHECK(to_string(Verdict::NotEquivalent) == "not-equivalent");
}

TEST_CASE("n_star") {
  CHECK(n_star(fixtures::G9()) == BigInt(8));
  CHECK(n_star(fixtures::H9()) == BigInt(8));
  CHECK_FALSE(n_star(fixtures::A()).has_value());
  // sigma = 2/3 for (8, 4): N^2 s^1
  CHECK(n_star(build_carpet(8, 4, {{0, 0}, {3, 0}, {1, 2}, {6, 2}})) == BigInt(4 * 4 * 2));
}

TEST_CASE("decider is symmetric, reflexive and blind to relabelling") {
  std::mt19937_64 rng(31);
  for (std::uint32_t n = 3; n <= 6; ++n) {
    for (std::uint32_t m = 2; m < n && m <= 4; ++m) {
      for (int trial = 0; trial < 25; ++trial) {
        auto a = random_in_class(rng, n, m);
        auto b = random_in_class(rng, n, m);
        const auto ab = decide_equivalence(a, b).verdict;
        CHECK(decide_equivalence(b, a).verdict == ab);
        CHECK(decide_equivalence(a, a).verdict == Verdict::Equivalent);
        auto a2 = fixtures::relabel(rng, a);
        auto b2 = fixtures::relabel(rng, b);
        CHECK(decide_equivalence(a2, b2).verdict == ab);
        CHECK(decide_equivalence(a, a2).verdict == Verdict::Equivalent);
      }
    }
  }
}

TEST_CASE("rational clause agrees with equal dimension") {
  std::mt19937_64 rng(32);
  const std::vector<std::pair<std::uint32_t, std::uint32_t>> bases{{4, 2}, {8, 4}, {9, 3}, {8, 2}};
  for (auto [n, m] : bases) {
    for (int trial = 0; trial < 60; ++trial) {
      auto a = random_in_class(rng, n, m);
      auto b = random_in_class(rng, n, m);
      const bool same_dim = std::abs(dimensions(a).hausdorff - dimensions(b).hausdorff) < 1e-12;
      CHECK((decide_equivalence(a, b).verdict == Verdict::Equivalent) == same_dim);
    }
  }
}

TEST_CASE("choose_p") {
  CHECK(choose_p(fixtures::B(), 2) == 4);
  CHECK(choose_p(fixtures::G9(), 1) == 2);
  CHECK(choose_p(fixtures::A(), 1) == 3);
  CHECK(choose_p(fixtures::H9(), 8) == 4);
}

TEST_CASE("coin split examples") {
  SUBCASE("B at rank 2 picks one of two offspring pairs") {
    auto t = build_component_tree(fixtures::B(), 3);
    auto s = coin_split(t, 2, 0);
    CHECK(s.selected.size() == 1);
    CHECK(t.level(3).member_count(s.selected[0]) == 2);
    CHECK(s.selected_measure == Rational(1, 4));
  }
  SUBCASE("G9 singletons take all eight offsprings") {
    auto t = build_component_tree(fixtures::G9(), 2);
    for (std::uint32_t id = 0; id < t.level(1).size(); ++id) {
      auto s = coin_split(t, 1, id);
      CHECK(s.selected.size() == 8);
      CHECK(s.selected_measure == Rational(1, 8));
    }
  }
  SUBCASE("ell(k) = k is outside the hypothesis") {
    auto t = build_component_tree(fixtures::A(), 2);
    CHECK_THROWS_AS(coin_split(t, 1, 0), Error);
  }
}

TEST_CASE("coin split is feasible everywhere on small ranks") {
  for (const auto& c : {fixtures::A(), fixtures::B(), fixtures::G9(), fixtures::H9()}) {
    const std::int64_t K = deepest_level_within(c, 6, Budget{300'000});
    auto t = build_component_tree(c, K);
    for (std::int64_t k = 2; k < K; ++k) {
      if (ell(c.n(), c.m(), k) <= k) continue;
      const auto theta_k = level_params(c, k).theta;
      for (std::uint32_t id = 0; id < t.level(k).size(); ++id) {
        auto s = coin_split(t, k, id);
        CHECK(s.selected_measure == theta_k);
      }
    }
  }
}

TEST_CASE("equal_bins") {
  SUBCASE("greedy miss repaired by the exact search") {
    const std::vector<std::uint64_t> v{4, 3, 3, 2, 2, 2};
    auto g = equal_bins(v, 2, 8);
    REQUIRE(g.has_value());
    std::vector<std::uint64_t> load(2, 0);
    for (std::size_t i = 0; i < v.size(); ++i) load[(*g)[i]] += v[i];
    CHECK(load == std::vector<std::uint64_t>{8, 8});
  }
  SUBCASE("impossible") {
    CHECK_FALSE(equal_bins({5, 5, 2}, 2, 6).has_value());
    CHECK_FALSE(equal_bins({1, 1}, 1, 3).has_value());
  }
  SUBCASE("agrees with brute force") {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 400; ++trial) {
      const std::uint64_t bins = 1 + rng() % 4;
      const std::uint64_t target = 2 + rng() % 9;
      std::vector<std::uint64_t> v;
      std::uint64_t total = 0;
      while (total < bins * target) {
        const auto x = std::min<std::uint64_t>(1 + rng() % target, bins * target - total);
        v.push_back(x);
        total += x;
      }
      if (v.size() > 10) continue;
      auto g = equal_bins(v, bins, target);
      CHECK(g.has_value() == bins_possible(v, bins, target));
      if (g) {
        std::vector<std::uint64_t> load(bins, 0);
        for (std::size_t i = 0; i < v.size(); ++i) load[(*g)[i]] += v[i];
        for (auto l : load) CHECK(l == target);
      }
    }
  }
}

TEST_CASE("partition of p-step offsprings") {
  auto t = build_component_tree(fixtures::B(), 8);
  SUBCASE("root with g = 1") {
    auto part = partition_offsprings(t, 0, 0, 4);
    CHECK(part.g == 1);
    REQUIRE(part.groups.size() == 1);
    CHECK(part.groups[0].size() == t.level(4).size());
    CHECK(part.group_measures[0] == Rational(1));
  }
  SUBCASE("level-4 components with g = 2") {
    for (std::uint32_t id = 0; id < t.level(4).size(); ++id) {
      auto part = partition_offsprings(t, 4, id, 4);
      CHECK(part.g == 2);
      REQUIRE(part.groups.size() == 2);
      for (const auto& m : part.group_measures) CHECK(m == Rational(1, 16));
      for (const auto& grp : part.groups) CHECK(std::is_sorted(grp.begin(), grp.end()));
    }
  }
}
