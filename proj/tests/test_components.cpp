#include "doctest.h"

#include "carpet/components.hpp"
#include "carpet/error.hpp"
#include "carpet/sigma.hpp"
#include "fixtures.hpp"

#include <map>
#include <queue>
#include <random>
#include <set>

using namespace carpet;

namespace {

using Grid = std::pair<std::int64_t, std::int64_t>;

std::vector<std::set<Grid>> member_sets(const ComponentLevel& lvl) {
  std::vector<std::set<Grid>> out;
  for (std::size_t id = 0; id < lvl.size(); ++id) {
    std::set<Grid> s;
    for (auto cell : lvl.members(id)) {
      const auto& c = lvl.occupancy().cells()[cell];
      s.insert({static_cast<std::int64_t>(c.gx), static_cast<std::int64_t>(c.gy)});
    }
    out.push_back(std::move(s));
  }
  return out;
}

/// Flood fill over a hash of occupied cells, ignoring the library's ordering entirely.
std::set<std::set<Grid>> flood_components(const LevelOccupancy& occ) {
  std::set<Grid> cells;
  for (const auto& c : occ.cells()) cells.insert({static_cast<std::int64_t>(c.gx), static_cast<std::int64_t>(c.gy)});
  std::set<Grid> seen;
  std::set<std::set<Grid>> out;
  for (const auto& start : cells) {
    if (seen.count(start)) continue;
    std::set<Grid> comp;
    std::queue<Grid> q;
    q.push(start);
    seen.insert(start);
    while (!q.empty()) {
      auto [x, y] = q.front();
      q.pop();
      comp.insert({x, y});
      for (int dx = -1; dx <= 1; ++dx)
        for (int dy = -1; dy <= 1; ++dy) {
          Grid nb{x + dx, y + dy};
          if (cells.count(nb) && !seen.count(nb)) {
            seen.insert(nb);
            q.push(nb);
          }
        }
    }
    out.insert(std::move(comp));
  }
  return out;
}

}  // namespace

TEST_CASE("components of the worked examples") {
  SUBCASE("B at rank 1 is one component of measure 1") {
    auto lvl = components_at_level(fixtures::B(), 1);
    REQUIRE(lvl.size() == 1);
    CHECK(member_sets(lvl)[0] == std::set<Grid>{{0, 0}, {1, 0}});
    CHECK(lvl.measure(0) == Rational(1));
  }
  SUBCASE("B at rank 2 splits at gx = 2") {
    auto lvl = components_at_level(fixtures::B(), 2);
    REQUIRE(lvl.size() == 2);
    auto s = member_sets(lvl);
    CHECK(s[0] == std::set<Grid>{{0, 0}, {1, 0}});
    CHECK(s[1] == std::set<Grid>{{3, 0}, {4, 0}});
    CHECK(lvl.measure(0) == Rational(1, 2));
    CHECK(lvl.measure(1) == Rational(1, 2));
  }
  SUBCASE("G9 at rank 1 has eight singletons") {
    auto lvl = components_at_level(fixtures::G9(), 1);
    REQUIRE(lvl.size() == 8);
    for (std::size_t id = 0; id < 8; ++id) {
      CHECK(lvl.member_count(id) == 1);
      CHECK(lvl.measure(id) == Rational(1, 8));
    }
  }
}

TEST_CASE("component ids follow the smallest (gy, gx) member") {
  for (const auto& c : fixtures::oracle_suite()) {
    for (std::int64_t k = 1; k <= 4; ++k) {
      auto lvl = components_at_level(c, k);
      std::optional<Cell> prev;
      for (std::size_t id = 0; id < lvl.size(); ++id) {
        const auto& first = lvl.occupancy().cells()[lvl.members(id)[0]];
        for (auto cell : lvl.members(id)) CHECK_FALSE(cell_less(lvl.occupancy().cells()[cell], first));
        if (prev) CHECK(cell_less(*prev, first));
        prev = first;
      }
    }
  }
}

TEST_CASE("row sweep, quadratic reference and flood fill agree") {
  std::mt19937_64 rng(11);
  std::vector<DigitSet> carpets = fixtures::oracle_suite();
  for (int i = 0; i < 40; ++i) carpets.push_back(fixtures::random_carpet(rng, 6, 4));
  for (const auto& c : carpets) {
    for (std::int64_t k = 0; k <= 3; ++k) {
      if (level_cell_count(c, k) > BigInt(3000)) continue;
      auto fast = components_at_level(c, k);
      auto ref = reference::components_at_level(c, k);
      CHECK(member_sets(fast) == member_sets(ref));
      auto fs = member_sets(fast);
      CHECK(std::set<std::set<Grid>>(fs.begin(), fs.end()) == flood_components(fast.occupancy()));
    }
  }
}

TEST_CASE("component measures sum to one") {
  std::mt19937_64 rng(12);
  std::vector<DigitSet> carpets = fixtures::oracle_suite();
  for (int i = 0; i < 30; ++i) carpets.push_back(fixtures::random_carpet(rng, 6, 4));
  for (const auto& c : carpets) {
    for (std::int64_t k = 0; k <= 4; ++k) {
      if (level_cell_count(c, k) > BigInt(20000)) continue;
      auto lvl = components_at_level(c, k);
      Rational total = 0;
      for (std::size_t id = 0; id < lvl.size(); ++id) total += lvl.measure(id);
      CHECK(total == Rational(1));
    }
  }
}

TEST_CASE("component tree") {
  SUBCASE("B to depth 2") {
    auto t = build_component_tree(fixtures::B(), 2);
    CHECK(t.level(0).size() == 1);
    CHECK(t.level(1).size() == 1);
    CHECK(t.level(2).size() == 2);
    CHECK(t.parent(2, 0) == 0);
    CHECK(t.parent(2, 1) == 0);
    CHECK(t.children(1, 0).size() == 2);
  }
  SUBCASE("A is the full offspring tree of singletons") {
    auto t = build_component_tree(fixtures::A(), 3);
    for (std::int64_t k = 1; k <= 3; ++k) {
      CHECK(t.level(k).size() == (std::size_t{1} << k));
      CHECK(t.level(k).max_member_count() == 1);
    }
  }
  SUBCASE("children lie inside their parent") {
    for (const auto& c : fixtures::oracle_suite()) {
      auto t = build_component_tree(c, 4);
      CHECK(t.verify_axioms().empty());
      for (std::int64_t k = 1; k <= 4; ++k) {
        const auto& lvl = t.level(k);
        const auto& up = t.level(k - 1);
        const auto shift = ipow(c.m(), static_cast<std::uint64_t>(lvl.occupancy().ell() - up.occupancy().ell()));
        for (std::size_t id = 0; id < lvl.size(); ++id) {
          const auto parent = t.parent(k, id);
          for (auto cell : lvl.members(id)) {
            const auto& x = lvl.occupancy().cells()[cell];
            auto anc = up.occupancy().find(BigInt(x.gx / c.n()), BigInt(x.gy / shift));
            REQUIRE(anc.has_value());
            CHECK(up.component_of_cell(*anc) == parent);
          }
        }
      }
    }
  }
}

TEST_CASE("L0 estimates") {
  auto b = estimate_L0(fixtures::B(), 6);
  CHECK(b.overall == 2);
  CHECK(b.per_level == std::vector<std::uint64_t>{2, 2, 2, 2, 2, 2});
  CHECK(estimate_L0(fixtures::A(), 6).overall == 1);
  CHECK(estimate_L0(fixtures::G9(), 4).overall == 1);
  CHECK_THROWS_AS(estimate_L0(fixtures::X(), 3), Error);
  CHECK_THROWS_AS(estimate_L0(build_carpet(3, 2, {{0, 0}, {1, 0}, {2, 0}}), 3), Error);
}

TEST_CASE("max member count settles for in-class carpets") {
  for (const auto& c : fixtures::oracle_suite()) {
    if (!classify(c).in_tvr()) continue;
    const auto K = deepest_level_within(c, 7, Budget{2'000'000});
    auto est = estimate_L0(c, K);
    for (std::size_t i = 1; i < est.per_level.size(); ++i) CHECK(est.per_level[i] >= est.per_level[i - 1]);
  }
}

TEST_CASE("budget refusal") {
  CHECK_THROWS_AS(components_at_level(fixtures::H9(), 6, Budget{1000}), Error);
  CHECK(deepest_level_within(fixtures::H9(), 8, Budget{1000}) == 3);
}
