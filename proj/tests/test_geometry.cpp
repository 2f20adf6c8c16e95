#include "doctest.h"

#include "carpet/error.hpp"
#include "carpet/geometry.hpp"
#include "carpet/sigma.hpp"
#include "fixtures.hpp"

#include <map>

using namespace carpet;
using namespace fixtures;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::MalformedInput;
}

/// Every word pair (x, y) with |x| = k, |y| = ell(k), filtered by the admissibility rule alone.
std::vector<Cell> brute_force_cells(const DigitSet& c, std::int64_t k) {
  const auto L = ell(c.n(), c.m(), k);
  const auto f = fiber_profile(c);
  std::vector<Cell> out;
  BigInt xs = ipow(c.n(), static_cast<std::uint64_t>(k));
  BigInt ys = ipow(c.m(), static_cast<std::uint64_t>(L));
  for (BigInt gy = 0; gy < ys; ++gy) {
    std::vector<std::uint32_t> y(static_cast<std::size_t>(L));
    BigInt t = gy;
    for (auto j = y.size(); j-- > 0;) {
      y[j] = static_cast<std::uint32_t>(t % c.m());
      t /= c.m();
    }
    bool tail_ok = true;
    for (std::int64_t j = k; j < L; ++j) tail_ok = tail_ok && f.a[y[static_cast<std::size_t>(j)]] > 0;
    if (!tail_ok) continue;
    for (BigInt gx = 0; gx < xs; ++gx) {
      BigInt u = gx;
      bool ok = true;
      for (std::int64_t j = k; j-- > 0;) {
        ok = ok && c.contains(static_cast<std::uint32_t>(u % c.n()), y[static_cast<std::size_t>(j)]);
        u /= c.n();
      }
      if (ok) out.push_back({gx, gy});
    }
  }
  std::sort(out.begin(), out.end(), cell_less);
  return out;
}

bool contains(const Rect& outer, const Rect& inner) {
  return outer.x0 <= inner.x0 && inner.x1 <= outer.x1 && outer.y0 <= inner.y0 && inner.y1 <= outer.y1;
}

}  // namespace

TEST_CASE("validate_square") {
  auto q = validate_square(A(), {2}, {0});
  CHECK(q.k == 1);
  CHECK(q.gx == 2);
  CHECK(q.gy == 0);
  CHECK(code_of([] { validate_square(A(), {2}, {1}); }) == ErrorCode::NotAdmissible);
  CHECK(code_of([] { validate_square(G9(), {0}, {0, 1}); }) == ErrorCode::NotAdmissible);
  CHECK(code_of([] { validate_square(G9(), {0}, {0}); }) == ErrorCode::LengthMismatch);
  auto r = square_region(G9(), validate_square(G9(), {2}, {2, 0}));
  CHECK(r.x0 == Rational(2, 9));
  CHECK(r.x1 == Rational(3, 9));
  CHECK(r.y0 == Rational(6, 9));
  CHECK(r.y1 == Rational(7, 9));
}

TEST_CASE("direct offsprings") {
  auto g = direct_offsprings(G9(), validate_square(G9(), {0}, {0, 0}));
  CHECK(g.size() == 8);

  auto b = direct_offsprings(B(), validate_square(B(), {0}, {0}));
  REQUIRE(b.size() == 2);
  CHECK(b[0].xword == std::vector<std::uint32_t>{0, 0});
  CHECK(b[0].yword == std::vector<std::uint32_t>{0, 0, 0});
  CHECK(b[1].xword == std::vector<std::uint32_t>{0, 1});
  CHECK(b[1].yword == std::vector<std::uint32_t>{0, 0, 0});

  for (const auto& c : oracle_suite()) {
    auto level = reference::enumerate_level(c, 3);
    for (const auto& cell : level.cells()) {
      const auto q = square_at(c, 3, level.ell(), cell);
      const auto kids = direct_offsprings(c, q);
      CHECK(kids.size() == offspring_count(c, q));
      CHECK(BigInt(kids.size()) == level_params(c, 4).n_k);
      for (const auto& kid : kids) CHECK(contains(square_region(c, q), square_region(c, kid)));
    }
  }
}

TEST_CASE("enumerate_level examples") {
  auto a1 = enumerate_level(A(), 1);
  CHECK(a1.columns() == 3);
  CHECK(a1.rows() == 2);
  CHECK(a1.cells() == std::vector<Cell>{{0, 0}, {2, 0}});

  auto b2 = enumerate_level(B(), 2);
  CHECK(b2.columns() == 9);
  CHECK(b2.rows() == 8);
  CHECK(b2.cells() == std::vector<Cell>{{0, 0}, {1, 0}, {3, 0}, {4, 0}});

  auto g1 = enumerate_level(G9(), 1);
  std::vector<Cell> want;
  for (int y : {0, 2, 6, 8})
    for (int x : {0, 2}) want.push_back({x, y});
  CHECK(g1.cells() == want);

  auto root = enumerate_level(A(), 0);
  CHECK(root.cells() == std::vector<Cell>{{0, 0}});
  CHECK(root.find(0, 0).has_value());
  CHECK_FALSE(root.find(1, 0).has_value());
}

TEST_CASE("enumeration matches brute force and the serial reference") {
  auto suite = oracle_suite();
  suite.push_back(X());
  suite.push_back(build_carpet(4, 2, {{0, 0}, {1, 0}, {0, 1}}));
  for (const auto& c : suite) {
    for (std::int64_t k = 0; k <= 3; ++k) {
      const auto fast = enumerate_level(c, k);
      const auto ref = reference::enumerate_level(c, k);
      CHECK(fast.cells() == ref.cells());
      if (level_cell_count(c, k) < 5000 && ipow(c.n(), static_cast<std::uint64_t>(k)) < 100000) {
        CHECK(fast.cells() == brute_force_cells(c, k));
      }
      CHECK(BigInt(fast.size()) == level_cell_count(c, k));
    }
  }
}

TEST_CASE("next level is the disjoint union of offsprings") {
  for (const auto& c : oracle_suite()) {
    for (std::int64_t k = 0; k < 4; ++k) {
      const auto level = enumerate_level(c, k);
      std::vector<Cell> children;
      for (const auto& cell : level.cells()) {
        for (auto& q : direct_offsprings(c, square_at(c, k, level.ell(), cell))) children.push_back({q.gx, q.gy});
      }
      std::sort(children.begin(), children.end(), cell_less);
      CHECK(std::adjacent_find(children.begin(), children.end()) == children.end());
      CHECK(children == enumerate_level(c, k + 1).cells());
    }
  }
}

TEST_CASE("budget") {
  CHECK(code_of([] { enumerate_level(H9(), 6, Budget{1000}); }) == ErrorCode::DepthBudgetExceeded);
  CHECK(code_of([] { reference::enumerate_level(H9(), 6, Budget{1000}); }) == ErrorCode::DepthBudgetExceeded);
  CHECK(enumerate_level(H9(), 3, Budget{512}).size() == 512);
}

TEST_CASE("square measures") {
  auto g = enumerate_level(G9(), 2);
  CHECK(measure_of(G9(), square_at(G9(), 2, g.ell(), g.cells().front())) == Rational(1, 64));
  auto a = enumerate_level(A(), 5);
  CHECK(measure_of(A(), square_at(A(), 5, a.ell(), a.cells().back())) == Rational(1, 32));
  CHECK_NOTHROW(measure_of(X(), validate_square(X(), {0}, {1})));
  const auto non_uniform = build_carpet(4, 2, {{0, 0}, {1, 0}, {0, 1}});
  CHECK(code_of([&] { measure_of(non_uniform, validate_square(non_uniform, {0}, {0, 0})); }) == ErrorCode::NotUniform);

  // the general formula still partitions unit mass
  for (std::int64_t k = 0; k <= 3; ++k) {
    const auto level = enumerate_level(non_uniform, k);
    Rational total = 0;
    for (const auto& cell : level.cells()) total += square_measure(non_uniform, square_at(non_uniform, k, level.ell(), cell));
    CHECK(total == 1);
  }
}

TEST_CASE("basic rectangles inside each square, by word enumeration") {
  for (const auto& c : oracle_suite()) {
    const auto f = fiber_profile(c);
    for (std::int64_t k = 0; k <= 3; ++k) {
      const auto L = ell(c.n(), c.m(), k);
      // route every digit word of length ell(k) to the square holding its basic rectangle
      std::map<std::pair<BigInt, BigInt>, std::uint64_t> hits;
      std::vector<std::size_t> idx(static_cast<std::size_t>(L), 0);
      const auto& D = c.digits();
      while (true) {
        BigInt gx = 0, gy = 0;
        for (std::size_t j = 0; j < idx.size(); ++j) {
          if (static_cast<std::int64_t>(j) < k) gx = gx * c.n() + D[idx[j]].i;
          gy = gy * c.m() + D[idx[j]].j;
        }
        ++hits[{gx, gy}];
        std::size_t j = idx.size();
        while (j > 0 && ++idx[j - 1] == D.size()) idx[--j] = 0;
        if (j == 0) break;
      }
      const auto level = enumerate_level(c, k);
      CHECK(hits.size() == level.size());
      const BigInt want = pow(BigInt(c.size() / f.s), static_cast<unsigned>(L - k));
      for (const auto& cell : level.cells()) {
        const auto it = hits.find({cell.gx, cell.gy});
        REQUIRE(it != hits.end());
        CHECK(BigInt(it->second) == want);
        const auto q = square_at(c, k, L, cell);
        CHECK(Rational(BigInt(it->second), ipow(c.size(), static_cast<std::uint64_t>(L))) == measure_of(c, q));
      }
    }
  }
}
