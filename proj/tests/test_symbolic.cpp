#include "doctest.h"

#include "carpet/error.hpp"
#include "carpet/regularity.hpp"
#include "carpet/sigma.hpp"
#include "carpet/symbolic.hpp"
#include "fixtures.hpp"

#include <set>

using namespace carpet;

namespace {

Rational inv_pow(std::uint32_t b, std::int64_t e) { return Rational(BigInt(1), ipow(b, static_cast<std::uint64_t>(e))); }

std::vector<std::vector<Digit>> all_words(const DigitSet& c, std::size_t len) {
  std::vector<std::vector<Digit>> out{{}};
  for (std::size_t t = 0; t < len; ++t) {
    std::vector<std::vector<Digit>> next;
    for (const auto& w : out)
      for (const auto& d : c.digits()) {
        next.push_back(w);
        next.back().push_back(d);
      }
    out = std::move(next);
  }
  return out;
}

SymbolicSquare square_of(const DigitSet& c, const std::vector<Digit>& w, std::int64_t k) {
  SymbolicSquare s{k, {}, {}};
  for (std::int64_t t = 0; t < k; ++t) s.xword.push_back(w[static_cast<std::size_t>(t)].i);
  for (std::int64_t t = 0; t < ell(c.n(), c.m(), k); ++t) s.yword.push_back(w[static_cast<std::size_t>(t)].j);
  return s;
}

}  // namespace

TEST_CASE("lambda distance") {
  SymbolicPoint u{{{0, 0}, {1, 1}, {2, 0}, {0, 1}}};
  SymbolicPoint v{{{1, 0}, {1, 1}, {2, 0}, {0, 1}}};
  CHECK(lambda_distance(3, 2, u, v).value == Rational(1));

  SymbolicPoint a{{{0, 0}, {1, 1}, {2, 0}, {0, 1}}};
  SymbolicPoint b{{{0, 0}, {1, 0}, {2, 1}, {1, 1}}};
  auto d = lambda_distance(3, 2, a, b);
  CHECK(d.x_prefix == 3);
  CHECK(d.y_prefix == 1);
  CHECK(d.value == Rational(1, 2));
  CHECK_FALSE(d.x_dominates);

  CHECK_THROWS_AS(lambda_distance(3, 2, a, a), Error);
  CHECK_THROWS_AS(lambda_distance(3, 2, a, SymbolicPoint{{{0, 0}}}), Error);
}

TEST_CASE("symbolic offsprings") {
  const auto g9 = fixtures::G9();
  auto root_kids = symbolic_offsprings(g9, SymbolicSquare{});
  CHECK(root_kids.size() == 8);
  CHECK(symbolic_offsprings(g9, root_kids[0]).size() == 8);
  CHECK(to_string(root_kids[0]) == "x=0|y=00");

  const auto a = fixtures::A();
  SymbolicSquare sq{};
  for (std::int64_t k = 0; k < 8; ++k) {
    auto kids = symbolic_offsprings(a, sq);
    CHECK(kids.size() == 2);
    sq = kids.back();
  }
  CHECK_THROWS_AS(symbolic_offsprings(build_carpet(4, 2, {{0, 0}, {1, 0}, {0, 1}}), SymbolicSquare{}), Error);
}

TEST_CASE("symbolic branch counts equal n_k") {
  for (const auto& c : fixtures::oracle_suite()) {
    if (!classify(c).regular) continue;
    LevelSequence seq(c);
    SymbolicSquare sq{};
    for (std::int64_t k = 0; k < 50; ++k) {
      auto kids = symbolic_offsprings(c, sq);
      CHECK(BigInt(kids.size()) == seq.next().n_k);
      sq = kids.front();
    }
  }
}

TEST_CASE("symbolic trees") {
  auto ta = symbolic_structure_tree(fixtures::A(), 4);
  for (std::int64_t k = 0; k <= 4; ++k) CHECK(ta.tree.level_size(k) == (std::size_t{1} << k));
  auto tg = symbolic_structure_tree(fixtures::G9(), 3);
  CHECK(tg.tree.level_size(3) == 512);
  for (std::int64_t k = 0; k <= 3; ++k) {
    const auto& sq = tg.squares[static_cast<std::size_t>(k)];
    CHECK(std::set<SymbolicSquare>(sq.begin(), sq.end()).size() == sq.size());
  }
  CHECK_THROWS_AS(symbolic_structure_tree(fixtures::H9(), 9, Budget{1000}), Error);
}

TEST_CASE("point distances respect the square bounds") {
  for (const auto& c : {fixtures::A(), fixtures::G9(), fixtures::F5b()}) {
    const std::size_t D = c.n() == 9 ? 4 : 5;
    const auto words = all_words(c, D);
    for (std::int64_t k = 1; ell(c.n(), c.m(), k) <= static_cast<std::int64_t>(D); ++k) {
      const Rational diam_bound = std::max(inv_pow(c.n(), k), inv_pow(c.m(), ell(c.n(), c.m(), k)));
      CHECK(diam_bound <= Rational(c.m()) * inv_pow(c.n(), k));
      for (std::size_t i = 0; i < words.size(); ++i) {
        for (std::size_t j = i + 1; j < words.size(); ++j) {
          const auto lam = lambda_distance(c.n(), c.m(), {words[i]}, {words[j]}).value;
          if (square_of(c, words[i], k) == square_of(c, words[j], k)) {
            CHECK(lam <= diam_bound);
          } else {
            CHECK(lam >= inv_pow(c.n(), k));
          }
        }
      }
    }
  }
}

TEST_CASE("symbolic extremes against all pairs") {
  for (auto [c, K] : {std::pair{fixtures::A(), std::int64_t{5}}, std::pair{fixtures::G9(), std::int64_t{2}}}) {
    auto t = symbolic_structure_tree(c, K);
    auto ext = symbolic_extremes(c, t);
    for (std::int64_t k = 1; k <= K; ++k) {
      const auto& sq = t.squares[static_cast<std::size_t>(k)];
      const auto L = ell(c.n(), c.m(), k);
      std::optional<Rational> best;
      for (std::size_t i = 0; i < sq.size(); ++i)
        for (std::size_t j = i + 1; j < sq.size(); ++j) {
          std::int64_t a = 0;
          while (a < k && sq[i].xword[static_cast<std::size_t>(a)] == sq[j].xword[static_cast<std::size_t>(a)]) ++a;
          std::int64_t b = 0;
          while (b < L && sq[i].yword[static_cast<std::size_t>(b)] == sq[j].yword[static_cast<std::size_t>(b)]) ++b;
          const Rational x = a < k ? inv_pow(c.n(), a) : Rational(0);
          const Rational y = b < L ? inv_pow(c.m(), b) : Rational(0);
          const Rational sep = std::max(x, y);
          if (!best || sep < *best) best = sep;
        }
      REQUIRE(ext[static_cast<std::size_t>(k)].gap_sq.has_value());
      CHECK(*ext[static_cast<std::size_t>(k)].gap_sq == *best * *best);
      CHECK(*best >= inv_pow(c.n(), k));
      CHECK(ext[static_cast<std::size_t>(k)].diam_sq <= Rational(c.m() * c.m()) * inv_pow(c.n(), 2 * k));
    }
  }
}

TEST_CASE("symbolic regularity constants") {
  auto ta = symbolic_structure_tree(fixtures::A(), 4);
  auto ra = check_regularity(symbolic_extremes(fixtures::A(), ta), Rational(1, 3));
  CHECK(ra.alpha_diam <= 2.0 + 1e-12);
  CHECK(ra.alpha_gap >= 1.0 - 1e-12);

  auto tg = symbolic_structure_tree(fixtures::G9(), 3);
  auto rg = check_regularity(symbolic_extremes(fixtures::G9(), tg), Rational(1, 9));
  CHECK(rg.alpha_diam <= 3.0 + 1e-12);
  CHECK(rg.alpha_gap >= 1.0 - 1e-12);
}
