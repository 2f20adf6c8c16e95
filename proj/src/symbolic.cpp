#include "carpet/symbolic.hpp"

#include "carpet/error.hpp"
#include "carpet/sigma.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>

namespace carpet {

namespace {

Rational inverse_power(std::uint32_t base, std::int64_t e) { return Rational(BigInt(1), ipow(base, static_cast<std::uint64_t>(e))); }

/// max(n^-a, m^-b), where a missing exponent contributes nothing.
Rational lambda_value(std::uint32_t n, std::uint32_t m, std::optional<std::int64_t> a, std::optional<std::int64_t> b,
                      bool* x_dominates = nullptr) {
  Rational x = a ? inverse_power(n, *a) : Rational(0);
  Rational y = b ? inverse_power(m, *b) : Rational(0);
  if (x_dominates) *x_dominates = x >= y;
  return std::max(x, y);
}

template <class W>
std::int64_t common_prefix(const W& a, const W& b) {
  return std::mismatch(a.begin(), a.end(), b.begin(), b.end()).first - a.begin();
}

void require_uniform(const DigitSet& c) {
  if (!has_uniform_fibers(fiber_profile(c).a)) throw Error(ErrorCode::NotUniform, "symbolic squares need uniform fibers");
}

std::string word_text(const std::vector<std::uint32_t>& w) {
  const bool wide = std::any_of(w.begin(), w.end(), [](auto d) { return d > 9; });
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (wide && i > 0) out += ',';
    out += std::to_string(w[i]);
  }
  return out;
}

}  // namespace

LambdaDistance lambda_distance(std::uint32_t n, std::uint32_t m, const SymbolicPoint& u, const SymbolicPoint& v) {
  if (u.letters.size() != v.letters.size()) throw Error(ErrorCode::LengthMismatch, "points have different depths");
  const auto K = static_cast<std::int64_t>(u.letters.size());
  LambdaDistance d;
  d.x_prefix = K;
  d.y_prefix = K;
  for (std::int64_t t = 0; t < K; ++t) {
    if (d.x_prefix == K && u.letters[static_cast<std::size_t>(t)].i != v.letters[static_cast<std::size_t>(t)].i) d.x_prefix = t;
    if (d.y_prefix == K && u.letters[static_cast<std::size_t>(t)].j != v.letters[static_cast<std::size_t>(t)].j) d.y_prefix = t;
  }
  if (d.x_prefix == K && d.y_prefix == K) {
    throw Error(ErrorCode::IndistinguishableAtDepth, "points agree to depth " + std::to_string(K));
  }
  d.value = lambda_value(n, m, d.x_prefix < K ? std::optional(d.x_prefix) : std::nullopt,
                         d.y_prefix < K ? std::optional(d.y_prefix) : std::nullopt, &d.x_dominates);
  d.approx = to_double(d.value);
  return d;
}

std::string to_string(const SymbolicSquare& sq) { return "x=" + word_text(sq.xword) + "|y=" + word_text(sq.yword); }

std::vector<SymbolicSquare> symbolic_offsprings(const DigitSet& c, const SymbolicSquare& sq) {
  require_uniform(c);
  const auto f = fiber_profile(c);
  const std::int64_t L = static_cast<std::int64_t>(sq.yword.size());
  const std::int64_t L_next = ell(c.n(), c.m(), sq.k + 1);

  // (u, v) choices at position k+1: the row is already fixed when ell(k) > k
  std::vector<Digit> heads;
  for (const auto& d : c.digits()) {
    if (L > sq.k && d.j != sq.yword[static_cast<std::size_t>(sq.k)]) continue;
    heads.push_back(d);
  }
  const std::int64_t free_rows = L > sq.k ? L_next - L : L_next - sq.k - 1;

  std::vector<SymbolicSquare> out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(free_rows), 0);
  for (const auto& h : heads) {
    std::fill(idx.begin(), idx.end(), 0);
    while (true) {
      SymbolicSquare child{sq.k + 1, sq.xword, sq.yword};
      child.xword.push_back(h.i);
      if (L == sq.k) child.yword.push_back(h.j);
      for (auto i : idx) child.yword.push_back(f.rows[i]);
      out.push_back(std::move(child));
      std::size_t t = idx.size();
      while (t > 0 && ++idx[t - 1] == f.rows.size()) idx[--t] = 0;
      if (t == 0) break;
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.xword, a.yword) < std::tie(b.xword, b.yword);
  });
  return out;
}

SymbolicTree symbolic_structure_tree(const DigitSet& c, std::int64_t K, const Budget& budget) {
  require_uniform(c);
  for (std::int64_t k = 0; k <= K; ++k) {
    if (level_cell_count(c, k) > BigInt(budget.max_cells)) {
      throw Error(ErrorCode::DepthBudgetExceeded, "symbolic level " + std::to_string(k) + " exceeds the budget");
    }
  }
  SymbolicTree t;
  std::vector<std::vector<std::uint32_t>> parents(static_cast<std::size_t>(K) + 1);
  t.squares.push_back({SymbolicSquare{}});
  for (std::int64_t k = 0; k < K; ++k) {
    std::vector<SymbolicSquare> next;
    auto& par = parents[static_cast<std::size_t>(k + 1)];
    const auto& here = t.squares.back();
    for (std::uint32_t v = 0; v < here.size(); ++v) {
      for (auto& child : symbolic_offsprings(c, here[v])) {
        next.push_back(std::move(child));
        par.push_back(v);
      }
    }
    t.squares.push_back(std::move(next));
  }
  t.tree = LeveledTree(std::move(parents));
  return t;
}

std::vector<LevelExtremes> symbolic_extremes(const DigitSet& c, const SymbolicTree& t) {
  const auto f = fiber_profile(c);
  std::set<std::uint32_t> columns;
  for (const auto& d : c.digits()) columns.insert(d.i);
  const std::uint32_t n = c.n();
  const std::uint32_t m = c.m();

  std::vector<LevelExtremes> out;
  for (std::int64_t k = 0; k <= t.tree.depth(); ++k) {
    const auto& squares = t.squares[static_cast<std::size_t>(k)];
    const std::int64_t L = ell(n, m, k);
    LevelExtremes e;
    e.level = k;
    e.vertex_count = squares.size();

    for (const auto& sq : squares) {
      // two points of the cylinder first differ in x where a row offers two columns
      std::optional<std::int64_t> a;
      for (std::int64_t t2 = k; t2 < L && !a; ++t2) {
        if (f.a[sq.yword[static_cast<std::size_t>(t2)]] >= 2) a = t2;
      }
      if (!a && columns.size() >= 2) a = L;
      std::optional<std::int64_t> b;
      if (f.s >= 2) b = L;
      const Rational diam = lambda_value(n, m, a, b);
      e.diam_sq = std::max(e.diam_sq, Rational(diam * diam));
    }

    if (squares.size() >= 2) {
      std::optional<Rational> best;
      std::vector<std::size_t> order(squares.size());
      for (std::int64_t a = 0; a <= k; ++a) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](auto i, auto j) {
          const auto& x = squares[i];
          const auto& y = squares[j];
          const auto cut = static_cast<std::ptrdiff_t>(a);
          if (!std::equal(x.xword.begin(), x.xword.begin() + cut, y.xword.begin())) {
            return std::lexicographical_compare(x.xword.begin(), x.xword.begin() + cut, y.xword.begin(), y.xword.begin() + cut);
          }
          return x.yword < y.yword;
        });
        for (std::size_t i = 0; i + 1 < order.size(); ++i) {
          const auto& x = squares[order[i]];
          const auto& y = squares[order[i + 1]];
          const auto px = common_prefix(x.xword, y.xword);
          const auto py = common_prefix(x.yword, y.yword);
          if (px == k && py == L) continue;
          const Rational sep = lambda_value(n, m, px < k ? std::optional(px) : std::nullopt, py < L ? std::optional(py) : std::nullopt);
          if (!best || sep < *best) best = sep;
        }
      }
      e.gap_sq = *best * *best;
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace carpet
