#include "carpet/geometry.hpp"

#include "carpet/error.hpp"
#include "carpet/sigma.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace carpet {

namespace {

std::string word_string(const std::vector<std::uint32_t>& w) {
  std::string out;
  for (auto d : w) out += std::to_string(d) + (d > 9 ? "," : "");
  return out;
}

/// Enumerate every word of the given length over `alphabet`, lexicographically.
template <class F>
void for_each_word(const std::vector<std::uint32_t>& alphabet, std::int64_t length, F&& f) {
  std::vector<std::uint32_t> word(static_cast<std::size_t>(length), alphabet.front());
  std::vector<std::size_t> idx(static_cast<std::size_t>(length), 0);
  while (true) {
    f(word);
    std::int64_t j = length - 1;
    while (j >= 0) {
      auto& i = idx[static_cast<std::size_t>(j)];
      if (i + 1 < alphabet.size()) {
        ++i;
        word[static_cast<std::size_t>(j)] = alphabet[i];
        break;
      }
      i = 0;
      word[static_cast<std::size_t>(j)] = alphabet.front();
      --j;
    }
    if (j < 0) return;
  }
}

std::uint64_t checked_cell_count(const DigitSet& c, std::int64_t k, const Budget& budget) {
  const BigInt count = level_cell_count(c, k);
  const std::uint64_t cap = std::min<std::uint64_t>(budget.max_cells, std::numeric_limits<std::uint32_t>::max());
  if (count > BigInt(cap)) {
    throw Error(ErrorCode::DepthBudgetExceeded, "level " + std::to_string(k) + " has " + count.str() +
                                                    " cells, budget is " + std::to_string(cap));
  }
  return count.convert_to<std::uint64_t>();
}

}  // namespace

SquareAddress root_square() { return SquareAddress{}; }

SquareAddress validate_square(const DigitSet& c, std::vector<std::uint32_t> xword, std::vector<std::uint32_t> yword) {
  const auto k = static_cast<std::int64_t>(xword.size());
  const std::int64_t ellk = ell(c.n(), c.m(), k);
  if (static_cast<std::int64_t>(yword.size()) != ellk) {
    throw Error(ErrorCode::LengthMismatch, "rank " + std::to_string(k) + " needs a y-word of length " +
                                               std::to_string(ellk) + ", got " + std::to_string(yword.size()));
  }
  const auto f = fiber_profile(c);
  for (std::int64_t j = 0; j < ellk; ++j) {
    const auto y = yword[static_cast<std::size_t>(j)];
    if (y >= c.m()) throw Error(ErrorCode::NotAdmissible, "y letter " + std::to_string(y) + " out of range");
    if (j < k) {
      const auto x = xword[static_cast<std::size_t>(j)];
      if (!c.contains(x, y)) {
        throw Error(ErrorCode::NotAdmissible, "(" + std::to_string(x) + "," + std::to_string(y) +
                                                  ") is not a digit at position " + std::to_string(j + 1));
      }
    } else if (f.a[y] == 0) {
      throw Error(ErrorCode::NotAdmissible, "row " + std::to_string(y) + " at position " + std::to_string(j + 1) +
                                                " is vacant (y=" + word_string(yword) + ")");
    }
  }
  SquareAddress q;
  q.k = k;
  q.ell = ellk;
  for (auto x : xword) q.gx = q.gx * c.n() + x;
  for (auto y : yword) q.gy = q.gy * c.m() + y;
  q.xword = std::move(xword);
  q.yword = std::move(yword);
  return q;
}

std::vector<SquareAddress> direct_offsprings(const DigitSet& c, const SquareAddress& q) {
  const auto f = fiber_profile(c);
  const std::int64_t ell_next = ell(c.n(), c.m(), q.k + 1);
  std::vector<SquareAddress> out;

  auto emit = [&](std::uint32_t u, const std::vector<std::uint32_t>& tail) {
    SquareAddress child;
    child.k = q.k + 1;
    child.ell = ell_next;
    child.xword = q.xword;
    child.xword.push_back(u);
    child.yword = q.yword;
    child.yword.insert(child.yword.end(), tail.begin(), tail.end());
    child.gx = q.gx * c.n() + u;
    child.gy = q.gy;
    for (auto y : tail) child.gy = child.gy * c.m() + y;
    out.push_back(std::move(child));
  };

  if (q.ell > q.k) {
    // y_{k+1} is already fixed by the parent's y-word
    const auto row = q.yword[static_cast<std::size_t>(q.k)];
    for (auto u : f.columns_by_row[row]) {
      for_each_word(f.rows, ell_next - q.ell, [&](const auto& z) { emit(u, z); });
    }
  } else {
    for (const auto& d : c.digits()) {
      for_each_word(f.rows, ell_next - q.k - 1, [&](const auto& z) {
        std::vector<std::uint32_t> tail{d.j};
        tail.insert(tail.end(), z.begin(), z.end());
        emit(d.i, tail);
      });
    }
  }
  return out;
}

std::uint64_t offspring_count(const DigitSet& c, const SquareAddress& q) {
  const auto f = fiber_profile(c);
  const std::int64_t ell_next = ell(c.n(), c.m(), q.k + 1);
  if (q.ell > q.k) {
    const auto row = q.yword[static_cast<std::size_t>(q.k)];
    return (BigInt(f.a[row]) * ipow(f.s, static_cast<std::uint64_t>(ell_next - q.ell))).convert_to<std::uint64_t>();
  }
  return (BigInt(c.size()) * ipow(f.s, static_cast<std::uint64_t>(ell_next - q.k - 1))).convert_to<std::uint64_t>();
}

Rect square_region(const DigitSet& c, const SquareAddress& q) {
  const BigInt cols = ipow(c.n(), static_cast<std::uint64_t>(q.k));
  const BigInt rows = ipow(c.m(), static_cast<std::uint64_t>(q.ell));
  return Rect{Rational(q.gx, cols), Rational(q.gy, rows), Rational(q.gx + 1, cols), Rational(q.gy + 1, rows)};
}

Rational square_measure(const DigitSet& c, const SquareAddress& q) {
  const auto f = fiber_profile(c);
  BigInt num = 1;
  for (std::int64_t j = q.k; j < q.ell; ++j) num *= f.a[q.yword[static_cast<std::size_t>(j)]];
  return Rational(num, ipow(c.size(), static_cast<std::uint64_t>(q.ell)));
}

Rational measure_of(const DigitSet& c, const SquareAddress& q) {
  const auto f = fiber_profile(c);
  if (!has_uniform_fibers(f.a)) throw Error(ErrorCode::NotUniform, "carpet does not have uniform horizontal fibers");
  const Rational th = theta(c.size(), f.s, q.k, q.ell);
  // (N/s)^(ell-k) basic rectangles of rank ell, each of mass N^-ell
  const BigInt per_row = BigInt(c.size() / f.s);
  const Rational via_rectangles(pow(per_row, static_cast<unsigned>(q.ell - q.k)),
                                ipow(c.size(), static_cast<std::uint64_t>(q.ell)));
  if (via_rectangles != th) {
    throw Error(ErrorCode::NotUniform, "basic-rectangle count disagrees with theta at rank " + std::to_string(q.k));
  }
  return th;
}

BigInt level_cell_count(const DigitSet& c, std::int64_t k) {
  const auto f = fiber_profile(c);
  const std::int64_t ellk = ell(c.n(), c.m(), k);
  return ipow(c.size(), static_cast<std::uint64_t>(k)) * ipow(f.s, static_cast<std::uint64_t>(ellk - k));
}

LevelOccupancy::LevelOccupancy(std::int64_t k, std::int64_t ell, BigInt columns, BigInt rows, std::vector<Cell> cells)
    : k_(k), ell_(ell), columns_(std::move(columns)), rows_(std::move(rows)), cells_(std::move(cells)) {}

std::optional<std::size_t> LevelOccupancy::find(const BigInt& gx, const BigInt& gy) const {
  const Cell probe{gx, gy};
  auto it = std::lower_bound(cells_.begin(), cells_.end(), probe, cell_less);
  if (it == cells_.end() || *it != probe) return std::nullopt;
  return static_cast<std::size_t>(it - cells_.begin());
}

LevelOccupancy enumerate_level(const DigitSet& c, std::int64_t k, const Budget& budget) {
  const std::uint64_t total = checked_cell_count(c, k, budget);
  const auto f = fiber_profile(c);
  const std::int64_t ellk = ell(c.n(), c.m(), k);
  const auto L = static_cast<std::size_t>(ellk);
  const auto K = static_cast<std::size_t>(k);
  const std::uint64_t s = f.s;

  // every y-word is a word over the non-vacant rows; there are s^ell of them, at most `total`
  std::uint64_t ywords = 1;
  for (std::size_t j = 0; j < L; ++j) ywords *= s;

  auto decode = [&](std::uint64_t t, std::vector<std::uint32_t>& yrow) {
    for (std::size_t j = L; j-- > 0;) {
      yrow[j] = f.rows[t % s];
      t /= s;
    }
  };

  std::vector<std::uint64_t> offsets(ywords + 1, 0);
#pragma omp parallel
  {
    std::vector<std::uint32_t> yrow(L);
#pragma omp for schedule(static)
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(ywords); ++t) {
      decode(static_cast<std::uint64_t>(t), yrow);
      std::uint64_t cnt = 1;
      for (std::size_t j = 0; j < K; ++j) cnt *= f.a[yrow[j]];
      offsets[static_cast<std::size_t>(t) + 1] = cnt;
    }
  }
  for (std::size_t t = 0; t < ywords; ++t) offsets[t + 1] += offsets[t];
  if (offsets.back() != total) {
    throw Error(ErrorCode::NotAdmissible, "cell count mismatch at level " + std::to_string(k));
  }

  std::vector<BigInt> xpow(K);
  for (std::size_t j = 0; j < K; ++j) xpow[j] = ipow(c.n(), K - 1 - j);

  std::vector<Cell> cells(total);
#pragma omp parallel
  {
    std::vector<std::uint32_t> yrow(L);
    std::vector<std::size_t> idx(K);
#pragma omp for schedule(dynamic, 64)
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(ywords); ++t) {
      const auto ti = static_cast<std::size_t>(t);
      if (offsets[ti] == offsets[ti + 1]) continue;
      decode(ti, yrow);
      BigInt gy = 0;
      for (auto y : yrow) gy = gy * c.m() + y;
      BigInt gx = 0;
      for (std::size_t j = 0; j < K; ++j) {
        idx[j] = 0;
        gx += xpow[j] * f.columns_by_row[yrow[j]].front();
      }
      for (std::uint64_t out = offsets[ti]; out < offsets[ti + 1]; ++out) {
        cells[out] = Cell{gx, gy};
        // odometer step over x_j in D_{y_j}
        for (std::size_t j = K; j-- > 0;) {
          const auto& cols = f.columns_by_row[yrow[j]];
          if (idx[j] + 1 < cols.size()) {
            gx += xpow[j] * (cols[idx[j] + 1] - cols[idx[j]]);
            ++idx[j];
            break;
          }
          gx -= xpow[j] * (cols[idx[j]] - cols.front());
          idx[j] = 0;
        }
      }
    }
  }
  return LevelOccupancy(k, ellk, ipow(c.n(), K), ipow(c.m(), L), std::move(cells));
}

SquareAddress square_at(const DigitSet& c, std::int64_t k, std::int64_t ellk, const Cell& cell) {
  SquareAddress q;
  q.k = k;
  q.ell = ellk;
  q.gx = cell.gx;
  q.gy = cell.gy;
  q.xword.assign(static_cast<std::size_t>(k), 0);
  q.yword.assign(static_cast<std::size_t>(ellk), 0);
  BigInt x = cell.gx;
  for (std::size_t j = q.xword.size(); j-- > 0;) {
    q.xword[j] = static_cast<std::uint32_t>(x % c.n());
    x /= c.n();
  }
  BigInt y = cell.gy;
  for (std::size_t j = q.yword.size(); j-- > 0;) {
    q.yword[j] = static_cast<std::uint32_t>(y % c.m());
    y /= c.m();
  }
  return q;
}

Rect cell_region(const LevelOccupancy& level, const Cell& cell) {
  return Rect{Rational(cell.gx, level.columns()), Rational(cell.gy, level.rows()),
              Rational(cell.gx + 1, level.columns()), Rational(cell.gy + 1, level.rows())};
}

namespace reference {

LevelOccupancy enumerate_level(const DigitSet& c, std::int64_t k, const Budget& budget) {
  checked_cell_count(c, k, budget);
  std::vector<SquareAddress> frontier{root_square()};
  for (std::int64_t r = 0; r < k; ++r) {
    std::vector<SquareAddress> next;
    for (const auto& q : frontier) {
      auto kids = direct_offsprings(c, q);
      std::move(kids.begin(), kids.end(), std::back_inserter(next));
    }
    frontier = std::move(next);
  }
  std::vector<Cell> cells;
  cells.reserve(frontier.size());
  for (auto& q : frontier) cells.push_back(Cell{std::move(q.gx), std::move(q.gy)});
  std::sort(cells.begin(), cells.end(), cell_less);
  const std::int64_t ellk = ell(c.n(), c.m(), k);
  return LevelOccupancy(k, ellk, ipow(c.n(), static_cast<std::uint64_t>(k)),
                        ipow(c.m(), static_cast<std::uint64_t>(ellk)), std::move(cells));
}

}  // namespace reference

}  // namespace carpet
