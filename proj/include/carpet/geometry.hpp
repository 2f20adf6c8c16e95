#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "carpet/carpet.hpp"
#include "carpet/numeric.hpp"

namespace carpet {

/// Axis-aligned closed rectangle with exact corners.
struct Rect {
  Rational x0, y0, x1, y1;
};

/// Grid cell of a level: column gx in [0, n^k), row gy in [0, m^ell(k)).
struct Cell {
  BigInt gx;
  BigInt gy;
  friend bool operator==(const Cell&, const Cell&) = default;
};

/// Row-major order: by gy, then gx. Every level keeps its cells in this order.
inline bool cell_less(const Cell& a, const Cell& b) {
  if (a.gy != b.gy) return a.gy < b.gy;
  return a.gx < b.gx;
}

/// An approximate square Q(x, y) of rank k.
struct SquareAddress {
  std::int64_t k = 0;
  std::int64_t ell = 0;
  std::vector<std::uint32_t> xword;  // length k, letters < n
  std::vector<std::uint32_t> yword;  // length ell(k), letters < m
  BigInt gx;
  BigInt gy;
};

/// The unit square, rank 0.
SquareAddress root_square();

/// Throws LengthMismatch when |yword| != ell(|xword|), NotAdmissible when a letter pair is not a digit
/// or a trailing row is vacant.
SquareAddress validate_square(const DigitSet& c, std::vector<std::uint32_t> xword, std::vector<std::uint32_t> yword);

/// Rank-(k+1) squares inside q.
std::vector<SquareAddress> direct_offsprings(const DigitSet& c, const SquareAddress& q);

/// Closed-form offspring count: a_{y_{k+1}} s^(ell(k+1)-ell(k)) when ell(k) > k, else N s^(ell(k+1)-k-1).
std::uint64_t offspring_count(const DigitSet& c, const SquareAddress& q);

Rect square_region(const DigitSet& c, const SquareAddress& q);

/// Uniform Bernoulli measure of an approximate square for any carpet:
/// N^-k times the product of a_{y_j}/N over the trailing rows j > k.
Rational square_measure(const DigitSet& c, const SquareAddress& q);

/// theta_k for uniform-fiber carpets; throws NotUniform otherwise.
Rational measure_of(const DigitSet& c, const SquareAddress& q);

struct Budget {
  std::uint64_t max_cells = 10'000'000;
};

/// N^k s^(ell(k)-k): number of admissible word pairs of rank k.
BigInt level_cell_count(const DigitSet& c, std::int64_t k);

/// Union of all rank-k approximate squares, as grid cells sorted by (gy, gx).
class LevelOccupancy {
 public:
  LevelOccupancy() = default;
  LevelOccupancy(std::int64_t k, std::int64_t ell, BigInt columns, BigInt rows, std::vector<Cell> cells);

  std::int64_t k() const noexcept { return k_; }
  std::int64_t ell() const noexcept { return ell_; }
  const BigInt& columns() const noexcept { return columns_; }  // n^k
  const BigInt& rows() const noexcept { return rows_; }        // m^ell
  const std::vector<Cell>& cells() const noexcept { return cells_; }
  std::size_t size() const noexcept { return cells_.size(); }

  std::optional<std::size_t> find(const BigInt& gx, const BigInt& gy) const;

 private:
  std::int64_t k_ = 0;
  std::int64_t ell_ = 0;
  BigInt columns_ = 1;
  BigInt rows_ = 1;
  std::vector<Cell> cells_;
};

/// Parallel enumeration: rows of y-words in lexicographic order, each filled by an x-word odometer.
/// Throws DepthBudgetExceeded when the cell count exceeds the budget.
LevelOccupancy enumerate_level(const DigitSet& c, std::int64_t k, const Budget& budget = {});

/// Rebuild the words of the square sitting at a cell of rank k.
SquareAddress square_at(const DigitSet& c, std::int64_t k, std::int64_t ell, const Cell& cell);

Rect cell_region(const LevelOccupancy& level, const Cell& cell);

namespace reference {

/// Serial reference: expands direct offsprings from the root k times, then sorts.
LevelOccupancy enumerate_level(const DigitSet& c, std::int64_t k, const Budget& budget = {});

}  // namespace reference

}  // namespace carpet
