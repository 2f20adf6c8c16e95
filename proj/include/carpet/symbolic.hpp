#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "carpet/carpet.hpp"
#include "carpet/geometry.hpp"
#include "carpet/numeric.hpp"
#include "carpet/regularity.hpp"
#include "carpet/tree.hpp"

namespace carpet {

/// Depth-K prefix of a point of D^infinity.
struct SymbolicPoint {
  std::vector<Digit> letters;
};

struct LambdaDistance {
  std::int64_t x_prefix = 0;  // common prefix length of the x-words
  std::int64_t y_prefix = 0;
  Rational value;             // max(n^-a, m^-b), dropping a coordinate that agrees to full depth
  bool x_dominates = false;
  double approx = 0.0;
};

/// Throws IndistinguishableAtDepth when both coordinates agree to the full depth.
LambdaDistance lambda_distance(std::uint32_t n, std::uint32_t m, const SymbolicPoint& u, const SymbolicPoint& v);

/// Cylinder [x, y] of rank k with |y| = ell(k).
struct SymbolicSquare {
  std::int64_t k = 0;
  std::vector<std::uint32_t> xword;
  std::vector<std::uint32_t> yword;
  auto operator<=>(const SymbolicSquare&) const = default;
};

/// "x=020|y=0010"; letters above 9 are comma-separated.
std::string to_string(const SymbolicSquare& sq);

/// Rank-(k+1) cylinders inside sq, lexicographic in (x, y). Throws NotUniform.
std::vector<SymbolicSquare> symbolic_offsprings(const DigitSet& c, const SymbolicSquare& sq);

struct SymbolicTree {
  LeveledTree tree;
  std::vector<std::vector<SymbolicSquare>> squares;  // [level][vertex]
};

/// Levels 0..K of cylinders. Throws NotUniform, DepthBudgetExceeded.
SymbolicTree symbolic_structure_tree(const DigitSet& c, std::int64_t K, const Budget& budget = {});

/// Largest lambda-diameter of a level's cylinders and the smallest separation between two of them.
/// The separation lets both cylinders continue a shared coordinate forever, so it bounds the true
/// distance from below.
std::vector<LevelExtremes> symbolic_extremes(const DigitSet& c, const SymbolicTree& t);

}  // namespace carpet
