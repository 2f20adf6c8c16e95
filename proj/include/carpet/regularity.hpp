#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "carpet/components.hpp"
#include "carpet/geometry.hpp"
#include "carpet/numeric.hpp"
#include "carpet/tree.hpp"

namespace carpet {

/// Largest vertex diameter and smallest gap between distinct vertices of one level, both squared.
struct LevelExtremes {
  std::int64_t level = 0;
  std::uint64_t vertex_count = 0;
  Rational diam_sq;
  std::optional<Rational> gap_sq;  // empty when the level has a single vertex
};

struct RegularityLevel {
  std::int64_t level = 0;
  Rational diam_ratio_sq;                 // diam^2 / xi^(2k)
  std::optional<Rational> gap_ratio_sq;   // gap^2 / xi^(2k)
  double diam_ratio = 0.0;
  std::optional<double> gap_ratio;
};

/// Depth-K regularity constants. Level 0 is reported but left out of the constants.
struct RegularityReport {
  Rational xi;
  std::vector<RegularityLevel> levels;
  double alpha_diam = 0.0;     // max diam/xi^k over levels >= 1
  double alpha_gap = 0.0;      // min gap/xi^k over levels >= 1; +inf when no level has two vertices
  double alpha0 = 0.0;         // max(alpha_diam, 1/alpha_gap)
  std::vector<double> running_alpha_diam;      // entry j: constant after levels 1..j+1
  std::vector<double> running_inv_alpha_gap;
};

/// Throws ZeroGap when two vertices of a level touch.
RegularityReport check_regularity(const std::vector<LevelExtremes>& levels, const Rational& xi);

/// Tree whose vertices carry unions of closed rectangles.
struct RegionTree {
  LeveledTree tree;
  std::vector<std::vector<std::vector<Rect>>> regions;  // [level][vertex] -> rectangles
};

/// Exhaustive over rectangle pairs.
std::vector<LevelExtremes> region_tree_extremes(const RegionTree& t);

RegionTree region_tree(const ComponentTree& t);

/// Sweep over occupied rows with a search window that shrinks with the best gap found so far.
/// Needs both grid sides below 2^62; throws DepthBudgetExceeded otherwise.
LevelExtremes component_level_extremes(const ComponentLevel& level);

std::vector<LevelExtremes> component_tree_extremes(const ComponentTree& t);

namespace reference {

/// All pairs of cells.
LevelExtremes component_level_extremes(const ComponentLevel& level);

}  // namespace reference

}  // namespace carpet
