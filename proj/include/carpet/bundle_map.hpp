#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "carpet/components.hpp"
#include "carpet/numeric.hpp"
#include "carpet/tree.hpp"

namespace carpet {

/// Image of one component: ranks of words in the level-j layer of the homogeneous p-subtree.
struct BundleEntry {
  std::uint32_t component = 0;
  std::vector<std::uint64_t> words;  // ascending
  Rational mu;                       // measure of the component
};

/// Delta from the p-subtree of the component tree to the p-subtree of the homogeneous tree.
/// levels[j] covers the components at tree level p*j, indexed by component id.
struct BundleMap {
  std::int64_t p = 0;
  std::vector<std::uint64_t> branch_counts;  // n_1 .. n_{pK}
  std::vector<std::uint64_t> block;          // block[j] = n_{pj+1} ... n_{p(j+1)}
  std::uint64_t L0 = 0;
  std::shared_ptr<const ComponentTree> tree;
  std::vector<std::vector<BundleEntry>> levels;

  std::int64_t p_levels() const noexcept { return static_cast<std::int64_t>(levels.size()) - 1; }
  /// Uniform mass of one level-j word.
  Rational word_mass(std::int64_t j) const;
  HomogeneousTree homogeneous() const { return HomogeneousTree(branch_counts); }
};

struct BundleMapOptions {
  std::optional<std::int64_t> p;    // overrides the choice from L0
  std::optional<std::uint64_t> L0;  // overrides the estimate
  Budget budget;
};

/// Builds Delta on levels 0, p, ..., p*K. Throws OutsideClass, InfeasiblePartition, L0Exceeded,
/// DepthBudgetExceeded.
BundleMap build_bundle_map(const DigitSet& c, std::int64_t p_levels, const BundleMapOptions& options = {});

struct BundleCheck {
  bool passed = true;
  std::vector<std::string> failures;
};

struct BundleMapReport {
  BundleCheck siblings;
  BundleCheck partition;
  BundleCheck offspring;
  BundleCheck measure;
  bool all_passed() const noexcept { return siblings.passed && partition.passed && offspring.passed && measure.passed; }
};

BundleMapReport verify_bundle_map(const BundleMap& bm);

/// Omega-word (letters i_j < n_j) of the point with the given digit word, read at p-subtree level j.
/// The word needs at least p*j letters, all digits; throws NotAdmissible otherwise.
std::vector<std::uint64_t> map_address(const BundleMap& bm, const std::vector<Digit>& word, std::int64_t j);
inline std::vector<std::uint64_t> map_address(const BundleMap& bm, const std::vector<Digit>& word) {
  return map_address(bm, word, bm.p_levels());
}

struct DistortionLevel {
  std::int64_t depth = 0;
  std::uint64_t used = 0;  // pairs left after dropping identical images
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double spread() const noexcept { return max_ratio / min_ratio; }
};

struct DistortionReport {
  std::int64_t depth = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  std::vector<DistortionLevel> series;  // one entry per p-subtree level 1..K
};

/// Ratios d_Omega(f x, f y) / d_E(x, y) over seeded random pairs of digit words, at every p-level.
/// Throws DegenerateSample when every pair at some level has identical images.
DistortionReport estimate_distortion(const BundleMap& bm, std::uint64_t samples, std::uint64_t seed);

DistortionLevel distortion_at(const BundleMap& bm, std::int64_t j, std::uint64_t samples, std::uint64_t seed);

namespace reference {

/// Same sampling, one pair after another.
DistortionLevel distortion_at(const BundleMap& bm, std::int64_t j, std::uint64_t samples, std::uint64_t seed);

}  // namespace reference

}  // namespace carpet
