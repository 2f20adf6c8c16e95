#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "carpet/carpet.hpp"
#include "carpet/components.hpp"
#include "carpet/numeric.hpp"

namespace carpet {

enum class Verdict { Equivalent, NotEquivalent, OutsideClass };
enum class VerdictReason { RationalDimension, IrrationalPermutation, ClassMembership };

std::string_view to_string(Verdict v);
std::string_view to_string(VerdictReason r);

struct EquivalenceVerdict {
  Verdict verdict = Verdict::OutsideClass;
  VerdictReason reason = VerdictReason::ClassMembership;
  std::string detail;
  std::optional<BigInt> n_star_first;   // N^p s^(q-p), rational sigma only
  std::optional<BigInt> n_star_second;
  std::vector<std::uint64_t> profile_first;   // sorted distribution sequences, irrational sigma only
  std::vector<std::uint64_t> profile_second;
};

/// N* = N^p s^(q-p) for sigma = p/q; empty when sigma is irrational.
std::optional<BigInt> n_star(const DigitSet& c);

EquivalenceVerdict decide_equivalence(const DigitSet& first, const DigitSet& second);

/// Smallest p >= 2 with N^(p-1) >= L0^3 and ell(p-1) > p-1. Throws NoSuchP past 10^4.
std::int64_t choose_p(const DigitSet& c, std::uint64_t L0);

struct CoinSplit {
  std::int64_t rank = 0;
  std::uint32_t component = 0;
  std::vector<std::uint32_t> selected;  // ids of direct-offspring components at rank+1
  Rational selected_measure;
};

/// Direct-offspring components of total measure theta_k, by exact subset sum over member counts.
/// Throws NotInHypothesis when ell(k) = k and InfeasibleSplit when no subset fits.
CoinSplit coin_split(const ComponentTree& tree, std::int64_t k, std::uint32_t component);

/// Split `values` into `bins` groups each summing to `target`: first-fit decreasing, then an exact
/// search over the value multiset. Returns the group of every item, or nothing when impossible.
std::optional<std::vector<std::uint32_t>> equal_bins(const std::vector<std::uint64_t>& values, std::uint64_t bins,
                                                     std::uint64_t target);

struct BundlePartition {
  std::int64_t level = 0;  // tree level pk of U
  std::uint32_t component = 0;
  std::uint64_t g = 0;     // members of U
  std::vector<std::vector<std::uint32_t>> groups;  // ids at level p(k+1), ascending within a group
  std::vector<Rational> group_measures;
};

/// Partition the p-step offspring components of U into g groups of measure theta_pk each.
/// Throws InfeasiblePartition.
BundlePartition partition_offsprings(const ComponentTree& tree, std::int64_t level, std::uint32_t component,
                                     std::int64_t p);

}  // namespace carpet
