#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "carpet/carpet.hpp"
#include "carpet/geometry.hpp"
#include "carpet/numeric.hpp"

namespace carpet {

/// A connected component of E_k with its member squares and exact measure.
struct Component {
  std::int64_t rank = 0;
  std::vector<SquareAddress> members;
  std::uint64_t count = 0;
  Rational measure;
};

/// Components of one level, stored compactly: member cell indices in CSR form over the level's
/// sorted cells. Component ids follow the order of their smallest (gy, gx) member.
class ComponentLevel {
 public:
  ComponentLevel(DigitSet carpet, LevelOccupancy occupancy, std::vector<std::uint32_t> comp_of_cell);

  std::int64_t k() const noexcept { return occupancy_.k(); }
  const LevelOccupancy& occupancy() const noexcept { return occupancy_; }
  const DigitSet& carpet() const noexcept { return carpet_; }

  std::size_t size() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::uint64_t member_count(std::size_t id) const noexcept { return offsets_[id + 1] - offsets_[id]; }
  std::span<const std::uint32_t> members(std::size_t id) const noexcept {
    return {members_.data() + offsets_[id], members_.data() + offsets_[id + 1]};
  }
  std::uint32_t component_of_cell(std::size_t cell) const noexcept { return comp_of_cell_[cell]; }
  std::uint64_t max_member_count() const noexcept;

  /// count * theta_k for uniform fibers, else the sum of the members' square measures.
  Rational measure(std::size_t id) const;
  Component component(std::size_t id) const;

 private:
  DigitSet carpet_;
  LevelOccupancy occupancy_;
  std::vector<std::uint32_t> comp_of_cell_;
  std::vector<std::uint64_t> offsets_;
  std::vector<std::uint32_t> members_;
  bool uniform_ = true;
  Rational theta_ = 1;
};

/// 8-neighbour components of the rank-k cover. Neighbours come from a sweep over consecutive rows.
ComponentLevel components_at_level(const DigitSet& c, std::int64_t k, const Budget& budget = {});

namespace reference {

/// Quadratic reference: tests every pair of cells for contact.
ComponentLevel components_at_level(const DigitSet& c, std::int64_t k, const Budget& budget = {});

}  // namespace reference

/// Rooted tree of components at levels 0..K, the root being the unit square.
class ComponentTree {
 public:
  ComponentTree(DigitSet carpet, std::vector<ComponentLevel> levels);

  const DigitSet& carpet() const noexcept { return carpet_; }
  std::int64_t depth() const noexcept { return static_cast<std::int64_t>(levels_.size()) - 1; }
  const ComponentLevel& level(std::int64_t k) const { return levels_.at(static_cast<std::size_t>(k)); }

  /// Parent id at level k-1 of component `id` at level k >= 1.
  std::uint32_t parent(std::int64_t k, std::size_t id) const { return parents_[static_cast<std::size_t>(k)][id]; }
  std::span<const std::uint32_t> children(std::int64_t k, std::size_t id) const;

  /// Ancestor at level `to` of component `id` at level `from` (to <= from).
  std::uint32_t ancestor(std::int64_t from, std::size_t id, std::int64_t to) const;

  /// Structure-tree axioms checked directly on the cells; empty when all hold.
  std::vector<std::string> verify_axioms() const;

  /// Parent arrays per level, index 0 empty, for building generic trees.
  const std::vector<std::vector<std::uint32_t>>& parent_arrays() const noexcept { return parents_; }

 private:
  DigitSet carpet_;
  std::vector<ComponentLevel> levels_;
  std::vector<std::vector<std::uint32_t>> parents_;
  std::vector<std::vector<std::uint64_t>> child_offsets_;
  std::vector<std::vector<std::uint32_t>> child_ids_;
};

ComponentTree build_component_tree(const DigitSet& c, std::int64_t K, const Budget& budget = {});

struct L0Estimate {
  std::vector<std::uint64_t> per_level;  // entry k-1 holds the largest member count at level k
  std::uint64_t overall = 0;
  std::int64_t depth = 0;
};

/// Largest member count over levels 1..K. Throws NotInHypothesis unless the carpet has vacant rows
/// and passes the row-length test for total disconnectedness.
L0Estimate estimate_L0(const DigitSet& c, std::int64_t K, const Budget& budget = {});

/// Deepest level <= K whose cell count fits the budget.
std::int64_t deepest_level_within(const DigitSet& c, std::int64_t K, const Budget& budget);

}  // namespace carpet
