#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "carpet/numeric.hpp"

namespace carpet {

/// Rooted tree stored level by level. Level 0 is the root; level k >= 1 is given by the parent
/// index (into level k-1) of each of its vertices.
class LeveledTree {
 public:
  LeveledTree();
  explicit LeveledTree(std::vector<std::vector<std::uint32_t>> parents);

  std::int64_t depth() const noexcept { return static_cast<std::int64_t>(parents_.size()) - 1; }
  std::size_t level_size(std::int64_t k) const;
  std::uint32_t parent(std::int64_t k, std::size_t v) const { return parents_[static_cast<std::size_t>(k)][v]; }
  std::span<const std::uint32_t> children(std::int64_t k, std::size_t v) const;
  std::uint32_t ancestor(std::int64_t from, std::size_t v, std::int64_t to) const;

  /// Vertices below the deepest level without a child.
  std::vector<std::string> validate() const;

  const std::vector<std::vector<std::uint32_t>>& parent_arrays() const noexcept { return parents_; }

 private:
  std::vector<std::vector<std::uint32_t>> parents_;  // parents_[0] is empty
  std::vector<std::vector<std::uint64_t>> child_offsets_;
  std::vector<std::vector<std::uint32_t>> child_ids_;
};

/// Level k of the result is level pk of t, joined by p-step descent. Throws DepthNotMultiple.
LeveledTree p_subtree(const LeveledTree& t, std::int64_t p);

/// Path below the root: symbols[j] is the vertex chosen at level j+1.
struct BoundaryWord {
  std::vector<std::uint64_t> symbols;
};

struct BoundaryDistance {
  std::int64_t exponent = 0;  // common prefix length q
  Rational value;             // xi^q
  double approx = 0.0;
};

/// xi^q with q the common prefix length. Throws IndistinguishableAtDepth when one word is a
/// prefix of the other.
BoundaryDistance boundary_distance(const BoundaryWord& u, const BoundaryWord& v, const Rational& xi);

/// The path from the root to vertex v at level k, as a boundary word.
BoundaryWord path_to(const LeveledTree& t, std::int64_t k, std::size_t v);

/// Tree where every vertex at level k-1 has n_k children; vertices are words i_1...i_k with i_j < n_j.
class HomogeneousTree {
 public:
  explicit HomogeneousTree(std::vector<std::uint64_t> branch_counts);

  std::int64_t depth() const noexcept { return static_cast<std::int64_t>(counts_.size()); }
  const std::vector<std::uint64_t>& branch_counts() const noexcept { return counts_; }
  BigInt level_size(std::int64_t k) const;

  /// Uniform mass of a level-k cylinder, (n_1 ... n_k)^-1.
  Rational cylinder_mass(std::int64_t k) const;

  /// Lexicographic rank of a word and back.
  BigInt rank(const std::vector<std::uint64_t>& word) const;
  std::vector<std::uint64_t> unrank(BigInt rank, std::int64_t k) const;

  /// All level-k words, lexicographically. Throws DepthBudgetExceeded past max_words.
  std::vector<std::vector<std::uint64_t>> labels(std::int64_t k, std::uint64_t max_words = 10'000'000) const;

  LeveledTree as_leveled_tree(std::uint64_t max_vertices = 10'000'000) const;

 private:
  std::vector<std::uint64_t> counts_;
};

/// Branch counts of the p-subtree: products of p consecutive counts. Throws DepthNotMultiple.
HomogeneousTree p_subtree(const HomogeneousTree& h, std::int64_t p);

std::vector<std::vector<std::uint64_t>> homogeneous_labels(const HomogeneousTree& h, std::int64_t k);

/// A set of same-level vertices.
struct Bundle {
  std::int64_t level = 0;
  std::vector<std::uint32_t> members;
};

/// Non-empty and all members share one parent.
bool is_bundle(const LeveledTree& t, const Bundle& b);

/// Mass of the union of a bundle's cylinders in a homogeneous tree.
Rational bundle_mass(const HomogeneousTree& h, const Bundle& b);

}  // namespace carpet
