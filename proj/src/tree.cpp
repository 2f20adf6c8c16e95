#include "carpet/tree.hpp"

#include "carpet/error.hpp"

#include <algorithm>
#include <numeric>

namespace carpet {

LeveledTree::LeveledTree() : LeveledTree(std::vector<std::vector<std::uint32_t>>{{}}) {}

LeveledTree::LeveledTree(std::vector<std::vector<std::uint32_t>> parents) : parents_(std::move(parents)) {
  if (parents_.empty()) parents_.emplace_back();
  parents_[0].clear();
  child_offsets_.resize(parents_.size());
  child_ids_.resize(parents_.size());
  for (std::size_t k = 0; k + 1 < parents_.size(); ++k) {
    const std::size_t here = level_size(static_cast<std::int64_t>(k));
    auto& off = child_offsets_[k];
    off.assign(here + 1, 0);
    for (auto p : parents_[k + 1]) {
      if (p >= here) throw Error(ErrorCode::MalformedInput, "parent index out of range at level " + std::to_string(k + 1));
      ++off[p + 1];
    }
    std::partial_sum(off.begin(), off.end(), off.begin());
    auto& ids = child_ids_[k];
    ids.resize(parents_[k + 1].size());
    std::vector<std::uint64_t> fill(off.begin(), off.end() - 1);
    for (std::uint32_t i = 0; i < parents_[k + 1].size(); ++i) ids[fill[parents_[k + 1][i]]++] = i;
  }
}

std::size_t LeveledTree::level_size(std::int64_t k) const {
  return k == 0 ? 1 : parents_.at(static_cast<std::size_t>(k)).size();
}

std::span<const std::uint32_t> LeveledTree::children(std::int64_t k, std::size_t v) const {
  const auto kk = static_cast<std::size_t>(k);
  if (kk + 1 >= parents_.size()) return {};
  const auto& off = child_offsets_[kk];
  return {child_ids_[kk].data() + off[v], child_ids_[kk].data() + off[v + 1]};
}

std::uint32_t LeveledTree::ancestor(std::int64_t from, std::size_t v, std::int64_t to) const {
  auto u = static_cast<std::uint32_t>(v);
  for (std::int64_t k = from; k > to; --k) u = parent(k, u);
  return u;
}

std::vector<std::string> LeveledTree::validate() const {
  std::vector<std::string> problems;
  for (std::int64_t k = 0; k < depth(); ++k) {
    for (std::size_t v = 0; v < level_size(k); ++v) {
      if (children(k, v).empty()) {
        problems.push_back("vertex " + std::to_string(v) + " at level " + std::to_string(k) + " has no child");
      }
    }
  }
  return problems;
}

LeveledTree p_subtree(const LeveledTree& t, std::int64_t p) {
  if (p < 1 || t.depth() % p != 0) {
    throw Error(ErrorCode::DepthNotMultiple,
                "depth " + std::to_string(t.depth()) + " is not a multiple of p=" + std::to_string(p));
  }
  std::vector<std::vector<std::uint32_t>> parents(static_cast<std::size_t>(t.depth() / p) + 1);
  for (std::int64_t j = 1; j <= t.depth() / p; ++j) {
    auto& par = parents[static_cast<std::size_t>(j)];
    par.resize(t.level_size(j * p));
    for (std::size_t v = 0; v < par.size(); ++v) par[v] = t.ancestor(j * p, v, (j - 1) * p);
  }
  return LeveledTree(std::move(parents));
}

BoundaryDistance boundary_distance(const BoundaryWord& u, const BoundaryWord& v, const Rational& xi) {
  const auto& a = u.symbols;
  const auto& b = v.symbols;
  const auto diverge = std::mismatch(a.begin(), a.end(), b.begin(), b.end());
  if (diverge.first == a.end() || diverge.second == b.end()) {
    throw Error(ErrorCode::IndistinguishableAtDepth,
                "paths agree for all " + std::to_string(std::min(a.size(), b.size())) + " recorded levels");
  }
  BoundaryDistance d;
  d.exponent = diverge.first - a.begin();
  d.value = pow(numerator(xi), static_cast<unsigned>(d.exponent));
  d.value /= Rational(pow(denominator(xi), static_cast<unsigned>(d.exponent)));
  d.approx = to_double(d.value);
  return d;
}

BoundaryWord path_to(const LeveledTree& t, std::int64_t k, std::size_t v) {
  BoundaryWord w;
  w.symbols.resize(static_cast<std::size_t>(k));
  auto u = static_cast<std::uint32_t>(v);
  for (std::int64_t j = k; j >= 1; --j) {
    w.symbols[static_cast<std::size_t>(j - 1)] = u;
    u = t.parent(j, u);
  }
  return w;
}

HomogeneousTree::HomogeneousTree(std::vector<std::uint64_t> branch_counts) : counts_(std::move(branch_counts)) {
  for (auto n : counts_) {
    if (n == 0) throw Error(ErrorCode::MalformedInput, "branch counts must be positive");
  }
}

BigInt HomogeneousTree::level_size(std::int64_t k) const {
  BigInt out = 1;
  for (std::int64_t j = 0; j < k; ++j) out *= counts_.at(static_cast<std::size_t>(j));
  return out;
}

Rational HomogeneousTree::cylinder_mass(std::int64_t k) const { return Rational(BigInt(1), level_size(k)); }

BigInt HomogeneousTree::rank(const std::vector<std::uint64_t>& word) const {
  BigInt r = 0;
  for (std::size_t j = 0; j < word.size(); ++j) {
    if (word[j] >= counts_.at(j)) throw Error(ErrorCode::NotAdmissible, "letter " + std::to_string(word[j]) + " too large");
    r = r * counts_[j] + word[j];
  }
  return r;
}

std::vector<std::uint64_t> HomogeneousTree::unrank(BigInt r, std::int64_t k) const {
  std::vector<std::uint64_t> word(static_cast<std::size_t>(k));
  for (std::int64_t j = k; j-- > 0;) {
    const auto n = counts_.at(static_cast<std::size_t>(j));
    word[static_cast<std::size_t>(j)] = static_cast<std::uint64_t>(r % n);
    r /= n;
  }
  return word;
}

std::vector<std::vector<std::uint64_t>> HomogeneousTree::labels(std::int64_t k, std::uint64_t max_words) const {
  const BigInt total = level_size(k);
  if (total > BigInt(max_words)) {
    throw Error(ErrorCode::DepthBudgetExceeded, "level " + std::to_string(k) + " has " + total.str() + " words");
  }
  std::vector<std::vector<std::uint64_t>> out;
  out.reserve(total.convert_to<std::size_t>());
  std::vector<std::uint64_t> word(static_cast<std::size_t>(k), 0);
  while (true) {
    out.push_back(word);
    std::int64_t j = k - 1;
    while (j >= 0 && ++word[static_cast<std::size_t>(j)] == counts_[static_cast<std::size_t>(j)]) {
      word[static_cast<std::size_t>(j)] = 0;
      --j;
    }
    if (j < 0) return out;
  }
}

LeveledTree HomogeneousTree::as_leveled_tree(std::uint64_t max_vertices) const {
  std::vector<std::vector<std::uint32_t>> parents(counts_.size() + 1);
  std::uint64_t width = 1;
  std::uint64_t total = 1;
  for (std::size_t k = 1; k <= counts_.size(); ++k) {
    width *= counts_[k - 1];
    total += width;
    if (total > max_vertices) throw Error(ErrorCode::DepthBudgetExceeded, "tree has more than " + std::to_string(max_vertices) + " vertices");
    auto& par = parents[k];
    par.resize(width);
    for (std::uint64_t v = 0; v < width; ++v) par[v] = static_cast<std::uint32_t>(v / counts_[k - 1]);
  }
  return LeveledTree(std::move(parents));
}

HomogeneousTree p_subtree(const HomogeneousTree& h, std::int64_t p) {
  if (p < 1 || h.depth() % p != 0) {
    throw Error(ErrorCode::DepthNotMultiple,
                "depth " + std::to_string(h.depth()) + " is not a multiple of p=" + std::to_string(p));
  }
  std::vector<std::uint64_t> out;
  for (std::int64_t j = 0; j < h.depth(); j += p) {
    BigInt block = 1;
    for (std::int64_t i = j; i < j + p; ++i) block *= h.branch_counts()[static_cast<std::size_t>(i)];
    if (block > BigInt(UINT64_MAX)) throw Error(ErrorCode::DepthBudgetExceeded, "block product overflows 64 bits");
    out.push_back(block.convert_to<std::uint64_t>());
  }
  return HomogeneousTree(std::move(out));
}

std::vector<std::vector<std::uint64_t>> homogeneous_labels(const HomogeneousTree& h, std::int64_t k) {
  return h.labels(k);
}

bool is_bundle(const LeveledTree& t, const Bundle& b) {
  if (b.members.empty()) return false;
  if (b.level == 0) return b.members.size() == 1 && b.members.front() == 0;
  std::vector<std::uint32_t> sorted = b.members;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  const auto p = t.parent(b.level, sorted.front());
  return std::all_of(sorted.begin(), sorted.end(), [&](auto v) { return t.parent(b.level, v) == p; });
}

Rational bundle_mass(const HomogeneousTree& h, const Bundle& b) {
  return h.cylinder_mass(b.level) * Rational(static_cast<std::uint64_t>(b.members.size()));
}

}  // namespace carpet
