#include "carpet/components.hpp"

#include "carpet/error.hpp"
#include "carpet/sigma.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace carpet {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0u); }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

  std::vector<std::uint32_t> roots() {
    std::vector<std::uint32_t> out(parent_.size());
    for (std::uint32_t i = 0; i < out.size(); ++i) out[i] = find(i);
    return out;
  }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
};

bool touching(const Cell& a, const Cell& b) {
  const BigInt dx = a.gx > b.gx ? a.gx - b.gx : b.gx - a.gx;
  const BigInt dy = a.gy > b.gy ? a.gy - b.gy : b.gy - a.gy;
  return dx <= 1 && dy <= 1;
}

}  // namespace

ComponentLevel::ComponentLevel(DigitSet carpet, LevelOccupancy occupancy, std::vector<std::uint32_t> roots)
    : carpet_(std::move(carpet)), occupancy_(std::move(occupancy)), comp_of_cell_(roots.size()) {
  // relabel roots by first appearance, which is the order of smallest members
  std::vector<std::uint32_t> label(roots.size(), UINT32_MAX);
  std::uint32_t next = 0;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    auto& l = label[roots[i]];
    if (l == UINT32_MAX) l = next++;
    comp_of_cell_[i] = l;
  }
  offsets_.assign(next + 1, 0);
  for (auto id : comp_of_cell_) ++offsets_[id + 1];
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  members_.resize(comp_of_cell_.size());
  std::vector<std::uint64_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::uint32_t i = 0; i < comp_of_cell_.size(); ++i) members_[fill[comp_of_cell_[i]]++] = i;

  const auto f = fiber_profile(carpet_);
  uniform_ = has_uniform_fibers(f.a);
  theta_ = theta(carpet_.size(), f.s, occupancy_.k(), occupancy_.ell());
}

std::uint64_t ComponentLevel::max_member_count() const noexcept {
  std::uint64_t best = 0;
  for (std::size_t id = 0; id < size(); ++id) best = std::max(best, member_count(id));
  return best;
}

Rational ComponentLevel::measure(std::size_t id) const {
  if (uniform_) return theta_ * Rational(member_count(id));
  Rational total = 0;
  for (auto cell : members(id)) {
    total += square_measure(carpet_, square_at(carpet_, k(), occupancy_.ell(), occupancy_.cells()[cell]));
  }
  return total;
}

Component ComponentLevel::component(std::size_t id) const {
  Component out;
  out.rank = k();
  out.count = member_count(id);
  out.measure = measure(id);
  for (auto cell : members(id)) out.members.push_back(square_at(carpet_, k(), occupancy_.ell(), occupancy_.cells()[cell]));
  return out;
}

ComponentLevel components_at_level(const DigitSet& c, std::int64_t k, const Budget& budget) {
  auto level = enumerate_level(c, k, budget);
  const auto& cells = level.cells();
  DisjointSets sets(cells.size());

  std::vector<std::size_t> row_start{0};
  for (std::size_t i = 1; i < cells.size(); ++i) {
    if (cells[i].gy != cells[i - 1].gy) row_start.push_back(i);
  }
  row_start.push_back(cells.size());

  for (std::size_t r = 0; r + 1 < row_start.size(); ++r) {
    const std::size_t b = row_start[r];
    const std::size_t e = row_start[r + 1];
    for (std::size_t i = b; i + 1 < e; ++i) {
      if (cells[i + 1].gx - cells[i].gx == 1) sets.unite(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i + 1));
    }
    if (r + 2 >= row_start.size()) continue;
    const std::size_t nb = row_start[r + 1];
    const std::size_t ne = row_start[r + 2];
    if (cells[nb].gy != cells[b].gy + 1) continue;
    // both rows ascend in gx, so the window start only moves right
    std::size_t j = nb;
    for (std::size_t i = b; i < e; ++i) {
      while (j < ne && cells[j].gx + 1 < cells[i].gx) ++j;
      for (std::size_t t = j; t < ne && cells[t].gx <= cells[i].gx + 1; ++t) {
        sets.unite(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(t));
      }
    }
  }
  return ComponentLevel(c, std::move(level), sets.roots());
}

namespace reference {

ComponentLevel components_at_level(const DigitSet& c, std::int64_t k, const Budget& budget) {
  auto level = carpet::reference::enumerate_level(c, k, budget);
  const auto& cells = level.cells();
  DisjointSets sets(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (std::size_t j = i + 1; j < cells.size(); ++j) {
      if (touching(cells[i], cells[j])) sets.unite(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
    }
  }
  return ComponentLevel(c, std::move(level), sets.roots());
}

}  // namespace reference

ComponentTree::ComponentTree(DigitSet carpet, std::vector<ComponentLevel> levels)
    : carpet_(std::move(carpet)), levels_(std::move(levels)) {
  if (levels_.empty() || levels_.front().k() != 0) throw std::invalid_argument("component tree needs level 0 first");
  parents_.resize(levels_.size());
  child_offsets_.resize(levels_.size());
  child_ids_.resize(levels_.size());
  for (std::size_t k = 1; k < levels_.size(); ++k) {
    const auto& lvl = levels_[k];
    const auto& up = levels_[k - 1];
    const BigInt row_factor = ipow(carpet_.m(), static_cast<std::uint64_t>(lvl.occupancy().ell() - up.occupancy().ell()));
    auto& par = parents_[k];
    par.resize(lvl.size());
    for (std::size_t id = 0; id < lvl.size(); ++id) {
      const auto& cell = lvl.occupancy().cells()[lvl.members(id).front()];
      const auto at = up.occupancy().find(cell.gx / carpet_.n(), cell.gy / row_factor);
      if (!at) throw std::logic_error("component without an ancestor square at level " + std::to_string(k - 1));
      par[id] = up.component_of_cell(*at);
    }
  }
  for (std::size_t k = 0; k + 1 < levels_.size(); ++k) {
    auto& off = child_offsets_[k];
    off.assign(levels_[k].size() + 1, 0);
    for (auto p : parents_[k + 1]) ++off[p + 1];
    std::partial_sum(off.begin(), off.end(), off.begin());
    auto& ids = child_ids_[k];
    ids.resize(parents_[k + 1].size());
    std::vector<std::uint64_t> fill(off.begin(), off.end() - 1);
    for (std::uint32_t i = 0; i < parents_[k + 1].size(); ++i) ids[fill[parents_[k + 1][i]]++] = i;
  }
}

std::span<const std::uint32_t> ComponentTree::children(std::int64_t k, std::size_t id) const {
  const auto kk = static_cast<std::size_t>(k);
  if (kk + 1 >= levels_.size()) return {};
  const auto& off = child_offsets_[kk];
  return {child_ids_[kk].data() + off[id], child_ids_[kk].data() + off[id + 1]};
}

std::uint32_t ComponentTree::ancestor(std::int64_t from, std::size_t id, std::int64_t to) const {
  auto v = static_cast<std::uint32_t>(id);
  for (std::int64_t k = from; k > to; --k) v = parent(k, v);
  return v;
}

std::vector<std::string> ComponentTree::verify_axioms() const {
  std::vector<std::string> problems;
  for (std::size_t k = 0; k < levels_.size(); ++k) {
    const auto& lvl = levels_[k];
    std::uint64_t total = 0;
    Rational mass = 0;
    for (std::size_t id = 0; id < lvl.size(); ++id) {
      total += lvl.member_count(id);
      mass += lvl.measure(id);
      if (k + 1 < levels_.size() && children(static_cast<std::int64_t>(k), id).empty()) {
        problems.push_back("level " + std::to_string(k) + " component " + std::to_string(id) + " has no child");
      }
    }
    if (total != lvl.occupancy().size()) problems.push_back("level " + std::to_string(k) + " members do not cover the cells");
    if (mass != 1) problems.push_back("level " + std::to_string(k) + " mass is " + to_fraction_string(mass));
    if (k == 0) continue;
    const auto& up = levels_[k - 1];
    const BigInt row_factor = ipow(carpet_.m(), static_cast<std::uint64_t>(lvl.occupancy().ell() - up.occupancy().ell()));
    for (std::size_t id = 0; id < lvl.size(); ++id) {
      for (auto cell_index : lvl.members(id)) {
        const auto& cell = lvl.occupancy().cells()[cell_index];
        const auto at = up.occupancy().find(cell.gx / carpet_.n(), cell.gy / row_factor);
        if (!at || up.component_of_cell(*at) != parents_[k][id]) {
          problems.push_back("level " + std::to_string(k) + " component " + std::to_string(id) +
                             " straddles two parents");
          break;
        }
      }
    }
  }
  return problems;
}

ComponentTree build_component_tree(const DigitSet& c, std::int64_t K, const Budget& budget) {
  std::vector<ComponentLevel> levels;
  levels.reserve(static_cast<std::size_t>(K) + 1);
  for (std::int64_t k = 0; k <= K; ++k) levels.push_back(components_at_level(c, k, budget));
  return ComponentTree(c, std::move(levels));
}

L0Estimate estimate_L0(const DigitSet& c, std::int64_t K, const Budget& budget) {
  const auto label = classify(c);
  if (!label.vacant || label.totally_disconnected != Tristate::Yes) {
    throw Error(ErrorCode::NotInHypothesis, "the member-count bound needs vacant rows and a totally disconnected carpet");
  }
  L0Estimate est;
  est.depth = K;
  for (std::int64_t k = 1; k <= K; ++k) {
    const auto level = components_at_level(c, k, budget);
    est.per_level.push_back(level.max_member_count());
    est.overall = std::max(est.overall, est.per_level.back());
  }
  return est;
}

std::int64_t deepest_level_within(const DigitSet& c, std::int64_t K, const Budget& budget) {
  std::int64_t k = 0;
  while (k < K && level_cell_count(c, k + 1) <= BigInt(budget.max_cells)) ++k;
  return k;
}

}  // namespace carpet
