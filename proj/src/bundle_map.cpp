#include "carpet/bundle_map.hpp"

#include "carpet/equivalence.hpp"
#include "carpet/error.hpp"
#include "carpet/sigma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>

namespace carpet {

Rational BundleMap::word_mass(std::int64_t j) const {
  BigInt size = 1;
  for (std::int64_t i = 0; i < j; ++i) size *= block[static_cast<std::size_t>(i)];
  return Rational(BigInt(1), size);
}

BundleMap build_bundle_map(const DigitSet& c, std::int64_t p_levels, const BundleMapOptions& options) {
  if (!classify(c).in_tvr()) {
    throw Error(ErrorCode::OutsideClass, "bundle maps are built only for totally disconnected carpets with vacant rows and uniform fibers");
  }
  BundleMap bm;
  bm.L0 = options.L0 ? *options.L0 : estimate_L0(c, deepest_level_within(c, 8, options.budget), options.budget).overall;
  bm.p = options.p ? *options.p : choose_p(c, bm.L0);
  const std::int64_t depth = bm.p * p_levels;

  bm.branch_counts = branch_counts(c, depth);
  BigInt words = 1;
  for (std::int64_t j = 0; j < p_levels; ++j) {
    BigInt prod = 1;
    for (std::int64_t i = j * bm.p; i < (j + 1) * bm.p; ++i) prod *= bm.branch_counts[static_cast<std::size_t>(i)];
    words *= prod;
    if (words > BigInt(std::numeric_limits<std::int64_t>::max())) {
      throw Error(ErrorCode::DepthBudgetExceeded, "word ranks at p-level " + std::to_string(j + 1) + " overflow 63 bits");
    }
    bm.block.push_back(prod.convert_to<std::uint64_t>());
  }

  auto tree = std::make_shared<ComponentTree>(build_component_tree(c, depth, options.budget));
  for (std::int64_t k = 1; k <= depth; ++k) {
    const auto most = tree->level(k).max_member_count();
    if (most > bm.L0) {
      throw Error(ErrorCode::L0Exceeded, "level " + std::to_string(k) + " has a component with " + std::to_string(most) +
                                             " members, above L0=" + std::to_string(bm.L0));
    }
  }
  bm.tree = tree;

  bm.levels.resize(static_cast<std::size_t>(p_levels) + 1);
  bm.levels[0].push_back(BundleEntry{0, {0}, tree->level(0).measure(0)});
  for (std::int64_t j = 0; j < p_levels; ++j) {
    const auto& here = bm.levels[static_cast<std::size_t>(j)];
    auto& next = bm.levels[static_cast<std::size_t>(j + 1)];
    const auto& down = tree->level((j + 1) * bm.p);
    next.resize(down.size());
    const std::uint64_t T = bm.block[static_cast<std::size_t>(j)];
    for (const auto& entry : here) {
      const auto part = partition_offsprings(*tree, j * bm.p, entry.component, bm.p);
      for (std::size_t b = 0; b < part.groups.size(); ++b) {
        std::uint64_t offset = 0;
        for (auto v : part.groups[b]) {
          BundleEntry e{v, {}, down.measure(v)};
          for (std::uint64_t t = 0; t < down.member_count(v); ++t) e.words.push_back(entry.words[b] * T + offset++);
          next[v] = std::move(e);
        }
      }
    }
  }
  return bm;
}

BundleMapReport verify_bundle_map(const BundleMap& bm) {
  BundleMapReport rep;
  auto fail = [](BundleCheck& check, std::string msg) {
    check.passed = false;
    if (check.failures.size() < 20) check.failures.push_back(std::move(msg));
  };
  const auto& tree = *bm.tree;
  for (std::int64_t j = 0; j <= bm.p_levels(); ++j) {
    const auto& level = bm.levels[static_cast<std::size_t>(j)];
    const auto& comps = tree.level(j * bm.p);
    const std::string at = "p-level " + std::to_string(j);
    const Rational unit = bm.word_mass(j);

    if (level.size() != comps.size()) fail(rep.partition, at + ": " + std::to_string(level.size()) + " entries for " + std::to_string(comps.size()) + " components");
    std::vector<std::uint64_t> all;
    Rational image_mass = 0;
    for (std::size_t v = 0; v < level.size(); ++v) {
      const auto& e = level[v];
      const std::string who = at + " component " + std::to_string(v);
      all.insert(all.end(), e.words.begin(), e.words.end());
      if (e.words.empty()) {
        fail(rep.siblings, who + ": empty image");
        continue;
      }
      if (j >= 1) {
        const std::uint64_t T = bm.block[static_cast<std::size_t>(j - 1)];
        const auto parent_word = e.words.front() / T;
        if (!std::all_of(e.words.begin(), e.words.end(), [&](auto w) { return w / T == parent_word; })) {
          fail(rep.siblings, who + ": image words have different parents");
        }
        const auto u = tree.ancestor(j * bm.p, v, (j - 1) * bm.p);
        const auto& up = bm.levels[static_cast<std::size_t>(j - 1)];
        if (u < up.size()) {
          const std::set<std::uint64_t> allowed(up[u].words.begin(), up[u].words.end());
          for (auto w : e.words) {
            if (!allowed.contains(w / T)) {
              fail(rep.offspring, who + ": word " + std::to_string(w) + " does not descend from the image of component " + std::to_string(u));
              break;
            }
          }
        }
      } else if (e.words != std::vector<std::uint64_t>{0}) {
        fail(rep.siblings, who + ": root must map to the root word");
      }
      const Rational nu = unit * Rational(static_cast<std::uint64_t>(e.words.size()));
      image_mass += nu;
      if (v < comps.size() && (nu != e.mu || e.mu != comps.measure(v))) {
        fail(rep.measure, who + ": image mass " + to_fraction_string(nu) + " vs component mass " + to_fraction_string(comps.measure(v)));
      }
    }
    if (image_mass != 1) fail(rep.measure, at + ": total image mass " + to_fraction_string(image_mass));

    std::sort(all.begin(), all.end());
    const Rational expected = Rational(1) / unit;
    bool exact = Rational(static_cast<std::uint64_t>(all.size())) == expected;
    for (std::size_t i = 0; exact && i < all.size(); ++i) exact = all[i] == i;
    if (!exact) fail(rep.partition, at + ": images do not tile the " + to_fraction_string(expected) + " words of the level");
  }
  return rep;
}

namespace {

struct LocatedPoint {
  Cell cell;
  std::vector<std::uint64_t> omega;
};

LocatedPoint locate(const BundleMap& bm, const std::vector<Digit>& word, std::int64_t j) {
  const auto& tree = *bm.tree;
  const auto& c = tree.carpet();
  const std::int64_t K = bm.p * j;
  if (j < 0 || j > bm.p_levels()) throw Error(ErrorCode::DepthBudgetExceeded, "map has no p-level " + std::to_string(j));
  if (static_cast<std::int64_t>(word.size()) < K) {
    throw Error(ErrorCode::NotAdmissible, "word of length " + std::to_string(word.size()) + " is shorter than " + std::to_string(K));
  }
  for (const auto& d : word) {
    if (!c.contains(d.i, d.j)) throw Error(ErrorCode::NotAdmissible, "(" + std::to_string(d.i) + "," + std::to_string(d.j) + ") is not a digit");
  }
  const auto& level = tree.level(K);
  const auto L = level.occupancy().ell();
  const std::uint32_t pad = c.digits().front().j;
  LocatedPoint out;
  for (std::int64_t t = 0; t < K; ++t) out.cell.gx = out.cell.gx * c.n() + word[static_cast<std::size_t>(t)].i;
  for (std::int64_t t = 0; t < L; ++t) {
    const auto row = t < static_cast<std::int64_t>(word.size()) ? word[static_cast<std::size_t>(t)].j : pad;
    out.cell.gy = out.cell.gy * c.m() + row;
  }
  const auto at = level.occupancy().find(out.cell.gx, out.cell.gy);
  if (!at) throw Error(ErrorCode::NotAdmissible, "word does not land on an occupied square");
  const auto id = level.component_of_cell(*at);
  const auto members = level.members(id);
  const auto index = static_cast<std::size_t>(std::lower_bound(members.begin(), members.end(), *at) - members.begin());
  const auto& entry = bm.levels[static_cast<std::size_t>(j)][id];
  if (index >= entry.words.size()) throw Error(ErrorCode::NotAdmissible, "component image is smaller than its member list");
  BigInt rank = entry.words[index];
  out.omega.resize(static_cast<std::size_t>(K));
  for (std::int64_t t = K; t-- > 0;) {
    const auto n = bm.branch_counts[static_cast<std::size_t>(t)];
    out.omega[static_cast<std::size_t>(t)] = static_cast<std::uint64_t>(rank % n);
    rank /= n;
  }
  return out;
}

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Ratio for sample i at p-level j, or nothing when the images coincide.
std::optional<double> sample_ratio(const BundleMap& bm, std::int64_t j, std::uint64_t seed, std::uint64_t i) {
  const auto& c = bm.tree->carpet();
  const auto K = static_cast<std::size_t>(bm.p * j);
  std::mt19937_64 rng(mix(mix(seed) ^ mix(static_cast<std::uint64_t>(j) << 40 ^ i)));
  std::uniform_int_distribution<std::size_t> pick(0, c.size() - 1);
  std::vector<Digit> u(K), v(K);
  for (auto& d : u) d = c.digits()[pick(rng)];
  for (auto& d : v) d = c.digits()[pick(rng)];
  const auto a = locate(bm, u, j);
  const auto b = locate(bm, v, j);
  if (a.omega == b.omega) return std::nullopt;
  const auto& occ = bm.tree->level(bm.p * static_cast<std::int64_t>(j)).occupancy();
  const Rational dx(a.cell.gx > b.cell.gx ? a.cell.gx - b.cell.gx : b.cell.gx - a.cell.gx, occ.columns());
  const Rational dy(a.cell.gy > b.cell.gy ? a.cell.gy - b.cell.gy : b.cell.gy - a.cell.gy, occ.rows());
  const double dE = std::sqrt(to_double(dx * dx + dy * dy));
  if (dE == 0.0) return std::nullopt;
  const auto q = std::mismatch(a.omega.begin(), a.omega.end(), b.omega.begin()).first - a.omega.begin();
  const double dOmega = std::pow(static_cast<double>(c.n()), -static_cast<double>(q));
  return dOmega / dE;
}

DistortionLevel finish(std::int64_t depth, std::uint64_t used, double lo, double hi) {
  if (used == 0) throw Error(ErrorCode::DegenerateSample, "every sampled pair at depth " + std::to_string(depth) + " has identical images");
  return DistortionLevel{depth, used, lo, hi};
}

}  // namespace

std::vector<std::uint64_t> map_address(const BundleMap& bm, const std::vector<Digit>& word, std::int64_t j) {
  return locate(bm, word, j).omega;
}

DistortionLevel distortion_at(const BundleMap& bm, std::int64_t j, std::uint64_t samples, std::uint64_t seed) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  std::uint64_t used = 0;
#pragma omp parallel for schedule(dynamic, 64) reduction(min : lo) reduction(max : hi) reduction(+ : used)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(samples); ++i) {
    if (auto r = sample_ratio(bm, j, seed, static_cast<std::uint64_t>(i))) {
      lo = std::min(lo, *r);
      hi = std::max(hi, *r);
      ++used;
    }
  }
  return finish(bm.p * j, used, lo, hi);
}

DistortionReport estimate_distortion(const BundleMap& bm, std::uint64_t samples, std::uint64_t seed) {
  DistortionReport rep;
  rep.depth = bm.p * bm.p_levels();
  rep.samples = samples;
  rep.seed = seed;
  for (std::int64_t j = 1; j <= bm.p_levels(); ++j) rep.series.push_back(distortion_at(bm, j, samples, seed));
  if (rep.series.empty()) throw Error(ErrorCode::DegenerateSample, "map has no p-level to sample");
  rep.min_ratio = rep.series.back().min_ratio;
  rep.max_ratio = rep.series.back().max_ratio;
  return rep;
}

namespace reference {

DistortionLevel distortion_at(const BundleMap& bm, std::int64_t j, std::uint64_t samples, std::uint64_t seed) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  std::uint64_t used = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    if (auto r = sample_ratio(bm, j, seed, i)) {
      lo = std::min(lo, *r);
      hi = std::max(hi, *r);
      ++used;
    }
  }
  return finish(bm.p * j, used, lo, hi);
}

}  // namespace reference

}  // namespace carpet
