#include "carpet/regularity.hpp"

#include "carpet/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace carpet {

namespace {

Rational xi_power(const Rational& xi, std::int64_t e) {
  return Rational(pow(numerator(xi), static_cast<unsigned>(e)), pow(denominator(xi), static_cast<unsigned>(e)));
}

Rational abs_diff(const Rational& a, const Rational& b) { return a > b ? a - b : b - a; }

Rational far_sq(const Rect& a, const Rect& b) {
  const Rational dx = std::max(abs_diff(a.x1, b.x0), abs_diff(b.x1, a.x0));
  const Rational dy = std::max(abs_diff(a.y1, b.y0), abs_diff(b.y1, a.y0));
  return dx * dx + dy * dy;
}

Rational gap_sq(const Rect& a, const Rect& b) {
  Rational dx = std::max({Rational(0), Rational(b.x0 - a.x1), Rational(a.x0 - b.x1)});
  Rational dy = std::max({Rational(0), Rational(b.y0 - a.y1), Rational(a.y0 - b.y1)});
  return dx * dx + dy * dy;
}

constexpr std::int64_t kCoordLimit = std::int64_t{1} << 62;

struct NarrowLevel {
  std::vector<std::int64_t> gx;
  std::vector<std::int64_t> gy;
  BigInt x_weight;  // m^(2 ell): squared cell width times the common denominator
  BigInt y_weight;  // n^(2k)
  BigInt denominator;
};

NarrowLevel narrow(const ComponentLevel& level) {
  const auto& occ = level.occupancy();
  if (occ.columns() >= kCoordLimit || occ.rows() >= kCoordLimit) {
    throw Error(ErrorCode::DepthBudgetExceeded, "grid at level " + std::to_string(level.k()) + " is too wide for the extreme search");
  }
  NarrowLevel out;
  out.gx.resize(occ.size());
  out.gy.resize(occ.size());
  for (std::size_t i = 0; i < occ.size(); ++i) {
    out.gx[i] = occ.cells()[i].gx.convert_to<std::int64_t>();
    out.gy[i] = occ.cells()[i].gy.convert_to<std::int64_t>();
  }
  out.x_weight = occ.rows() * occ.rows();
  out.y_weight = occ.columns() * occ.columns();
  out.denominator = out.x_weight * out.y_weight;
  return out;
}

/// Squared length, in units of 1/denominator, of a vector spanning dx columns and dy rows.
BigInt weighted(const NarrowLevel& g, std::int64_t dx, std::int64_t dy) {
  return BigInt(dx) * dx * g.x_weight + BigInt(dy) * dy * g.y_weight;
}

/// Largest column gap g with g^2 x_weight + fixed < bound, or -1 when none.
std::int64_t column_window(const NarrowLevel& g, const BigInt& bound, const BigInt& fixed) {
  if (fixed >= bound) return -1;
  const BigInt q = (bound - fixed - 1) / g.x_weight;
  const BigInt r = sqrt(q);
  return r >= kCoordLimit ? kCoordLimit : r.convert_to<std::int64_t>();
}

}  // namespace

RegularityReport check_regularity(const std::vector<LevelExtremes>& levels, const Rational& xi) {
  RegularityReport rep;
  rep.xi = xi;
  std::optional<Rational> max_diam;
  std::optional<Rational> min_gap;
  for (const auto& e : levels) {
    if (e.gap_sq && *e.gap_sq == 0) {
      throw Error(ErrorCode::ZeroGap, "two vertices at level " + std::to_string(e.level) + " touch");
    }
    RegularityLevel r;
    r.level = e.level;
    const Rational scale = xi_power(xi, 2 * e.level);
    r.diam_ratio_sq = e.diam_sq / scale;
    r.diam_ratio = std::sqrt(to_double(r.diam_ratio_sq));
    if (e.gap_sq) {
      r.gap_ratio_sq = *e.gap_sq / scale;
      r.gap_ratio = std::sqrt(to_double(*r.gap_ratio_sq));
    }
    if (e.level >= 1) {
      if (!max_diam || r.diam_ratio_sq > *max_diam) max_diam = r.diam_ratio_sq;
      if (r.gap_ratio_sq && (!min_gap || *r.gap_ratio_sq < *min_gap)) min_gap = r.gap_ratio_sq;
      rep.running_alpha_diam.push_back(max_diam ? std::sqrt(to_double(*max_diam)) : 0.0);
      rep.running_inv_alpha_gap.push_back(min_gap ? 1.0 / std::sqrt(to_double(*min_gap)) : 0.0);
    }
    rep.levels.push_back(std::move(r));
  }
  rep.alpha_diam = max_diam ? std::sqrt(to_double(*max_diam)) : 0.0;
  rep.alpha_gap = min_gap ? std::sqrt(to_double(*min_gap)) : std::numeric_limits<double>::infinity();
  rep.alpha0 = std::max(rep.alpha_diam, 1.0 / rep.alpha_gap);
  return rep;
}

std::vector<LevelExtremes> region_tree_extremes(const RegionTree& t) {
  std::vector<LevelExtremes> out;
  for (std::int64_t k = 0; k <= t.tree.depth(); ++k) {
    const auto& verts = t.regions[static_cast<std::size_t>(k)];
    LevelExtremes e;
    e.level = k;
    e.vertex_count = verts.size();
    for (std::size_t u = 0; u < verts.size(); ++u) {
      for (std::size_t a = 0; a < verts[u].size(); ++a) {
        for (std::size_t b = a; b < verts[u].size(); ++b) e.diam_sq = std::max(e.diam_sq, far_sq(verts[u][a], verts[u][b]));
      }
      for (std::size_t v = u + 1; v < verts.size(); ++v) {
        for (const auto& ra : verts[u]) {
          for (const auto& rb : verts[v]) {
            const auto g = gap_sq(ra, rb);
            if (!e.gap_sq || g < *e.gap_sq) e.gap_sq = g;
          }
        }
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

RegionTree region_tree(const ComponentTree& t) {
  RegionTree out{LeveledTree(t.parent_arrays()), {}};
  for (std::int64_t k = 0; k <= t.depth(); ++k) {
    const auto& lvl = t.level(k);
    auto& verts = out.regions.emplace_back(lvl.size());
    for (std::size_t id = 0; id < lvl.size(); ++id) {
      for (auto cell : lvl.members(id)) verts[id].push_back(cell_region(lvl.occupancy(), lvl.occupancy().cells()[cell]));
    }
  }
  return out;
}

LevelExtremes component_level_extremes(const ComponentLevel& level) {
  const NarrowLevel g = narrow(level);
  const std::size_t cells = g.gx.size();
  LevelExtremes e;
  e.level = level.k();
  e.vertex_count = level.size();

  // Diameter: per component, farthest corners between the extreme cells of each pair of rows.
  BigInt diam_num = 0;
#pragma omp parallel
  {
    BigInt local = 0;
    std::vector<std::int64_t> row_y, row_lo, row_hi;
#pragma omp for schedule(dynamic, 256)
    for (std::int64_t id = 0; id < static_cast<std::int64_t>(level.size()); ++id) {
      row_y.clear();
      row_lo.clear();
      row_hi.clear();
      for (auto cell : level.members(static_cast<std::size_t>(id))) {
        if (row_y.empty() || row_y.back() != g.gy[cell]) {
          row_y.push_back(g.gy[cell]);
          row_lo.push_back(g.gx[cell]);
          row_hi.push_back(g.gx[cell]);
        } else {
          row_hi.back() = g.gx[cell];
        }
      }
      for (std::size_t a = 0; a < row_y.size(); ++a) {
        for (std::size_t b = a; b < row_y.size(); ++b) {
          const std::int64_t dx = std::max(std::abs(row_hi[b] - row_lo[a]), std::abs(row_hi[a] - row_lo[b]));
          const BigInt cand = weighted(g, dx + 1, row_y[b] - row_y[a] + 1);
          if (cand > local) local = cand;
        }
      }
    }
#pragma omp critical
    if (local > diam_num) diam_num = local;
  }
  e.diam_sq = Rational(diam_num, g.denominator);
  if (level.size() < 2) return e;

  // Gap: seed with consecutive cells from different components, then search windows.
  std::optional<BigInt> seed;
  for (std::size_t i = 0; i + 1 < cells; ++i) {
    if (level.component_of_cell(i) == level.component_of_cell(i + 1)) continue;
    const std::int64_t dy = g.gy[i + 1] - g.gy[i];
    const std::int64_t dx = std::abs(g.gx[i + 1] - g.gx[i]);
    const BigInt cand = weighted(g, std::max<std::int64_t>(dx - 1, 0), std::max<std::int64_t>(dy - 1, 0));
    if (!seed || cand < *seed) seed = cand;
  }

  std::vector<std::size_t> row_start{0};
  for (std::size_t i = 1; i < cells; ++i) {
    if (g.gy[i] != g.gy[i - 1]) row_start.push_back(i);
  }
  row_start.push_back(cells);
  const std::size_t rows = row_start.size() - 1;

  BigInt best = *seed;
#pragma omp parallel
  {
    BigInt local = best;
#pragma omp for schedule(dynamic, 64)
    for (std::int64_t r = 0; r < static_cast<std::int64_t>(rows); ++r) {
      const auto ri = static_cast<std::size_t>(r);
      for (std::size_t rj = ri; rj < rows; ++rj) {
        const std::int64_t d = g.gy[row_start[rj]] - g.gy[row_start[ri]];
        const BigInt fixed = d > 1 ? weighted(g, 0, d - 1) : BigInt(0);
        std::int64_t win = column_window(g, local, fixed);
        if (win < 0) break;
        std::size_t lo = row_start[rj];
        for (std::size_t i = row_start[ri]; i < row_start[ri + 1] && win >= 0; ++i) {
          std::size_t t = rj == ri ? i + 1 : lo;
          if (rj != ri) {
            while (lo < row_start[rj + 1] && g.gx[lo] < g.gx[i] - (win + 1)) ++lo;
            t = lo;
          }
          for (; t < row_start[rj + 1] && win >= 0 && g.gx[t] <= g.gx[i] + win + 1; ++t) {
            if (level.component_of_cell(t) == level.component_of_cell(i)) continue;
            const std::int64_t dx = std::max<std::int64_t>(std::abs(g.gx[t] - g.gx[i]) - 1, 0);
            const BigInt cand = weighted(g, dx, 0) + fixed;
            if (cand < local) {
              local = cand;
              win = column_window(g, local, fixed);
            }
          }
        }
      }
    }
#pragma omp critical
    if (local < best) best = local;
  }
  e.gap_sq = Rational(best, g.denominator);
  return e;
}

std::vector<LevelExtremes> component_tree_extremes(const ComponentTree& t) {
  std::vector<LevelExtremes> out;
  for (std::int64_t k = 0; k <= t.depth(); ++k) out.push_back(component_level_extremes(t.level(k)));
  return out;
}

namespace reference {

LevelExtremes component_level_extremes(const ComponentLevel& level) {
  const NarrowLevel g = narrow(level);
  LevelExtremes e;
  e.level = level.k();
  e.vertex_count = level.size();
  BigInt diam = 0;
  std::optional<BigInt> gap;
  for (std::size_t i = 0; i < g.gx.size(); ++i) {
    for (std::size_t j = i; j < g.gx.size(); ++j) {
      const std::int64_t dx = std::abs(g.gx[j] - g.gx[i]);
      const std::int64_t dy = std::abs(g.gy[j] - g.gy[i]);
      if (level.component_of_cell(i) == level.component_of_cell(j)) {
        diam = std::max(diam, weighted(g, dx + 1, dy + 1));
      } else {
        const BigInt cand = weighted(g, std::max<std::int64_t>(dx - 1, 0), std::max<std::int64_t>(dy - 1, 0));
        if (!gap || cand < *gap) gap = cand;
      }
    }
  }
  e.diam_sq = Rational(diam, g.denominator);
  if (gap) e.gap_sq = Rational(*gap, g.denominator);
  return e;
}

}  // namespace reference

}  // namespace carpet
