#include "carpet/render.hpp"

#include "carpet/components.hpp"
#include "carpet/error.hpp"
#include "carpet/sigma.hpp"

#include <cmath>
#include <cstdio>

namespace carpet {

namespace {

unsigned digits_for(const BigInt& denominator) { return static_cast<unsigned>(denominator.str().size()) + 8; }

std::string colour(std::size_t id) {
  // golden-angle hue steps keep neighbouring ids apart
  const double hue = std::fmod(static_cast<double>(id) * 137.50776405003785, 360.0);
  char buf[48];
  std::snprintf(buf, sizeof buf, "hsl(%.1f,65%%,50%%)", hue);
  return buf;
}

struct Writer {
  std::string svg;
  unsigned x_digits;
  unsigned y_digits;

  void rect(const Rational& x, const Rational& y, const Rational& w, const Rational& h, const std::string& fill) {
    svg += "<rect x=\"" + to_decimal_string(x, x_digits) + "\" y=\"" + to_decimal_string(y, y_digits) + "\" width=\"" +
           to_decimal_string(w, x_digits) + "\" height=\"" + to_decimal_string(h, y_digits) + "\" fill=\"" + fill + "\"/>\n";
  }
};

}  // namespace

std::optional<RenderStyle> parse_render_style(std::string_view name) {
  if (name == "squares") return RenderStyle::Squares;
  if (name == "components") return RenderStyle::Components;
  if (name == "rectangles") return RenderStyle::Rectangles;
  return std::nullopt;
}

std::string render_svg(const DigitSet& c, std::int64_t k, RenderStyle style, const Budget& budget) {
  Writer w;
  w.svg =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 1 1\" width=\"800\" height=\"800\">\n"
      "<g transform=\"matrix(1 0 0 -1 0 1)\" shape-rendering=\"crispEdges\">\n";

  if (style == RenderStyle::Rectangles) {
    const BigInt count = ipow(static_cast<std::uint32_t>(c.size()), static_cast<std::uint64_t>(k));
    if (count > BigInt(budget.max_cells)) {
      throw Error(ErrorCode::DepthBudgetExceeded, count.str() + " basic rectangles at rank " + std::to_string(k));
    }
    const BigInt nk = ipow(c.n(), static_cast<std::uint64_t>(k));
    const BigInt mk = ipow(c.m(), static_cast<std::uint64_t>(k));
    w.x_digits = digits_for(nk);
    w.y_digits = digits_for(mk);
    const Rational width(BigInt(1), nk);
    const Rational height(BigInt(1), mk);
    std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
    const auto& digits = c.digits();
    while (true) {
      BigInt gx = 0;
      BigInt gy = 0;
      for (auto i : idx) {
        gx = gx * c.n() + digits[i].i;
        gy = gy * c.m() + digits[i].j;
      }
      w.rect(Rational(gx, nk), Rational(gy, mk), width, height, "black");
      std::size_t t = idx.size();
      while (t > 0 && ++idx[t - 1] == digits.size()) idx[--t] = 0;
      if (t == 0) break;
    }
  } else {
    std::optional<ComponentLevel> comps;
    if (style == RenderStyle::Components) comps = components_at_level(c, k, budget);
    const LevelOccupancy occ = comps ? comps->occupancy() : enumerate_level(c, k, budget);
    w.x_digits = digits_for(occ.columns());
    w.y_digits = digits_for(occ.rows());
    const Rational width(BigInt(1), occ.columns());
    const Rational height(BigInt(1), occ.rows());
    for (std::uint32_t i = 0; i < occ.cells().size(); ++i) {
      const auto& cell = occ.cells()[i];
      w.rect(Rational(cell.gx, occ.columns()), Rational(cell.gy, occ.rows()), width, height,
             comps ? colour(comps->component_of_cell(i)) : "black");
    }
  }
  w.svg += "</g>\n</svg>\n";
  return w.svg;
}

}  // namespace carpet
