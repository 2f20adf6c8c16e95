#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "carpet/carpet.hpp"
#include "carpet/geometry.hpp"

namespace carpet {

enum class RenderStyle {
  Squares,     // one rectangle per approximate square of rank k
  Components,  // the same squares, coloured by component
  Rectangles,  // basic rectangles of rank k
};

std::optional<RenderStyle> parse_render_style(std::string_view name);

/// SVG 1.1 on the unit square with y pointing up; coordinates are exact decimals.
/// Throws DepthBudgetExceeded.
std::string render_svg(const DigitSet& c, std::int64_t k, RenderStyle style, const Budget& budget = {});

}  // namespace carpet
