#pragma once

#include "dirclose/pattern.hpp"

#include <string>
#include <vector>

namespace dirclose {

enum class RenderFormat { Ascii, Pbm, Svg };

RenderFormat parse_render_format(std::string_view text);

struct RenderStyle {
    RenderFormat format = RenderFormat::Ascii;
    /// Draw P symbols as left/right half-cells. Only valid for alphabet P.
    bool pair_split = false;
    std::vector<int> guide_x;  // thick vertical line at the left edge of these columns
    std::vector<int> guide_y;  // thick horizontal line at the bottom edge of these rows
};

/// Rows top to bottom. B cells are `#` (1) or `.` (0). Split P cells are two
/// such characters (left bit, right bit); unsplit P cells are their tokens
/// separated by spaces.
std::string render(const Pattern& pattern, const RenderStyle& style);

/// Inverse of the ascii rendering of a total pattern.
Pattern parse_ascii(const std::string& text, const Alphabet& alphabet, bool pair_split, int x0, int y0);

}  // namespace dirclose
