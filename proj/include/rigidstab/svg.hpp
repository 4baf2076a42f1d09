#pragma once

#include <string>

#include "rigidstab/diagram.hpp"

namespace rigidstab {

struct SvgOptions {
  int width = 760;
  int height = 520;
};

// Deterministic picture of the diagram: labeled squared-eigenvalue ticks,
// parabolas as exact quadratic Bezier arcs, dashed vertical lines, and
// intersection markers (filled = upper, hollow = lower, ring = tangent).
// Meetings at infinity and complex pairs are listed in the legend.
std::string render_svg(const ParabolicDiagram& d, const SvgOptions& opt = {});

}  // namespace rigidstab
