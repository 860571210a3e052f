// SVG rendering of two-dimensional Tits cone intersections: hyperplane lines
// through the origin, shaded chamber wedges, labels at sample points.
// Floating point is used for layout only, never for mathematical decisions.

#pragma once

#include <string>

#include "titscone/arrangement.hpp"

namespace titscone {

// Requires dim Theta_J = rank - |J| = 2; throws DimensionError otherwise.
std::string render_svg(const ArrangementGraph& graph);

}  // namespace titscone
