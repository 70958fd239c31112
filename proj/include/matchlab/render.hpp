#pragma once

#include <string>

#include "matchlab/line_constructions.hpp"

namespace matchlab {

// d=1 arc diagram: points as vertical ticks on a baseline, edges as
// semicircular arcs, upward when the red endpoint is on the left
// (right-oriented) and downward otherwise.  Deterministic output.
std::string render_svg(const PointConfig& config, const WindowMatching& wm, int width = 1200,
                       int height = 380);

}  // namespace matchlab
