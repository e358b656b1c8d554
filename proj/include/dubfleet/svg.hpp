#pragma once

#include <string>
#include <vector>

#include "dubfleet/dubins.hpp"

namespace dubfleet {

/// Render fleet paths to an SVG file, 1 unit = 1 meter, y axis flipped for
/// screen convention. Lines and arcs map to exact path commands; separation
/// discs of radius delta/2 are stamped at regular sample instants. A nonzero
/// wind additionally draws the drifted ground tracks as dashed polylines.
/// The world-to-viewport offsets are recorded as data attributes on the root
/// element so coordinates can be mapped back exactly.
void write_paths_svg(const std::string& file_path, const std::vector<FleetPath>& paths,
                     double delta, Complex wind = {0.0, 0.0});

}  // namespace dubfleet
