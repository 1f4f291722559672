#pragma once

#include "terracut/map_model.hpp"
#include "terracut/region.hpp"

#include <string>

namespace terracut::svg {

// Layered figure of an analysis: terrain fills by height, unbuildable areas
// in blue, contours in black, cluster boxes (blue when the zone held one
// cluster, red when it needed splitting), centroids as red dots with orange
// member spokes, separations as red lines. Byte-deterministic for a given
// (result, map) pair.
std::string render_svg(const region::AnalysisResult& result, const map::MapData& map);

}  // namespace terracut::svg
