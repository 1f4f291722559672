#pragma once

#include "terracut/geometry.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace terracut::label {

using TilePredicate = std::function<bool(int x, int y)>;

struct LabeledGrid {
  int width = 0;
  int height = 0;
  std::vector<int> labels;  // row-major; 0 = background
  int component_count = 0;

  int at(int x, int y) const { return labels[static_cast<std::size_t>(y) * width + x]; }
};

// One 8-connected foreground component with its corner-traced contours.
// The outer ring has positive shoelace area; hole rings negative. Rings may
// revisit a corner where the component is connected only diagonally.
struct Component {
  int id = 0;
  geom::Ring outer;
  std::vector<geom::Ring> holes;
  int tile_count = 0;
  std::vector<geom::Tile> tiles;  // scan order
};

// Single-pass connected-component labeling with crack-following contour
// tracing: foreground is 8-connected, background 4-connected. Every
// predicate tile gets a label; outer and hole contours come out of the same
// pass as closed corner polylines.
std::pair<LabeledGrid, std::vector<Component>> label_components(int width, int height,
                                                                const TilePredicate& pred);

}  // namespace terracut::label
