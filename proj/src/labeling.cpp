#include "terracut/labeling.hpp"

#include <array>
#include <cassert>

namespace terracut::label {

namespace {

enum Dir : int { E = 0, S = 1, W = 2, N = 3 };  // screen coordinates, y down

constexpr std::array<int, 4> kDx = {1, 0, -1, 0};
constexpr std::array<int, 4> kDy = {0, 1, 0, -1};

inline int turn_left(int d) { return (d + 3) & 3; }
inline int turn_right(int d) { return (d + 1) & 3; }

struct Tracer {
  int width;
  int height;
  const TilePredicate& fg;
  std::vector<int>& labels;
  std::vector<char>& walked_h;  // horizontal crack edges, key = cx + cy * width

  bool is_fg(int x, int y) const {
    if (x < 0 || y < 0 || x >= width || y >= height) return false;
    return fg(x, y);
  }

  // Foreground tile on the right-hand side of the edge leaving corner
  // (cx, cy) in direction d.
  std::pair<int, int> right_tile(int cx, int cy, int d) const {
    switch (d) {
      case E: return {cx, cy};
      case S: return {cx - 1, cy};
      case W: return {cx - 1, cy - 1};
      default: return {cx, cy - 1};
    }
  }

  // Tiles ahead of corner (cx, cy) for incoming direction d: right-forward
  // and left-forward of the edge we would walk next.
  std::pair<int, int> rf_tile(int cx, int cy, int d) const { return right_tile(cx, cy, d); }
  std::pair<int, int> lf_tile(int cx, int cy, int d) const {
    switch (d) {
      case E: return {cx, cy - 1};
      case S: return {cx, cy};
      case W: return {cx - 1, cy};
      default: return {cx - 1, cy - 1};
    }
  }

  // Walk one full crack ring starting from corner (cx, cy) in direction d0,
  // labeling every foreground tile the ring borders. Returns the turn
  // corners in walk order.
  geom::Ring trace(int cx, int cy, int d0, int label) {
    geom::Ring ring;
    const int start_x = cx, start_y = cy;
    int d = d0;
    while (true) {
      // Walk the edge from (cx, cy) in direction d.
      auto [tx, ty] = right_tile(cx, cy, d);
      labels[static_cast<std::size_t>(ty) * width + tx] = label;
      if (d == E) walked_h[static_cast<std::size_t>(cy) * width + cx] = 1;
      if (d == W) walked_h[static_cast<std::size_t>(cy) * width + (cx - 1)] = 1;
      cx += kDx[d];
      cy += kDy[d];

      int nd;
      auto [lfx, lfy] = lf_tile(cx, cy, d);
      if (is_fg(lfx, lfy)) {
        nd = turn_left(d);
      } else {
        auto [rfx, rfy] = rf_tile(cx, cy, d);
        nd = is_fg(rfx, rfy) ? d : turn_right(d);
      }
      if (nd != d) ring.push_back(geom::Point(cx, cy));
      if (cx == start_x && cy == start_y && nd == d0) break;
      d = nd;
    }
    return ring;
  }
};

}  // namespace

std::pair<LabeledGrid, std::vector<Component>> label_components(int width, int height,
                                                                const TilePredicate& pred) {
  LabeledGrid grid;
  grid.width = width;
  grid.height = height;
  grid.labels.assign(static_cast<std::size_t>(width) * height, 0);

  std::vector<Component> components;
  // Horizontal crack edge marks: edge from corner (cx, cy) to (cx+1, cy),
  // with cy in [0, height]; only rows 1..height are ever queried.
  std::vector<char> walked_h(static_cast<std::size_t>(width) * (height + 1), 0);

  Tracer tracer{width, height, pred, grid.labels, walked_h};

  auto label_at = [&](int x, int y) -> int& {
    return grid.labels[static_cast<std::size_t>(y) * width + x];
  };

  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (!pred(x, y)) continue;

      bool bg_above = (y == 0) || !pred(x, y - 1);
      if (label_at(x, y) == 0 && bg_above) {
        Component comp;
        comp.id = static_cast<int>(components.size()) + 1;
        comp.outer = tracer.trace(x, y, E, comp.id);
        components.push_back(std::move(comp));
      }

      bool bg_below = (y == height - 1) || !pred(x, y + 1);
      if (bg_below && !walked_h[static_cast<std::size_t>(y + 1) * width + x]) {
        if (label_at(x, y) == 0) label_at(x, y) = label_at(x - 1, y);
        int lab = label_at(x, y);
        assert(lab > 0);
        geom::Ring hole = tracer.trace(x + 1, y + 1, W, lab);
        components[lab - 1].holes.push_back(std::move(hole));
      }

      if (label_at(x, y) == 0) label_at(x, y) = label_at(x - 1, y);
    }
  }

  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      int lab = label_at(x, y);
      if (lab > 0) {
        components[lab - 1].tile_count += 1;
        components[lab - 1].tiles.push_back(geom::Tile{x, y});
      }
    }
  }
  grid.component_count = static_cast<int>(components.size());
  return {std::move(grid), std::move(components)};
}

}  // namespace terracut::label
