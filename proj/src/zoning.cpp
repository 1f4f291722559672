#include "terracut/zoning.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace terracut::zone {

std::vector<Zone> split_into_zones(const label::Component& component, const map::TileGrid& grid,
                                   int first_zone_id, double simplify_epsilon) {
  // Signatures present in this component, in scan order of first appearance.
  std::vector<std::pair<int, bool>> signatures;
  std::vector<char> in_component(static_cast<std::size_t>(grid.width) * grid.height, 0);
  for (const Tile& t : component.tiles) in_component[grid.idx(t.x, t.y)] = 1;
  for (const Tile& t : component.tiles) {
    std::pair<int, bool> sig{grid.level(t.x, t.y), grid.is_buildable(t.x, t.y)};
    if (std::find(signatures.begin(), signatures.end(), sig) == signatures.end())
      signatures.push_back(sig);
  }

  std::vector<Zone> zones;
  int next_id = first_zone_id;
  for (const auto& [level, build] : signatures) {
    auto pred = [&, level = level, build = build](int x, int y) {
      if (!in_component[grid.idx(x, y)]) return false;
      return grid.level(x, y) == level && grid.is_buildable(x, y) == build;
    };
    auto [labeled, parts] = label::label_components(grid.width, grid.height, pred);
    (void)labeled;
    for (label::Component& part : parts) {
      Zone z;
      z.id = next_id++;
      z.component_id = component.id;
      z.height_level = level;
      z.buildable = build;
      z.tiles = std::move(part.tiles);
      z.contour_raw.outer = std::move(part.outer);
      z.contour_raw.holes = std::move(part.holes);
      z.contour = geom::simplify_polygon(z.contour_raw, simplify_epsilon);
      zones.push_back(std::move(z));
    }
  }
  return zones;
}

ZoneAdjacency build_zone_adjacency(const std::vector<Zone>& zones, const map::TileGrid& grid) {
  ZoneAdjacency adj;
  adj.zone_of_tile.assign(static_cast<std::size_t>(grid.width) * grid.height, -1);
  int max_id = -1;
  for (const Zone& z : zones) max_id = std::max(max_id, z.id);
  adj.neighbors.assign(max_id + 1, {});

  for (const Zone& z : zones)
    for (const Tile& t : z.tiles) adj.zone_of_tile[grid.idx(t.x, t.y)] = z.id;

  std::set<std::pair<int, int>> edges;
  for (int y = 0; y < grid.height; ++y) {
    for (int x = 0; x < grid.width; ++x) {
      int a = adj.zone_of_tile[grid.idx(x, y)];
      if (a < 0) continue;
      if (x + 1 < grid.width) {
        int b = adj.zone_of_tile[grid.idx(x + 1, y)];
        if (b >= 0 && b != a) edges.insert({std::min(a, b), std::max(a, b)});
      }
      if (y + 1 < grid.height) {
        int b = adj.zone_of_tile[grid.idx(x, y + 1)];
        if (b >= 0 && b != a) edges.insert({std::min(a, b), std::max(a, b)});
      }
    }
  }
  for (const auto& [a, b] : edges) {
    adj.neighbors[a].push_back(b);
    adj.neighbors[b].push_back(a);
  }
  return adj;
}

std::vector<std::pair<int, geom::Polygon>> contour_unbuildable_zones(
    const std::vector<Zone>& zones) {
  std::vector<std::pair<int, geom::Polygon>> out;
  for (const Zone& z : zones)
    if (!z.buildable) out.emplace_back(z.id, z.contour);
  return out;
}

std::vector<ResourceCluster> cluster_resources(const Zone& zone,
                                               const std::vector<map::Resource>& resources,
                                               double threshold) {
  // Keep only resources on this zone's tiles, in row-major order so the
  // result is independent of the caller's ordering.
  std::set<std::pair<int, int>> zone_tiles;
  for (const Tile& t : zone.tiles) zone_tiles.insert({t.x, t.y});
  std::vector<map::Resource> members;
  for (const map::Resource& r : resources)
    if (zone_tiles.count({r.x, r.y})) members.push_back(r);
  std::sort(members.begin(), members.end(), [](const map::Resource& a, const map::Resource& b) {
    return std::tie(a.y, a.x) < std::tie(b.y, b.x);
  });

  const std::size_t n = members.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };

  const geom::Rat thr2 = geom::Rat(threshold) * geom::Rat(threshold);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      long long dx = members[i].x - members[j].x;
      long long dy = members[i].y - members[j].y;
      if (geom::Rat(dx * dx + dy * dy) <= thr2) parent[find(i)] = find(j);
    }
  }

  std::map<std::size_t, std::vector<map::Resource>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(members[i]);

  // Order clusters by their first member (row-major) for stable ids.
  std::vector<std::vector<map::Resource>> ordered;
  for (auto& [root, g] : groups) ordered.push_back(std::move(g));
  std::sort(ordered.begin(), ordered.end(),
            [](const std::vector<map::Resource>& a, const std::vector<map::Resource>& b) {
              return std::tie(a[0].y, a[0].x) < std::tie(b[0].y, b[0].x);
            });

  std::vector<ResourceCluster> clusters;
  for (std::size_t c = 0; c < ordered.size(); ++c) {
    ResourceCluster cl;
    cl.id = static_cast<int>(c);
    cl.members = std::move(ordered[c]);
    geom::Rat sx = 0, sy = 0;
    double min_x = 1e30, min_y = 1e30, max_x = -1e30, max_y = -1e30;
    for (const map::Resource& r : cl.members) {
      sx += geom::Rat(2 * r.x + 1, 2);
      sy += geom::Rat(2 * r.y + 1, 2);
      min_x = std::min(min_x, static_cast<double>(r.x));
      min_y = std::min(min_y, static_cast<double>(r.y));
      max_x = std::max(max_x, static_cast<double>(r.x) + 1);
      max_y = std::max(max_y, static_cast<double>(r.y) + 1);
    }
    cl.centroid = geom::Point(sx / static_cast<int>(cl.members.size()),
                              sy / static_cast<int>(cl.members.size()));
    cl.bbox = geom::Box{min_x, min_y, max_x, max_y};
    clusters.push_back(std::move(cl));
  }
  return clusters;
}

ZoneKind classify_zone(const Zone& zone, const std::vector<Zone>& all_zones,
                       const ZoneAdjacency& adjacency) {
  if (zone.clusters.size() >= 2) return ZoneKind::needs_split;
  if (zone.clusters.size() == 1) return ZoneKind::single_cluster;

  const std::vector<int>& neigh = adjacency.neighbors[zone.id];
  bool component_has_others = false;
  for (const Zone& z : all_zones)
    if (z.component_id == zone.component_id && z.id != zone.id) component_has_others = true;
  if (!component_has_others && neigh.empty()) return ZoneKind::exception_island;

  auto zone_by_id = [&](int id) -> const Zone* {
    for (const Zone& z : all_zones)
      if (z.id == id) return &z;
    return nullptr;
  };
  bool any = false, all_unbuildable = true;
  for (int id : neigh) {
    const Zone* z = zone_by_id(id);
    if (!z) continue;
    any = true;
    if (z->buildable) all_unbuildable = false;
  }
  if (any && all_unbuildable) return ZoneKind::exception_unbuildable_surround;
  return ZoneKind::exception_no_cluster;
}

}  // namespace terracut::zone
