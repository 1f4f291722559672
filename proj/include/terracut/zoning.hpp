#pragma once

#include "terracut/geometry.hpp"
#include "terracut/labeling.hpp"
#include "terracut/map_model.hpp"

#include <optional>
#include <vector>

namespace terracut::zone {

using geom::Tile;

struct ResourceCluster {
  int id = 0;
  std::vector<map::Resource> members;
  geom::Point centroid;  // mean of member tile centers
  geom::Box bbox;        // over member tile squares
};

// Maximal 8-connected sub-area of a component with uniform height level and
// buildability.
struct Zone {
  int id = 0;
  int component_id = 0;
  int height_level = 0;
  bool buildable = false;
  std::vector<Tile> tiles;
  geom::Polygon contour_raw;  // corner-traced
  geom::Polygon contour;      // simplified
  std::vector<ResourceCluster> clusters;
};

enum class ZoneKind {
  needs_split,
  single_cluster,
  exception_island,
  exception_unbuildable_surround,
  exception_no_cluster,
};

// Zone ids adjacent (4-neighbor tiles) to each zone, and whether the parent
// component holds anything besides the zone itself.
struct ZoneAdjacency {
  std::vector<std::vector<int>> neighbors;  // indexed by zone id
  std::vector<int> zone_of_tile;            // row-major, -1 where no zone
};

std::vector<Zone> split_into_zones(const label::Component& component, const map::TileGrid& grid,
                                   int first_zone_id, double simplify_epsilon);

ZoneAdjacency build_zone_adjacency(const std::vector<Zone>& zones, const map::TileGrid& grid);

// Simplified contours of every unbuildable zone; these are the natural
// choke areas (ramps, bridges).
std::vector<std::pair<int, geom::Polygon>> contour_unbuildable_zones(const std::vector<Zone>& zones);

// Single-linkage clustering with a Euclidean threshold over member tile
// centers. Deterministic: independent of the input order.
std::vector<ResourceCluster> cluster_resources(const Zone& zone,
                                               const std::vector<map::Resource>& resources,
                                               double threshold);

ZoneKind classify_zone(const Zone& zone, const std::vector<Zone>& all_zones,
                       const ZoneAdjacency& adjacency);

}  // namespace terracut::zone
