#pragma once

#include "terracut/geometry.hpp"
#include "terracut/map_model.hpp"
#include "terracut/zoning.hpp"

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace terracut::sep {

enum class Objective { min_separation_length, least_squares_areas };

// A candidate chord between two vertices of the zone's enriched contour.
struct Separation {
  int id = 0;  // 1-based variable index
  geom::Point a;
  geom::Point b;
  double length = 0;
  std::vector<geom::Tile> covered_tiles;
  // Positions of a and b in the enriched outer ring, ring_u < ring_v.
  int ring_u = 0;
  int ring_v = 0;
};

struct model_too_small_error : std::runtime_error {
  explicit model_too_small_error(const std::string& what) : std::runtime_error(what) {}
};

// Binary-variable model for one zone: pick required_selected separations so
// that no two cross and every resulting region holds exactly one cluster.
// The side tables let the search evaluate both error functions and the
// objective without touching polygon geometry per move.
struct EfopModel {
  std::vector<Separation> candidates;
  int n_clusters = 0;
  int required_selected = 0;
  int zone_id = 0;
  Objective objective = Objective::min_separation_length;

  geom::Polygon zone_polygon;  // simplified + enriched; chords live on its outer ring
  int ring_size = 0;

  // crossings[i][j]: candidate segments i and j properly cross (0-based).
  std::vector<boost::dynamic_bitset<>> crossings;
  // Per candidate, the exact area of the sub-polygon on the "low arc" side
  // (ring indices u..v) and the complement; holes already subtracted.
  std::vector<double> area_low;
  std::vector<double> area_high;
  double total_area = 0;
  // Per candidate, bit c set iff cluster c's centroid falls on the low-arc
  // side of that chord alone.
  std::vector<std::uint32_t> cluster_side_low;
};

// Subdivides every ring edge longer than max_edge into equal parts; the
// curve itself is unchanged.
geom::Polygon enrich_contour(const geom::Polygon& contour, double max_edge);

// Grid-backed lookups the candidate filter needs.
struct FilterContext {
  const map::TileGrid* grid = nullptr;
  std::vector<char> resource_tile;  // row-major
  std::vector<char> zone_tile;      // row-major
  const geom::Polygon* zone_polygon = nullptr;
  int ring_size = 0;

  FilterContext(const zone::Zone& zone, const map::MapData& map, const geom::Polygon& enriched);
};

// Keep rule: the chord must stay strictly inside the zone, covering only
// zone tiles and no resources, and must not run along the contour.
bool filter_candidate(const Separation& s, const FilterContext& ctx);

std::vector<Separation> generate_candidates(const zone::Zone& zone, const geom::Polygon& enriched,
                                            const map::MapData& map);

EfopModel build_model(const zone::Zone& zone, const geom::Polygon& enriched,
                      const map::MapData& map, Objective objective);

}  // namespace terracut::sep
