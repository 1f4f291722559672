#pragma once

#include "terracut/map_model.hpp"
#include "terracut/separation.hpp"
#include "terracut/solver.hpp"
#include "terracut/zoning.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace terracut::region {

enum class RegionKind { standard, island, unbuildable_choke_area, no_cluster_exception };

struct Region {
  int id = 0;
  geom::Polygon polygon;
  double area = 0;
  std::optional<int> cluster_id;  // global cluster id, standard regions only
  RegionKind kind = RegionKind::standard;
  int zone_id = 0;
  int component_id = 0;
  std::vector<geom::Tile> tiles;
};

enum class ChokeKind { separation, unbuildable_zone };

struct ChokePoint {
  int id = 0;
  ChokeKind kind = ChokeKind::separation;
  geom::Segment segment;  // separation chokes
  geom::Polygon polygon;  // unbuildable-zone chokes
  std::array<int, 2> joins{-1, -1};
};

struct ZoneOutput {
  zone::Zone zone;
  zone::ZoneKind kind = zone::ZoneKind::single_cluster;
  std::vector<int> cluster_global_ids;
  std::vector<geom::Segment> separations;  // solved chords, empty unless split
};

struct ZoneSolveStats {
  int zone_id = 0;
  int variables = 0;
  int required = 0;
  long long iterations = 0;
  double solve_ms = 0;  // nominal in deterministic mode
  int retries = 0;
  bool feasible = true;
  std::string note;
};

struct StageTimes {
  double labeling_ms = 0;
  double zoning_ms = 0;
  double simplify_ms = 0;
  double clustering_ms = 0;
  double solving_ms = 0;
  double region_ms = 0;
  double total_ms = 0;
};

struct AnalysisParams {
  double epsilon = 1.0;            // contour simplification tolerance
  double cluster_threshold = 12.0; // single-linkage distance
  double max_edge = 10.0;          // contour enrichment edge cap
};

struct AnalysisResult {
  std::string map_name;
  sep::Objective objective = sep::Objective::min_separation_length;
  solver::SolverConfig config;
  AnalysisParams params;

  std::vector<ZoneOutput> zones;
  // Global cluster id -> (zone id, index in that zone's cluster list).
  std::vector<std::array<int, 2>> cluster_index;
  std::vector<Region> regions;
  std::vector<ChokePoint> chokes;
  std::vector<std::array<int, 2>> adjacency;
  std::vector<ZoneSolveStats> zone_stats;
  StageTimes stages;
  bool all_feasible = true;
};

// Full pipeline: components, zones, clusters, per-zone models and solves,
// region polygons, chokes, adjacency. Deterministic for a fixed seed.
AnalysisResult analyze(const map::MapData& map, sep::Objective objective,
                       const solver::SolverConfig& config, const AnalysisParams& params = {});

// Recomputes only the components touched by the destroyed obstacle; all
// other regions, ids included, carry over verbatim.
AnalysisResult merge_and_resolve(const AnalysisResult& result, const map::MapData& map,
                                 const std::string& obstacle_id);

// Edge (r1, r2) iff a choke joins the regions or their tiles share an edge.
std::vector<std::array<int, 2>> region_adjacency(const std::vector<Region>& regions,
                                                 const std::vector<ChokePoint>& chokes,
                                                 const map::TileGrid& grid);

// Result JSON per the documented schema; numbers are emitted as
// shortest-round-trip doubles so a reload re-serializes byte-identically.
std::string result_to_json(const AnalysisResult& result);
AnalysisResult result_from_json(const std::string& text);

const char* to_string(RegionKind kind);
const char* to_string(ChokeKind kind);
const char* to_string(sep::Objective objective);

}  // namespace terracut::region
