#include "terracut/region.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <map>
#include <set>

namespace terracut::region {

using geom::Point;
using geom::Rat;
using geom::Segment;
using geom::Tile;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct IdAllocators {
  int next_zone = 0;
  int next_cluster = 0;
  int next_region = 0;
  int next_choke = 0;
};

struct ComponentOutput {
  std::vector<ZoneOutput> zones;
  std::vector<std::array<int, 2>> cluster_index;
  std::vector<Region> regions;
  std::vector<ChokePoint> chokes;  // separation chokes only; joins are final
  std::vector<ZoneSolveStats> stats;
  bool all_feasible = true;
  double simplify_ms = 0;
  double clustering_ms = 0;
  double solving_ms_nominal = 0;
  double solving_ms_wall = 0;
};

int tile_region_of_face(const std::vector<geom::Polygon>& faces, const Point& center) {
  for (std::size_t f = 0; f < faces.size(); ++f)
    if (geom::point_in_polygon(center, faces[f]) == geom::PointLocation::inside)
      return static_cast<int>(f);
  for (std::size_t f = 0; f < faces.size(); ++f)
    if (geom::point_in_polygon(center, faces[f]) == geom::PointLocation::boundary)
      return static_cast<int>(f);
  for (std::size_t f = 0; f < faces.size(); ++f)
    if (geom::point_in_ring(center, faces[f].outer) != geom::PointLocation::outside)
      return static_cast<int>(f);
  return 0;
}

RegionKind region_kind_for(zone::ZoneKind kind, bool buildable) {
  if (!buildable) return RegionKind::unbuildable_choke_area;
  switch (kind) {
    case zone::ZoneKind::exception_island: return RegionKind::island;
    case zone::ZoneKind::exception_unbuildable_surround:
    case zone::ZoneKind::exception_no_cluster: return RegionKind::no_cluster_exception;
    default: return RegionKind::standard;
  }
}

// Zones, clusters, models, solves and regions for one walkable component.
ComponentOutput analyze_component(const label::Component& comp, const map::MapData& map,
                                  sep::Objective objective, const solver::SolverConfig& config,
                                  const AnalysisParams& params, IdAllocators& ids) {
  ComponentOutput out;

  std::vector<zone::Zone> zones =
      zone::split_into_zones(comp, map.grid, ids.next_zone, params.epsilon);
  ids.next_zone += static_cast<int>(zones.size());

  auto t_simpl = Clock::now();
  for (zone::Zone& z : zones) z.contour = geom::simplify_polygon(z.contour_raw, params.epsilon);
  out.simplify_ms = ms_since(t_simpl);

  auto t_clust = Clock::now();
  zone::ZoneAdjacency adjacency = zone::build_zone_adjacency(zones, map.grid);
  for (zone::Zone& z : zones)
    if (z.buildable) z.clusters = zone::cluster_resources(z, map.resources, params.cluster_threshold);
  out.clustering_ms = ms_since(t_clust);

  for (zone::Zone& z : zones) {
    ZoneOutput zo;
    zo.kind = z.buildable ? zone::classify_zone(z, zones, adjacency)
                          : zone::ZoneKind::exception_no_cluster;
    for (std::size_t c = 0; c < z.clusters.size(); ++c) {
      zo.cluster_global_ids.push_back(ids.next_cluster++);
      out.cluster_index.push_back({z.id, static_cast<int>(c)});
    }
    zo.zone = std::move(z);
    out.zones.push_back(std::move(zo));
  }

  for (ZoneOutput& zo : out.zones) {
    const zone::Zone& z = zo.zone;

    if (zo.kind != zone::ZoneKind::needs_split) {
      Region r;
      r.id = ids.next_region++;
      r.polygon = z.contour;
      r.area = geom::to_double(geom::polygon_area(z.contour));
      r.kind = region_kind_for(zo.kind, z.buildable);
      if (zo.kind == zone::ZoneKind::single_cluster) r.cluster_id = zo.cluster_global_ids[0];
      r.zone_id = z.id;
      r.component_id = comp.id;
      r.tiles = z.tiles;
      out.regions.push_back(std::move(r));
      continue;
    }

    auto t_solve = Clock::now();
    ZoneSolveStats st;
    st.zone_id = z.id;
    st.required = static_cast<int>(z.clusters.size()) - 1;

    // The simplified contour must still contain every centroid; tighten the
    // tolerance locally when RDP cut a corner too close.
    geom::Polygon contour = z.contour;
    double eps = params.epsilon;
    auto centroids_inside = [&](const geom::Polygon& poly) {
      for (const zone::ResourceCluster& c : z.clusters)
        if (geom::point_in_polygon(c.centroid, poly) == geom::PointLocation::outside) return false;
      return true;
    };
    while (!centroids_inside(contour) && eps > 1e-6) {
      eps /= 2;
      contour = geom::simplify_polygon(z.contour_raw, eps);
    }
    if (!centroids_inside(contour)) contour = z.contour_raw;
    geom::Polygon enriched = sep::enrich_contour(contour, params.max_edge);

    bool solved = false;
    std::vector<Segment> chords;
    try {
      sep::EfopModel model = sep::build_model(z, enriched, map, objective);
      st.variables = static_cast<int>(model.candidates.size());
      solver::Solution sol = solver::solve(model, z, config);
      st.iterations = sol.iterations;
      st.solve_ms = sol.wall_time_ms;
      st.retries = sol.retries_used;
      st.feasible = sol.feasible;
      st.note = sol.diagnostic;
      if (sol.feasible) {
        for (int id : sol.assignment.selected) {
          const sep::Separation& s = model.candidates[id - 1];
          chords.emplace_back(s.a, s.b);
        }
        solved = true;
      }
    } catch (const sep::model_too_small_error& e) {
      st.feasible = false;
      st.note = e.what();
    }
    out.solving_ms_wall += ms_since(t_solve);
    out.solving_ms_nominal += st.solve_ms;
    if (!st.feasible) out.all_feasible = false;
    out.stats.push_back(st);

    if (!solved) {
      // Unsolved multi-cluster zone: exported unsplit, flagged in the stats.
      Region r;
      r.id = ids.next_region++;
      r.polygon = z.contour;
      r.area = geom::to_double(geom::polygon_area(z.contour));
      r.kind = RegionKind::standard;
      r.zone_id = z.id;
      r.component_id = comp.id;
      r.tiles = z.tiles;
      out.regions.push_back(std::move(r));
      continue;
    }

    zo.separations = chords;
    geom::ChordSplit split = geom::split_by_chords(enriched, chords);

    std::vector<int> face_region(split.faces.size());
    for (std::size_t f = 0; f < split.faces.size(); ++f) {
      Region r;
      r.id = ids.next_region++;
      face_region[f] = r.id;
      r.polygon = split.faces[f];
      r.area = geom::to_double(geom::polygon_area(split.faces[f]));
      r.kind = RegionKind::standard;
      r.zone_id = z.id;
      r.component_id = comp.id;
      out.regions.push_back(std::move(r));
    }

    // Clusters and tiles land in the face that contains them.
    std::vector<Region*> zone_regions;
    for (Region& r : out.regions)
      if (r.zone_id == z.id) zone_regions.push_back(&r);
    for (std::size_t c = 0; c < z.clusters.size(); ++c) {
      int f = solver::locate_cluster_region(z.clusters[c], split.faces);
      if (!zone_regions[f]->cluster_id) zone_regions[f]->cluster_id = zo.cluster_global_ids[c];
    }
    for (const Tile& t : z.tiles) {
      Point center(Rat(2 * t.x + 1, 2), Rat(2 * t.y + 1, 2));
      zone_regions[tile_region_of_face(split.faces, center)]->tiles.push_back(t);
    }

    for (std::size_t ci = 0; ci < chords.size(); ++ci) {
      ChokePoint ch;
      ch.id = ids.next_choke++;
      ch.kind = ChokeKind::separation;
      ch.segment = chords[ci];
      ch.joins = {face_region[split.chord_faces[ci][0]], face_region[split.chord_faces[ci][1]]};
      out.chokes.push_back(std::move(ch));
    }
  }
  return out;
}

std::vector<std::array<int, 2>> tile_adjacency_pairs(const std::vector<Region>& regions,
                                                     const map::TileGrid& grid) {
  std::vector<int> region_of(static_cast<std::size_t>(grid.width) * grid.height, -1);
  for (const Region& r : regions)
    for (const Tile& t : r.tiles) region_of[grid.idx(t.x, t.y)] = r.id;
  std::set<std::array<int, 2>> pairs;
  for (int y = 0; y < grid.height; ++y) {
    for (int x = 0; x < grid.width; ++x) {
      int a = region_of[grid.idx(x, y)];
      if (a < 0) continue;
      if (x + 1 < grid.width) {
        int b = region_of[grid.idx(x + 1, y)];
        if (b >= 0 && b != a) pairs.insert({std::min(a, b), std::max(a, b)});
      }
      if (y + 1 < grid.height) {
        int b = region_of[grid.idx(x, y + 1)];
        if (b >= 0 && b != a) pairs.insert({std::min(a, b), std::max(a, b)});
      }
    }
  }
  return {pairs.begin(), pairs.end()};
}

// Chokes through unbuildable zones: one entry per pair of distinct regions
// that touch the zone.
std::vector<ChokePoint> unbuildable_zone_chokes(const std::vector<Region>& regions,
                                                const map::TileGrid& grid, int& next_choke) {
  std::vector<ChokePoint> chokes;
  std::vector<std::array<int, 2>> pairs = tile_adjacency_pairs(regions, grid);
  for (const Region& u : regions) {
    if (u.kind != RegionKind::unbuildable_choke_area) continue;
    std::vector<int> neighbors;
    for (const auto& [a, b] : pairs) {
      if (a == u.id) neighbors.push_back(b);
      if (b == u.id) neighbors.push_back(a);
    }
    std::sort(neighbors.begin(), neighbors.end());
    for (std::size_t i = 0; i < neighbors.size(); ++i) {
      for (std::size_t j = i + 1; j < neighbors.size(); ++j) {
        ChokePoint ch;
        ch.id = next_choke++;
        ch.kind = ChokeKind::unbuildable_zone;
        ch.polygon = u.polygon;
        ch.joins = {neighbors[i], neighbors[j]};
        chokes.push_back(std::move(ch));
      }
    }
  }
  return chokes;
}

void append_component_output(AnalysisResult& result, ComponentOutput&& out) {
  for (auto& z : out.zones) result.zones.push_back(std::move(z));
  for (auto& c : out.cluster_index) result.cluster_index.push_back(c);
  for (auto& r : out.regions) result.regions.push_back(std::move(r));
  for (auto& ch : out.chokes) result.chokes.push_back(std::move(ch));
  for (auto& s : out.stats) result.zone_stats.push_back(std::move(s));
  if (!out.all_feasible) result.all_feasible = false;
}

}  // namespace

std::vector<std::array<int, 2>> region_adjacency(const std::vector<Region>& regions,
                                                 const std::vector<ChokePoint>& chokes,
                                                 const map::TileGrid& grid) {
  std::set<std::array<int, 2>> edges;
  for (const auto& p : tile_adjacency_pairs(regions, grid)) edges.insert(p);
  for (const ChokePoint& ch : chokes) {
    if (ch.joins[0] < 0 || ch.joins[1] < 0 || ch.joins[0] == ch.joins[1]) continue;
    edges.insert({std::min(ch.joins[0], ch.joins[1]), std::max(ch.joins[0], ch.joins[1])});
  }
  return {edges.begin(), edges.end()};
}

AnalysisResult analyze(const map::MapData& map, sep::Objective objective,
                       const solver::SolverConfig& config, const AnalysisParams& params) {
  AnalysisResult result;
  result.map_name = map.name;
  result.objective = objective;
  result.config = config;
  result.params = params;

  const auto t_total = Clock::now();
  auto t0 = Clock::now();
  auto [labeled, components] =
      label::label_components(map.grid.width, map.grid.height,
                              [&](int x, int y) { return map.grid.is_walkable(x, y); });
  (void)labeled;
  result.stages.labeling_ms = ms_since(t0);

  IdAllocators ids;
  double zoning_wall = 0;
  for (const label::Component& comp : components) {
    auto t_comp = Clock::now();
    ComponentOutput out = analyze_component(comp, map, objective, config, params, ids);
    double comp_ms = ms_since(t_comp);
    zoning_wall +=
        comp_ms - out.simplify_ms - out.clustering_ms - out.solving_ms_wall;
    result.stages.simplify_ms += out.simplify_ms;
    result.stages.clustering_ms += out.clustering_ms;
    result.stages.solving_ms +=
        config.deterministic ? out.solving_ms_nominal : out.solving_ms_wall;
    append_component_output(result, std::move(out));
  }
  result.stages.zoning_ms = std::max(0.0, zoning_wall);

  t0 = Clock::now();
  std::vector<ChokePoint> uz = unbuildable_zone_chokes(result.regions, map.grid, ids.next_choke);
  for (auto& ch : uz) result.chokes.push_back(std::move(ch));
  result.adjacency = region_adjacency(result.regions, result.chokes, map.grid);
  result.stages.region_ms = ms_since(t0);
  result.stages.total_ms = result.stages.labeling_ms + result.stages.zoning_ms +
                           result.stages.simplify_ms + result.stages.clustering_ms +
                           result.stages.solving_ms + result.stages.region_ms;
  (void)t_total;
  return result;
}

AnalysisResult merge_and_resolve(const AnalysisResult& result, const map::MapData& map,
                                 const std::string& obstacle_id) {
  const map::DestructibleObstacle* obstacle = nullptr;
  for (const map::DestructibleObstacle& o : map.obstacles)
    if (o.id == obstacle_id) obstacle = &o;
  if (!obstacle) throw std::invalid_argument("unknown obstacle id '" + obstacle_id + "'");

  map::MapData next = map::apply_obstacle_destruction(map, obstacle_id);

  // Old components whose tiles sit within one step of the footprint change
  // shape; everything else carries over untouched.
  std::set<std::pair<int, int>> hot;
  for (const Tile& t : obstacle->footprint)
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) hot.insert({t.x + dx, t.y + dy});

  std::set<int> affected_zones;
  std::set<int> affected_components;
  for (const ZoneOutput& zo : result.zones) {
    bool touched = false;
    for (const Tile& t : zo.zone.tiles)
      if (hot.count({t.x, t.y})) {
        touched = true;
        break;
      }
    if (touched) affected_components.insert(zo.zone.component_id);
  }
  for (const ZoneOutput& zo : result.zones)
    if (affected_components.count(zo.zone.component_id)) affected_zones.insert(zo.zone.id);

  AnalysisResult merged;
  merged.map_name = result.map_name;
  merged.objective = result.objective;
  merged.config = result.config;
  merged.params = result.params;

  IdAllocators ids;
  for (const ZoneOutput& zo : result.zones) ids.next_zone = std::max(ids.next_zone, zo.zone.id + 1);
  ids.next_cluster = static_cast<int>(result.cluster_index.size());
  for (const Region& r : result.regions) ids.next_region = std::max(ids.next_region, r.id + 1);
  for (const ChokePoint& ch : result.chokes) ids.next_choke = std::max(ids.next_choke, ch.id + 1);

  std::set<int> kept_regions;
  for (const ZoneOutput& zo : result.zones) {
    if (affected_zones.count(zo.zone.id)) continue;
    merged.zones.push_back(zo);
  }
  merged.cluster_index = result.cluster_index;  // global cluster ids are stable
  for (const Region& r : result.regions) {
    if (affected_zones.count(r.zone_id)) continue;
    merged.regions.push_back(r);
    kept_regions.insert(r.id);
  }
  for (const ChokePoint& ch : result.chokes) {
    if (ch.kind == ChokeKind::separation &&
        (!kept_regions.count(ch.joins[0]) || !kept_regions.count(ch.joins[1])))
      continue;
    if (ch.kind == ChokeKind::unbuildable_zone) continue;  // rebuilt below
    merged.chokes.push_back(ch);
  }
  for (const ZoneSolveStats& st : result.zone_stats) {
    if (affected_zones.count(st.zone_id)) continue;
    merged.zone_stats.push_back(st);
    if (!st.feasible) merged.all_feasible = false;
  }

  // Recompute the components that now include the footprint or an affected
  // neighbourhood.
  auto [labeled, components] =
      label::label_components(next.grid.width, next.grid.height,
                              [&](int x, int y) { return next.grid.is_walkable(x, y); });
  (void)labeled;
  std::set<std::pair<int, int>> affected_tiles;
  for (const Tile& t : obstacle->footprint) affected_tiles.insert({t.x, t.y});
  for (const ZoneOutput& zo : result.zones)
    if (affected_zones.count(zo.zone.id))
      for (const Tile& t : zo.zone.tiles) affected_tiles.insert({t.x, t.y});

  for (const label::Component& comp : components) {
    bool touched = false;
    for (const Tile& t : comp.tiles)
      if (affected_tiles.count({t.x, t.y})) {
        touched = true;
        break;
      }
    if (!touched) continue;
    ComponentOutput out =
        analyze_component(comp, next, result.objective, result.config, result.params, ids);
    merged.stages.simplify_ms += out.simplify_ms;
    merged.stages.clustering_ms += out.clustering_ms;
    merged.stages.solving_ms +=
        result.config.deterministic ? out.solving_ms_nominal : out.solving_ms_wall;
    append_component_output(merged, std::move(out));
  }

  std::vector<ChokePoint> uz =
      unbuildable_zone_chokes(merged.regions, next.grid, ids.next_choke);
  for (auto& ch : uz) merged.chokes.push_back(std::move(ch));
  merged.adjacency = region_adjacency(merged.regions, merged.chokes, next.grid);
  return merged;
}

const char* to_string(RegionKind kind) {
  switch (kind) {
    case RegionKind::standard: return "standard";
    case RegionKind::island: return "island";
    case RegionKind::unbuildable_choke_area: return "unbuildable_choke_area";
    default: return "no_cluster_exception";
  }
}

const char* to_string(ChokeKind kind) {
  return kind == ChokeKind::separation ? "separation" : "unbuildable_zone";
}

const char* to_string(sep::Objective objective) {
  return objective == sep::Objective::min_separation_length ? "min-sep" : "areas";
}

namespace {

using nlohmann::json;

json ring_to_json(const geom::Ring& ring) {
  json arr = json::array();
  for (const Point& p : ring) arr.push_back({geom::to_double(p.x), geom::to_double(p.y)});
  return arr;
}

geom::Ring ring_from_json(const json& arr) {
  geom::Ring ring;
  for (const json& p : arr) ring.push_back(Point(Rat(p[0].get<double>()), Rat(p[1].get<double>())));
  return ring;
}

json polygon_to_json(const geom::Polygon& poly) {
  json holes = json::array();
  for (const geom::Ring& h : poly.holes) holes.push_back(ring_to_json(h));
  return {{"outer", ring_to_json(poly.outer)}, {"holes", holes}};
}

geom::Polygon polygon_from_json(const json& j) {
  geom::Polygon poly;
  poly.outer = ring_from_json(j.at("outer"));
  for (const json& h : j.at("holes")) poly.holes.push_back(ring_from_json(h));
  return poly;
}

}  // namespace

std::string result_to_json(const AnalysisResult& result) {
  json j;
  j["map"] = result.map_name;
  j["objective"] = to_string(result.objective);
  j["seed"] = result.config.seed;

  json regions = json::array();
  for (const Region& r : result.regions) {
    json jr;
    jr["id"] = r.id;
    jr["kind"] = to_string(r.kind);
    if (r.cluster_id)
      jr["cluster_id"] = *r.cluster_id;
    else
      jr["cluster_id"] = nullptr;
    jr["area"] = r.area;
    jr["polygon"] = polygon_to_json(r.polygon);
    regions.push_back(std::move(jr));
  }
  j["regions"] = std::move(regions);

  json chokes = json::array();
  for (const ChokePoint& ch : result.chokes) {
    json jc;
    jc["id"] = ch.id;
    jc["kind"] = to_string(ch.kind);
    if (ch.kind == ChokeKind::separation) {
      jc["geometry"] = {{"type", "segment"},
                        {"a", {geom::to_double(ch.segment.a.x), geom::to_double(ch.segment.a.y)}},
                        {"b", {geom::to_double(ch.segment.b.x), geom::to_double(ch.segment.b.y)}}};
    } else {
      json g = polygon_to_json(ch.polygon);
      g["type"] = "polygon";
      jc["geometry"] = std::move(g);
    }
    jc["joins"] = {ch.joins[0], ch.joins[1]};
    chokes.push_back(std::move(jc));
  }
  j["choke_points"] = std::move(chokes);

  json adjacency = json::array();
  for (const auto& e : result.adjacency) adjacency.push_back({e[0], e[1]});
  j["adjacency"] = std::move(adjacency);

  json stats;
  stats["all_feasible"] = result.all_feasible;
  stats["deterministic"] = result.config.deterministic;
  stats["params"] = {{"epsilon", result.params.epsilon},
                     {"cluster_threshold", result.params.cluster_threshold},
                     {"max_edge", result.params.max_edge},
                     {"timeout_ms_per_cluster", result.config.base_timeout_ms_per_cluster},
                     {"max_retries", result.config.max_retries_with_doubling}};
  json per_zone = json::array();
  for (const ZoneSolveStats& st : result.zone_stats) {
    per_zone.push_back({{"zone", st.zone_id},
                        {"variables", st.variables},
                        {"required", st.required},
                        {"iterations", st.iterations},
                        {"solve_ms", st.solve_ms},
                        {"retries", st.retries},
                        {"feasible", st.feasible},
                        {"note", st.note}});
  }
  stats["per_zone"] = std::move(per_zone);
  stats["solving_ms"] = result.stages.solving_ms;
  if (!result.config.deterministic) {
    stats["stage_ms"] = {{"labeling", result.stages.labeling_ms},
                         {"zoning", result.stages.zoning_ms},
                         {"simplify", result.stages.simplify_ms},
                         {"clustering", result.stages.clustering_ms},
                         {"solving", result.stages.solving_ms},
                         {"region_build", result.stages.region_ms},
                         {"total", result.stages.total_ms}};
  }
  j["stats"] = std::move(stats);
  return j.dump(2);
}

AnalysisResult result_from_json(const std::string& text) {
  json j = json::parse(text);
  AnalysisResult result;
  result.map_name = j.at("map").get<std::string>();
  result.objective = j.at("objective").get<std::string>() == "areas"
                         ? sep::Objective::least_squares_areas
                         : sep::Objective::min_separation_length;
  result.config.seed = j.at("seed").get<std::uint64_t>();

  for (const json& jr : j.at("regions")) {
    Region r;
    r.id = jr.at("id").get<int>();
    std::string kind = jr.at("kind").get<std::string>();
    if (kind == "standard")
      r.kind = RegionKind::standard;
    else if (kind == "island")
      r.kind = RegionKind::island;
    else if (kind == "unbuildable_choke_area")
      r.kind = RegionKind::unbuildable_choke_area;
    else
      r.kind = RegionKind::no_cluster_exception;
    if (!jr.at("cluster_id").is_null()) r.cluster_id = jr.at("cluster_id").get<int>();
    r.area = jr.at("area").get<double>();
    r.polygon = polygon_from_json(jr.at("polygon"));
    result.regions.push_back(std::move(r));
  }

  for (const json& jc : j.at("choke_points")) {
    ChokePoint ch;
    ch.id = jc.at("id").get<int>();
    ch.kind = jc.at("kind").get<std::string>() == "separation" ? ChokeKind::separation
                                                               : ChokeKind::unbuildable_zone;
    const json& g = jc.at("geometry");
    if (ch.kind == ChokeKind::separation) {
      ch.segment = Segment(Point(Rat(g.at("a")[0].get<double>()), Rat(g.at("a")[1].get<double>())),
                           Point(Rat(g.at("b")[0].get<double>()), Rat(g.at("b")[1].get<double>())));
    } else {
      ch.polygon = polygon_from_json(g);
    }
    ch.joins = {jc.at("joins")[0].get<int>(), jc.at("joins")[1].get<int>()};
    result.chokes.push_back(std::move(ch));
  }

  for (const json& e : j.at("adjacency"))
    result.adjacency.push_back({e[0].get<int>(), e[1].get<int>()});

  const json& stats = j.at("stats");
  result.all_feasible = stats.at("all_feasible").get<bool>();
  result.config.deterministic = stats.at("deterministic").get<bool>();
  result.params.epsilon = stats.at("params").at("epsilon").get<double>();
  result.params.cluster_threshold = stats.at("params").at("cluster_threshold").get<double>();
  result.params.max_edge = stats.at("params").at("max_edge").get<double>();
  result.config.base_timeout_ms_per_cluster =
      stats.at("params").at("timeout_ms_per_cluster").get<int>();
  result.config.max_retries_with_doubling = stats.at("params").at("max_retries").get<int>();
  for (const json& st : stats.at("per_zone")) {
    ZoneSolveStats zs;
    zs.zone_id = st.at("zone").get<int>();
    zs.variables = st.at("variables").get<int>();
    zs.required = st.at("required").get<int>();
    zs.iterations = st.at("iterations").get<long long>();
    zs.solve_ms = st.at("solve_ms").get<double>();
    zs.retries = st.at("retries").get<int>();
    zs.feasible = st.at("feasible").get<bool>();
    zs.note = st.at("note").get<std::string>();
    result.zone_stats.push_back(std::move(zs));
  }
  result.stages.solving_ms = stats.at("solving_ms").get<double>();
  if (stats.contains("stage_ms")) {
    const json& sm = stats.at("stage_ms");
    result.stages.labeling_ms = sm.at("labeling").get<double>();
    result.stages.zoning_ms = sm.at("zoning").get<double>();
    result.stages.simplify_ms = sm.at("simplify").get<double>();
    result.stages.clustering_ms = sm.at("clustering").get<double>();
    result.stages.region_ms = sm.at("region_build").get<double>();
    result.stages.total_ms = sm.at("total").get<double>();
  }
  return result;
}

}  // namespace terracut::region
