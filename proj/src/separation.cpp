#include "terracut/separation.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace terracut::sep {

using geom::Point;
using geom::Rat;
using geom::Ring;
using geom::Segment;

namespace {

Ring enrich_ring(const Ring& ring, const Rat& max_edge2) {
  Ring out;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = ring[i];
    const Point& b = ring[(i + 1) % n];
    out.push_back(a);
    Rat dx = b.x - a.x, dy = b.y - a.y;
    Rat len2 = dx * dx + dy * dy;
    if (len2 <= max_edge2) continue;
    // Smallest part count m with len/m <= max_edge, i.e. len^2 <= m^2 max_edge^2.
    long long m = static_cast<long long>(
        std::ceil(std::sqrt(geom::to_double(len2 / max_edge2)) - 1e-9));
    if (m < 2) m = 2;
    while (len2 > Rat(m) * Rat(m) * max_edge2) ++m;
    while (m > 2 && len2 <= Rat(m - 1) * Rat(m - 1) * max_edge2) --m;
    for (long long k = 1; k < m; ++k)
      out.push_back(Point(a.x + dx * k / m, a.y + dy * k / m));
  }
  return out;
}

}  // namespace

geom::Polygon enrich_contour(const geom::Polygon& contour, double max_edge) {
  if (max_edge <= 0) throw std::invalid_argument("enrich_contour: max_edge must be positive");
  Rat me2 = Rat(max_edge) * Rat(max_edge);
  geom::Polygon out;
  out.outer = enrich_ring(contour.outer, me2);
  out.holes.reserve(contour.holes.size());
  for (const Ring& h : contour.holes) out.holes.push_back(enrich_ring(h, me2));
  return out;
}

FilterContext::FilterContext(const zone::Zone& zone, const map::MapData& map,
                             const geom::Polygon& enriched)
    : grid(&map.grid), zone_polygon(&enriched), ring_size(static_cast<int>(enriched.outer.size())) {
  const std::size_t n = static_cast<std::size_t>(map.grid.width) * map.grid.height;
  resource_tile.assign(n, 0);
  zone_tile.assign(n, 0);
  for (const map::Resource& r : map.resources) resource_tile[map.grid.idx(r.x, r.y)] = 1;
  for (const geom::Tile& t : zone.tiles) zone_tile[map.grid.idx(t.x, t.y)] = 1;
}

bool filter_candidate(const Separation& s, const FilterContext& ctx) {
  // Chords along the contour are not separations.
  int du = s.ring_v - s.ring_u;
  if (du == 1 || du == ctx.ring_size - 1) return false;

  for (const geom::Tile& t : s.covered_tiles) {
    if (!ctx.grid->in_bounds(t.x, t.y)) return false;
    std::size_t i = ctx.grid->idx(t.x, t.y);
    if (!ctx.zone_tile[i]) return false;
    if (!ctx.grid->walkable[i] || !ctx.grid->buildable[i]) return false;
    if (ctx.resource_tile[i]) return false;
  }

  Segment seg(s.a, s.b);
  return geom::point_in_polygon(seg.midpoint(), *ctx.zone_polygon) == geom::PointLocation::inside;
}

std::vector<Separation> generate_candidates(const zone::Zone& zone, const geom::Polygon& enriched,
                                            const map::MapData& map) {
  const Ring& ring = enriched.outer;
  const int n = static_cast<int>(ring.size());

  // Corners the contour visits twice (diagonal pinches) are ambiguous chord
  // anchors; skip them.
  std::vector<char> usable(n, 1);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (ring[i] == ring[j]) usable[i] = usable[j] = 0;

  FilterContext ctx(zone, map, enriched);

  std::vector<Separation> kept;
  for (int u = 0; u < n; ++u) {
    if (!usable[u]) continue;
    for (int v = u + 1; v < n; ++v) {
      if (!usable[v]) continue;
      Separation s;
      s.a = ring[u];
      s.b = ring[v];
      s.ring_u = u;
      s.ring_v = v;
      int du = v - u;
      if (du == 1 || du == n - 1) continue;  // contour edge, never kept
      s.covered_tiles = geom::supercover_tiles(Segment(s.a, s.b));
      if (!filter_candidate(s, ctx)) continue;
      s.length = Segment(s.a, s.b).length();
      kept.push_back(std::move(s));
    }
  }

  // Ids follow the sorted endpoint pairs so the numbering does not depend
  // on ring traversal order.
  std::sort(kept.begin(), kept.end(), [](const Separation& x, const Separation& y) {
    if (!(x.a == y.a)) return geom::lex_less(x.a, y.a);
    return geom::lex_less(x.b, y.b);
  });
  for (std::size_t i = 0; i < kept.size(); ++i) kept[i].id = static_cast<int>(i) + 1;
  return kept;
}

namespace {

// Exact area of the sub-polygon bounded by ring vertices u..v plus the
// chord back, with the areas of holes falling inside subtracted.
Rat low_side_area(const geom::Polygon& poly, int u, int v) {
  Ring arc;
  for (int i = u; i <= v; ++i) arc.push_back(poly.outer[i]);
  Rat area = geom::ring_area(arc);
  for (const Ring& h : poly.holes)
    if (geom::point_in_ring(h[0], arc) == geom::PointLocation::inside)
      area -= geom::ring_area(h);
  return area;
}

}  // namespace

EfopModel build_model(const zone::Zone& zone, const geom::Polygon& enriched,
                      const map::MapData& map, Objective objective) {
  EfopModel model;
  model.n_clusters = static_cast<int>(zone.clusters.size());
  if (model.n_clusters < 2)
    throw std::invalid_argument("build_model: zone does not need splitting");
  if (model.n_clusters > 31)
    throw std::invalid_argument("build_model: too many clusters for one zone");
  model.required_selected = model.n_clusters - 1;
  model.zone_id = zone.id;
  model.objective = objective;
  model.zone_polygon = enriched;
  model.ring_size = static_cast<int>(enriched.outer.size());
  model.candidates = generate_candidates(zone, enriched, map);

  const std::size_t k = model.candidates.size();
  if (static_cast<int>(k) < model.required_selected)
    throw model_too_small_error("zone " + std::to_string(zone.id) + ": " + std::to_string(k) +
                                " candidate separations for " +
                                std::to_string(model.required_selected) + " required");

  // Pairwise crossing matrix, pruned with a bounding-box index.
  model.crossings.assign(k, boost::dynamic_bitset<>(k));
  geom::SpatialIndex index;
  for (std::size_t i = 0; i < k; ++i)
    index.insert(geom::bounding_box(Segment(model.candidates[i].a, model.candidates[i].b)),
                 static_cast<int>(i));
  for (std::size_t i = 0; i < k; ++i) {
    Segment si(model.candidates[i].a, model.candidates[i].b);
    for (int j : index.query(geom::bounding_box(si))) {
      if (static_cast<std::size_t>(j) <= i) continue;
      Segment sj(model.candidates[j].a, model.candidates[j].b);
      if (geom::segments_properly_cross(si, sj)) {
        model.crossings[i][j] = true;
        model.crossings[j][i] = true;
      }
    }
  }

  model.total_area = geom::to_double(geom::polygon_area(enriched));
  model.area_low.resize(k);
  model.area_high.resize(k);
  model.cluster_side_low.assign(k, 0);
  Rat total = geom::polygon_area(enriched);
  for (std::size_t i = 0; i < k; ++i) {
    const Separation& s = model.candidates[i];
    Rat low = low_side_area(enriched, s.ring_u, s.ring_v);
    model.area_low[i] = geom::to_double(low);
    model.area_high[i] = geom::to_double(total - low);

    Ring arc;
    for (int j = s.ring_u; j <= s.ring_v; ++j) arc.push_back(enriched.outer[j]);
    for (int c = 0; c < model.n_clusters; ++c) {
      geom::PointLocation loc = geom::point_in_ring(zone.clusters[c].centroid, arc);
      if (loc != geom::PointLocation::outside) model.cluster_side_low[i] |= 1u << c;
    }
  }
  return model;
}

}  // namespace terracut::sep
