#include "terracut/geometry.hpp"

#include <boost/geometry.hpp>
#include <boost/geometry/index/rtree.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace terracut::geom {

double to_double(const Rat& r) { return r.convert_to<double>(); }

Int floor_rat(const Rat& r) {
  Int num = numerator(r);
  Int den = denominator(r);  // always > 0
  Int q = num / den;
  if (num < 0 && q * den != num) --q;
  return q;
}

Int ceil_rat(const Rat& r) { return -floor_rat(-r); }

bool lex_less(const Point& a, const Point& b) {
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

Point Segment::midpoint() const { return Point((a.x + b.x) / 2, (a.y + b.y) / 2); }

Rat Segment::length2() const {
  Rat dx = b.x - a.x;
  Rat dy = b.y - a.y;
  return dx * dx + dy * dy;
}

double Segment::length() const { return std::sqrt(to_double(length2())); }

Rat ring_signed_area2(const Ring& ring) {
  Rat sum = 0;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = ring[i];
    const Point& q = ring[(i + 1) % n];
    sum += p.x * q.y - q.x * p.y;
  }
  return sum;
}

Rat ring_area(const Ring& ring) {
  Rat a = ring_signed_area2(ring);
  if (a < 0) a = -a;
  return a / 2;
}

Rat polygon_area(const Polygon& poly) {
  Rat area = ring_area(poly.outer);
  for (const Ring& h : poly.holes) area -= ring_area(h);
  return area;
}

int orient(const Point& a, const Point& b, const Point& c) {
  Rat cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  if (cross > 0) return 1;
  if (cross < 0) return -1;
  return 0;
}

bool point_on_segment(const Point& p, const Segment& s) {
  if (orient(s.a, s.b, p) != 0) return false;
  if (p.x < std::min(s.a.x, s.b.x) || p.x > std::max(s.a.x, s.b.x)) return false;
  if (p.y < std::min(s.a.y, s.b.y) || p.y > std::max(s.a.y, s.b.y)) return false;
  return true;
}

namespace {

// 1D closed-interval overlap length sign: >0 overlap, 0 touch, <0 disjoint.
int interval_overlap_sign(const Rat& lo1, const Rat& hi1, const Rat& lo2, const Rat& hi2) {
  Rat lo = std::max(lo1, lo2);
  Rat hi = std::min(hi1, hi2);
  if (lo < hi) return 1;
  if (lo == hi) return 0;
  return -1;
}

}  // namespace

bool segments_properly_cross(const Segment& s1, const Segment& s2) {
  int o1 = orient(s1.a, s1.b, s2.a);
  int o2 = orient(s1.a, s1.b, s2.b);
  int o3 = orient(s2.a, s2.b, s1.a);
  int o4 = orient(s2.a, s2.b, s1.b);

  if (o1 == 0 && o2 == 0 && o3 == 0 && o4 == 0) {
    // Collinear: crossing iff the overlap has positive length.
    Rat dx = s1.b.x - s1.a.x;
    Rat dy = s1.b.y - s1.a.y;
    // Project onto the dominant axis of s1 to order the endpoints.
    auto proj = [&](const Point& p) -> Rat {
      if ((dx < 0 ? -dx : dx) >= (dy < 0 ? -dy : dy)) return p.x;
      return p.y;
    };
    Rat a1 = proj(s1.a), b1 = proj(s1.b);
    if (a1 > b1) std::swap(a1, b1);
    Rat a2 = proj(s2.a), b2 = proj(s2.b);
    if (a2 > b2) std::swap(a2, b2);
    return interval_overlap_sign(a1, b1, a2, b2) > 0;
  }

  // Proper X crossing: strict opposite sides both ways.
  return o1 * o2 < 0 && o3 * o4 < 0;
}

PointLocation point_in_ring(const Point& p, const Ring& ring) {
  const std::size_t n = ring.size();
  bool inside = false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = ring[i];
    const Point& b = ring[(i + 1) % n];
    if (point_on_segment(p, Segment(a, b))) return PointLocation::boundary;
    // Even-odd ray cast towards +x, half-open rule on edge endpoints.
    bool a_above = a.y > p.y;
    bool b_above = b.y > p.y;
    if (a_above != b_above) {
      // x coordinate of the edge at height p.y
      Rat t = (p.y - a.y) / (b.y - a.y);
      Rat x_cross = a.x + t * (b.x - a.x);
      if (x_cross > p.x) inside = !inside;
    }
  }
  return inside ? PointLocation::inside : PointLocation::outside;
}

PointLocation point_in_polygon(const Point& p, const Polygon& poly) {
  PointLocation outer = point_in_ring(p, poly.outer);
  if (outer != PointLocation::inside) return outer;
  for (const Ring& h : poly.holes) {
    PointLocation in_hole = point_in_ring(p, h);
    if (in_hole == PointLocation::boundary) return PointLocation::boundary;
    if (in_hole == PointLocation::inside) return PointLocation::outside;
  }
  return PointLocation::inside;
}

namespace {

Rat point_segment_dist2(const Point& p, const Point& a, const Point& b) {
  Rat dx = b.x - a.x;
  Rat dy = b.y - a.y;
  Rat len2 = dx * dx + dy * dy;
  if (len2 == 0) {
    Rat ex = p.x - a.x, ey = p.y - a.y;
    return ex * ex + ey * ey;
  }
  Rat t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2;
  if (t < 0) t = 0;
  if (t > 1) t = 1;
  Rat px = a.x + t * dx - p.x;
  Rat py = a.y + t * dy - p.y;
  return px * px + py * py;
}

// Douglas-Peucker over ring indices [i..j] (open chain), marking survivors.
void rdp_chain(const Ring& ring, std::vector<char>& keep, std::size_t i, std::size_t j,
               const Rat& eps2) {
  if (j <= i + 1) return;
  Rat best = -1;
  std::size_t best_idx = i;
  for (std::size_t m = i + 1; m < j; ++m) {
    Rat d2 = point_segment_dist2(ring[m], ring[i], ring[j]);
    if (d2 > best) {
      best = d2;
      best_idx = m;
    }
  }
  if (best >= eps2) {
    keep[best_idx] = 1;
    rdp_chain(ring, keep, i, best_idx, eps2);
    rdp_chain(ring, keep, best_idx, j, eps2);
  }
}

bool ring_is_valid(const Ring& ring, int expected_sign) {
  const std::size_t n = ring.size();
  if (n < 3) return false;
  Rat a2 = ring_signed_area2(ring);
  if (a2 == 0) return false;
  if (expected_sign > 0 && a2 < 0) return false;
  if (expected_sign < 0 && a2 > 0) return false;
  for (std::size_t i = 0; i < n; ++i) {
    Segment ei(ring[i], ring[(i + 1) % n]);
    if (ei.a == ei.b) return false;
    for (std::size_t j = i + 1; j < n; ++j) {
      Segment ej(ring[j], ring[(j + 1) % n]);
      if (segments_properly_cross(ei, ej)) return false;
    }
  }
  return true;
}

int area_sign(const Ring& ring) {
  Rat a2 = ring_signed_area2(ring);
  if (a2 > 0) return 1;
  if (a2 < 0) return -1;
  return 0;
}

Ring simplify_ring_once(const Ring& ring, const Rat& eps2) {
  const std::size_t n = ring.size();
  // Anchor at the two mutually farthest vertices.
  std::size_t ia = 0, ib = 1;
  Rat best = -1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Rat dx = ring[i].x - ring[j].x;
      Rat dy = ring[i].y - ring[j].y;
      Rat d2 = dx * dx + dy * dy;
      if (d2 > best) {
        best = d2;
        ia = i;
        ib = j;
      }
    }
  }
  // Rotate so the ring starts at ia; ib moves accordingly.
  Ring rot(n);
  for (std::size_t i = 0; i < n; ++i) rot[i] = ring[(ia + i) % n];
  std::size_t split = (ib + n - ia) % n;

  std::vector<char> keep(n + 1, 0);
  keep[0] = keep[split] = keep[n] = 1;  // index n aliases index 0 (wrap)
  rdp_chain(rot, keep, 0, split, eps2);
  // Second chain wraps; run it on an extended copy.
  Ring ext = rot;
  ext.push_back(rot[0]);
  rdp_chain(ext, keep, split, n, eps2);

  Ring out;
  for (std::size_t i = 0; i < n; ++i)
    if (keep[i]) out.push_back(rot[i]);
  return out;
}

}  // namespace

Ring simplify_ring(const Ring& ring, double epsilon) {
  if (ring.size() < 3) throw std::invalid_argument("simplify_ring: ring needs >= 3 vertices");
  if (epsilon < 0) throw std::invalid_argument("simplify_ring: negative epsilon");
  if (epsilon == 0 || ring.size() == 3) return ring;
  int sign = area_sign(ring);
  Rat eps(epsilon);
  while (eps > 0) {
    Ring out = simplify_ring_once(ring, eps * eps);
    if (ring_is_valid(out, sign)) return out;
    eps /= 2;
    // Below any vertex spacing the result is the input itself.
    if (eps < Rat(1, 1u << 20)) break;
  }
  return ring;
}

Polygon simplify_polygon(const Polygon& poly, double epsilon) {
  double eps = epsilon;
  while (true) {
    Polygon out;
    out.outer = simplify_ring(poly.outer, eps);
    out.holes.reserve(poly.holes.size());
    for (const Ring& h : poly.holes) out.holes.push_back(simplify_ring(h, eps));
    // Simplified holes must stay inside the simplified outer ring and
    // clear of each other; RDP can break that when eps spans the gap.
    bool ok = true;
    auto rings_clash = [](const Ring& r1, const Ring& r2) {
      for (std::size_t i = 0; i < r1.size() && true; ++i) {
        Segment e1(r1[i], r1[(i + 1) % r1.size()]);
        for (std::size_t j = 0; j < r2.size(); ++j) {
          Segment e2(r2[j], r2[(j + 1) % r2.size()]);
          if (segments_properly_cross(e1, e2)) return true;
        }
      }
      return false;
    };
    for (std::size_t i = 0; i < out.holes.size() && ok; ++i) {
      if (rings_clash(out.holes[i], out.outer)) ok = false;
      if (ok && point_in_ring(out.holes[i][0], out.outer) == PointLocation::outside) ok = false;
      for (std::size_t j = i + 1; j < out.holes.size() && ok; ++j)
        if (rings_clash(out.holes[i], out.holes[j])) ok = false;
    }
    if (ok) return out;
    if (eps <= 1e-6) {
      out.outer = poly.outer;
      out.holes = poly.holes;
      return out;
    }
    eps /= 2;
  }
}

namespace {

// Does the open segment leave p into the closed unit square of `tile`?
// p must lie in the closed square. The direction d points along the segment
// away from p; the segment re-enters never (convexity), so the initial
// direction decides.
bool open_segment_enters(const Point& p, const Rat& dx, const Rat& dy, const Tile& tile) {
  if (p.x == Rat(tile.x) && dx < 0) return false;
  if (p.x == Rat(tile.x + 1) && dx > 0) return false;
  if (p.y == Rat(tile.y) && dy < 0) return false;
  if (p.y == Rat(tile.y + 1) && dy > 0) return false;
  return true;
}

}  // namespace

std::vector<Tile> supercover_tiles(const Segment& s) {
  if (s.a == s.b) throw std::invalid_argument("supercover_tiles: degenerate segment");
  std::set<Tile> tiles;

  const Rat ax = s.a.x, ay = s.a.y;
  const Rat dx = s.b.x - s.a.x, dy = s.b.y - s.a.y;

  Rat xmin = std::min(s.a.x, s.b.x), xmax = std::max(s.a.x, s.b.x);
  long long c_lo = ceil_rat(xmin - 1).convert_to<long long>();
  long long c_hi = floor_rat(xmax).convert_to<long long>();

  for (long long c = c_lo; c <= c_hi; ++c) {
    // Clip the segment's parameter range to the closed slab [c, c+1].
    Rat t0 = 0, t1 = 1;
    if (dx != 0) {
      Rat ta = (Rat(c) - ax) / dx;
      Rat tb = (Rat(c + 1) - ax) / dx;
      if (ta > tb) std::swap(ta, tb);
      t0 = std::max(t0, ta);
      t1 = std::min(t1, tb);
      if (t0 > t1) continue;
    }
    Rat y0 = ay + t0 * dy;
    Rat y1 = ay + t1 * dy;
    if (y0 > y1) std::swap(y0, y1);
    long long r_lo = ceil_rat(y0 - 1).convert_to<long long>();
    long long r_hi = floor_rat(y1).convert_to<long long>();
    for (long long r = r_lo; r <= r_hi; ++r)
      tiles.insert(Tile{static_cast<int>(c), static_cast<int>(r)});
  }

  // Drop squares touched only at an endpoint.
  auto prune_endpoint = [&](const Point& p, const Rat& ddx, const Rat& ddy) {
    long long px_lo = ceil_rat(p.x - 1).convert_to<long long>();
    long long px_hi = floor_rat(p.x).convert_to<long long>();
    long long py_lo = ceil_rat(p.y - 1).convert_to<long long>();
    long long py_hi = floor_rat(p.y).convert_to<long long>();
    for (long long tx = px_lo; tx <= px_hi; ++tx) {
      for (long long ty = py_lo; ty <= py_hi; ++ty) {
        Tile t{static_cast<int>(tx), static_cast<int>(ty)};
        if (!open_segment_enters(p, ddx, ddy, t)) tiles.erase(t);
      }
    }
  };
  prune_endpoint(s.a, dx, dy);
  prune_endpoint(s.b, -dx, -dy);

  return std::vector<Tile>(tiles.begin(), tiles.end());
}

namespace {

// Index of the unique occurrence of p among the ring's vertices; -1 if
// absent, -2 if ambiguous (a pinch corner visited twice).
int ring_vertex_index(const Ring& ring, const Point& p) {
  int found = -1;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    if (ring[i] == p) {
      if (found >= 0) return -2;
      found = static_cast<int>(i);
    }
  }
  return found;
}

bool ring_has_directed_edge(const Ring& ring, const Point& p, const Point& q) {
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = ring[i];
    const Point& b = ring[(i + 1) % n];
    if ((a == p && b == q) || (a == q && b == p)) return true;
  }
  return false;
}

}  // namespace

ChordSplit split_by_chords(const Polygon& poly, const std::vector<Segment>& chords) {
  ChordSplit result;
  result.faces.push_back(poly);
  result.chord_faces.assign(chords.size(), {-1, -1});

  for (std::size_t ci = 0; ci < chords.size(); ++ci) {
    const Segment& chord = chords[ci];
    if (chord.a == chord.b) throw std::invalid_argument("split_by_chords: degenerate chord");

    int face_idx = -1;
    int ia = -1, ib = -1;
    bool endpoints_seen = false;
    for (std::size_t f = 0; f < result.faces.size(); ++f) {
      const Ring& outer = result.faces[f].outer;
      int ja = ring_vertex_index(outer, chord.a);
      int jb = ring_vertex_index(outer, chord.b);
      if (ja == -2 || jb == -2)
        throw std::invalid_argument("split_by_chords: chord endpoint on a repeated ring vertex");
      if (ja < 0 || jb < 0) continue;
      endpoints_seen = true;
      if (point_in_polygon(chord.midpoint(), result.faces[f]) != PointLocation::inside) continue;
      face_idx = static_cast<int>(f);
      ia = ja;
      ib = jb;
      break;
    }
    if (face_idx < 0) {
      // Distinguish the two error cases for the caller.
      bool on_any_ring = false;
      for (const Polygon& f : result.faces) {
        if (ring_vertex_index(f.outer, chord.a) >= 0 || ring_vertex_index(f.outer, chord.b) >= 0)
          on_any_ring = true;
        for (const Ring& h : f.holes)
          if (ring_vertex_index(h, chord.a) >= 0 || ring_vertex_index(h, chord.b) >= 0)
            throw std::invalid_argument(
                "split_by_chords: chord endpoints must lie on the outer ring");
      }
      if (!endpoints_seen && !on_any_ring)
        throw std::invalid_argument("split_by_chords: chord endpoint not on a ring");
      throw std::invalid_argument("split_by_chords: chord interior exits the polygon");
    }

    Polygon face = std::move(result.faces[face_idx]);
    const Ring& outer = face.outer;
    const int n = static_cast<int>(outer.size());

    Ring ring1, ring2;
    for (int i = ia;; i = (i + 1) % n) {
      ring1.push_back(outer[i]);
      if (i == ib) break;
    }
    for (int i = ib;; i = (i + 1) % n) {
      ring2.push_back(outer[i]);
      if (i == ia) break;
    }
    if (ring1.size() < 3 || ring2.size() < 3)
      throw std::invalid_argument("split_by_chords: chord coincides with a boundary edge");

    Polygon f1, f2;
    f1.outer = std::move(ring1);
    f2.outer = std::move(ring2);
    for (Ring& h : face.holes) {
      if (point_in_ring(h[0], f1.outer) == PointLocation::inside)
        f1.holes.push_back(std::move(h));
      else
        f2.holes.push_back(std::move(h));
    }

    int new_idx = static_cast<int>(result.faces.size());
    result.faces[face_idx] = std::move(f1);
    result.faces.push_back(std::move(f2));
    result.chord_faces[ci] = {face_idx, new_idx};

    // Earlier chords recorded against the split face now border one half.
    for (std::size_t cj = 0; cj < ci; ++cj) {
      for (int slot = 0; slot < 2; ++slot) {
        if (result.chord_faces[cj][slot] != face_idx) continue;
        if (!ring_has_directed_edge(result.faces[face_idx].outer, chords[cj].a, chords[cj].b))
          result.chord_faces[cj][slot] = new_idx;
      }
    }
  }
  return result;
}

Box bounding_box(const Segment& s) {
  Box b;
  b.min_x = std::nextafter(to_double(std::min(s.a.x, s.b.x)), -1e30);
  b.min_y = std::nextafter(to_double(std::min(s.a.y, s.b.y)), -1e30);
  b.max_x = std::nextafter(to_double(std::max(s.a.x, s.b.x)), 1e30);
  b.max_y = std::nextafter(to_double(std::max(s.a.y, s.b.y)), 1e30);
  return b;
}

Box bounding_box(const Ring& ring) {
  Rat min_x = ring[0].x, max_x = ring[0].x, min_y = ring[0].y, max_y = ring[0].y;
  for (const Point& p : ring) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  Box b;
  b.min_x = std::nextafter(to_double(min_x), -1e30);
  b.min_y = std::nextafter(to_double(min_y), -1e30);
  b.max_x = std::nextafter(to_double(max_x), 1e30);
  b.max_y = std::nextafter(to_double(max_y), 1e30);
  return b;
}

namespace bg = boost::geometry;
namespace bgi = boost::geometry::index;

struct SpatialIndex::Impl {
  using BPoint = bg::model::point<double, 2, bg::cs::cartesian>;
  using BBox = bg::model::box<BPoint>;
  bgi::rtree<std::pair<BBox, int>, bgi::rstar<16>> tree;
};

SpatialIndex::SpatialIndex() : impl_(std::make_unique<Impl>()) {}
SpatialIndex::~SpatialIndex() = default;
SpatialIndex::SpatialIndex(SpatialIndex&&) noexcept = default;
SpatialIndex& SpatialIndex::operator=(SpatialIndex&&) noexcept = default;

void SpatialIndex::insert(const Box& box, int id) {
  Impl::BBox b(Impl::BPoint(box.min_x, box.min_y), Impl::BPoint(box.max_x, box.max_y));
  impl_->tree.insert({b, id});
}

std::vector<int> SpatialIndex::query(const Box& box) const {
  Impl::BBox b(Impl::BPoint(box.min_x, box.min_y), Impl::BPoint(box.max_x, box.max_y));
  std::vector<std::pair<Impl::BBox, int>> hits;
  impl_->tree.query(bgi::intersects(b), std::back_inserter(hits));
  std::vector<int> ids;
  ids.reserve(hits.size());
  for (const auto& h : hits) ids.push_back(h.second);
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::size_t SpatialIndex::size() const { return impl_->tree.size(); }

}  // namespace terracut::geom
