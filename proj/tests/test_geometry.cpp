#include <doctest.h>

#include "terracut/geometry.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace terracut::geom;

namespace {

Ring square(int x0, int y0, int x1, int y1) {
  return {Point(x0, y0), Point(x1, y0), Point(x1, y1), Point(x0, y1)};
}

// Independent supercover oracle: clip the segment parameter to the tile's
// closed square and ask whether the clipped range meets the open (0,1)
// interval. Different mechanics from the column-marching implementation.
bool square_meets_open_segment(const Segment& s, const Tile& t) {
  Rat lo = 0, hi = 1;
  Rat dx = s.b.x - s.a.x, dy = s.b.y - s.a.y;
  auto clip = [&](const Rat& origin, const Rat& d, const Rat& min_v, const Rat& max_v) {
    if (d == 0) return origin >= min_v && origin <= max_v;
    Rat t0 = (min_v - origin) / d;
    Rat t1 = (max_v - origin) / d;
    if (t0 > t1) std::swap(t0, t1);
    lo = std::max(lo, t0);
    hi = std::min(hi, t1);
    return true;
  };
  if (!clip(s.a.x, dx, Rat(t.x), Rat(t.x + 1))) return false;
  if (!clip(s.a.y, dy, Rat(t.y), Rat(t.y + 1))) return false;
  return lo <= hi && hi > 0 && lo < 1;
}

std::vector<Tile> brute_supercover(const Segment& s, int grid) {
  std::vector<Tile> out;
  for (int y = 0; y < grid; ++y)
    for (int x = 0; x < grid; ++x)
      if (square_meets_open_segment(s, Tile{x, y})) out.push_back(Tile{x, y});
  std::sort(out.begin(), out.end());
  return out;
}

// Plain recursive Douglas-Peucker used as the oracle for simplify_ring.
void oracle_rdp(const Ring& pts, std::size_t i, std::size_t j, const Rat& eps2,
                std::vector<char>& keep) {
  if (j <= i + 1) return;
  Rat best = -1;
  std::size_t best_idx = i;
  for (std::size_t m = i + 1; m < j; ++m) {
    Rat dx = pts[j].x - pts[i].x, dy = pts[j].y - pts[i].y;
    Rat len2 = dx * dx + dy * dy;
    Rat t = ((pts[m].x - pts[i].x) * dx + (pts[m].y - pts[i].y) * dy) / len2;
    if (t < 0) t = 0;
    if (t > 1) t = 1;
    Rat ex = pts[i].x + t * dx - pts[m].x;
    Rat ey = pts[i].y + t * dy - pts[m].y;
    Rat d2 = ex * ex + ey * ey;
    if (d2 > best) {
      best = d2;
      best_idx = m;
    }
  }
  if (best >= eps2) {
    keep[best_idx] = 1;
    oracle_rdp(pts, i, best_idx, eps2, keep);
    oracle_rdp(pts, best_idx, j, eps2, keep);
  }
}

}  // namespace

TEST_CASE("proper crossing predicate") {
  CHECK(segments_properly_cross(Segment(Point(0, 0), Point(2, 2)),
                                Segment(Point(0, 2), Point(2, 0))));
  CHECK_FALSE(segments_properly_cross(Segment(Point(0, 0), Point(2, 0)),
                                      Segment(Point(2, 0), Point(2, 2))));
  // Collinear overlap of positive length counts as crossing.
  CHECK(segments_properly_cross(Segment(Point(0, 0), Point(4, 0)),
                                Segment(Point(1, 0), Point(3, 0))));
  // Collinear but touching at a single point does not.
  CHECK_FALSE(segments_properly_cross(Segment(Point(0, 0), Point(2, 0)),
                                      Segment(Point(2, 0), Point(4, 0))));
  // Endpoint in the other segment's interior is a touch, not a crossing.
  CHECK_FALSE(segments_properly_cross(Segment(Point(0, 0), Point(4, 0)),
                                      Segment(Point(2, 0), Point(2, 3))));
}

TEST_CASE("proper crossing is symmetric") {
  std::mt19937_64 rng(7);
  auto coord = [&] {
    return Rat(static_cast<int>(rng() % 17) - 8, 1 + static_cast<int>(rng() % 3));
  };
  for (int i = 0; i < 500; ++i) {
    Segment s1(Point(coord(), coord()), Point(coord(), coord()));
    Segment s2(Point(coord(), coord()), Point(coord(), coord()));
    if (s1.a == s1.b || s2.a == s2.b) continue;
    CHECK(segments_properly_cross(s1, s2) == segments_properly_cross(s2, s1));
  }
}

TEST_CASE("polygon area") {
  Polygon unit{square(0, 0, 1, 1), {}};
  CHECK(polygon_area(unit) == Rat(1));

  Polygon with_hole{square(0, 0, 3, 3), {{Point(1, 1), Point(1, 2), Point(2, 2), Point(2, 1)}}};
  CHECK(polygon_area(with_hole) == Rat(8));

  // L-shaped 5-tile blob traced along tile corners.
  Polygon ell{{Point(0, 0), Point(1, 0), Point(1, 2), Point(3, 2), Point(3, 3), Point(0, 3)}, {}};
  CHECK(polygon_area(ell) == Rat(5));
}

TEST_CASE("point in polygon") {
  Polygon with_hole{square(0, 0, 4, 4), {{Point(1, 1), Point(1, 3), Point(3, 3), Point(3, 1)}}};
  CHECK(point_in_polygon(Point(Rat(1, 2), Rat(1, 2)), with_hole) == PointLocation::inside);
  CHECK(point_in_polygon(Point(0, 0), with_hole) == PointLocation::boundary);
  CHECK(point_in_polygon(Point(2, 2), with_hole) == PointLocation::outside);   // in the hole
  CHECK(point_in_polygon(Point(1, 2), with_hole) == PointLocation::boundary);  // on hole ring
  CHECK(point_in_polygon(Point(5, 5), with_hole) == PointLocation::outside);
}

TEST_CASE("simplify: epsilon zero is the identity") {
  Ring staircase{Point(0, 0), Point(2, 0), Point(2, 1), Point(4, 1),
                 Point(4, 2), Point(6, 2), Point(6, 5), Point(0, 5)};
  CHECK(simplify_ring(staircase, 0.0) == staircase);
}

TEST_CASE("simplify: collinear run removal") {
  Ring ring{Point(0, 0), Point(1, 0), Point(2, 0), Point(3, 0),
            Point(4, 0), Point(4, 3), Point(0, 3)};
  Ring out = simplify_ring(ring, 0.5);
  CHECK(out.size() == 4);
  std::set<std::pair<double, double>> got;
  for (const Point& p : out) got.insert({to_double(p.x), to_double(p.y)});
  std::set<std::pair<double, double>> want{{0, 0}, {4, 0}, {4, 3}, {0, 3}};
  CHECK(got == want);
}

TEST_CASE("simplify matches a brute-force Douglas-Peucker on a staircase ring") {
  Ring ring{Point(0, 0), Point(2, 1), Point(4, 0),  Point(6, 1),  Point(8, 0),  Point(10, 4),
            Point(8, 8), Point(6, 7), Point(4, 8),  Point(2, 7),  Point(0, 8),  Point(-2, 4)};
  const double eps = 1.5;

  // Same anchoring rule: the two mutually farthest vertices.
  std::size_t ia = 0, ib = 1;
  Rat best = -1;
  for (std::size_t i = 0; i < ring.size(); ++i)
    for (std::size_t j = i + 1; j < ring.size(); ++j) {
      Rat dx = ring[i].x - ring[j].x, dy = ring[i].y - ring[j].y;
      Rat d2 = dx * dx + dy * dy;
      if (d2 > best) {
        best = d2;
        ia = i;
        ib = j;
      }
    }
  Ring rot;
  for (std::size_t i = 0; i < ring.size(); ++i) rot.push_back(ring[(ia + i) % ring.size()]);
  std::size_t split = (ib + ring.size() - ia) % ring.size();
  Ring ext = rot;
  ext.push_back(rot[0]);
  std::vector<char> keep(ring.size() + 1, 0);
  keep[0] = keep[split] = keep[ring.size()] = 1;
  Rat eps2 = Rat(eps) * Rat(eps);
  oracle_rdp(ext, 0, split, eps2, keep);
  oracle_rdp(ext, split, ring.size(), eps2, keep);
  Ring expected;
  for (std::size_t i = 0; i < ring.size(); ++i)
    if (keep[i]) expected.push_back(rot[i]);

  CHECK(simplify_ring(ring, eps) == expected);
}

TEST_CASE("split by chords: basic cases") {
  Polygon sq{{Point(0, 0), Point(2, 0), Point(4, 0), Point(4, 4), Point(2, 4), Point(0, 4)}, {}};

  SUBCASE("no chords returns the polygon") {
    ChordSplit s = split_by_chords(sq, {});
    CHECK(s.faces.size() == 1);
    CHECK(polygon_area(s.faces[0]) == Rat(16));
  }

  SUBCASE("one vertical mid-chord gives two equal rectangles") {
    ChordSplit s = split_by_chords(sq, {Segment(Point(2, 0), Point(2, 4))});
    REQUIRE(s.faces.size() == 2);
    CHECK(polygon_area(s.faces[0]) == Rat(8));
    CHECK(polygon_area(s.faces[1]) == Rat(8));
    CHECK(s.chord_faces[0][0] != s.chord_faces[0][1]);
  }

  SUBCASE("chord endpoint off the ring") {
    CHECK_THROWS_AS(split_by_chords(sq, {Segment(Point(1, 0), Point(1, 4))}),
                    std::invalid_argument);
  }
}

TEST_CASE("split by chords: octagon with two chords has three faces (Euler oracle)") {
  Polygon oct{{Point(2, 0), Point(5, 0), Point(7, 2), Point(7, 5), Point(5, 7), Point(2, 7),
               Point(0, 5), Point(0, 2)},
              {}};
  std::vector<Segment> chords{Segment(Point(2, 0), Point(2, 7)),
                              Segment(Point(5, 0), Point(5, 7))};
  ChordSplit s = split_by_chords(oct, chords);

  // Connected planar graph: bounded faces = E - V + 1.
  const int v = 8;
  const int e = 8 + static_cast<int>(chords.size());
  CHECK(static_cast<int>(s.faces.size()) == e - v + 1);
  CHECK(s.faces.size() == 3);

  Rat total = 0;
  for (const Polygon& f : s.faces) total += polygon_area(f);
  CHECK(total == polygon_area(oct));
}

TEST_CASE("split by chords: hole lands in the right face") {
  Polygon poly{{Point(0, 0), Point(4, 0), Point(8, 0), Point(8, 8), Point(4, 8), Point(0, 8)},
               {{Point(5, 3), Point(5, 5), Point(7, 5), Point(7, 3)}}};
  ChordSplit s = split_by_chords(poly, {Segment(Point(4, 0), Point(4, 8))});
  REQUIRE(s.faces.size() == 2);
  Rat total = polygon_area(s.faces[0]) + polygon_area(s.faces[1]);
  CHECK(total == polygon_area(poly));
  int with_hole = s.faces[0].holes.empty() ? 1 : 0;
  CHECK(s.faces[with_hole].holes.size() == 1);
  CHECK(polygon_area(s.faces[with_hole]) == Rat(28));
  CHECK(polygon_area(s.faces[1 - with_hole]) == Rat(32));
}

TEST_CASE("supercover: format examples") {
  SUBCASE("horizontal through three tiles") {
    auto tiles = supercover_tiles(Segment(Point(Rat(0), Rat(1, 2)), Point(Rat(3), Rat(1, 2))));
    std::vector<Tile> want{{0, 0}, {1, 0}, {2, 0}};
    CHECK(tiles == want);
  }
  SUBCASE("exact diagonal includes the four tiles around each crossed corner") {
    auto tiles = supercover_tiles(Segment(Point(0, 0), Point(2, 2)));
    std::vector<Tile> want{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    CHECK(tiles == want);
  }
}

TEST_CASE("supercover equals the brute-force square-intersection oracle") {
  std::mt19937_64 rng(11);
  auto coord = [&] {
    // Eighth-of-a-tile resolution, strictly inside the 16x16 grid.
    return Rat(1 + static_cast<int>(rng() % 127), 8);
  };
  for (int i = 0; i < 300; ++i) {
    Point a(coord(), coord());
    Point b(coord(), coord());
    if (a == b) continue;
    Segment s(a, b);
    CHECK(supercover_tiles(s) == brute_supercover(s, 16));
  }
}

TEST_CASE("supercover invariances") {
  std::mt19937_64 rng(13);
  auto coord = [&] { return Rat(static_cast<int>(rng() % 64), 4); };
  for (int i = 0; i < 200; ++i) {
    Point a(coord(), coord());
    Point b(coord(), coord());
    if (a == b) continue;
    auto base = supercover_tiles(Segment(a, b));
    CHECK(base == supercover_tiles(Segment(b, a)));
    auto shifted = supercover_tiles(Segment(Point(a.x + 3, a.y - 2), Point(b.x + 3, b.y - 2)));
    std::vector<Tile> expect;
    for (const Tile& t : base) expect.push_back(Tile{t.x + 3, t.y - 2});
    std::sort(expect.begin(), expect.end());
    CHECK(shifted == expect);
  }
}

TEST_CASE("spatial index matches a linear scan") {
  SpatialIndex index;
  CHECK(index.query(Box{0, 0, 1, 1}).empty());

  index.insert(Box{0, 0, 1, 1}, 7);
  CHECK(index.query(Box{0, 0, 1, 1}) == std::vector<int>{7});

  std::mt19937_64 rng(17);
  std::vector<Box> boxes;
  SpatialIndex big;
  for (int i = 0; i < 100; ++i) {
    double x = static_cast<double>(rng() % 1000) / 10.0;
    double y = static_cast<double>(rng() % 1000) / 10.0;
    double w = static_cast<double>(rng() % 100) / 10.0;
    double hgt = static_cast<double>(rng() % 100) / 10.0;
    boxes.push_back(Box{x, y, x + w, y + hgt});
    big.insert(boxes.back(), i);
  }
  CHECK(big.size() == 100);
  for (int q = 0; q < 200; ++q) {
    double x = static_cast<double>(rng() % 1000) / 10.0;
    double y = static_cast<double>(rng() % 1000) / 10.0;
    Box query{x, y, x + 8.0, y + 8.0};
    std::vector<int> expect;
    for (int i = 0; i < 100; ++i) {
      const Box& b = boxes[i];
      if (b.min_x <= query.max_x && query.min_x <= b.max_x && b.min_y <= query.max_y &&
          query.min_y <= b.max_y)
        expect.push_back(i);
    }
    CHECK(big.query(query) == expect);
  }
}

TEST_CASE("randomized chord splits conserve area exactly") {
  std::mt19937_64 rng(23);
  int done = 0;
  while (done < 120) {
    // Random skyline polygon over integer columns.
    const int cols = 4 + static_cast<int>(rng() % 6);
    Ring ring;
    ring.push_back(Point(0, 0));
    int prev_h = 0;
    for (int c = 0; c < cols; ++c) {
      int hgt = 2 + static_cast<int>(rng() % 7);
      if (hgt != prev_h) {
        ring.push_back(Point(c, -prev_h));
        ring.push_back(Point(c, -hgt));
        prev_h = hgt;
      }
    }
    ring.push_back(Point(cols, -prev_h));
    ring.push_back(Point(cols, 0));
    if (ring_signed_area2(ring) < 0) std::reverse(ring.begin(), ring.end());
    Polygon poly{ring, {}};

    // Sample pairwise compatible vertex chords.
    std::vector<Segment> chords;
    for (int tries = 0; tries < 40 && chords.size() < 3; ++tries) {
      std::size_t i = rng() % ring.size();
      std::size_t j = rng() % ring.size();
      if (i == j) continue;
      std::size_t d = (i + ring.size() - j) % ring.size();
      if (d == 1 || d == ring.size() - 1) continue;
      Segment c(ring[i], ring[j]);
      if (c.a == c.b) continue;
      if (point_in_polygon(c.midpoint(), poly) != PointLocation::inside) continue;
      bool ok = true;
      for (std::size_t e = 0; e < ring.size() && ok; ++e) {
        Segment edge(ring[e], ring[(e + 1) % ring.size()]);
        if (segments_properly_cross(c, edge)) ok = false;
        // A chord slipping out through a reflex vertex crosses no edge;
        // reject any chord that touches a third vertex.
        if (e != i && e != j && point_on_segment(ring[e], c)) ok = false;
      }
      for (const Segment& prev : chords) {
        if (segments_properly_cross(c, prev)) ok = false;
        if ((prev.a == c.a && prev.b == c.b) || (prev.a == c.b && prev.b == c.a)) ok = false;
      }
      if (ok) chords.push_back(c);
    }
    if (chords.empty()) continue;

    ChordSplit s = split_by_chords(poly, chords);
    CHECK(s.faces.size() == chords.size() + 1);
    Rat total = 0;
    for (const Polygon& f : s.faces) total += polygon_area(f);
    CHECK(total == polygon_area(poly));
    ++done;
  }
}
