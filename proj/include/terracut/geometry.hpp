#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace terracut::geom {

// Exact rational scalar. Contour vertices are integers after tracing;
// enrichment subdivision introduces small denominators. All predicates and
// areas stay exact, no tolerance anywhere.
using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

double to_double(const Rat& r);
Int floor_rat(const Rat& r);
Int ceil_rat(const Rat& r);

struct Tile {
  int x = 0;
  int y = 0;
  friend bool operator==(const Tile&, const Tile&) = default;
  friend auto operator<=>(const Tile&, const Tile&) = default;
};

struct Point {
  Rat x;
  Rat y;
  Point() = default;
  Point(Rat px, Rat py) : x(std::move(px)), y(std::move(py)) {}
  Point(int px, int py) : x(px), y(py) {}
  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
};

bool lex_less(const Point& a, const Point& b);

struct Segment {
  Point a;
  Point b;
  Segment() = default;
  Segment(Point pa, Point pb) : a(std::move(pa)), b(std::move(pb)) {}
  Point midpoint() const;
  double length() const;
  Rat length2() const;
};

// Closed ring of vertices; the edge from back() to front() is implicit.
using Ring = std::vector<Point>;

// Outer ring has positive signed area, holes negative. Rings never properly
// self-cross; traced contours may touch themselves at single corner points
// where the terrain is connected only diagonally.
struct Polygon {
  Ring outer;
  std::vector<Ring> holes;
};

Rat ring_signed_area2(const Ring& ring);  // twice the shoelace sum
Rat ring_area(const Ring& ring);          // |shoelace| / 2
Rat polygon_area(const Polygon& poly);    // outer area minus hole areas

// Sign of the cross product (b-a) x (c-a): +1 left turn, -1 right, 0 collinear.
int orient(const Point& a, const Point& b, const Point& c);

bool point_on_segment(const Point& p, const Segment& s);

// True iff the segment interiors intersect: a proper X crossing or a
// collinear overlap of positive length. Sharing an endpoint alone is not a
// crossing, nor is an endpoint lying on the other segment's interior.
bool segments_properly_cross(const Segment& s1, const Segment& s2);

enum class PointLocation { inside, boundary, outside };
PointLocation point_in_ring(const Point& p, const Ring& ring);
// Even-odd over all rings; points inside a hole are outside.
PointLocation point_in_polygon(const Point& p, const Polygon& poly);

// Ramer-Douglas-Peucker on a closed ring, anchored at the two mutually
// farthest vertices. Result vertices are a subset of the input's; if the
// reduced ring crosses itself or collapses, the call retries with epsilon/2
// down to 0 (identity).
Ring simplify_ring(const Ring& ring, double epsilon);
Polygon simplify_polygon(const Polygon& poly, double epsilon);

// All tiles whose closed unit square [x,x+1]x[y,y+1] meets the segment
// minus its endpoints. A square touched only at an endpoint does not count;
// one touched anywhere by the open segment, even at a single corner, does.
// Output is sorted and deduplicated; no bounds clamping.
std::vector<Tile> supercover_tiles(const Segment& s);

struct ChordSplit {
  std::vector<Polygon> faces;
  // For each input chord, the indices of the two faces it borders.
  std::vector<std::array<int, 2>> chord_faces;
};

// Splits a polygon by pairwise non-crossing chords. Every chord must join
// two distinct vertices of the outer ring (hole-ring chords are not
// supported) and its interior must stay strictly inside the polygon.
// Face areas sum to the input area exactly.
ChordSplit split_by_chords(const Polygon& poly, const std::vector<Segment>& chords);

struct Box {
  double min_x = 0;
  double min_y = 0;
  double max_x = 0;
  double max_y = 0;
};

Box bounding_box(const Segment& s);
Box bounding_box(const Ring& ring);

// Bounding-box index over geometry ids. Query returns every id whose stored
// box intersects the query box; exact tests are the caller's business.
class SpatialIndex {
 public:
  SpatialIndex();
  ~SpatialIndex();
  SpatialIndex(SpatialIndex&&) noexcept;
  SpatialIndex& operator=(SpatialIndex&&) noexcept;

  void insert(const Box& box, int id);
  std::vector<int> query(const Box& box) const;  // sorted ids
  std::size_t size() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace terracut::geom
