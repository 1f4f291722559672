#include "terracut/svg.hpp"

#include <cstdio>
#include <sstream>

namespace terracut::svg {

namespace {

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string fmt(const geom::Rat& v) { return fmt(geom::to_double(v)); }

void path_ring(std::ostringstream& os, const geom::Ring& ring) {
  for (std::size_t i = 0; i < ring.size(); ++i) {
    os << (i == 0 ? "M" : "L") << fmt(ring[i].x) << " " << fmt(ring[i].y);
  }
  os << "Z";
}

std::string polygon_path(const geom::Polygon& poly) {
  std::ostringstream os;
  path_ring(os, poly.outer);
  for (const geom::Ring& h : poly.holes) path_ring(os, h);
  return os.str();
}

const char* zone_fill(const zone::Zone& z) {
  if (!z.buildable) return "#3f6fb5";  // unbuildable: blue
  switch (z.height_level) {
    case 0: return "#e5d35a";  // low: yellow
    case 1: return "#b9ab5e";  // high: khaki
    case 2: return "#6f9e4f";  // very high: green
    default: return "#497237";
  }
}

}  // namespace

std::string render_svg(const region::AnalysisResult& result, const map::MapData& map) {
  const int w = map.grid.width;
  const int h = map.grid.height;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << w << " " << h
     << "\" width=\"" << w * 8 << "\" height=\"" << h * 8 << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h
     << "\" fill=\"#242424\"/>\n";

  for (const region::ZoneOutput& zo : result.zones) {
    os << "<path d=\"" << polygon_path(zo.zone.contour_raw) << "\" fill=\"" << zone_fill(zo.zone)
       << "\" fill-rule=\"evenodd\" stroke=\"none\"/>\n";
  }

  for (const map::DestructibleObstacle& o : map.obstacles) {
    for (const geom::Tile& t : o.footprint)
      os << "<rect x=\"" << t.x << "\" y=\"" << t.y
         << "\" width=\"1\" height=\"1\" fill=\"#6b4a2f\"/>\n";
  }

  for (const map::Resource& r : map.resources) {
    const char* fill = r.kind == map::ResourceKind::mineral ? "#9fd4e8" : "#7ec850";
    os << "<rect x=\"" << fmt(r.x + 0.15) << "\" y=\"" << fmt(r.y + 0.15)
       << "\" width=\"0.7\" height=\"0.7\" fill=\"" << fill << "\"/>\n";
  }

  for (const region::ZoneOutput& zo : result.zones) {
    os << "<path d=\"" << polygon_path(zo.zone.contour) << "\" fill=\"none\""
       << " stroke=\"#000000\" stroke-width=\"0.18\"/>\n";
  }

  for (const region::ZoneOutput& zo : result.zones) {
    const bool multi = zo.zone.clusters.size() >= 2;
    for (const zone::ResourceCluster& c : zo.zone.clusters) {
      for (const map::Resource& r : c.members) {
        os << "<line x1=\"" << fmt(c.centroid.x) << "\" y1=\"" << fmt(c.centroid.y) << "\" x2=\""
           << fmt(r.x + 0.5) << "\" y2=\"" << fmt(r.y + 0.5)
           << "\" stroke=\"#e8963c\" stroke-width=\"0.1\"/>\n";
      }
      os << "<rect x=\"" << fmt(c.bbox.min_x - 0.3) << "\" y=\"" << fmt(c.bbox.min_y - 0.3)
         << "\" width=\"" << fmt(c.bbox.max_x - c.bbox.min_x + 0.6) << "\" height=\""
         << fmt(c.bbox.max_y - c.bbox.min_y + 0.6) << "\" fill=\"none\" stroke=\""
         << (multi ? "#d43a3a" : "#3a62d4") << "\" stroke-width=\"0.22\"/>\n";
      os << "<circle cx=\"" << fmt(c.centroid.x) << "\" cy=\"" << fmt(c.centroid.y)
         << "\" r=\"0.45\" fill=\"#d62020\"/>\n";
    }
  }

  for (const region::ZoneOutput& zo : result.zones) {
    for (const geom::Segment& s : zo.separations) {
      os << "<line x1=\"" << fmt(s.a.x) << "\" y1=\"" << fmt(s.a.y) << "\" x2=\"" << fmt(s.b.x)
         << "\" y2=\"" << fmt(s.b.y) << "\" stroke=\"#e01515\" stroke-width=\"0.3\"/>\n";
    }
  }

  for (const geom::Tile& s : map.start_locations) {
    os << "<circle cx=\"" << fmt(s.x + 0.5) << "\" cy=\"" << fmt(s.y + 0.5)
       << "\" r=\"0.6\" fill=\"none\" stroke=\"#ffffff\" stroke-width=\"0.2\"/>\n";
  }

  os << "</svg>\n";
  return os.str();
}

}  // namespace terracut::svg
