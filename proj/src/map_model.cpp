#include "terracut/map_model.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace terracut::map {

using nlohmann::json;

namespace {

std::string tile_str(int x, int y) {
  std::ostringstream os;
  os << "(" << x << "," << y << ")";
  return os.str();
}

void validate(const MapData& m) {
  const TileGrid& g = m.grid;
  if (g.width <= 0 || g.height <= 0) throw map_validation_error("map dimensions must be positive");
  const std::size_t n = static_cast<std::size_t>(g.width) * g.height;
  if (g.walkable.size() != n || g.buildable.size() != n || g.height_level.size() != n)
    throw map_validation_error("per-tile arrays must have width*height entries");

  for (int y = 0; y < g.height; ++y) {
    for (int x = 0; x < g.width; ++x) {
      std::size_t i = g.idx(x, y);
      if (g.buildable[i] && !g.walkable[i])
        throw map_validation_error("buildable tile is not walkable at " + tile_str(x, y));
      if (g.walkable[i] && g.height_level[i] > 3)
        throw map_validation_error("height level out of range at " + tile_str(x, y));
    }
  }

  std::map<std::pair<int, int>, int> resource_tiles;
  for (const Resource& r : m.resources) {
    if (!g.in_bounds(r.x, r.y))
      throw map_validation_error("resource out of bounds at " + tile_str(r.x, r.y));
    if (r.amount < 0)
      throw map_validation_error("negative resource amount at " + tile_str(r.x, r.y));
    if (!g.is_buildable(r.x, r.y))
      throw map_validation_error("resource on non-buildable tile at " + tile_str(r.x, r.y));
    if (!resource_tiles.emplace(std::make_pair(r.x, r.y), 1).second)
      throw map_validation_error("two resources on one tile at " + tile_str(r.x, r.y));
  }

  std::map<std::string, int> obstacle_ids;
  for (const DestructibleObstacle& o : m.obstacles) {
    if (o.id.empty()) throw map_validation_error("obstacle with empty id");
    if (!obstacle_ids.emplace(o.id, 1).second)
      throw map_validation_error("duplicate obstacle id '" + o.id + "'");
    if (o.footprint.empty()) throw map_validation_error("obstacle '" + o.id + "' has no tiles");
    if (o.hit_points <= 0)
      throw map_validation_error("obstacle '" + o.id + "' needs positive hit points");
    for (const Tile& t : o.footprint) {
      if (!g.in_bounds(t.x, t.y))
        throw map_validation_error("obstacle tile out of bounds at " + tile_str(t.x, t.y));
      if (g.walkable[g.idx(t.x, t.y)])
        throw map_validation_error("standing obstacle tile must be unwalkable at " +
                                   tile_str(t.x, t.y));
      if (resource_tiles.count({t.x, t.y}))
        throw map_validation_error("resource under obstacle at " + tile_str(t.x, t.y));
    }
  }

  for (const Tile& s : m.start_locations) {
    if (!g.in_bounds(s.x, s.y))
      throw map_validation_error("start location out of bounds at " + tile_str(s.x, s.y));
    if (!g.is_buildable(s.x, s.y))
      throw map_validation_error("start location on non-buildable tile at " + tile_str(s.x, s.y));
  }
}

MapData parse_ascii(const std::string& content) {
  std::vector<std::string> rows;
  std::string line;
  std::istringstream is(content);
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() && is.peek() == EOF) break;
    rows.push_back(line);
  }
  while (!rows.empty() && rows.back().empty()) rows.pop_back();
  if (rows.empty()) throw map_parse_error("ascii map: empty input");

  const int height = static_cast<int>(rows.size());
  const int width = static_cast<int>(rows[0].size());
  for (int y = 0; y < height; ++y)
    if (static_cast<int>(rows[y].size()) != width)
      throw map_parse_error("ascii map: ragged row " + std::to_string(y));

  MapData m;
  m.name = "ascii-map";
  TileGrid& g = m.grid;
  g.width = width;
  g.height = height;
  const std::size_t n = static_cast<std::size_t>(width) * height;
  g.walkable.assign(n, 0);
  g.buildable.assign(n, 0);
  g.height_level.assign(n, 0);

  std::vector<char> obstacle_mask(n, 0);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const char c = rows[y][x];
      const std::size_t i = g.idx(x, y);
      switch (c) {
        case '#': break;
        case '.': g.walkable[i] = g.buildable[i] = 1; break;
        case ':': g.walkable[i] = g.buildable[i] = 1; g.height_level[i] = 1; break;
        case ';': g.walkable[i] = g.buildable[i] = 1; g.height_level[i] = 2; break;
        case '^': g.walkable[i] = g.buildable[i] = 1; g.height_level[i] = 3; break;
        case ',': g.walkable[i] = 1; break;
        case '/': g.walkable[i] = 1; break;  // ramp: walkable, unbuildable
        case 'm':
          g.walkable[i] = g.buildable[i] = 1;
          m.resources.push_back({ResourceKind::mineral, x, y, kDefaultMineralAmount});
          break;
        case 'g':
          g.walkable[i] = g.buildable[i] = 1;
          m.resources.push_back({ResourceKind::gas, x, y, kDefaultGasAmount});
          break;
        case 'S':
          g.walkable[i] = g.buildable[i] = 1;
          m.start_locations.push_back({x, y});
          break;
        case 'D': obstacle_mask[i] = 1; break;
        default:
          throw map_parse_error(std::string("ascii map: unknown tile '") + c + "' at " +
                                tile_str(x, y));
      }
    }
  }

  // Group 'D' tiles into one obstacle per 4-connected run.
  std::vector<char> seen(n, 0);
  int obstacle_count = 0;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      std::size_t i = g.idx(x, y);
      if (!obstacle_mask[i] || seen[i]) continue;
      DestructibleObstacle o;
      o.id = "D" + std::to_string(++obstacle_count);
      o.hit_points = kDefaultObstacleHitPoints;
      std::vector<Tile> stack{{x, y}};
      seen[i] = 1;
      while (!stack.empty()) {
        Tile t = stack.back();
        stack.pop_back();
        o.footprint.push_back(t);
        const int dx[] = {1, -1, 0, 0};
        const int dy[] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
          int nx = t.x + dx[k], ny = t.y + dy[k];
          if (!g.in_bounds(nx, ny)) continue;
          std::size_t j = g.idx(nx, ny);
          if (obstacle_mask[j] && !seen[j]) {
            seen[j] = 1;
            stack.push_back({nx, ny});
          }
        }
      }
      std::sort(o.footprint.begin(), o.footprint.end(),
                [](const Tile& a, const Tile& b) { return std::tie(a.y, a.x) < std::tie(b.y, b.x); });
      m.obstacles.push_back(std::move(o));
    }
  }
  return m;
}

template <typename T>
std::vector<std::uint8_t> grid_array(const json& j, const char* key, std::size_t n, T max_value) {
  if (!j.contains(key)) throw map_parse_error(std::string("json map: missing '") + key + "'");
  const json& arr = j.at(key);
  if (!arr.is_array() || arr.size() != n)
    throw map_parse_error(std::string("json map: '") + key + "' must have width*height entries");
  std::vector<std::uint8_t> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    long long v = arr[i].get<long long>();
    if (v < 0 || v > static_cast<long long>(max_value))
      throw map_parse_error(std::string("json map: '") + key + "' value out of range");
    out[i] = static_cast<std::uint8_t>(v);
  }
  return out;
}

MapData parse_json(const std::string& content) {
  json j;
  try {
    j = json::parse(content);
  } catch (const json::exception& e) {
    throw map_parse_error(std::string("json map: ") + e.what());
  }
  try {
    MapData m;
    m.name = j.value("name", "unnamed");
    m.grid.width = j.at("width").get<int>();
    m.grid.height = j.at("height").get<int>();
    if (m.grid.width <= 0 || m.grid.height <= 0)
      throw map_parse_error("json map: dimensions must be positive");
    const std::size_t n = static_cast<std::size_t>(m.grid.width) * m.grid.height;
    m.grid.walkable = grid_array(j, "walkable", n, 1);
    m.grid.buildable = grid_array(j, "buildable", n, 1);
    m.grid.height_level = grid_array(j, "height_level", n, 3);

    for (const json& r : j.value("resources", json::array())) {
      Resource res;
      std::string kind = r.at("kind").get<std::string>();
      if (kind == "mineral")
        res.kind = ResourceKind::mineral;
      else if (kind == "gas")
        res.kind = ResourceKind::gas;
      else
        throw map_parse_error("json map: resource kind must be mineral or gas");
      res.x = r.at("x").get<int>();
      res.y = r.at("y").get<int>();
      res.amount = r.value("amount", res.kind == ResourceKind::mineral ? kDefaultMineralAmount
                                                                       : kDefaultGasAmount);
      m.resources.push_back(res);
    }

    for (const json& o : j.value("obstacles", json::array())) {
      DestructibleObstacle ob;
      ob.id = o.at("id").get<std::string>();
      for (const json& t : o.at("tiles"))
        ob.footprint.push_back({t.at("x").get<int>(), t.at("y").get<int>()});
      ob.hit_points = o.value("hit_points", kDefaultObstacleHitPoints);
      ob.buildable_after = o.value("buildable_after", false);
      m.obstacles.push_back(std::move(ob));
    }

    for (const json& s : j.value("start_locations", json::array()))
      m.start_locations.push_back({s.at("x").get<int>(), s.at("y").get<int>()});
    return m;
  } catch (const json::exception& e) {
    throw map_parse_error(std::string("json map: ") + e.what());
  }
}

}  // namespace

MapData load_map(const std::string& content, MapFormat format) {
  MapData m = format == MapFormat::json ? parse_json(content) : parse_ascii(content);
  validate(m);
  return m;
}

MapData load_map_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw map_parse_error("cannot open map file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  MapFormat fmt =
      path.size() > 5 && path.substr(path.size() - 5) == ".json" ? MapFormat::json : MapFormat::ascii;
  MapData m = load_map(buf.str(), fmt);
  if (m.name == "ascii-map") {
    std::size_t slash = path.find_last_of("/\\");
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    std::size_t dot = base.find_last_of('.');
    m.name = dot == std::string::npos ? base : base.substr(0, dot);
  }
  return m;
}

std::string serialize_map(const MapData& m) {
  json j;
  j["name"] = m.name;
  j["width"] = m.grid.width;
  j["height"] = m.grid.height;
  auto to_ints = [](const std::vector<std::uint8_t>& v) {
    json arr = json::array();
    for (std::uint8_t b : v) arr.push_back(static_cast<int>(b));
    return arr;
  };
  j["walkable"] = to_ints(m.grid.walkable);
  j["buildable"] = to_ints(m.grid.buildable);
  j["height_level"] = to_ints(m.grid.height_level);
  j["resources"] = json::array();
  for (const Resource& r : m.resources)
    j["resources"].push_back({{"kind", r.kind == ResourceKind::mineral ? "mineral" : "gas"},
                              {"x", r.x},
                              {"y", r.y},
                              {"amount", r.amount}});
  j["obstacles"] = json::array();
  for (const DestructibleObstacle& o : m.obstacles) {
    json tiles = json::array();
    for (const Tile& t : o.footprint) tiles.push_back({{"x", t.x}, {"y", t.y}});
    j["obstacles"].push_back({{"id", o.id},
                              {"tiles", tiles},
                              {"hit_points", o.hit_points},
                              {"buildable_after", o.buildable_after}});
  }
  j["start_locations"] = json::array();
  for (const Tile& s : m.start_locations) j["start_locations"].push_back({{"x", s.x}, {"y", s.y}});
  return j.dump(2);
}

MapData apply_obstacle_destruction(const MapData& m, const std::string& obstacle_id) {
  auto it = std::find_if(m.obstacles.begin(), m.obstacles.end(),
                         [&](const DestructibleObstacle& o) { return o.id == obstacle_id; });
  if (it == m.obstacles.end())
    throw std::invalid_argument("unknown obstacle id '" + obstacle_id + "'");
  MapData out = m;
  for (const Tile& t : it->footprint) {
    std::size_t i = out.grid.idx(t.x, t.y);
    out.grid.walkable[i] = 1;
    out.grid.buildable[i] = it->buildable_after ? 1 : 0;
  }
  out.obstacles.erase(out.obstacles.begin() + (it - m.obstacles.begin()));
  return out;
}

}  // namespace terracut::map
