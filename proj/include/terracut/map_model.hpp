#pragma once

#include "terracut/geometry.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace terracut::map {

using geom::Tile;

struct map_parse_error : std::runtime_error {
  explicit map_parse_error(const std::string& what) : std::runtime_error(what) {}
};

struct map_validation_error : std::runtime_error {
  explicit map_validation_error(const std::string& what) : std::runtime_error(what) {}
};

struct TileGrid {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> walkable;      // row-major, (0,0) top-left
  std::vector<std::uint8_t> buildable;     // buildable implies walkable
  std::vector<std::uint8_t> height_level;  // 0..3, meaningful only where walkable

  std::size_t idx(int x, int y) const { return static_cast<std::size_t>(y) * width + x; }
  bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < width && y < height; }
  bool is_walkable(int x, int y) const { return in_bounds(x, y) && walkable[idx(x, y)]; }
  bool is_buildable(int x, int y) const { return in_bounds(x, y) && buildable[idx(x, y)]; }
  int level(int x, int y) const { return height_level[idx(x, y)]; }

  friend bool operator==(const TileGrid&, const TileGrid&) = default;
};

enum class ResourceKind { mineral, gas };

struct Resource {
  ResourceKind kind = ResourceKind::mineral;
  int x = 0;
  int y = 0;
  int amount = 0;
  friend bool operator==(const Resource&, const Resource&) = default;
};

struct DestructibleObstacle {
  std::string id;
  std::vector<Tile> footprint;  // unwalkable while the obstacle stands
  int hit_points = 0;
  bool buildable_after = false;
  friend bool operator==(const DestructibleObstacle&, const DestructibleObstacle&) = default;
};

struct MapData {
  std::string name;
  TileGrid grid;
  std::vector<Resource> resources;
  std::vector<DestructibleObstacle> obstacles;
  std::vector<Tile> start_locations;
  friend bool operator==(const MapData&, const MapData&) = default;
};

enum class MapFormat { json, ascii };

constexpr int kDefaultMineralAmount = 1500;
constexpr int kDefaultGasAmount = 2500;
constexpr int kDefaultObstacleHitPoints = 100;

// Parses and validates. Throws map_parse_error on malformed input and
// map_validation_error (naming the first offending tile) on invariant
// violations.
MapData load_map(const std::string& content, MapFormat format);

// Reads a file, picking the format from the extension (.json vs anything else).
MapData load_map_file(const std::string& path);

// Canonical JSON form; load_map(serialize_map(m), json) == m.
std::string serialize_map(const MapData& m);

// Returns a copy with the obstacle removed and its footprint walkable;
// buildability per the obstacle's buildable_after flag.
MapData apply_obstacle_destruction(const MapData& m, const std::string& obstacle_id);

}  // namespace terracut::map
