#pragma once

#include <vector>

namespace lorasim {

struct Position {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;  // antenna height
};

/// Regular lattice of square building footprints inside the deployment area.
/// Centers sit on a pitch-spaced grid placed symmetrically in the area;
/// footprints that would stick out of the area are dropped. A zero or
/// negative side length means an empty grid (no buildings).
struct BuildingGrid {
  double area_side_m = 0.0;
  double building_side_m = 0.0;
  double pitch_m = 0.0;
  double building_height_m = 0.0;

  bool empty() const { return building_side_m <= 0.0; }
  /// Number of lattice rows/columns that fit wholly inside the area.
  int lattice_count() const;
  /// Coordinate of the first lattice center along either axis.
  double lattice_origin() const;
};

/// Centers of all retained footprints, row-major. z is 0.
std::vector<Position> building_centers(const BuildingGrid& grid);

/// True if (x, y) lies strictly inside some footprint. Points exactly on a
/// footprint edge count as outdoor.
bool point_in_building(const BuildingGrid& grid, double x, double y);

/// True if the open 2-D segment a-b crosses the interior of any footprint.
/// Grazing contact with an edge or corner does not block.
bool segment_blocked(const BuildingGrid& grid, const Position& a, const Position& b);

/// Geometric line-of-sight: neither endpoint indoors and no footprint
/// interior crossed. Buildings block in plan view regardless of height.
bool is_los(const Position& a, const Position& b, const BuildingGrid& grid);

}  // namespace lorasim
