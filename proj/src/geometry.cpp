#include "lorasim/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace lorasim {

namespace {
constexpr double kEps = 1e-12;

// Liang-Barsky clip of segment a-b against a closed box; returns the clipped
// parameter interval length. A pure boundary graze clips to length zero.
double clipped_length(double ax, double ay, double bx, double by, double xmin, double xmax,
                      double ymin, double ymax) {
  const double dx = bx - ax;
  const double dy = by - ay;
  double t0 = 0.0;
  double t1 = 1.0;
  const double p[4] = {-dx, dx, -dy, dy};
  const double q[4] = {ax - xmin, xmax - ax, ay - ymin, ymax - ay};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      // Parallel to this slab: must run strictly inside it, otherwise the
      // segment at best touches the boundary.
      if (q[i] <= 0.0) return 0.0;
    } else {
      const double r = q[i] / p[i];
      if (p[i] < 0.0) {
        if (r > t1) return 0.0;
        if (r > t0) t0 = r;
      } else {
        if (r < t0) return 0.0;
        if (r < t1) t1 = r;
      }
    }
  }
  return t1 - t0;
}
}  // namespace

int BuildingGrid::lattice_count() const {
  if (empty() || pitch_m <= 0.0 || building_side_m > area_side_m) return 0;
  // Largest n with (n - 1) * pitch + side <= area.
  const int n = 1 + static_cast<int>(std::floor((area_side_m - building_side_m) / pitch_m + kEps));
  return std::max(n, 0);
}

double BuildingGrid::lattice_origin() const {
  const int n = lattice_count();
  return (area_side_m - (n - 1) * pitch_m) / 2.0;
}

std::vector<Position> building_centers(const BuildingGrid& grid) {
  std::vector<Position> centers;
  const int n = grid.lattice_count();
  if (n <= 0) return centers;
  const double origin = grid.lattice_origin();
  centers.reserve(static_cast<std::size_t>(n) * n);
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      centers.push_back({origin + ix * grid.pitch_m, origin + iy * grid.pitch_m, 0.0});
    }
  }
  return centers;
}

bool point_in_building(const BuildingGrid& grid, double x, double y) {
  const int n = grid.lattice_count();
  if (n <= 0) return false;
  const double origin = grid.lattice_origin();
  const double half = grid.building_side_m / 2.0;
  const auto nearest = [&](double v) {
    int i = static_cast<int>(std::lround((v - origin) / grid.pitch_m));
    return std::clamp(i, 0, n - 1);
  };
  const double cx = origin + nearest(x) * grid.pitch_m;
  const double cy = origin + nearest(y) * grid.pitch_m;
  return std::abs(x - cx) < half && std::abs(y - cy) < half;
}

bool segment_blocked(const BuildingGrid& grid, const Position& a, const Position& b) {
  const int n = grid.lattice_count();
  if (n <= 0) return false;
  const double origin = grid.lattice_origin();
  const double half = grid.building_side_m / 2.0;
  const double dy = b.y - a.y;

  // Walk lattice rows the segment can touch; within each row, only cells
  // under the segment's local x-span can hold an obstructing footprint, so
  // the visited cell count stays proportional to the path length.
  const auto row_index = [&](double v, bool up) {
    const double raw = (v - origin) / grid.pitch_m;
    const int i = up ? static_cast<int>(std::ceil(raw - kEps)) : static_cast<int>(std::floor(raw + kEps));
    return std::clamp(i, 0, n - 1);
  };
  const int iy0 = row_index(std::min(a.y, b.y) - half, false);
  const int iy1 = row_index(std::max(a.y, b.y) + half, true);

  for (int iy = iy0; iy <= iy1; ++iy) {
    const double cy = origin + iy * grid.pitch_m;
    const double ylo = cy - half;
    const double yhi = cy + half;

    // Parameter interval of the segment inside this row's y slab.
    double t0 = 0.0;
    double t1 = 1.0;
    if (dy == 0.0) {
      if (a.y <= ylo || a.y >= yhi) continue;
    } else {
      double ta = (ylo - a.y) / dy;
      double tb = (yhi - a.y) / dy;
      if (ta > tb) std::swap(ta, tb);
      t0 = std::max(0.0, ta);
      t1 = std::min(1.0, tb);
      if (t0 >= t1) continue;
    }
    const double xa = a.x + t0 * (b.x - a.x);
    const double xb = a.x + t1 * (b.x - a.x);
    const int ix0 = row_index(std::min(xa, xb) - half, false);
    const int ix1 = row_index(std::max(xa, xb) + half, true);
    for (int ix = ix0; ix <= ix1; ++ix) {
      const double cx = origin + ix * grid.pitch_m;
      if (clipped_length(a.x, a.y, b.x, b.y, cx - half, cx + half, ylo, yhi) > kEps) {
        return true;
      }
    }
  }
  return false;
}

bool is_los(const Position& a, const Position& b, const BuildingGrid& grid) {
  if (grid.empty()) return true;
  if (point_in_building(grid, a.x, a.y) || point_in_building(grid, b.x, b.y)) return false;
  return !segment_blocked(grid, a, b);
}

}  // namespace lorasim
