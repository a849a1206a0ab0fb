#include <doctest.h>

#include "lorasim/geometry.hpp"
#include "lorasim/rng.hpp"

using namespace lorasim;

TEST_CASE("lattice placement is centered and symmetric") {
  const BuildingGrid grid{100.0, 20.0, 50.0, 10.0};
  const auto centers = building_centers(grid);
  REQUIRE(centers.size() == 4);
  CHECK(centers[0].x == doctest::Approx(25.0));
  CHECK(centers[0].y == doctest::Approx(25.0));
  CHECK(centers[3].x == doctest::Approx(75.0));
  CHECK(centers[3].y == doctest::Approx(75.0));
}

TEST_CASE("degenerate grids") {
  const BuildingGrid none{100.0, 0.0, 50.0, 10.0};
  CHECK(building_centers(none).empty());
  CHECK_FALSE(point_in_building(none, 50.0, 50.0));
  CHECK(is_los({0, 0, 1.5}, {100, 100, 1.5}, none));

  // pitch == side tiles the area contiguously
  const BuildingGrid tiling{100.0, 25.0, 25.0, 10.0};
  const auto centers = building_centers(tiling);
  CHECK(centers.size() == 16);
  CHECK(point_in_building(tiling, 55.0, 60.0));
  // A seam between adjacent footprints is still an edge, hence outdoor.
  CHECK_FALSE(point_in_building(tiling, 50.0, 50.0));
}

TEST_CASE("indoor classification uses the open footprint") {
  const BuildingGrid grid{100.0, 20.0, 50.0, 10.0};
  CHECK(point_in_building(grid, 25.0, 25.0));
  CHECK_FALSE(point_in_building(grid, 15.0, 25.0));  // exactly on the west edge
  CHECK_FALSE(point_in_building(grid, 25.0, 35.0));  // exactly on the north edge
  CHECK_FALSE(point_in_building(grid, 0.0, 0.0));
}

TEST_CASE("segment obstruction") {
  // One footprint spanning x in [40,60], y in [-10,10] (custom grid layout:
  // single row centered at 50).
  const BuildingGrid grid{100.0, 20.0, 100.0, 10.0};
  const auto centers = building_centers(grid);
  REQUIRE(centers.size() == 1);
  CHECK(centers[0].x == doctest::Approx(50.0));

  const Position a{0, 50, 1.5};
  const Position b{100, 50, 1.5};
  CHECK(segment_blocked(grid, a, b));
  CHECK_FALSE(is_los(a, b, grid));

  // Path well clear of the footprint.
  CHECK(is_los({0, 95, 1.5}, {100, 95, 1.5}, grid));

  // Grazing along the footprint edge (y = 60) does not block.
  CHECK(is_los({0, 60, 1.5}, {100, 60, 1.5}, grid));

  // Indoor endpoint is never LOS.
  CHECK_FALSE(is_los({50, 50, 1.5}, {0, 95, 1.5}, grid));
}

TEST_CASE("los is symmetric") {
  const BuildingGrid grid{1000.0, 50.0, 100.0, 20.0};
  Rng rng(31);
  for (int i = 0; i < 500; ++i) {
    const Position a{rng.uniform(0, 1000), rng.uniform(0, 1000), 1.5};
    const Position b{rng.uniform(0, 1000), rng.uniform(0, 1000), 25.0};
    CHECK(is_los(a, b, grid) == is_los(b, a, grid));
  }
}

TEST_CASE("obstruction matches a brute-force footprint check") {
  const BuildingGrid grid{1000.0, 40.0, 125.0, 20.0};
  const auto centers = building_centers(grid);
  Rng rng(77);
  for (int i = 0; i < 300; ++i) {
    const Position a{rng.uniform(0, 1000), rng.uniform(0, 1000), 1.5};
    const Position b{rng.uniform(0, 1000), rng.uniform(0, 1000), 1.5};
    // Brute force: sample densely along the segment and test interiors.
    bool blocked = false;
    for (int k = 1; k < 4000 && !blocked; ++k) {
      const double t = k / 4000.0;
      blocked = point_in_building(grid, a.x + t * (b.x - a.x), a.y + t * (b.y - a.y));
    }
    if (blocked) {
      CHECK(segment_blocked(grid, a, b));
    }
    if (!segment_blocked(grid, a, b)) {
      CHECK_FALSE(blocked);
    }
  }
  (void)centers;
}
