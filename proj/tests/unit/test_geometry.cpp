/* Copyright 2026 The nlcl Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "nlcl/geometry.hpp"
#include "nlcl/simulator.hpp"

namespace nlcl {
namespace {

Domain room() { return preset_room().domain.build(); }
Domain corridor() { return preset_corridor().domain.build(); }

TEST(Grid, UnitSquareAtHalfHasFourCells) {
  const Mesh m = build_grid(Domain::rectangle({0, 1, 0, 1}), 0.5);
  EXPECT_EQ(m.grid.nx, 2);
  EXPECT_EQ(m.grid.ny, 2);
  EXPECT_EQ(m.mask.interior_count(), 4u);
}

TEST(Grid, RoomBoxWithoutObstacles) {
  const Mesh m = build_grid(Domain::rectangle({0, 8, -4, 4}), 0.5);
  EXPECT_EQ(m.grid.nx, 16);
  EXPECT_EQ(m.grid.ny, 16);
  EXPECT_EQ(m.mask.interior_count(), 256u);
}

TEST(Grid, RoomObstacleCellCount) {
  const Mesh m = build_grid(room(), 0.03125);
  ASSERT_EQ(m.grid.nx, 256);
  // Brute-force oracle: centres strictly inside either column.
  std::size_t expected = 0;
  for (int j = 0; j < 256; ++j) {
    for (int i = 0; i < 256; ++i) {
      const double x = (i + 0.5) * 0.03125, y = -4.0 + (j + 0.5) * 0.03125;
      if (x > 6.5 && x < 7.0 && std::abs(y) > 0.5 && std::abs(y) < 1.125) ++expected;
    }
  }
  EXPECT_EQ(expected, 640u);
  EXPECT_EQ(m.mask.count_cells(CellClass::obstacle), 640u);
  EXPECT_EQ(m.mask.interior_count(), 256u * 256u - 640u);
}

TEST(Grid, DiscCellCountNearArea) {
  const Mesh m = build_grid(Domain::disc({0, 0}, 1.0), 1.0 / 64.0);
  const double area_cells = std::numbers::pi * 64.0 * 64.0;
  EXPECT_EQ(m.mask.interior_count(), 12892u);
  EXPECT_LT(std::abs(m.mask.interior_count() / area_cells - 1.0), 0.01);
}

TEST(Grid, RoomExitFaceCount) {
  const Mesh m = build_grid(room(), 0.03125);
  EXPECT_EQ(m.mask.count_faces(FaceClass::exit), 64u);
}

TEST(Grid, CorridorExitFaceCount) {
  const double h = 0.0625;
  const Mesh m = build_grid(corridor(), h);
  EXPECT_EQ(m.mask.count_faces(FaceClass::exit), static_cast<std::size_t>(2 * 4.0 / h));
}

TEST(Grid, NoExitsMeansAllBoundaryFacesAreWalls) {
  const Mesh m = build_grid(Domain::rectangle({0, 2, 0, 1}), 0.25);
  EXPECT_EQ(m.mask.count_faces(FaceClass::exit), 0u);
  EXPECT_EQ(m.mask.count_faces(FaceClass::wall), static_cast<std::size_t>(2 * (8 + 4)));
}

TEST(Grid, Errors) {
  const Domain d = Domain::rectangle({0, 1, 0, 1});
  EXPECT_THROW(build_grid(d, 0.0), ConfigError);
  EXPECT_THROW(build_grid(d, -0.1), ConfigError);
  EXPECT_THROW(build_grid(d, 0.3), ConfigError);
  const Domain blocked = Domain::rectangle({0, 1, 0, 1}, {{-1, 2, -1, 2}});
  EXPECT_THROW(build_grid(blocked, 0.25), ConfigError);
}

TEST(Domain, ExitOffBoundaryRejected) {
  EXPECT_THROW(Domain::rectangle({0, 1, 0, 1}, {}, {{{0.5, 0.2}, {0.5, 0.8}}}), ConfigError);
}

TEST(Domain, InteriorSphere) {
  EXPECT_TRUE(validate_interior_sphere(room()));
  EXPECT_TRUE(validate_interior_sphere(corridor()));
  const auto c = preset_room().domain;
  const Domain too_big = Domain::rectangle(c.box, c.obstacles, c.exits, 0.6);
  EXPECT_FALSE(validate_interior_sphere(too_big));
  EXPECT_TRUE(check_interior_sphere(room(), 0.625));
  EXPECT_FALSE(check_interior_sphere(room(), 0.5));
}

// Every cell has exactly one class, and interior cells are those whose centre
// lies in the closed shape minus the open obstacles.
TEST(GridProperty, CellClassesPartitionTheBox) {
  for (double h : {0.125, 0.0625, 0.03125}) {
    const Domain d = room();
    const Mesh m = build_grid(d, h);
    std::size_t n = 0;
    for (auto c : {CellClass::interior, CellClass::obstacle, CellClass::exterior}) n += m.mask.count_cells(c);
    EXPECT_EQ(n, m.grid.cell_count());
    for (int j = 0; j < m.grid.ny; ++j) {
      for (int i = 0; i < m.grid.nx; ++i) EXPECT_EQ(m.interior(i, j), d.inside(m.grid.center(i, j)));
    }
  }
}

// A coarse interior cell farther than one coarse cell from the boundary is
// fully covered by interior fine cells.
TEST(GridProperty, RefinementKeepsDeepInteriorCells) {
  for (const Domain& d : {room(), Domain::disc({0, 0}, 1.0)}) {
    const double h = d.bounding_box().width() / 32.0;
    const Mesh coarse = build_grid(d, h);
    const Mesh fine = build_grid(d, h / 2.0);
    for (int j = 0; j < coarse.grid.ny; ++j) {
      for (int i = 0; i < coarse.grid.nx; ++i) {
        if (!coarse.interior(i, j) || d.distance_to_boundary(coarse.grid.center(i, j)) <= h) continue;
        for (int b = 0; b < 2; ++b) {
          for (int a = 0; a < 2; ++a) EXPECT_TRUE(fine.interior(2 * i + a, 2 * j + b));
        }
      }
    }
  }
}

// Exit faces are boundary faces, and every boundary face is either wall or exit.
TEST(GridProperty, ExitFacesLieOnTheBoundary) {
  for (double h : {0.125, 0.0625}) {
    for (const Domain& d : {room(), corridor()}) {
      const Mesh m = build_grid(d, h);
      for (int j = 0; j < m.grid.ny; ++j) {
        for (int i = 0; i <= m.grid.nx; ++i) {
          const bool l = m.interior(i - 1, j), r = m.interior(i, j);
          const FaceClass c = m.mask.x_faces[m.x_face(i, j)];
          if (l != r) {
            EXPECT_TRUE(c == FaceClass::wall || c == FaceClass::exit);
          } else {
            EXPECT_TRUE(c == FaceClass::internal || c == FaceClass::inactive);
          }
        }
      }
      for (int j = 0; j <= m.grid.ny; ++j) {
        for (int i = 0; i < m.grid.nx; ++i) {
          const bool b = m.interior(i, j - 1), t = m.interior(i, j);
          const FaceClass c = m.mask.y_faces[m.y_face(i, j)];
          if (b != t) {
            EXPECT_TRUE(c == FaceClass::wall || c == FaceClass::exit);
          } else {
            EXPECT_TRUE(c == FaceClass::internal || c == FaceClass::inactive);
          }
        }
      }
    }
  }
}

}  // namespace
}  // namespace nlcl
