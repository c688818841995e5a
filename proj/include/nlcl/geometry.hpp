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

#ifndef NLCL_GEOMETRY_HPP
#define NLCL_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace nlcl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user input: bad mesh size, inconsistent domain, unknown scenario.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr bool operator==(const Vec2&) const = default;
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }
constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

/// Closed axis-aligned rectangle [x0,x1] x [y0,y1].
struct Rect {
  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  bool contains(Vec2 p) const { return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1; }
  bool strictly_contains(Vec2 p) const { return p.x > x0 && p.x < x1 && p.y > y0 && p.y < y1; }

  /// Euclidean distance from p to the rectangle (0 inside).
  double distance(Vec2 p) const {
    const double dx = std::max({x0 - p.x, 0.0, p.x - x1});
    const double dy = std::max({y0 - p.y, 0.0, p.y - y1});
    return std::hypot(dx, dy);
  }
};

struct Segment {
  Vec2 a;
  Vec2 b;

  double length() const { return norm(b - a); }

  double distance(Vec2 p) const {
    const Vec2 d = b - a;
    const double len2 = dot(d, d);
    double s = len2 > 0.0 ? dot(p - a, d) / len2 : 0.0;
    s = std::clamp(s, 0.0, 1.0);
    return norm(p - (a + d * s));
  }
};

struct RectangleShape {
  Rect box;
};

struct DiscShape {
  Vec2 center;
  double radius = 1.0;
};

/// A bounded planar region: a rectangle or a disc, minus rectangular obstacles,
/// with a list of exit segments on its boundary.
///
/// The interior-sphere radius is declared by the caller, not derived; use
/// validate_interior_sphere() to sample-check it against the geometry.
class Domain {
 public:
  using Shape = std::variant<RectangleShape, DiscShape>;

  Domain(Shape shape, std::vector<Rect> obstacles, std::vector<Segment> exits,
         double interior_sphere_radius)
      : shape_(shape),
        obstacles_(std::move(obstacles)),
        exits_(std::move(exits)),
        r_interior_(interior_sphere_radius) {
    if (!(r_interior_ > 0.0)) throw ConfigError("interior sphere radius must be positive");
    const Rect bb = bounding_box();
    if (!(bb.width() > 0.0) || !(bb.height() > 0.0)) throw ConfigError("domain has empty bounding box");
    for (const auto& seg : exits_) {
      if (!on_boundary(seg)) throw ConfigError("exit segment does not lie on the domain boundary");
    }
  }

  static Domain rectangle(Rect box, std::vector<Rect> obstacles = {}, std::vector<Segment> exits = {},
                          double interior_sphere_radius = 0.0) {
    if (interior_sphere_radius <= 0.0) interior_sphere_radius = 0.5 * std::min(box.width(), box.height());
    return Domain(RectangleShape{box}, std::move(obstacles), std::move(exits), interior_sphere_radius);
  }

  static Domain disc(Vec2 center, double radius, std::vector<Segment> exits = {}) {
    if (!(radius > 0.0)) throw ConfigError("disc radius must be positive");
    return Domain(DiscShape{center, radius}, {}, std::move(exits), radius);
  }

  Rect bounding_box() const {
    if (const auto* r = std::get_if<RectangleShape>(&shape_)) return r->box;
    const auto& d = std::get<DiscShape>(shape_);
    return {d.center.x - d.radius, d.center.x + d.radius, d.center.y - d.radius, d.center.y + d.radius};
  }

  /// Point lies in the outer shape (closed) and outside every obstacle (open).
  bool inside(Vec2 p) const {
    if (!in_shape(p)) return false;
    for (const auto& ob : obstacles_) {
      if (ob.strictly_contains(p)) return false;
    }
    return true;
  }

  bool in_shape(Vec2 p) const {
    if (const auto* r = std::get_if<RectangleShape>(&shape_)) return r->box.contains(p);
    const auto& d = std::get<DiscShape>(shape_);
    return norm(p - d.center) <= d.radius;
  }

  bool in_obstacle(Vec2 p) const {
    return std::any_of(obstacles_.begin(), obstacles_.end(), [&](const Rect& r) { return r.strictly_contains(p); });
  }

  /// Open-set membership used for characteristic tracing: boundary points are outside.
  bool strictly_inside(Vec2 p) const {
    if (const auto* r = std::get_if<RectangleShape>(&shape_)) {
      if (!r->box.strictly_contains(p)) return false;
    } else {
      const auto& d = std::get<DiscShape>(shape_);
      if (!(norm(p - d.center) < d.radius)) return false;
    }
    for (const auto& ob : obstacles_) {
      if (ob.contains(p)) return false;
    }
    return true;
  }

  const Shape& shape() const { return shape_; }
  const std::vector<Rect>& obstacles() const { return obstacles_; }
  const std::vector<Segment>& exits() const { return exits_; }
  double interior_sphere_radius() const { return r_interior_; }

  /// Distance from p to the domain boundary (outer boundary and obstacles).
  double distance_to_boundary(Vec2 p) const {
    double d;
    if (const auto* r = std::get_if<RectangleShape>(&shape_)) {
      const Rect& b = r->box;
      d = std::min({p.x - b.x0, b.x1 - p.x, p.y - b.y0, b.y1 - p.y});
    } else {
      const auto& c = std::get<DiscShape>(shape_);
      d = c.radius - norm(p - c.center);
    }
    for (const auto& ob : obstacles_) d = std::min(d, ob.distance(p));
    return d;
  }

  /// Every sampled point of the segment separates inside from outside along its normal.
  bool on_boundary(const Segment& seg) const {
    const double len = seg.length();
    if (!(len > 0.0)) return false;
    const Rect bb = bounding_box();
    const double eps = 1e-7 * std::max(bb.width(), bb.height());
    const Vec2 t = (seg.b - seg.a) / len;
    const Vec2 n{-t.y, t.x};
    constexpr int kSamples = 33;
    for (int k = 0; k < kSamples; ++k) {
      const double s = (k + 0.5) / kSamples;
      const Vec2 p = seg.a + (seg.b - seg.a) * s;
      if (inside(p + n * eps) == inside(p - n * eps)) return false;
    }
    return true;
  }

 private:
  Shape shape_;
  std::vector<Rect> obstacles_;
  std::vector<Segment> exits_;
  double r_interior_;
};

/// Sample-checks the declared interior-sphere radius: at boundary sample points
/// away from corners, the disc of that radius tangent from inside must fit.
inline bool validate_interior_sphere(const Domain& domain, int samples_per_edge = 64) {
  const double r = domain.interior_sphere_radius();
  auto disc_fits = [&](Vec2 center) {
    constexpr int kRing = 48;
    const double shrink = r * (1.0 - 1e-9);
    if (!domain.inside(center)) return false;
    for (int k = 0; k < kRing; ++k) {
      const double a = 2.0 * std::numbers::pi * k / kRing;
      if (!domain.inside(center + Vec2{std::cos(a), std::sin(a)} * shrink)) return false;
    }
    return true;
  };
  auto check_edge = [&](Vec2 a, Vec2 b, Vec2 inward) {
    const double len = norm(b - a);
    if (len <= 2.0 * r) return true;  // corner region only
    for (int k = 0; k < samples_per_edge; ++k) {
      const double s = r + (len - 2.0 * r) * (k + 0.5) / samples_per_edge;
      const Vec2 p = a + (b - a) * (s / len);
      if (!disc_fits(p + inward * r)) return false;
    }
    return true;
  };
  auto check_rect = [&](const Rect& q, double sign) {
    // sign = +1: region inside q; -1: region outside q (obstacle)
    return check_edge({q.x0, q.y0}, {q.x1, q.y0}, Vec2{0, 1} * sign) &&
           check_edge({q.x0, q.y1}, {q.x1, q.y1}, Vec2{0, -1} * sign) &&
           check_edge({q.x0, q.y0}, {q.x0, q.y1}, Vec2{1, 0} * sign) &&
           check_edge({q.x1, q.y0}, {q.x1, q.y1}, Vec2{-1, 0} * sign);
  };
  if (const auto* rs = std::get_if<RectangleShape>(&domain.shape())) {
    if (!check_rect(rs->box, 1.0)) return false;
  } else {
    const auto& d = std::get<DiscShape>(domain.shape());
    if (r > d.radius) return false;
    for (int k = 0; k < 4 * samples_per_edge; ++k) {
      const double a = 2.0 * std::numbers::pi * k / (4 * samples_per_edge);
      const Vec2 nrm{std::cos(a), std::sin(a)};
      if (!disc_fits(d.center + nrm * (d.radius - r))) return false;
    }
  }
  for (const auto& ob : domain.obstacles()) {
    if (!check_rect(ob, -1.0)) return false;
  }
  return true;
}

/// True iff the interior-sphere radius is at most a quarter of the kernel support,
/// the hypothesis under which the boundary normalizer stays bounded away from zero.
inline bool check_interior_sphere(const Domain& domain, double kernel_support) {
  return domain.interior_sphere_radius() <= kernel_support / 4.0;
}

/// Uniform cell-centred grid. Cell (i, j) has centre origin + ((i+1/2)dx, (j+1/2)dy).
struct Grid {
  int nx = 0;
  int ny = 0;
  double dx = 0.0;
  double dy = 0.0;
  Vec2 origin;

  std::size_t cell_count() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
  bool contains(int i, int j) const { return i >= 0 && i < nx && j >= 0 && j < ny; }
  Vec2 center(int i, int j) const { return {origin.x + (i + 0.5) * dx, origin.y + (j + 0.5) * dy}; }
  double cell_area() const { return dx * dy; }
  /// Uniform spacing; only meaningful when dx == dy.
  double h() const { return std::min(dx, dy); }
};

enum class CellClass : std::uint8_t { interior, obstacle, exterior };

enum class FaceClass : std::uint8_t {
  inactive,  // neither neighbour is an interior cell
  internal,
  wall,
  exit
};

/// Per-cell classes plus the two face families.
///
/// x-faces are stored (nx+1) x ny: face (i, j) separates cell (i-1, j) from (i, j).
/// y-faces are stored nx x (ny+1): face (i, j) separates cell (i, j-1) from (i, j).
struct CellMask {
  std::vector<CellClass> cells;
  std::vector<FaceClass> x_faces;
  std::vector<FaceClass> y_faces;

  std::size_t interior_count() const {
    return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), CellClass::interior));
  }
  std::size_t count_cells(CellClass c) const { return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), c)); }
  std::size_t count_faces(FaceClass c) const {
    return static_cast<std::size_t>(std::count(x_faces.begin(), x_faces.end(), c) +
                                    std::count(y_faces.begin(), y_faces.end(), c));
  }
};

/// Grid plus mask; the discrete image of a Domain at one resolution.
struct Mesh {
  Grid grid;
  CellMask mask;

  bool interior(int i, int j) const {
    return grid.contains(i, j) && mask.cells[grid.index(i, j)] == CellClass::interior;
  }
  bool interior(std::size_t idx) const { return mask.cells[idx] == CellClass::interior; }
  std::size_t x_face(int i, int j) const { return static_cast<std::size_t>(j) * (grid.nx + 1) + i; }
  std::size_t y_face(int i, int j) const { return static_cast<std::size_t>(j) * grid.nx + i; }
};

namespace detail {

inline int divide_exact(double length, double h, const char* axis) {
  const double ratio = length / h;
  const double n = std::round(ratio);
  if (n < 1.0 || std::abs(ratio - n) > 1e-9 * std::max(1.0, ratio)) {
    throw ConfigError(std::string("mesh size does not divide the bounding box along ") + axis);
  }
  return static_cast<int>(n);
}

inline FaceClass boundary_face_class(const Domain& domain, Vec2 midpoint, double half_h) {
  for (const auto& seg : domain.exits()) {
    if (seg.distance(midpoint) < half_h) return FaceClass::exit;
  }
  return FaceClass::wall;
}

}  // namespace detail

/// Classifies every face of the grid from the cell classes already in `mask`.
/// A boundary face is an exit when its midpoint lies strictly within h/2 of an exit segment.
inline void classify_faces(const Grid& grid, const Domain& domain, CellMask& mask) {
  const int nx = grid.nx, ny = grid.ny;
  auto is_interior = [&](int i, int j) {
    return grid.contains(i, j) && mask.cells[grid.index(i, j)] == CellClass::interior;
  };
  for (const auto& seg : domain.exits()) {
    if (!domain.on_boundary(seg)) throw ConfigError("exit segment does not lie on the domain boundary");
  }
  mask.x_faces.assign(static_cast<std::size_t>(nx + 1) * ny, FaceClass::inactive);
  mask.y_faces.assign(static_cast<std::size_t>(nx) * (ny + 1), FaceClass::inactive);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      const bool l = is_interior(i - 1, j), r = is_interior(i, j);
      FaceClass c = FaceClass::inactive;
      if (l && r) {
        c = FaceClass::internal;
      } else if (l || r) {
        const Vec2 mid{grid.origin.x + i * grid.dx, grid.origin.y + (j + 0.5) * grid.dy};
        c = detail::boundary_face_class(domain, mid, 0.5 * grid.dy);
      }
      mask.x_faces[static_cast<std::size_t>(j) * (nx + 1) + i] = c;
    }
  }
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const bool b = is_interior(i, j - 1), t = is_interior(i, j);
      FaceClass c = FaceClass::inactive;
      if (b && t) {
        c = FaceClass::internal;
      } else if (b || t) {
        const Vec2 mid{grid.origin.x + (i + 0.5) * grid.dx, grid.origin.y + j * grid.dy};
        c = detail::boundary_face_class(domain, mid, 0.5 * grid.dx);
      }
      mask.y_faces[static_cast<std::size_t>(j) * nx + i] = c;
    }
  }
}

/// Builds the uniform grid covering the bounding box with spacing h and
/// classifies cells by their centres.
inline Mesh build_grid(const Domain& domain, double h) {
  if (!(h > 0.0)) throw ConfigError("mesh size must be positive");
  const Rect bb = domain.bounding_box();
  Grid grid;
  grid.nx = detail::divide_exact(bb.width(), h, "x");
  grid.ny = detail::divide_exact(bb.height(), h, "y");
  grid.dx = bb.width() / grid.nx;
  grid.dy = bb.height() / grid.ny;
  grid.origin = {bb.x0, bb.y0};

  Mesh mesh{grid, {}};
  mesh.mask.cells.resize(grid.cell_count());
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const Vec2 c = grid.center(i, j);
      CellClass cls = CellClass::exterior;
      if (domain.in_shape(c)) cls = domain.in_obstacle(c) ? CellClass::obstacle : CellClass::interior;
      mesh.mask.cells[grid.index(i, j)] = cls;
    }
  }
  if (mesh.mask.interior_count() == 0) throw ConfigError("domain has no interior cells at this resolution");
  classify_faces(grid, domain, mesh.mask);
  return mesh;
}

}  // namespace nlcl

#endif  // NLCL_GEOMETRY_HPP
