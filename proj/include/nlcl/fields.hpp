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

#ifndef NLCL_FIELDS_HPP
#define NLCL_FIELDS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "nlcl/geometry.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nlcl {

/// Cell-centred scalar samples, row-major (j outer).
class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(int nx, int ny, double value = 0.0)
      : nx_(nx), ny_(ny), values_(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny), value) {}
  explicit ScalarField(const Grid& g, double value = 0.0) : ScalarField(g.nx, g.ny, value) {}

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  std::size_t size() const { return values_.size(); }

  double& operator[](std::size_t k) { return values_[k]; }
  double operator[](std::size_t k) const { return values_[k]; }
  double& operator()(int i, int j) { return values_[static_cast<std::size_t>(j) * nx_ + i]; }
  double operator()(int i, int j) const { return values_[static_cast<std::size_t>(j) * nx_ + i]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  bool operator==(const ScalarField&) const = default;

 private:
  int nx_ = 0;
  int ny_ = 0;
  std::vector<double> values_;
};

/// Cell-centred 2-vector samples, stored as two component planes.
class VectorField {
 public:
  VectorField() = default;
  VectorField(int nx, int ny) : x_(nx, ny), y_(nx, ny) {}
  explicit VectorField(const Grid& g) : VectorField(g.nx, g.ny) {}

  int nx() const { return x_.nx(); }
  int ny() const { return x_.ny(); }
  std::size_t size() const { return x_.size(); }

  Vec2 operator[](std::size_t k) const { return {x_[k], y_[k]}; }
  Vec2 operator()(int i, int j) const { return {x_(i, j), y_(i, j)}; }
  void set(std::size_t k, Vec2 v) {
    x_[k] = v.x;
    y_[k] = v.y;
  }

  ScalarField& x() { return x_; }
  ScalarField& y() { return y_; }
  const ScalarField& x() const { return x_; }
  const ScalarField& y() const { return y_; }

  bool operator==(const VectorField&) const = default;

 private:
  ScalarField x_;
  ScalarField y_;
};

/// Runs body(j) for every grid row. Rows are independent, so results never
/// depend on the thread count as long as body writes only row j.
template <typename Body>
void for_each_row(int ny, Body&& body) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int j = 0; j < ny; ++j) body(j);
}

inline void set_thread_count(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

/// h^2-weighted L1 norm over interior cells.
inline double l1_norm(const ScalarField& f, const Mesh& mesh) {
  double s = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (mesh.interior(k)) s += std::abs(f[k]);
  }
  return s * mesh.grid.cell_area();
}

inline double l1_distance(const ScalarField& a, const ScalarField& b, const Mesh& mesh) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (mesh.interior(k)) s += std::abs(a[k] - b[k]);
  }
  return s * mesh.grid.cell_area();
}

inline double sup_norm(const ScalarField& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

inline double sup_norm(const VectorField& f) {
  double m = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) m = std::max(m, norm(f[k]));
  return m;
}

inline bool all_finite(const ScalarField& f) {
  return std::all_of(f.values().begin(), f.values().end(), [](double v) { return std::isfinite(v); });
}

}  // namespace nlcl

#endif  // NLCL_FIELDS_HPP
