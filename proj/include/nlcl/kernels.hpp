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

#ifndef NLCL_KERNELS_HPP
#define NLCL_KERNELS_HPP

#include <cmath>
#include <numbers>
#include <vector>

#include "nlcl/geometry.hpp"

namespace nlcl {

/// Which closed form the kernel was declared with. Both describe the same
/// profile c (1 - (xi/l)^4)^4 with c = 315 / (128 pi l^2).
enum class KernelForm { room, corridor };

/// Compactly supported radial averaging kernel eta(x) = profile(|x|) with
/// unit mass in the plane, non-increasing profile and profile'(0) = 0.
class RadialKernel {
 public:
  RadialKernel(double support, KernelForm form) : l_(support), form_(form) {
    if (!(support > 0.0)) throw ConfigError("kernel support must be positive");
    coeff_ = 315.0 / (128.0 * std::numbers::pi * l_ * l_);
  }

  double support() const { return l_; }
  KernelForm form() const { return form_; }
  double coefficient() const { return coeff_; }

  double profile(double xi) const {
    if (xi >= l_) return 0.0;
    const double s = xi / l_;
    const double q = 1.0 - s * s * s * s;
    return coeff_ * q * q * q * q;
  }

  double profile_d1(double xi) const {
    if (xi >= l_) return 0.0;
    const double s = xi / l_;
    const double q = 1.0 - s * s * s * s;
    return -16.0 * coeff_ / l_ * s * s * s * q * q * q;
  }

  double profile_d2(double xi) const {
    if (xi >= l_) return 0.0;
    const double s = xi / l_;
    const double s4 = s * s * s * s;
    const double q = 1.0 - s4;
    return -48.0 * coeff_ / (l_ * l_) * s * s * q * q * (1.0 - 5.0 * s4);
  }

  double operator()(Vec2 x) const { return profile(norm(x)); }

  double sup() const { return coeff_; }

 private:
  double l_;
  KernelForm form_;
  double coeff_;
};

/// 315 / (128 pi l^18) (l^4 - xi^4)^4 on [0, l].
inline RadialKernel make_quartic_kernel_room(double l) { return RadialKernel(l, KernelForm::room); }

/// 315 / (128 pi l^2) (1 - (xi/l)^4)^4 on [0, l].
inline RadialKernel make_quartic_kernel_corridor(double l) { return RadialKernel(l, KernelForm::corridor); }

inline Vec2 eval_gradient(const RadialKernel& kernel, Vec2 x) {
  const double r = norm(x);
  if (r == 0.0 || r >= kernel.support()) return {0.0, 0.0};
  return x * (kernel.profile_d1(r) / r);
}

struct StencilOffset {
  int di = 0;
  int dj = 0;
};

/// Discrete kernel: midpoint-rule weights w_k = eta(o_k h) dx dy and gradient
/// weights g_k = grad eta(o_k h) dx dy over the offsets strictly inside the
/// support. Offsets are ordered row-major (dj outer, di inner).
struct KernelStencil {
  double support = 0.0;
  int radius_x = 0;
  int radius_y = 0;
  std::vector<StencilOffset> offsets;
  std::vector<double> weights;
  std::vector<Vec2> gradient_weights;

  std::size_t size() const { return offsets.size(); }

  double weight_sum() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
  }
};

/// Minimum number of cells per kernel support accepted by build_stencil.
inline constexpr double kDefaultResolutionFloor = 4.0;

/// Precomputes the discrete kernel for `grid`. Requires max(dx, dy) <= l / floor.
inline KernelStencil build_stencil(const RadialKernel& kernel, const Grid& grid,
                                   double resolution_floor = kDefaultResolutionFloor) {
  const double l = kernel.support();
  const double hmax = std::max(grid.dx, grid.dy);
  if (!(resolution_floor > 0.0) || hmax > l / resolution_floor * (1.0 + 1e-12)) {
    throw ConfigError("kernel under-resolved: mesh size exceeds support / resolution floor");
  }
  KernelStencil st;
  st.support = l;
  st.radius_x = static_cast<int>(std::ceil(l / grid.dx));
  st.radius_y = static_cast<int>(std::ceil(l / grid.dy));
  const double area = grid.cell_area();
  for (int dj = -st.radius_y; dj <= st.radius_y; ++dj) {
    for (int di = -st.radius_x; di <= st.radius_x; ++di) {
      const Vec2 d{di * grid.dx, dj * grid.dy};
      if (!(norm(d) < l)) continue;
      st.offsets.push_back({di, dj});
      st.weights.push_back(kernel(d) * area);
      st.gradient_weights.push_back(eval_gradient(kernel, d) * area);
    }
  }
  return st;
}

}  // namespace nlcl

#endif  // NLCL_KERNELS_HPP
