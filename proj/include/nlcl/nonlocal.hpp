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

#ifndef NLCL_NONLOCAL_HPP
#define NLCL_NONLOCAL_HPP

// Boundary-aware convolution on a masked grid:
//
//   (rho *_O eta)(x) = (1 / z(x)) * sum_k w_k rho(x - o_k) chi(x - o_k)
//   z(x)             = sum_k w_k chi(x - o_k)
//
// and its gradient by the quotient rule
//
//   grad(rho *_O eta) = ((rho chi) * grad eta) / z - grad z ((rho chi) * eta) / z^2
//
// with grad z = chi * grad eta. z and grad z depend only on (mesh, kernel) and
// are computed once per BoundedConvolution.

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "nlcl/fields.hpp"
#include "nlcl/geometry.hpp"
#include "nlcl/kernels.hpp"

namespace nlcl {

namespace detail {

/// Zero-padded copy of f * chi so stencil sweeps need no bounds checks.
class PaddedField {
 public:
  PaddedField(const ScalarField& f, const Mesh& mesh, int pad_x, int pad_y)
      : pad_x_(pad_x), pad_y_(pad_y), width_(mesh.grid.nx + 2 * pad_x) {
    const int nx = mesh.grid.nx, ny = mesh.grid.ny;
    data_.assign(static_cast<std::size_t>(width_) * (ny + 2 * pad_y), 0.0);
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        const std::size_t k = mesh.grid.index(i, j);
        if (mesh.interior(k)) data_[base(i, j)] = f[k];
      }
    }
  }

  std::ptrdiff_t base(int i, int j) const {
    return static_cast<std::ptrdiff_t>(j + pad_y_) * width_ + (i + pad_x_);
  }
  int width() const { return width_; }
  const double* data() const { return data_.data(); }

 private:
  int pad_x_;
  int pad_y_;
  int width_;
  std::vector<double> data_;
};

inline std::vector<std::ptrdiff_t> linear_offsets(const KernelStencil& st, int width) {
  std::vector<std::ptrdiff_t> lin;
  lin.reserve(st.size());
  for (const auto& o : st.offsets) lin.push_back(static_cast<std::ptrdiff_t>(o.dj) * width + o.di);
  return lin;
}

inline ScalarField indicator(const Mesh& mesh) {
  ScalarField chi(mesh.grid);
  for (std::size_t k = 0; k < chi.size(); ++k) chi[k] = mesh.interior(k) ? 1.0 : 0.0;
  return chi;
}

// Raw sums S(x) = sum_k w_k f(x - o_k) and G(x) = sum_k g_k f(x - o_k) over the
// padded f * chi. Either output may be null. Accumulation order is the stencil
// order, so results are independent of the thread count.
inline void stencil_sums(const ScalarField& f, const Mesh& mesh, const KernelStencil& st, ScalarField* sum,
                         VectorField* grad_sum) {
  const PaddedField pf(f, mesh, st.radius_x, st.radius_y);
  const auto lin = linear_offsets(st, pf.width());
  const double* src = pf.data();
  const std::size_t n = st.size();
  const double* w = st.weights.data();
  const Vec2* g = st.gradient_weights.data();
  const int nx = mesh.grid.nx;
  if (sum) *sum = ScalarField(mesh.grid);
  if (grad_sum) *grad_sum = VectorField(mesh.grid);
  for_each_row(mesh.grid.ny, [&](int j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t idx = mesh.grid.index(i, j);
      if (!mesh.interior(idx)) continue;
      const double* at = src + pf.base(i, j);
      if (sum && grad_sum) {
        double s = 0.0, gx = 0.0, gy = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double v = at[-lin[k]];
          s += w[k] * v;
          gx += g[k].x * v;
          gy += g[k].y * v;
        }
        (*sum)[idx] = s;
        grad_sum->set(idx, {gx, gy});
      } else if (sum) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += w[k] * at[-lin[k]];
        (*sum)[idx] = s;
      } else if (grad_sum) {
        double gx = 0.0, gy = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double v = at[-lin[k]];
          gx += g[k].x * v;
          gy += g[k].y * v;
        }
        grad_sum->set(idx, {gx, gy});
      }
    }
  });
}

inline void require_positive_z(const ScalarField& z, const Mesh& mesh) {
  for (std::size_t k = 0; k < z.size(); ++k) {
    if (mesh.interior(k) && !(z[k] > 0.0)) {
      throw Error("normalizer z is not positive on an interior cell (under-resolved kernel or broken mask)");
    }
  }
}

}  // namespace detail

/// z(cell) = sum of stencil weights whose target cell is interior.
inline ScalarField compute_z(const Mesh& mesh, const KernelStencil& stencil) {
  ScalarField z;
  detail::stencil_sums(detail::indicator(mesh), mesh, stencil, &z, nullptr);
  return z;
}

/// grad z = chi * grad eta, the second time-independent field of the operator.
inline VectorField compute_grad_z(const Mesh& mesh, const KernelStencil& stencil) {
  VectorField gz;
  detail::stencil_sums(detail::indicator(mesh), mesh, stencil, nullptr, &gz);
  return gz;
}

inline ScalarField convolve_bounded(const ScalarField& rho, const Mesh& mesh, const KernelStencil& stencil,
                                    const ScalarField& z) {
  detail::require_positive_z(z, mesh);
  ScalarField out;
  detail::stencil_sums(rho, mesh, stencil, &out, nullptr);
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (mesh.interior(k)) out[k] /= z[k];
  }
  return out;
}

inline VectorField gradient_convolve_bounded(const ScalarField& rho, const Mesh& mesh, const KernelStencil& stencil,
                                             const ScalarField& z, const VectorField& grad_z) {
  detail::require_positive_z(z, mesh);
  ScalarField s;
  VectorField g;
  detail::stencil_sums(rho, mesh, stencil, &s, &g);
  VectorField out(mesh.grid);
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (!mesh.interior(k)) continue;
    const double zk = z[k];
    out.set(k, g[k] / zk - grad_z[k] * (s[k] / (zk * zk)));
  }
  return out;
}

/// One kernel on one mesh, with its cached normalizer z and grad z.
class BoundedConvolution {
 public:
  BoundedConvolution(const Mesh& mesh, const RadialKernel& kernel, double resolution_floor = kDefaultResolutionFloor)
      : mesh_(std::make_shared<const Mesh>(mesh)),
        kernel_(kernel),
        stencil_(build_stencil(kernel, mesh.grid, resolution_floor)) {
    detail::stencil_sums(detail::indicator(*mesh_), *mesh_, stencil_, &z_, &grad_z_);
    detail::require_positive_z(z_, *mesh_);
    min_z_ = 1.0;
    bool any = false;
    for (std::size_t k = 0; k < z_.size(); ++k) {
      if (!mesh_->interior(k)) continue;
      min_z_ = any ? std::min(min_z_, z_[k]) : z_[k];
      any = true;
    }
  }

  const Mesh& mesh() const { return *mesh_; }
  const RadialKernel& kernel() const { return kernel_; }
  const KernelStencil& stencil() const { return stencil_; }
  const ScalarField& z() const { return z_; }
  const VectorField& grad_z() const { return grad_z_; }
  /// Discrete lower bound c of z over interior cells.
  double min_z() const { return min_z_; }

  ScalarField convolve(const ScalarField& rho) const {
    ScalarField s;
    detail::stencil_sums(rho, *mesh_, stencil_, &s, nullptr);
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (mesh_->interior(k)) s[k] /= z_[k];
    }
    return s;
  }

  VectorField gradient(const ScalarField& rho) const {
    ScalarField s;
    VectorField g;
    detail::stencil_sums(rho, *mesh_, stencil_, &s, &g);
    VectorField out(mesh_->grid);
    for (std::size_t k = 0; k < out.size(); ++k) {
      if (!mesh_->interior(k)) continue;
      const double zk = z_[k];
      out.set(k, g[k] / zk - grad_z_[k] * (s[k] / (zk * zk)));
    }
    return out;
  }

 private:
  std::shared_ptr<const Mesh> mesh_;
  RadialKernel kernel_;
  KernelStencil stencil_;
  ScalarField z_;
  VectorField grad_z_;
  double min_z_ = 0.0;
};

enum class ChannelKind { average, gradient };

/// One nonlocal channel: the average (or its gradient) of the sum of the
/// listed populations, using kernels[kernel].
struct ChannelSpec {
  ChannelKind kind = ChannelKind::average;
  std::vector<int> sources;
  int kernel = 0;
};

struct CouplingSpec {
  std::vector<RadialKernel> kernels;
  std::vector<ChannelSpec> channels;

  /// Number of scalar arguments A_1..A_m: one per average, two per gradient.
  std::size_t arity() const {
    std::size_t m = 0;
    for (const auto& c : channels) m += c.kind == ChannelKind::average ? 1 : 2;
    return m;
  }
};

struct ChannelValue {
  ChannelKind kind = ChannelKind::average;
  ScalarField average;
  VectorField gradient;
};

/// Evaluated channels, in the order of CouplingSpec::channels.
struct NonlocalEval {
  std::vector<ChannelValue> channels;

  std::size_t arity() const {
    std::size_t m = 0;
    for (const auto& c : channels) m += c.kind == ChannelKind::average ? 1 : 2;
    return m;
  }

  /// A_1..A_m at one cell, gradients contributing their two components in order.
  std::vector<double> arguments(std::size_t cell) const {
    std::vector<double> a;
    a.reserve(arity());
    for (const auto& c : channels) {
      if (c.kind == ChannelKind::average) {
        a.push_back(c.average[cell]);
      } else {
        a.push_back(c.gradient.x()[cell]);
        a.push_back(c.gradient.y()[cell]);
      }
    }
    return a;
  }

  const ScalarField& average(std::size_t channel) const { return channels.at(channel).average; }
  const VectorField& gradient(std::size_t channel) const { return channels.at(channel).gradient; }
};

/// The operator J: owns one BoundedConvolution per distinct kernel support.
class NonlocalOperator {
 public:
  NonlocalOperator(const Mesh& mesh, CouplingSpec coupling, double resolution_floor = kDefaultResolutionFloor)
      : coupling_(std::move(coupling)) {
    for (const auto& kern : coupling_.kernels) {
      auto it = std::find_if(convolutions_.begin(), convolutions_.end(), [&](const auto& c) {
        return c->kernel().support() == kern.support();
      });
      if (it == convolutions_.end()) {
        convolutions_.push_back(std::make_shared<const BoundedConvolution>(mesh, kern, resolution_floor));
        kernel_slot_.push_back(convolutions_.size() - 1);
      } else {
        kernel_slot_.push_back(static_cast<std::size_t>(it - convolutions_.begin()));
      }
    }
    for (const auto& ch : coupling_.channels) {
      if (ch.kernel < 0 || static_cast<std::size_t>(ch.kernel) >= coupling_.kernels.size()) {
        throw ConfigError("channel references an unknown kernel");
      }
      if (ch.sources.empty()) throw ConfigError("channel has no source population");
    }
  }

  const CouplingSpec& coupling() const { return coupling_; }
  const BoundedConvolution& convolution_for_kernel(std::size_t kernel) const {
    return *convolutions_.at(kernel_slot_.at(kernel));
  }
  std::size_t distinct_kernels() const { return convolutions_.size(); }

  /// Smallest normalizer value over all kernels.
  double min_z() const {
    double c = 1.0;
    for (const auto& conv : convolutions_) c = std::min(c, conv->min_z());
    return c;
  }

  /// Evaluates every channel. Identical (sources, kernel support, kind) pairs
  /// are computed once.
  NonlocalEval assemble(std::span<const ScalarField> rho) const {
    using Key = std::pair<std::vector<int>, std::size_t>;
    std::map<Key, ScalarField> sums;
    std::map<Key, ScalarField> averages;
    std::map<Key, VectorField> gradients;
    auto summed = [&](const std::vector<int>& src) -> const ScalarField& {
      Key key{src, 0};
      auto it = sums.find(key);
      if (it != sums.end()) return it->second;
      for (int p : src) {
        if (p < 0 || static_cast<std::size_t>(p) >= rho.size()) throw ConfigError("channel source out of range");
      }
      ScalarField total = rho[static_cast<std::size_t>(src.front())];
      for (std::size_t q = 1; q < src.size(); ++q) {
        const ScalarField& other = rho[static_cast<std::size_t>(src[q])];
        for (std::size_t k = 0; k < total.size(); ++k) total[k] += other[k];
      }
      return sums.emplace(key, std::move(total)).first->second;
    };

    NonlocalEval out;
    out.channels.reserve(coupling_.channels.size());
    for (const auto& ch : coupling_.channels) {
      const std::size_t slot = kernel_slot_[static_cast<std::size_t>(ch.kernel)];
      Key key{ch.sources, slot};
      ChannelValue v;
      v.kind = ch.kind;
      if (ch.kind == ChannelKind::average) {
        auto it = averages.find(key);
        if (it == averages.end()) it = averages.emplace(key, convolutions_[slot]->convolve(summed(ch.sources))).first;
        v.average = it->second;
      } else {
        auto it = gradients.find(key);
        if (it == gradients.end()) it = gradients.emplace(key, convolutions_[slot]->gradient(summed(ch.sources))).first;
        v.gradient = it->second;
      }
      out.channels.push_back(std::move(v));
    }
    return out;
  }

 private:
  CouplingSpec coupling_;
  std::vector<std::shared_ptr<const BoundedConvolution>> convolutions_;
  std::vector<std::size_t> kernel_slot_;
};

inline NonlocalEval assemble_nonlocal(std::span<const ScalarField> rho, const NonlocalOperator& op) {
  return op.assemble(rho);
}

}  // namespace nlcl

#endif  // NLCL_NONLOCAL_HPP
