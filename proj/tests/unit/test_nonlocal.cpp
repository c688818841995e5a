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

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "nlcl/models.hpp"
#include "nlcl/nonlocal.hpp"
#include "nlcl/simulator.hpp"

namespace nlcl {
namespace {

Domain room() { return preset_room().domain.build(); }

ScalarField random_field(const Mesh& m, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(0.0, scale);
  ScalarField f(m.grid);
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = m.interior(k) ? u(rng) : 0.0;
  return f;
}

template <typename F>
ScalarField sample(const Mesh& m, F&& fn) {
  ScalarField f(m.grid);
  for (int j = 0; j < m.grid.ny; ++j) {
    for (int i = 0; i < m.grid.nx; ++i) {
      if (m.interior(i, j)) f(i, j) = fn(m.grid.center(i, j));
    }
  }
  return f;
}

TEST(Normalizer, EqualsFullStencilSumAwayFromWalls) {
  const double l = 0.625;
  const Domain d = room();
  const Mesh m = build_grid(d, 0.03125);
  const BoundedConvolution conv(m, make_quartic_kernel_room(l));
  const double full = conv.stencil().weight_sum();
  EXPECT_NEAR(full, 1.0, 0.01);
  std::size_t deep = 0;
  for (int j = 0; j < m.grid.ny; ++j) {
    for (int i = 0; i < m.grid.nx; ++i) {
      if (!m.interior(i, j) || d.distance_to_boundary(m.grid.center(i, j)) <= l) continue;
      EXPECT_EQ(conv.z()(i, j), full);
      ++deep;
    }
  }
  EXPECT_GT(deep, 1000u);
}

TEST(Normalizer, CornerIsAboutAQuarter) {
  const Mesh m = build_grid(room(), 0.03125);
  const BoundedConvolution conv(m, make_quartic_kernel_room(0.625));
  EXPECT_NEAR(conv.z()(0, 0), 0.25, 0.05);
  EXPECT_NEAR(conv.z()(m.grid.nx - 1, m.grid.ny - 1), 0.25, 0.05);
}

TEST(Normalizer, BoundedBelowAndAbove) {
  const Mesh m = build_grid(room(), 0.0625);
  for (double l : {0.625, 1.5}) {
    const BoundedConvolution conv(m, make_quartic_kernel_room(l));
    EXPECT_GT(conv.min_z(), 0.2);
    for (std::size_t k = 0; k < m.grid.cell_count(); ++k) {
      if (m.interior(k)) {
        EXPECT_GE(conv.z()[k], conv.min_z());
        EXPECT_LE(conv.z()[k], 1.01);
      }
    }
  }
}

TEST(Normalizer, NonPositiveZRejected) {
  const Mesh m = build_grid(room(), 0.125);
  const auto st = build_stencil(make_quartic_kernel_room(0.625), m.grid);
  const ScalarField zero_z(m.grid);
  EXPECT_THROW(convolve_bounded(ScalarField(m.grid, 1.0), m, st, zero_z), Error);
}

TEST(Convolution, ConstantIsAFixedPoint) {
  const Mesh m = build_grid(room(), 0.0625);
  const BoundedConvolution conv(m, make_quartic_kernel_room(0.625));
  for (double c : {1.0, 0.3, 7.25}) {
    const ScalarField out = conv.convolve(ScalarField(m.grid, c));
    for (std::size_t k = 0; k < out.size(); ++k) {
      if (m.interior(k)) EXPECT_NEAR(out[k], c, 1e-12 * c);
    }
  }
}

TEST(Convolution, FreeFunctionsMatchCachedOperator) {
  const Mesh m = build_grid(room(), 0.125);
  const auto k = make_quartic_kernel_room(0.625);
  const BoundedConvolution conv(m, k);
  std::mt19937_64 rng(7);
  const ScalarField rho = random_field(m, rng);
  const auto st = build_stencil(k, m.grid);
  const ScalarField z = compute_z(m, st);
  EXPECT_EQ(z, conv.z());
  EXPECT_EQ(convolve_bounded(rho, m, st, z), conv.convolve(rho));
  EXPECT_EQ(gradient_convolve_bounded(rho, m, st, z, compute_grad_z(m, st)), conv.gradient(rho));
}

TEST(ConvolutionProperty, Linearity) {
  const Mesh m = build_grid(room(), 0.125);
  const BoundedConvolution conv(m, make_quartic_kernel_room(0.625));
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const ScalarField a = random_field(m, rng), b = random_field(m, rng);
    const double s = 1.7, t = 0.4;
    ScalarField mix(m.grid);
    for (std::size_t k = 0; k < mix.size(); ++k) mix[k] = s * a[k] + t * b[k];
    const ScalarField ca = conv.convolve(a), cb = conv.convolve(b), cm = conv.convolve(mix);
    const VectorField ga = conv.gradient(a), gb = conv.gradient(b), gm = conv.gradient(mix);
    for (std::size_t k = 0; k < mix.size(); ++k) {
      if (!m.interior(k)) continue;
      EXPECT_NEAR(cm[k], s * ca[k] + t * cb[k], 1e-12);
      EXPECT_NEAR(gm.x()[k], s * ga.x()[k] + t * gb.x()[k], 1e-11);
      EXPECT_NEAR(gm.y()[k], s * ga.y()[k] + t * gb.y()[k], 1e-11);
    }
  }
}

TEST(ConvolutionProperty, StaysWithinLocalBounds) {
  const Mesh m = build_grid(room(), 0.125);
  const BoundedConvolution conv(m, make_quartic_kernel_room(0.625));
  const auto& st = conv.stencil();
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const ScalarField rho = random_field(m, rng, 4.0);
    const ScalarField out = conv.convolve(rho);
    for (int j = 0; j < m.grid.ny; ++j) {
      for (int i = 0; i < m.grid.nx; ++i) {
        if (!m.interior(i, j)) continue;
        double lo = 1e300, hi = -1e300;
        for (const auto& o : st.offsets) {
          if (!m.interior(i - o.di, j - o.dj)) continue;
          lo = std::min(lo, rho(i - o.di, j - o.dj));
          hi = std::max(hi, rho(i - o.di, j - o.dj));
        }
        EXPECT_GE(out(i, j), lo * (1.0 - 1e-14));
        EXPECT_LE(out(i, j), hi * (1.0 + 1e-14));
      }
    }
  }
}

// |rho * eta|_inf <= |eta|_inf |rho|_L1 / c and the matching Lipschitz bound.
TEST(ConvolutionProperty, SupBoundsInTermsOfMass) {
  const Mesh m = build_grid(room(), 0.0625);
  const BoundedConvolution conv(m, make_quartic_kernel_room(0.625));
  const double c = conv.min_z();
  const double eta_inf = conv.kernel().sup();
  double grad_eta_inf = 0.0;
  for (const Vec2& g : conv.stencil().gradient_weights) grad_eta_inf = std::max(grad_eta_inf, norm(g));
  grad_eta_inf /= m.grid.cell_area();
  const double grad_z_inf = sup_norm(conv.grad_z());
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const ScalarField a = random_field(m, rng), b = random_field(m, rng);
    EXPECT_LE(sup_norm(conv.convolve(a)), eta_inf * l1_norm(a, m) / c);
    const ScalarField ca = conv.convolve(a), cb = conv.convolve(b);
    double lip = 0.0;
    for (std::size_t k = 0; k < ca.size(); ++k) lip = std::max(lip, std::abs(ca[k] - cb[k]));
    EXPECT_LE(lip, eta_inf * l1_distance(a, b, m) / c);
    const double gbound = (grad_eta_inf / c + eta_inf * grad_z_inf / (c * c)) * l1_norm(a, m);
    EXPECT_LE(sup_norm(conv.gradient(a)), gbound);
  }
}

TEST(Gradient, ConstantFieldHasZeroGradient) {
  const Mesh m = build_grid(room(), 0.0625);
  const BoundedConvolution conv(m, make_quartic_kernel_room(0.625));
  const double c = 3.0;
  const VectorField g = conv.gradient(ScalarField(m.grid, c));
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!m.interior(k)) continue;
    const double scale = c * norm(conv.grad_z()[k]) / conv.z()[k] + c;
    EXPECT_LE(norm(g[k]), 1e-12 * scale);
  }
}

TEST(Gradient, LinearFieldMatchesFiniteDifferences) {
  const double l = 0.625, h = 0.03125;
  const Domain d = Domain::rectangle({0, 8, -4, 4});
  const Mesh m = build_grid(d, h);
  const BoundedConvolution conv(m, make_quartic_kernel_room(l));
  const double slope = 0.25;
  const ScalarField rho = sample(m, [&](Vec2 p) { return 1.0 + slope * p.x; });
  const ScalarField avg = conv.convolve(rho);
  const VectorField g = conv.gradient(rho);
  const double tol = 5.0 * h * sup_norm(rho) / l;
  for (int j = 1; j < m.grid.ny - 1; ++j) {
    for (int i = 1; i < m.grid.nx - 1; ++i) {
      if (d.distance_to_boundary(m.grid.center(i, j)) <= l + h) continue;
      const double fdx = (avg(i + 1, j) - avg(i - 1, j)) / (2.0 * h);
      const double fdy = (avg(i, j + 1) - avg(i, j - 1)) / (2.0 * h);
      EXPECT_NEAR(g.x()(i, j), fdx, tol);
      EXPECT_NEAR(g.y()(i, j), fdy, tol);
      EXPECT_NEAR(g.x()(i, j), slope, 0.01 * slope);
    }
  }
}

TEST(Gradient, AntisymmetricDataGivesZeroAlongTheAxis) {
  // 65 rows, so the middle row of cell centres lies on y = 0.
  const Domain d = Domain::rectangle({0, 4, -2.03125, 2.03125});
  const Mesh m = build_grid(d, 0.0625);
  const int mid = m.grid.ny / 2;
  ASSERT_EQ(m.grid.center(0, mid).y, 0.0);
  const BoundedConvolution conv(m, make_quartic_kernel_room(0.625));
  const ScalarField rho = sample(m, [](Vec2 p) { return std::sin(3.0 * p.x) * p.y * std::exp(-p.y * p.y); });
  const VectorField g = conv.gradient(rho);
  for (int i = 0; i < m.grid.nx; ++i) EXPECT_NEAR(g.x()(i, mid), 0.0, 1e-10);
}

TEST(GradientProperty, SecondOrderConsistencyWithFiniteDifferences) {
  const double l = 1.0;
  const Domain d = Domain::rectangle({-2, 2, -2, 2});
  double prev = 0.0;
  for (double h : {0.125, 0.0625, 0.03125}) {
    const Mesh m = build_grid(d, h);
    const BoundedConvolution conv(m, make_quartic_kernel_room(l));
    const ScalarField rho = sample(m, [](Vec2 p) { return 1.0 + 0.5 * std::sin(2.0 * p.x + 0.3) * std::cos(1.5 * p.y); });
    const ScalarField avg = conv.convolve(rho);
    const VectorField g = conv.gradient(rho);
    double err = 0.0;
    for (int j = 1; j < m.grid.ny - 1; ++j) {
      for (int i = 1; i < m.grid.nx - 1; ++i) {
        const Vec2 c = m.grid.center(i, j);
        if (std::abs(c.x) > 0.5 || std::abs(c.y) > 0.5) continue;
        err = std::max(err, std::abs(g.x()(i, j) - (avg(i + 1, j) - avg(i - 1, j)) / (2.0 * h)));
        err = std::max(err, std::abs(g.y()(i, j) - (avg(i, j + 1) - avg(i, j - 1)) / (2.0 * h)));
      }
    }
    if (prev > 0.0) EXPECT_GE(prev / err, 3.5) << "h = " << h;
    prev = err;
  }
}

TEST(Assemble, EvacuationArityAndZeroData) {
  const Mesh m = build_grid(room(), 0.125);
  const auto spec = make_evacuation_model({2.0, 4.0}, uniform_field(m, {1, 0}), make_quartic_kernel_room(0.625),
                                          make_quartic_kernel_room(1.5), 0.6);
  EXPECT_EQ(spec.coupling.arity(), 3u);
  const NonlocalOperator op(m, spec.coupling);
  const std::vector<ScalarField> rho{ScalarField(m.grid)};
  const NonlocalEval ev = assemble_nonlocal(rho, op);
  EXPECT_EQ(ev.arity(), 3u);
  for (double v : ev.arguments(m.grid.index(10, 10))) EXPECT_EQ(v, 0.0);
}

TEST(Assemble, TwoPopulationChannelLayout) {
  const Mesh m = build_grid(Domain::rectangle({0, 16, -2, 2}), 0.0625);
  std::array<CrowdParams, 2> p;
  p[0] = {{1.0, 4.5}, uniform_field(m, {1, 0}), 0.1875, {0.5, 0.5}, {0.2, 0.5}};
  p[1] = {{1.5, 4.5}, uniform_field(m, {-1, 0}), 0.1875, {0.5, 0.5}, {0.5, 0.2}};
  const auto spec = make_two_population_model(p);
  EXPECT_EQ(spec.coupling.arity(), 10u);
  const NonlocalOperator op(m, spec.coupling, 3.0);
  EXPECT_EQ(op.distinct_kernels(), 2u);

  std::mt19937_64 rng(13);
  const std::vector<ScalarField> only2{ScalarField(m.grid), random_field(m, rng)};
  const NonlocalEval ev = op.assemble(only2);
  EXPECT_EQ(ev.arity(), 10u);
  // grad channels read rho^j: j = 0 channels see nothing, j = 1 channels see rho^2.
  EXPECT_EQ(sup_norm(ev.gradient(2)), 0.0);
  EXPECT_EQ(sup_norm(ev.gradient(4)), 0.0);
  EXPECT_GT(sup_norm(ev.gradient(3)), 0.0);
  EXPECT_GT(sup_norm(ev.gradient(5)), 0.0);
  // Both speed channels average the total density.
  EXPECT_EQ(ev.average(0), op.convolution_for_kernel(0).convolve(only2[1]));
}

TEST(Assemble, RecomputationIsBitIdentical) {
  const Mesh m = build_grid(room(), 0.125);
  const auto spec = make_evacuation_model({2.0, 4.0}, uniform_field(m, {1, 0}), make_quartic_kernel_room(0.625),
                                          make_quartic_kernel_room(1.5), 0.6);
  const NonlocalOperator op(m, spec.coupling);
  std::mt19937_64 rng(17);
  const std::vector<ScalarField> rho{random_field(m, rng)};
  const NonlocalEval a = op.assemble(rho), b = op.assemble(rho);
  ASSERT_EQ(a.channels.size(), b.channels.size());
  for (std::size_t c = 0; c < a.channels.size(); ++c) {
    EXPECT_EQ(a.channels[c].average, b.channels[c].average);
    EXPECT_EQ(a.channels[c].gradient, b.channels[c].gradient);
  }
}

}  // namespace
}  // namespace nlcl
