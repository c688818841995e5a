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

#ifndef NLCL_MODELS_HPP
#define NLCL_MODELS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <span>
#include <utility>
#include <vector>

#include "nlcl/fields.hpp"
#include "nlcl/geometry.hpp"
#include "nlcl/kernels.hpp"
#include "nlcl/nonlocal.hpp"

namespace nlcl {

/// v(r) = a min{1, max{0, (1 - (r/b)^3)^3}}.
struct SpeedLaw {
  double amplitude = 1.0;
  double capacity = 1.0;

  double operator()(double r) const {
    const double s = r / capacity;
    const double q = 1.0 - s * s * s;
    return amplitude * std::min(1.0, std::max(0.0, q * q * q));
  }
};

inline double eval_speed(const SpeedLaw& law, double r) { return law(r); }

inline constexpr double kInfiniteDistance = std::numeric_limits<double>::infinity();

/// Shortest-path distance on the 8-neighbour graph of interior cells (edge
/// weights h and h sqrt 2, no corner cutting past non-interior cells) from the
/// given seeds.
inline ScalarField graph_distance(const Mesh& mesh, std::span<const std::pair<std::size_t, double>> seeds) {
  const Grid& g = mesh.grid;
  ScalarField d(g, kInfiniteDistance);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  for (const auto& [idx, d0] : seeds) {
    if (d0 < d[idx]) {
      d[idx] = d0;
      open.push({d0, idx});
    }
  }
  const double h = g.h();
  const double diag = h * std::numbers::sqrt2;
  while (!open.empty()) {
    const auto [dist, idx] = open.top();
    open.pop();
    if (dist > d[idx]) continue;
    const int i = static_cast<int>(idx % static_cast<std::size_t>(g.nx));
    const int j = static_cast<int>(idx / static_cast<std::size_t>(g.nx));
    for (int dj = -1; dj <= 1; ++dj) {
      for (int di = -1; di <= 1; ++di) {
        if (di == 0 && dj == 0) continue;
        const int ni = i + di, nj = j + dj;
        if (!mesh.interior(ni, nj)) continue;
        const bool diagonal = di != 0 && dj != 0;
        if (diagonal && (!mesh.interior(i + di, j) || !mesh.interior(i, j + dj))) continue;
        const double nd = dist + (diagonal ? diag : h);
        const std::size_t nidx = g.index(ni, nj);
        if (nd < d[nidx]) {
          d[nidx] = nd;
          open.push({nd, nidx});
        }
      }
    }
  }
  return d;
}

/// A source for any_angle_distance: the label of `cell` is
/// anchor_distance + |centre(cell) - anchor|.
struct SightSeed {
  std::size_t cell = 0;
  Vec2 anchor;
  double anchor_distance = 0.0;
};

namespace detail {

// True when the straight segment a-b stays in interior cells (sampled every h/4).
inline bool line_of_sight(const Mesh& mesh, Vec2 a, Vec2 b) {
  const Grid& g = mesh.grid;
  const double len = norm(b - a);
  const int n = static_cast<int>(std::ceil(len / (0.25 * g.h())));
  for (int s = 1; s < n; ++s) {
    const Vec2 p = a + (b - a) * (static_cast<double>(s) / n);
    const int i = static_cast<int>(std::floor((p.x - g.origin.x) / g.dx));
    const int j = static_cast<int>(std::floor((p.y - g.origin.y) / g.dy));
    if (!mesh.interior(i, j)) return false;
  }
  return true;
}

}  // namespace detail

/// Any-angle shortest paths over the 8-neighbour cell graph: a cell inherits its
/// parent's anchor point when it can see it, so labels follow straight lines
/// and bend only at obstacle corners. With `check_sight` false every anchor is
/// assumed visible (valid for convex domains).
inline ScalarField any_angle_distance(const Mesh& mesh, std::span<const SightSeed> seeds, bool check_sight = true) {
  const Grid& g = mesh.grid;
  ScalarField d(g, kInfiniteDistance);
  std::vector<Vec2> anchor(g.cell_count());
  std::vector<double> anchor_d(g.cell_count(), kInfiniteDistance);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  for (const auto& s : seeds) {
    const auto [i, j] = std::pair{static_cast<int>(s.cell % g.nx), static_cast<int>(s.cell / g.nx)};
    const double v = s.anchor_distance + norm(g.center(i, j) - s.anchor);
    if (v < d[s.cell]) {
      d[s.cell] = v;
      anchor[s.cell] = s.anchor;
      anchor_d[s.cell] = s.anchor_distance;
      open.push({v, s.cell});
    }
  }
  while (!open.empty()) {
    const auto [dist, idx] = open.top();
    open.pop();
    if (dist > d[idx]) continue;
    const int i = static_cast<int>(idx % static_cast<std::size_t>(g.nx));
    const int j = static_cast<int>(idx / static_cast<std::size_t>(g.nx));
    const Vec2 cu = g.center(i, j);
    for (int dj = -1; dj <= 1; ++dj) {
      for (int di = -1; di <= 1; ++di) {
        if (di == 0 && dj == 0) continue;
        const int ni = i + di, nj = j + dj;
        if (!mesh.interior(ni, nj)) continue;
        if (di != 0 && dj != 0 && (!mesh.interior(i + di, j) || !mesh.interior(i, j + dj))) continue;
        const Vec2 cv = g.center(ni, nj);
        Vec2 a = cu;
        double ga = dist;
        if (!check_sight || detail::line_of_sight(mesh, anchor[idx], cv)) {
          a = anchor[idx];
          ga = anchor_d[idx];
        }
        const double nd = ga + norm(cv - a);
        const std::size_t nidx = g.index(ni, nj);
        if (nd < d[nidx]) {
          d[nidx] = nd;
          anchor[nidx] = a;
          anchor_d[nidx] = ga;
          open.push({nd, nidx});
        }
      }
    }
  }
  return d;
}

namespace detail {

// Centred difference of f along (di, dj), one-sided when a neighbour is not
// interior, 0 when both are missing.
inline double masked_difference(const ScalarField& f, const Mesh& mesh, int i, int j, int di, int dj, double h) {
  const bool fwd = mesh.interior(i + di, j + dj) && std::isfinite(f(i + di, j + dj));
  const bool bwd = mesh.interior(i - di, j - dj) && std::isfinite(f(i - di, j - dj));
  if (fwd && bwd) return (f(i + di, j + dj) - f(i - di, j - dj)) / (2.0 * h);
  if (fwd) return (f(i + di, j + dj) - f(i, j)) / h;
  if (bwd) return (f(i, j) - f(i - di, j - dj)) / h;
  return 0.0;
}

inline Vec2 masked_gradient(const ScalarField& f, const Mesh& mesh, int i, int j) {
  return {masked_difference(f, mesh, i, j, 1, 0, mesh.grid.dx), masked_difference(f, mesh, i, j, 0, 1, mesh.grid.dy)};
}

// Unit vector towards the neighbour with the steepest distance decrease.
inline Vec2 steepest_descent(const ScalarField& d, const Mesh& mesh, int i, int j) {
  Vec2 best{};
  double rate = 0.0;
  for (int dj = -1; dj <= 1; ++dj) {
    for (int di = -1; di <= 1; ++di) {
      if ((di == 0 && dj == 0) || !mesh.interior(i + di, j + dj)) continue;
      const Vec2 step{di * mesh.grid.dx, dj * mesh.grid.dy};
      const double r = (d(i, j) - d(i + di, j + dj)) / norm(step);
      if (r > rate) {
        rate = r;
        best = step / norm(step);
      }
    }
  }
  return best;
}

}  // namespace detail

/// Time-independent desired direction: unit geodesic direction towards the
/// target exits plus a wall-discomfort push along the inward wall normal.
struct DesiredField {
  ScalarField exit_distance;
  ScalarField wall_distance;
  VectorField geodesic;
  VectorField discomfort;
  VectorField w;
};

struct DiscomfortParams {
  double amplitude = 0.3;
  double range = 0.0;  // <= 0 selects 10 h
};

/// Builds the desired field. `targets` selects which exit segments attract this
/// population; empty means every exit of the domain.
inline DesiredField build_desired_field(const Mesh& mesh, const Domain& domain, std::span<const Segment> targets,
                                        DiscomfortParams discomfort = {}) {
  const Grid& g = mesh.grid;
  std::vector<Segment> goal(targets.begin(), targets.end());
  if (goal.empty()) goal = domain.exits();
  const double range = discomfort.range > 0.0 ? discomfort.range : 10.0 * g.h();

  std::vector<SightSeed> exit_seeds;
  std::vector<std::pair<std::size_t, double>> wall_seeds;
  auto near_goal = [&](Vec2 mid, double half) {
    return std::any_of(goal.begin(), goal.end(), [&](const Segment& s) { return s.distance(mid) < half; });
  };
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      if (!mesh.interior(i, j)) continue;
      const std::size_t k = g.index(i, j);
      bool exit_face = false, wall_face = false;
      const std::array<std::pair<FaceClass, Vec2>, 4> faces{{
          {mesh.mask.x_faces[mesh.x_face(i, j)], {g.origin.x + i * g.dx, g.origin.y + (j + 0.5) * g.dy}},
          {mesh.mask.x_faces[mesh.x_face(i + 1, j)], {g.origin.x + (i + 1) * g.dx, g.origin.y + (j + 0.5) * g.dy}},
          {mesh.mask.y_faces[mesh.y_face(i, j)], {g.origin.x + (i + 0.5) * g.dx, g.origin.y + j * g.dy}},
          {mesh.mask.y_faces[mesh.y_face(i, j + 1)], {g.origin.x + (i + 0.5) * g.dx, g.origin.y + (j + 1) * g.dy}},
      }};
      Vec2 exit_mid;
      for (const auto& [cls, mid] : faces) {
        if (cls == FaceClass::exit && near_goal(mid, 0.5 * g.h()) && !exit_face) {
          exit_face = true;
          exit_mid = mid;
        }
        if (cls == FaceClass::wall) wall_face = true;
      }
      if (exit_face) exit_seeds.push_back({k, exit_mid, 0.0});
      if (wall_face) wall_seeds.emplace_back(k, 0.0);
    }
  }
  if (exit_seeds.empty()) throw ConfigError("desired field needs at least one exit face");

  DesiredField out;
  out.exit_distance = any_angle_distance(mesh, exit_seeds, !domain.obstacles().empty());
  out.wall_distance = wall_seeds.empty() ? ScalarField(g, kInfiniteDistance) : graph_distance(mesh, wall_seeds);
  out.geodesic = VectorField(g);
  out.discomfort = VectorField(g);
  out.w = VectorField(g);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      if (!mesh.interior(i, j)) continue;
      const std::size_t k = g.index(i, j);
      if (!std::isfinite(out.exit_distance[k])) throw ConfigError("exit unreachable from an interior cell");
      Vec2 dir = -detail::masked_gradient(out.exit_distance, mesh, i, j);
      const double n = norm(dir);
      dir = n > 1e-12 ? dir / n : detail::steepest_descent(out.exit_distance, mesh, i, j);
      out.geodesic.set(k, dir);

      Vec2 push{};
      const double dw = out.wall_distance[k];
      if (std::isfinite(dw) && dw < range) {
        const Vec2 gw = detail::masked_gradient(out.wall_distance, mesh, i, j);
        const double gn = norm(gw);
        if (gn > 1e-12) push = gw * (discomfort.amplitude * (1.0 - dw / range) / gn);
      }
      out.discomfort.set(k, push);
      out.w.set(k, dir + push);
    }
  }
  return out;
}

/// A uniform desired field (plus optional discomfort from a DesiredField).
inline VectorField uniform_field(const Mesh& mesh, Vec2 value) {
  VectorField f(mesh.grid);
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (mesh.interior(k)) f.set(k, value);
  }
  return f;
}

/// -beta g / sqrt(1 + |g|^2) where g is the gradient channel `channel`.
struct AvoidanceTerm {
  double beta = 0.0;
  std::size_t channel = 0;
};

struct PopulationModel {
  SpeedLaw speed;
  std::size_t speed_channel = 0;  // average channel fed to the speed law
  VectorField desired;
  std::vector<AvoidanceTerm> avoidance;
};

/// Velocity laws for every population plus the nonlocal channels they read.
struct ModelSpec {
  std::vector<PopulationModel> populations;
  CouplingSpec coupling;

  /// a_i (max |w_i| + sum_j beta_ij), the uniform velocity bound of population i.
  double velocity_bound(std::size_t i, const Mesh& mesh) const {
    const auto& p = populations.at(i);
    double wmax = 0.0;
    for (std::size_t k = 0; k < p.desired.size(); ++k) {
      if (mesh.interior(k)) wmax = std::max(wmax, norm(p.desired[k]));
    }
    double betas = 0.0;
    for (const auto& a : p.avoidance) betas += a.beta;
    return p.speed.amplitude * (wmax + betas);
  }
};

inline VectorField eval_velocity(const PopulationModel& pop, const NonlocalEval& eval, const Mesh& mesh) {
  const Grid& g = mesh.grid;
  const ScalarField& avg = eval.average(pop.speed_channel);
  VectorField out(g);
  for_each_row(g.ny, [&](int j) {
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t k = g.index(i, j);
      if (!mesh.interior(k)) continue;
      Vec2 dir = pop.desired[k];
      for (const auto& term : pop.avoidance) {
        const Vec2 grad = eval.gradient(term.channel)[k];
        dir = dir - grad * (term.beta / std::sqrt(1.0 + dot(grad, grad)));
      }
      out.set(k, dir * pop.speed(avg[k]));
    }
  });
  return out;
}

/// Single population: channels [rho * eta1, grad(rho * eta2)], arity 3.
inline ModelSpec make_evacuation_model(SpeedLaw speed, VectorField desired, const RadialKernel& eta1,
                                       const RadialKernel& eta2, double beta) {
  if (beta < 0.0) throw ConfigError("avoidance weight must be nonnegative");
  ModelSpec spec;
  spec.coupling.kernels = {eta1, eta2};
  spec.coupling.channels = {{ChannelKind::average, {0}, 0}, {ChannelKind::gradient, {0}, 1}};
  spec.populations.push_back({speed, 0, std::move(desired), {{beta, 1}}});
  return spec;
}

inline VectorField eval_velocity_evacuation(const ModelSpec& spec, const NonlocalEval& eval, const Mesh& mesh) {
  return eval_velocity(spec.populations.at(0), eval, mesh);
}

/// Parameters of population i in the two-population model; arrays are indexed by
/// the other population j (j = i is self-avoidance).
struct CrowdParams {
  SpeedLaw speed;
  VectorField desired;
  double speed_kernel = 0.1875;              // support of eta_1^{ii}
  std::array<double, 2> avoid_kernel{0.5, 0.5};  // supports of eta_2^{ij}
  std::array<double, 2> beta{0.2, 0.5};          // beta_{ij}
};

/// Two populations with channel layout
///   A1 = (rho1+rho2) * eta1^11, A2 = (rho1+rho2) * eta1^22,
///   A3,4 = grad(rho1 * eta2^11), A5,6 = grad(rho2 * eta2^12),
///   A7,8 = grad(rho1 * eta2^21), A9,10 = grad(rho2 * eta2^22).
inline ModelSpec make_two_population_model(const std::array<CrowdParams, 2>& pops) {
  ModelSpec spec;
  auto& k = spec.coupling.kernels;
  for (int i = 0; i < 2; ++i) k.push_back(make_quartic_kernel_corridor(pops[i].speed_kernel));
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) k.push_back(make_quartic_kernel_corridor(pops[i].avoid_kernel[j]));
  }
  auto& ch = spec.coupling.channels;
  ch.push_back({ChannelKind::average, {0, 1}, 0});
  ch.push_back({ChannelKind::average, {0, 1}, 1});
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) ch.push_back({ChannelKind::gradient, {j}, 2 + 2 * i + j});
  }
  for (int i = 0; i < 2; ++i) {
    for (double b : pops[i].beta) {
      if (b < 0.0) throw ConfigError("avoidance weight must be nonnegative");
    }
    PopulationModel p{pops[i].speed, static_cast<std::size_t>(i), pops[i].desired, {}};
    for (int j = 0; j < 2; ++j) p.avoidance.push_back({pops[i].beta[j], static_cast<std::size_t>(2 + 2 * i + j)});
    spec.populations.push_back(std::move(p));
  }
  return spec;
}

inline std::pair<VectorField, VectorField> eval_velocity_two_population(const ModelSpec& spec, const NonlocalEval& eval,
                                                                        const Mesh& mesh) {
  return {eval_velocity(spec.populations.at(0), eval, mesh), eval_velocity(spec.populations.at(1), eval, mesh)};
}

}  // namespace nlcl

#endif  // NLCL_MODELS_HPP
