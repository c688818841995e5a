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

#ifndef NLCL_TRANSPORT_HPP
#define NLCL_TRANSPORT_HPP

// Linear transport  r_t + div(r u) = 0  on a bounded domain with zero inflow
// datum, solved two ways:
//   * exactly, by backward characteristics: r(t,x) = r0(X(0;t,x)) exp(-int div u)
//     when the characteristic reaches t = 0 inside the domain, 0 when it hits
//     the boundary first;
//   * approximately, by a dimension-by-dimension Lax-Friedrichs step with a
//     global speed and a viscosity factor theta.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <vector>

#include "nlcl/fields.hpp"
#include "nlcl/geometry.hpp"

namespace nlcl {

template <typename U>
concept VelocityModel = requires(const U& u, double t, Vec2 x) {
  { u.velocity(t, x) } -> std::convertible_to<Vec2>;
  { u.divergence(t, x) } -> std::convertible_to<double>;
};

struct Mat2 {
  double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;
  Vec2 operator*(Vec2 v) const { return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y}; }
  double trace() const { return a11 + a22; }
};

/// Time-independent affine field u(x) = A x + b.
struct AffineVelocity {
  Mat2 matrix;
  Vec2 offset;

  Vec2 velocity(double /*t*/, Vec2 x) const { return matrix * x + offset; }
  Mat2 jacobian(double /*t*/, Vec2 /*x*/) const { return matrix; }
  double divergence(double /*t*/, Vec2 /*x*/) const { return matrix.trace(); }

  /// u = -x.
  static AffineVelocity contraction() { return {{-1.0, 0.0, 0.0, -1.0}, {}}; }
  /// Rigid rotation with angular rate omega about c.
  static AffineVelocity rotation(Vec2 c, double omega) {
    return {{0.0, -omega, omega, 0.0}, {omega * c.y, -omega * c.x}};
  }
  static AffineVelocity constant(Vec2 u) { return {{}, u}; }
};

static_assert(VelocityModel<AffineVelocity>);

/// Frozen-coefficient linear problem: velocity, initial datum on the mesh, domain.
template <VelocityModel U>
struct LinearIBVP {
  U velocity;
  Domain domain;
  Mesh mesh;
  ScalarField initial;
  double horizon = 1.0;
};

template <VelocityModel U>
LinearIBVP<U> make_linear_problem(U velocity, Domain domain, double h, auto&& initial_datum, double horizon) {
  Mesh mesh = build_grid(domain, h);
  ScalarField r0(mesh.grid);
  for (int j = 0; j < mesh.grid.ny; ++j) {
    for (int i = 0; i < mesh.grid.nx; ++i) {
      if (mesh.interior(i, j)) r0(i, j) = initial_datum(mesh.grid.center(i, j));
    }
  }
  return {std::move(velocity), std::move(domain), std::move(mesh), std::move(r0), horizon};
}

enum class Origin { from_initial_data, from_boundary };

struct CharacteristicPath {
  std::vector<double> times;      // decreasing from t
  std::vector<Vec2> positions;    // X(times[k]; t, x)
  double divergence_integral = 0.0;  // int_{tau_stop}^{t} div u(tau, X(tau)) dtau
  Origin origin = Origin::from_initial_data;

  Vec2 foot() const { return positions.back(); }
  double stop_time() const { return times.back(); }
};

struct TraceOptions {
  double dtau = 0.0;  // <= 0 selects the default step
  long max_steps = 10'000'000;
};

namespace detail {

struct TraceState {
  Vec2 x;
  double integral = 0.0;
};

// One RK4 step of dX/dtau = u, dI/dtau = div u from tau to tau - step.
template <VelocityModel U>
TraceState rk4_backward(const U& u, double tau, const TraceState& s, double step) {
  const double hs = -step;
  auto f = [&](double t, Vec2 x) { return std::pair{u.velocity(t, x), u.divergence(t, x)}; };
  const auto [k1, d1] = f(tau, s.x);
  const auto [k2, d2] = f(tau + 0.5 * hs, s.x + k1 * (0.5 * hs));
  const auto [k3, d3] = f(tau + 0.5 * hs, s.x + k2 * (0.5 * hs));
  const auto [k4, d4] = f(tau + hs, s.x + k3 * hs);
  TraceState out;
  out.x = s.x + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (hs / 6.0);
  out.integral = s.integral + (d1 + 2.0 * d2 + 2.0 * d3 + d4) * (hs / 6.0);
  return out;
}

template <VelocityModel U>
double max_speed_on_mesh(const U& u, const Mesh& mesh, double t) {
  double m = 0.0;
  for (int j = 0; j < mesh.grid.ny; ++j) {
    for (int i = 0; i < mesh.grid.nx; ++i) {
      if (!mesh.interior(i, j)) continue;
      const Vec2 c = mesh.grid.center(i, j);
      m = std::max({m, norm(u.velocity(0.0, c)), norm(u.velocity(t, c))});
    }
  }
  return m;
}

}  // namespace detail

/// Default backward step: min(h / (2 max|u|), t / 32).
template <VelocityModel U>
double default_dtau(const LinearIBVP<U>& problem, double t) {
  const double vmax = detail::max_speed_on_mesh(problem.velocity, problem.mesh, t);
  double dtau = t / 32.0;
  if (vmax > 0.0) dtau = std::min(dtau, problem.mesh.grid.h() / (2.0 * vmax));
  return dtau;
}

/// Integrates the characteristic through (t, x) backward to tau = 0, or to the
/// first boundary crossing (located by bisection to dtau * 1e-3).
template <VelocityModel U>
CharacteristicPath trace_characteristic(const LinearIBVP<U>& problem, double t, Vec2 x, TraceOptions opt = {}) {
  CharacteristicPath path;
  path.times.push_back(t);
  path.positions.push_back(x);
  if (!problem.domain.strictly_inside(x)) {
    path.origin = Origin::from_boundary;
    return path;
  }
  if (t <= 0.0) return path;
  const double dtau = opt.dtau > 0.0 ? opt.dtau : default_dtau(problem, t);
  const double steps_real = std::ceil(t / dtau - 1e-9);
  if (steps_real > static_cast<double>(opt.max_steps)) {
    throw Error("characteristic tracing exceeds the step cap");
  }
  const long steps = std::max(1L, static_cast<long>(steps_real));
  const double step = t / static_cast<double>(steps);

  detail::TraceState s{x, 0.0};
  double tau = t;
  for (long n = 0; n < steps; ++n) {
    const double this_step = (n == steps - 1) ? tau : step;
    const detail::TraceState next = detail::rk4_backward(problem.velocity, tau, s, this_step);
    if (!problem.domain.strictly_inside(next.x)) {
      double lo = 0.0, hi = 1.0;
      while ((hi - lo) * this_step > this_step * 1e-3) {
        const double mid = 0.5 * (lo + hi);
        const auto trial = detail::rk4_backward(problem.velocity, tau, s, mid * this_step);
        (problem.domain.strictly_inside(trial.x) ? lo : hi) = mid;
      }
      const auto hit = detail::rk4_backward(problem.velocity, tau, s, hi * this_step);
      path.times.push_back(tau - hi * this_step);
      path.positions.push_back(hit.x);
      path.divergence_integral = -hit.integral;
      path.origin = Origin::from_boundary;
      return path;
    }
    s = next;
    tau = (n == steps - 1) ? 0.0 : tau - this_step;
    path.times.push_back(tau);
    path.positions.push_back(s.x);
  }
  path.divergence_integral = -s.integral;
  path.origin = Origin::from_initial_data;
  return path;
}

/// Bilinear interpolation of cell-centred data using only interior corners,
/// renormalised over the corners used (so constants are reproduced exactly).
inline double masked_bilinear(const ScalarField& f, const Mesh& mesh, Vec2 p) {
  const Grid& g = mesh.grid;
  const double fi = (p.x - g.origin.x) / g.dx - 0.5;
  const double fj = (p.y - g.origin.y) / g.dy - 0.5;
  const int i0 = static_cast<int>(std::floor(fi));
  const int j0 = static_cast<int>(std::floor(fj));
  const double sx = fi - i0, sy = fj - j0;
  double num = 0.0, den = 0.0;
  for (int b = 0; b < 2; ++b) {
    for (int a = 0; a < 2; ++a) {
      const int i = i0 + a, j = j0 + b;
      if (!mesh.interior(i, j)) continue;
      const double w = (a ? sx : 1.0 - sx) * (b ? sy : 1.0 - sy);
      num += w * f(i, j);
      den += w;
    }
  }
  return den > 0.0 ? num / den : 0.0;
}

template <VelocityModel U>
double exact_value(const LinearIBVP<U>& problem, double t, Vec2 x, TraceOptions opt = {}) {
  const CharacteristicPath path = trace_characteristic(problem, t, x, opt);
  if (path.origin == Origin::from_boundary) return 0.0;
  return masked_bilinear(problem.initial, problem.mesh, path.foot()) * std::exp(-path.divergence_integral);
}

/// Exact solution at time t sampled at interior cell centres.
template <VelocityModel U>
ScalarField exact_solution(const LinearIBVP<U>& problem, double t, TraceOptions opt = {}) {
  if (opt.dtau <= 0.0 && t > 0.0) opt.dtau = default_dtau(problem, t);
  const Grid& g = problem.mesh.grid;
  ScalarField r(g);
  for_each_row(g.ny, [&](int j) {
    for (int i = 0; i < g.nx; ++i) {
      if (problem.mesh.interior(i, j)) r(i, j) = exact_value(problem, t, g.center(i, j), opt);
    }
  });
  return r;
}

/// Samples a velocity model at interior cell centres.
template <VelocityModel U>
VectorField sample_velocity(const U& u, const Mesh& mesh, double t) {
  VectorField out(mesh.grid);
  for (int j = 0; j < mesh.grid.ny; ++j) {
    for (int i = 0; i < mesh.grid.nx; ++i) {
      if (mesh.interior(i, j)) out.set(mesh.grid.index(i, j), u.velocity(t, mesh.grid.center(i, j)));
    }
  }
  return out;
}

/// Flux bookkeeping of one step (already multiplied by dt and face length).
struct FluxLedger {
  double exit_outflow = 0.0;
  double wall_flux = 0.0;
};

struct SpeedBounds {
  double x = 0.0;
  double y = 0.0;
};

inline SpeedBounds max_abs_speed(const VectorField& u, const Mesh& mesh) {
  SpeedBounds b;
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (!mesh.interior(k)) continue;
    b.x = std::max(b.x, std::abs(u.x()[k]));
    b.y = std::max(b.y, std::abs(u.y()[k]));
  }
  return b;
}

/// dt = cfl * h / (max|u_x| + max|u_y| + 1e-14).
inline double cfl_dt(const VectorField& u, const Mesh& mesh, double cfl_number) {
  if (!(cfl_number > 0.0 && cfl_number < 1.0)) throw ConfigError("CFL number must lie in (0, 1)");
  const SpeedBounds b = max_abs_speed(u, mesh);
  return cfl_number * mesh.grid.h() / (b.x + b.y + 1e-14);
}

/// One explicit Lax-Friedrichs step in flux form.
///
/// Internal faces use F = (rho_L u_L + rho_R u_R)/2 - theta alpha (rho_R - rho_L)/2
/// with alpha the global max of |u_d|; wall faces carry no flux; exit faces carry
/// the upwind outflow rho_in max(0, u . n) and never inflow.
inline ScalarField lf_step(const ScalarField& rho, const VectorField& u, double dt, const Mesh& mesh, double theta,
                           FluxLedger* ledger = nullptr) {
  if (!(theta > 0.0 && theta <= 1.0)) throw ConfigError("viscosity factor theta must lie in (0, 1]");
  if (!(dt >= 0.0)) throw ConfigError("time step must be nonnegative");
  const Grid& g = mesh.grid;
  const SpeedBounds alpha = max_abs_speed(u, mesh);
  if (dt * (alpha.x / g.dx + alpha.y / g.dy) > 1.0 + 1e-12) throw Error("CFL condition violated in lf_step");

  const int nx = g.nx, ny = g.ny;
  const ScalarField& ux = u.x();
  const ScalarField& uy = u.y();
  std::vector<double> fx(static_cast<std::size_t>(nx + 1) * ny, 0.0);
  std::vector<double> fy(static_cast<std::size_t>(nx) * (ny + 1), 0.0);
  const double visc_x = 0.5 * theta * alpha.x;
  const double visc_y = 0.5 * theta * alpha.y;

  for_each_row(ny, [&](int j) {
    for (int i = 0; i <= nx; ++i) {
      const std::size_t f = mesh.x_face(i, j);
      switch (mesh.mask.x_faces[f]) {
        case FaceClass::internal: {
          const std::size_t l = g.index(i - 1, j), r = g.index(i, j);
          fx[f] = 0.5 * (rho[l] * ux[l] + rho[r] * ux[r]) - visc_x * (rho[r] - rho[l]);
          break;
        }
        case FaceClass::exit:
          if (mesh.interior(i - 1, j)) {
            const std::size_t l = g.index(i - 1, j);
            fx[f] = rho[l] * std::max(0.0, ux[l]);
          } else {
            const std::size_t r = g.index(i, j);
            fx[f] = -rho[r] * std::max(0.0, -ux[r]);
          }
          break;
        default:
          break;
      }
    }
  });
  for_each_row(ny + 1, [&](int j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t f = mesh.y_face(i, j);
      switch (mesh.mask.y_faces[f]) {
        case FaceClass::internal: {
          const std::size_t b = g.index(i, j - 1), t = g.index(i, j);
          fy[f] = 0.5 * (rho[b] * uy[b] + rho[t] * uy[t]) - visc_y * (rho[t] - rho[b]);
          break;
        }
        case FaceClass::exit:
          if (mesh.interior(i, j - 1)) {
            const std::size_t b = g.index(i, j - 1);
            fy[f] = rho[b] * std::max(0.0, uy[b]);
          } else {
            const std::size_t t = g.index(i, j);
            fy[f] = -rho[t] * std::max(0.0, -uy[t]);
          }
          break;
        default:
          break;
      }
    }
  });

  ScalarField out(g);
  const double lx = dt / g.dx, ly = dt / g.dy;
  for_each_row(ny, [&](int j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t k = g.index(i, j);
      if (!mesh.interior(k)) continue;
      out[k] = rho[k] - lx * (fx[mesh.x_face(i + 1, j)] - fx[mesh.x_face(i, j)]) -
               ly * (fy[mesh.y_face(i, j + 1)] - fy[mesh.y_face(i, j)]);
    }
  });

  if (ledger) {
    double outflow = 0.0, wall = 0.0;
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i <= nx; ++i) {
        const std::size_t f = mesh.x_face(i, j);
        const FaceClass c = mesh.mask.x_faces[f];
        if (c == FaceClass::exit) outflow += (mesh.interior(i - 1, j) ? fx[f] : -fx[f]) * g.dy;
        if (c == FaceClass::wall) wall += std::abs(fx[f]) * g.dy;
      }
    }
    for (int j = 0; j <= ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        const std::size_t f = mesh.y_face(i, j);
        const FaceClass c = mesh.mask.y_faces[f];
        if (c == FaceClass::exit) outflow += (mesh.interior(i, j - 1) ? fy[f] : -fy[f]) * g.dx;
        if (c == FaceClass::wall) wall += std::abs(fy[f]) * g.dx;
      }
    }
    ledger->exit_outflow += dt * outflow;
    ledger->wall_flux += dt * wall;
  }
  return out;
}

struct Diagnostics {
  double mass = 0.0;
  double sup = 0.0;
  double tv = 0.0;
};

/// Mass h^2 sum(rho), sup |rho|, and total variation including the jumps to the
/// zero state across every boundary face.
inline Diagnostics discrete_diagnostics(const ScalarField& rho, const Mesh& mesh) {
  const Grid& g = mesh.grid;
  Diagnostics d;
  double sum = 0.0;
  for (std::size_t k = 0; k < rho.size(); ++k) {
    if (!mesh.interior(k)) continue;
    sum += rho[k];
    d.sup = std::max(d.sup, std::abs(rho[k]));
  }
  d.mass = sum * g.cell_area();
  double tvx = 0.0, tvy = 0.0;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i <= g.nx; ++i) {
      const bool l = mesh.interior(i - 1, j), r = mesh.interior(i, j);
      if (l && r) {
        tvx += std::abs(rho(i, j) - rho(i - 1, j));
      } else if (l) {
        tvx += std::abs(rho(i - 1, j));
      } else if (r) {
        tvx += std::abs(rho(i, j));
      }
    }
  }
  for (int j = 0; j <= g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const bool b = mesh.interior(i, j - 1), t = mesh.interior(i, j);
      if (b && t) {
        tvy += std::abs(rho(i, j) - rho(i, j - 1));
      } else if (b) {
        tvy += std::abs(rho(i, j - 1));
      } else if (t) {
        tvy += std::abs(rho(i, j));
      }
    }
  }
  d.tv = tvx * g.dy + tvy * g.dx;
  return d;
}

/// max |div_h u| over interior cells, where div_h is the divergence the flux
/// form actually sees: face velocities are the mean of the two cell values on
/// internal faces, 0 on walls and the upwind outflow component on exits. The
/// LF update satisfies sum_j c_ij = 1 - dt div_h u_i, so under the CFL bound
/// sup rho grows by at most a factor (1 + dt max|div_h u|) per step.
inline double max_abs_divergence(const VectorField& u, const Mesh& mesh) {
  const Grid& g = mesh.grid;
  auto face_x = [&](int i, int j) {
    switch (mesh.mask.x_faces[mesh.x_face(i, j)]) {
      case FaceClass::internal:
        return 0.5 * (u.x()(i - 1, j) + u.x()(i, j));
      case FaceClass::exit:
        return mesh.interior(i - 1, j) ? std::max(0.0, u.x()(i - 1, j)) : std::min(0.0, u.x()(i, j));
      default:
        return 0.0;
    }
  };
  auto face_y = [&](int i, int j) {
    switch (mesh.mask.y_faces[mesh.y_face(i, j)]) {
      case FaceClass::internal:
        return 0.5 * (u.y()(i, j - 1) + u.y()(i, j));
      case FaceClass::exit:
        return mesh.interior(i, j - 1) ? std::max(0.0, u.y()(i, j - 1)) : std::min(0.0, u.y()(i, j));
      default:
        return 0.0;
    }
  };
  double m = 0.0;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      if (!mesh.interior(i, j)) continue;
      const double div = (face_x(i + 1, j) - face_x(i, j)) / g.dx + (face_y(i, j + 1) - face_y(i, j)) / g.dy;
      m = std::max(m, std::abs(div));
    }
  }
  return m;
}

}  // namespace nlcl

#endif  // NLCL_TRANSPORT_HPP
