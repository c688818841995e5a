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

#ifndef NLCL_SIMULATOR_HPP
#define NLCL_SIMULATOR_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nlcl/fields.hpp"
#include "nlcl/geometry.hpp"
#include "nlcl/io.hpp"
#include "nlcl/kernels.hpp"
#include "nlcl/models.hpp"
#include "nlcl/nonlocal.hpp"
#include "nlcl/transport.hpp"

namespace nlcl {

/// Raised when a step produces a non-finite density.
class NonFiniteError : public Error {
 public:
  NonFiniteError(long step, const std::string& what) : Error(what), step_(step) {}
  long step() const { return step_; }

 private:
  long step_;
};

enum class ScenarioId { evacuation, corridor, custom_linear };

inline std::string to_string(ScenarioId id) {
  switch (id) {
    case ScenarioId::evacuation:
      return "evacuation";
    case ScenarioId::corridor:
      return "corridor";
    case ScenarioId::custom_linear:
      return "custom-linear";
  }
  return "?";
}

inline ScenarioId parse_scenario_id(const std::string& s) {
  if (s == "evacuation") return ScenarioId::evacuation;
  if (s == "corridor") return ScenarioId::corridor;
  if (s == "custom-linear") return ScenarioId::custom_linear;
  throw ConfigError("unknown scenario id '" + s + "'");
}

enum class InitialKind { quadrants, ramp, constant, bump };

struct InitialDatumConfig {
  InitialKind kind = InitialKind::constant;
  // quadrants: people per quadrant, clockwise from the top-left one
  std::array<double, 4> counts{5.0, 14.0, 9.0, 20.0};
  // ramp: linear in y between the first and last row of cell centres
  double low = 0.0;
  double high = 4.0;
  bool increasing = true;
  // constant
  double value = 0.0;
  // bump: height (1 - (d/R)^2)^3 inside radius R
  Vec2 center;
  double radius = 0.25;
  double height = 1.0;
};

struct DomainConfig {
  bool disc = false;
  Rect box{0.0, 1.0, 0.0, 1.0};
  Vec2 center;
  double radius = 1.0;
  std::vector<Rect> obstacles;
  std::vector<Segment> exits;
  double interior_radius = 0.0;

  Domain build() const {
    if (disc) return Domain::disc(center, radius, exits);
    return Domain::rectangle(box, obstacles, exits, interior_radius);
  }
};

struct PopulationConfig {
  SpeedLaw speed{1.0, 1.0};
  double l1 = 0.5;
  std::array<double, 2> l2{0.5, 0.5};
  std::array<double, 2> beta{0.0, 0.0};
  std::vector<int> targets;  // exit indices; empty = all exits
  InitialDatumConfig initial;
};

struct NumericsConfig {
  double h = 0.125;
  double T = 1.0;
  double cfl = 0.5;
  double theta = 1.0;
  double kernel_floor = kDefaultResolutionFloor;
};

struct OutputConfig {
  std::string dir;
  int cadence = 0;  // snapshot every N steps; 0 = initial and final only
};

struct PicardConfig {
  double window = 0.0;   // <= 0: window_steps fixed steps
  int window_steps = 20;
  int max_iter = 12;
  double tol = 1e-13;
};

enum class LinearVelocityKind { rotation, contraction, constant };

struct LinearConfig {
  LinearVelocityKind velocity = LinearVelocityKind::rotation;
  Vec2 center;
  double omega = 1.0;
  Vec2 u{1.0, 0.0};
};

struct RunConfig {
  ScenarioId scenario = ScenarioId::evacuation;
  std::string preset;
  DomainConfig domain;
  std::vector<PopulationConfig> populations;
  NumericsConfig numerics;
  DiscomfortParams discomfort;
  OutputConfig output;
  PicardConfig picard;
  LinearConfig linear;

  void validate() const {
    if (!(numerics.T > 0.0)) throw ConfigError("final time T must be positive");
    if (!(numerics.h > 0.0)) throw ConfigError("mesh size h must be positive");
    if (!(numerics.cfl > 0.0 && numerics.cfl < 1.0)) throw ConfigError("cfl must lie in (0, 1)");
    if (!(numerics.theta > 0.0 && numerics.theta <= 1.0)) throw ConfigError("theta must lie in (0, 1]");
    if (output.cadence < 0) throw ConfigError("snapshot cadence must be nonnegative");
    if (populations.empty()) throw ConfigError("at least one population is required");
    if (scenario == ScenarioId::corridor && populations.size() != 2) {
      throw ConfigError("corridor scenario needs exactly two populations");
    }
    if (scenario != ScenarioId::corridor && populations.size() != 1) {
      throw ConfigError("this scenario needs exactly one population");
    }
  }
};

/// Room evacuation: [0,8] x [-4,4], door {8} x [-1,1], two 0.5 x 0.625
/// columns in front of the door, 48 people in four quadrants.
inline RunConfig preset_room() {
  RunConfig c;
  c.scenario = ScenarioId::evacuation;
  c.preset = "room-eq25";
  c.domain.box = {0.0, 8.0, -4.0, 4.0};
  c.domain.obstacles = {{6.5, 7.0, 0.5, 1.125}, {6.5, 7.0, -1.125, -0.5}};
  c.domain.exits = {{{8.0, -1.0}, {8.0, 1.0}}};
  c.domain.interior_radius = 0.15;
  PopulationConfig p;
  p.speed = {2.0, 4.0};
  p.l1 = 0.625;
  p.l2 = {1.5, 1.5};
  p.beta = {0.6, 0.0};
  p.initial.kind = InitialKind::quadrants;
  c.populations = {p};
  c.numerics.h = 0.03125;
  c.numerics.T = 7.5;
  return c;
}

/// Two-way corridor: [0,16] x [-2,2], both ends open, population 1 walks to
/// x = 16 and population 2 to x = 0; initial data ramp from 0 to 4 in y.
inline RunConfig preset_corridor() {
  RunConfig c;
  c.scenario = ScenarioId::corridor;
  c.preset = "corridor-eq20";
  c.domain.box = {0.0, 16.0, -2.0, 2.0};
  c.domain.exits = {{{0.0, -2.0}, {0.0, 2.0}}, {{16.0, -2.0}, {16.0, 2.0}}};
  c.domain.interior_radius = 0.04;
  PopulationConfig p;
  p.l1 = 0.1875;
  p.l2 = {0.5, 0.5};
  p.beta = {0.2, 0.5};
  p.initial.kind = InitialKind::ramp;
  p.initial.low = 0.0;
  p.initial.high = 4.0;
  PopulationConfig q = p;
  p.speed = {1.0, 4.5};
  p.targets = {1};
  q.speed = {1.5, 4.5};
  q.beta = {0.5, 0.2};  // beta_21, beta_22
  q.targets = {0};
  c.populations = {p, q};
  c.numerics.h = 0.015625;
  c.numerics.T = 8.0;
  return c;
}

/// Rigid rotation of a smooth bump inside the unit disc.
inline RunConfig preset_linear_rotation() {
  RunConfig c;
  c.scenario = ScenarioId::custom_linear;
  c.preset = "linear-rotation";
  c.domain.disc = true;
  c.domain.center = {0.0, 0.0};
  c.domain.radius = 1.0;
  c.linear.velocity = LinearVelocityKind::rotation;
  c.linear.center = {0.0, 0.0};
  c.linear.omega = 1.0;
  PopulationConfig p;
  p.initial.kind = InitialKind::bump;
  p.initial.center = {0.4, 0.0};
  p.initial.radius = 0.35;
  p.initial.height = 1.0;
  c.populations = {p};
  c.numerics.h = 1.0 / 64.0;
  c.numerics.T = 0.5;
  c.numerics.theta = 0.5;
  return c;
}

/// u = -x on the unit disc with constant datum 2.
inline RunConfig preset_linear_contraction() {
  RunConfig c = preset_linear_rotation();
  c.preset = "linear-contraction";
  c.linear.velocity = LinearVelocityKind::contraction;
  c.populations[0].initial = {};
  c.populations[0].initial.kind = InitialKind::constant;
  c.populations[0].initial.value = 2.0;
  c.numerics.h = 1.0 / 128.0;
  c.numerics.theta = 1.0;
  return c;
}

inline RunConfig make_preset(const std::string& name) {
  if (name == "room-eq25" || name == "evacuation") return preset_room();
  if (name == "corridor-eq20" || name == "corridor") return preset_corridor();
  if (name == "linear-rotation" || name == "custom-linear") return preset_linear_rotation();
  if (name == "linear-contraction") return preset_linear_contraction();
  throw ConfigError("unknown scenario or preset '" + name + "'");
}

struct SimState {
  double t = 0.0;
  long step = 0;
  std::vector<ScalarField> densities;
};

struct PopulationDiagnostics {
  double mass = 0.0;
  double sup = 0.0;
  double tv = 0.0;
  double min = 0.0;
  double outflux = 0.0;       // cumulative through exits
  double wall_flux = 0.0;     // cumulative through walls
  double step_outflow = 0.0;  // this step only
  double max_div = 0.0;       // max |div_h u| of the velocity used for this step
};

struct DiagnosticsRecord {
  double t = 0.0;
  long step = 0;
  double dt = 0.0;
  std::vector<PopulationDiagnostics> populations;
};

/// Everything a run needs, built once from a RunConfig.
struct Scenario {
  RunConfig config;
  std::shared_ptr<const Domain> domain;
  std::shared_ptr<const Mesh> mesh;
  ModelSpec model;
  std::shared_ptr<const NonlocalOperator> nonlocal;
  std::optional<AffineVelocity> linear_velocity;
  SimState initial;

  std::size_t population_count() const { return initial.densities.size(); }
};

namespace detail {

inline ScalarField initial_density(const InitialDatumConfig& init, const Mesh& mesh, const Rect& box) {
  const Grid& g = mesh.grid;
  ScalarField rho(g);
  const double xm = 0.5 * (box.x0 + box.x1), ym = 0.5 * (box.y0 + box.y1);
  const double y_first = g.center(0, 0).y, y_last = g.center(0, g.ny - 1).y;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      if (!mesh.interior(i, j)) continue;
      const Vec2 c = g.center(i, j);
      double v = 0.0;
      switch (init.kind) {
        case InitialKind::quadrants: {
          // clockwise from top-left: TL, TR, BR, BL; each quadrant has area |box|/4
          const int q = c.y >= ym ? (c.x < xm ? 0 : 1) : (c.x >= xm ? 2 : 3);
          v = init.counts[static_cast<std::size_t>(q)] / (0.25 * box.width() * box.height());
          break;
        }
        case InitialKind::ramp: {
          const double s = g.ny > 1 ? (c.y - y_first) / (y_last - y_first) : 0.5;
          const double frac = init.increasing ? s : 1.0 - s;
          v = init.low + (init.high - init.low) * frac;
          break;
        }
        case InitialKind::constant:
          v = init.value;
          break;
        case InitialKind::bump: {
          const double d = norm(c - init.center) / init.radius;
          if (d < 1.0) {
            const double q = 1.0 - d * d;
            v = init.height * q * q * q;
          }
          break;
        }
      }
      rho(i, j) = v;
    }
  }
  if (init.kind == InitialKind::quadrants) {
    const double target = init.counts[0] + init.counts[1] + init.counts[2] + init.counts[3];
    double sum = 0.0;
    for (double v : rho.values()) sum += v;
    const double mass = sum * g.cell_area();
    if (mass > 0.0) {
      const double scale = target / mass;
      for (double& v : rho.values()) v *= scale;
    }
  }
  return rho;
}

inline std::vector<Segment> target_segments(const Domain& domain, const std::vector<int>& targets) {
  std::vector<Segment> out;
  for (int t : targets) {
    if (t < 0 || static_cast<std::size_t>(t) >= domain.exits().size()) throw ConfigError("exit target out of range");
    out.push_back(domain.exits()[static_cast<std::size_t>(t)]);
  }
  return out;
}

}  // namespace detail

/// Builds mesh, desired fields, nonlocal operator and the initial state.
inline Scenario init_scenario(const RunConfig& config) {
  config.validate();
  Scenario sc;
  sc.config = config;
  sc.domain = std::make_shared<const Domain>(config.domain.build());
  sc.mesh = std::make_shared<const Mesh>(build_grid(*sc.domain, config.numerics.h));
  const Domain& domain = *sc.domain;
  const Mesh& mesh = *sc.mesh;

  for (const auto& p : config.populations) {
    sc.initial.densities.push_back(detail::initial_density(p.initial, mesh, domain.bounding_box()));
  }

  switch (config.scenario) {
    case ScenarioId::custom_linear: {
      const auto& lin = config.linear;
      switch (lin.velocity) {
        case LinearVelocityKind::rotation:
          sc.linear_velocity = AffineVelocity::rotation(lin.center, lin.omega);
          break;
        case LinearVelocityKind::contraction:
          sc.linear_velocity = AffineVelocity::contraction();
          break;
        case LinearVelocityKind::constant:
          sc.linear_velocity = AffineVelocity::constant(lin.u);
          break;
      }
      return sc;
    }
    case ScenarioId::evacuation: {
      const auto& p = config.populations[0];
      const auto targets = detail::target_segments(domain, p.targets);
      DesiredField w = build_desired_field(mesh, domain, targets, config.discomfort);
      sc.model = make_evacuation_model(p.speed, w.w, make_quartic_kernel_room(p.l1), make_quartic_kernel_room(p.l2[0]),
                                       p.beta[0]);
      break;
    }
    case ScenarioId::corridor: {
      std::array<CrowdParams, 2> params;
      for (std::size_t i = 0; i < 2; ++i) {
        const auto& p = config.populations[i];
        const auto targets = detail::target_segments(domain, p.targets);
        params[i].speed = p.speed;
        params[i].desired = build_desired_field(mesh, domain, targets, config.discomfort).w;
        params[i].speed_kernel = p.l1;
        params[i].avoid_kernel = p.l2;
        params[i].beta = p.beta;
      }
      sc.model = make_two_population_model(params);
      break;
    }
  }
  sc.nonlocal = std::make_shared<const NonlocalOperator>(mesh, sc.model.coupling, config.numerics.kernel_floor);
  return sc;
}

/// Velocity fields u^i(t) for the current densities.
inline std::vector<VectorField> compute_velocities(const Scenario& sc, const SimState& state) {
  std::vector<VectorField> u;
  if (sc.linear_velocity) {
    u.push_back(sample_velocity(*sc.linear_velocity, *sc.mesh, state.t));
    return u;
  }
  const NonlocalEval eval = sc.nonlocal->assemble(state.densities);
  for (const auto& pop : sc.model.populations) u.push_back(eval_velocity(pop, eval, *sc.mesh));
  return u;
}

/// Shared time step: the minimum over populations of cfl_dt.
inline double shared_dt(const std::vector<VectorField>& u, const Mesh& mesh, double cfl) {
  double dt = std::numeric_limits<double>::infinity();
  for (const auto& ui : u) dt = std::min(dt, cfl_dt(ui, mesh, cfl));
  return dt;
}

inline DiagnosticsRecord initial_record(const Scenario& sc, const SimState& state) {
  DiagnosticsRecord rec;
  rec.t = state.t;
  rec.step = state.step;
  for (const auto& rho : state.densities) {
    const Diagnostics d = discrete_diagnostics(rho, *sc.mesh);
    PopulationDiagnostics p;
    p.mass = d.mass;
    p.sup = d.sup;
    p.tv = d.tv;
    p.min = *std::min_element(rho.values().begin(), rho.values().end());
    rec.populations.push_back(p);
  }
  return rec;
}

/// Advances every population by one step with coefficients frozen at the
/// start-of-step densities. `dt_cap` bounds the step (used to land on T).
/// `previous` carries the cumulative fluxes forward.
inline DiagnosticsRecord step(SimState& state, const Scenario& sc, const DiagnosticsRecord& previous,
                              double dt_cap = std::numeric_limits<double>::infinity()) {
  const Mesh& mesh = *sc.mesh;
  const auto u = compute_velocities(sc, state);
  const double dt = std::min(shared_dt(u, mesh, sc.config.numerics.cfl), dt_cap);

  DiagnosticsRecord rec;
  rec.step = state.step + 1;
  rec.t = state.t + dt;
  rec.dt = dt;
  std::vector<ScalarField> next;
  next.reserve(state.densities.size());
  for (std::size_t i = 0; i < state.densities.size(); ++i) {
    FluxLedger ledger;
    next.push_back(lf_step(state.densities[i], u[i], dt, mesh, sc.config.numerics.theta, &ledger));
    if (!all_finite(next.back())) {
      throw NonFiniteError(rec.step, "non-finite density at step " + std::to_string(rec.step) + " (population " +
                                         std::to_string(i + 1) + ")");
    }
    const Diagnostics d = discrete_diagnostics(next.back(), mesh);
    PopulationDiagnostics p;
    p.mass = d.mass;
    p.sup = d.sup;
    p.tv = d.tv;
    p.min = *std::min_element(next.back().values().begin(), next.back().values().end());
    p.step_outflow = ledger.exit_outflow;
    p.outflux = (i < previous.populations.size() ? previous.populations[i].outflux : 0.0) + ledger.exit_outflow;
    p.wall_flux = (i < previous.populations.size() ? previous.populations[i].wall_flux : 0.0) + ledger.wall_flux;
    p.max_div = max_abs_divergence(u[i], mesh);
    rec.populations.push_back(p);
  }
  state.densities = std::move(next);
  state.t = rec.t;
  state.step = rec.step;
  return rec;
}

inline void write_series(const std::vector<DiagnosticsRecord>& series, const std::filesystem::path& path) {
  auto out = detail::open_for_write(path);
  const std::size_t n = series.empty() ? 0 : series.front().populations.size();
  out << 't';
  for (std::size_t i = 1; i <= n; ++i) {
    out << ",mass_" << i << ",sup_" << i << ",tv_" << i << ",outflux_" << i << ",wallflux_" << i;
  }
  out << '\n';
  for (const auto& r : series) {
    out << detail::format_double(r.t);
    for (const auto& p : r.populations) {
      out << ',' << detail::format_double(p.mass) << ',' << detail::format_double(p.sup) << ','
          << detail::format_double(p.tv) << ',' << detail::format_double(p.outflux) << ','
          << detail::format_double(p.wall_flux);
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

struct RunResult {
  std::vector<SimState> snapshots;
  std::vector<DiagnosticsRecord> series;
  SimState final_state;
};

struct RunOptions {
  /// Called after every step; return false to stop early.
  std::function<bool(const SimState&, const DiagnosticsRecord&)> on_step;
  bool keep_snapshots = true;
};

namespace detail {

inline void write_outputs(const Scenario& sc, const SimState& s) {
  const std::filesystem::path dir = sc.config.output.dir;
  for (std::size_t i = 0; i < s.densities.size(); ++i) {
    char stem[64];
    std::snprintf(stem, sizeof stem, "rho%zu_%06ld", i + 1, s.step);
    write_snapshot(s.densities[i], sc.mesh->grid, s.t, dir / (std::string(stem) + ".csv"));
    write_raster(s.densities[i], *sc.mesh, dir / (std::string(stem) + ".pgm"));
  }
}

}  // namespace detail

/// Time loop from the scenario's initial state to `t_end` (default: T).
inline RunResult run(const Scenario& sc, RunOptions options = {}, std::optional<double> t_end = std::nullopt) {
  const double T = t_end.value_or(sc.config.numerics.T);
  const int cadence = sc.config.output.cadence;
  const bool write = !sc.config.output.dir.empty();
  RunResult res;
  SimState state = sc.initial;
  res.series.push_back(initial_record(sc, state));
  auto snapshot = [&](const SimState& s) {
    if (options.keep_snapshots) res.snapshots.push_back(s);
    if (write) detail::write_outputs(sc, s);
  };
  snapshot(state);
  const double eps = 1e-12 * std::max(1.0, T);
  while (state.t < T - eps) {
    const DiagnosticsRecord rec = step(state, sc, res.series.back(), T - state.t);
    res.series.push_back(rec);
    const bool last = !(state.t < T - eps);
    if ((cadence > 0 && state.step % cadence == 0) || last) snapshot(state);
    if (options.on_step && !options.on_step(state, rec)) {
      if (!last) snapshot(state);
      break;
    }
  }
  if (write) write_series(res.series, std::filesystem::path(sc.config.output.dir) / "series.csv");
  res.final_state = state;
  return res;
}

inline RunResult run(const RunConfig& config, RunOptions options = {}) { return run(init_scenario(config), std::move(options)); }

struct PicardResult {
  SimState state;                 // final iterate at window end
  std::vector<double> distances;  // d_k = max_n sum_i |rho^k_n - rho^{k-1}_n|_{L1}, k = 1..
  int iterations = 0;             // map applications performed
  int fixed_point_iterate = 0;    // first k whose iterate was confirmed (d_{k+1} < tol), at least 1
  bool converged = false;
  bool non_contraction = false;   // d_k increased three times in a row
  double dt = 0.0;
  int substeps = 0;
};

/// Fixed-point iteration over [t0, t0 + window]: each sweep solves the linear
/// problems whose coefficients are frozen at the previous iterate's densities,
/// with a fixed step dt = cfl h / (2 max_i V_i) valid for every iterate.
inline PicardResult picard_solve(const Scenario& sc, const SimState& start, double window, int window_steps,
                                 int max_iter, double tol) {
  if (max_iter < 1) throw ConfigError("max_iter must be at least 1");
  const Mesh& mesh = *sc.mesh;
  double vmax = 0.0;
  if (sc.linear_velocity) {
    vmax = sup_norm(sample_velocity(*sc.linear_velocity, mesh, start.t));
  } else {
    for (std::size_t i = 0; i < sc.model.populations.size(); ++i) vmax = std::max(vmax, sc.model.velocity_bound(i, mesh));
  }
  double dt = sc.config.numerics.cfl * mesh.grid.h() / (2.0 * vmax + 1e-14);
  int n_sub = window_steps;
  if (window > 0.0) {
    n_sub = std::max(1, static_cast<int>(std::ceil(window / dt - 1e-9)));
    dt = window / n_sub;
  } else if (n_sub < 1) {
    throw ConfigError("Picard window must be positive");
  }

  PicardResult res;
  res.dt = dt;
  res.substeps = n_sub;
  const std::size_t npop = start.densities.size();
  std::vector<std::vector<ScalarField>> prev(static_cast<std::size_t>(n_sub) + 1, start.densities);
  int increases = 0;
  for (int k = 1; k <= max_iter; ++k) {
    std::vector<std::vector<ScalarField>> next(static_cast<std::size_t>(n_sub) + 1);
    next[0] = start.densities;
    double dist = 0.0;
    for (int n = 0; n < n_sub; ++n) {
      SimState frozen{start.t + n * dt, start.step + n, prev[static_cast<std::size_t>(n)]};
      const auto u = compute_velocities(sc, frozen);
      auto& out = next[static_cast<std::size_t>(n) + 1];
      for (std::size_t i = 0; i < npop; ++i) {
        out.push_back(lf_step(next[static_cast<std::size_t>(n)][i], u[i], dt, mesh, sc.config.numerics.theta));
        if (!all_finite(out.back())) throw NonFiniteError(start.step + n + 1, "non-finite density in Picard sweep");
      }
      double d = 0.0;
      for (std::size_t i = 0; i < npop; ++i) d += l1_distance(out[i], prev[static_cast<std::size_t>(n) + 1][i], mesh);
      dist = std::max(dist, d);
    }
    res.distances.push_back(dist);
    res.iterations = k;
    if (res.distances.size() >= 2) {
      increases = dist > res.distances[res.distances.size() - 2] ? increases + 1 : 0;
      if (increases >= 3) res.non_contraction = true;
    }
    prev = std::move(next);
    if (dist < tol) {
      res.converged = true;
      res.fixed_point_iterate = std::max(1, k - 1);
      break;
    }
  }
  res.state.t = start.t + n_sub * dt;
  res.state.step = start.step + n_sub;
  res.state.densities = prev.back();
  return res;
}

inline PicardResult picard_solve(const RunConfig& config) {
  const Scenario sc = init_scenario(config);
  return picard_solve(sc, sc.initial, config.picard.window, config.picard.window_steps, config.picard.max_iter,
                      config.picard.tol);
}

}  // namespace nlcl

#endif  // NLCL_SIMULATOR_HPP
