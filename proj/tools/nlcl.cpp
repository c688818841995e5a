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

// nlcl: command-line driver.
//
//   nlcl run     --scenario room-eq25 --h 0.125 --T 7.5 --out out/room
//   nlcl picard  --scenario room-eq25 --h 0.125 --max-iter 12
//   nlcl oracle  --scenario linear-rotation --h 0.03125
//   nlcl verify  --config configs/corridor-desk.yaml
//
// Exit status: 0 clean, 1 verify failure or other runtime error, 2 non-finite
// density, 3 configuration error.

#include <cstdio>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nlcl/config.hpp"
#include "nlcl/invariants.hpp"
#include "nlcl/nlcl.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitNonFinite = 2;
constexpr int kExitConfig = 3;

struct Overrides {
  std::string config;
  std::string scenario;
  std::optional<double> h, T, cfl, theta, window, tol;
  std::optional<int> snap_every, max_iter;
  std::string out;
  int threads = 0;
};

void add_common(CLI::App* app, Overrides& o) {
  app->add_option("--config", o.config, "YAML scenario file");
  app->add_option("--scenario", o.scenario, "preset (room-eq25, corridor-eq20, linear-rotation, linear-contraction)");
  app->add_option("--h", o.h, "mesh size");
  app->add_option("--T", o.T, "final time");
  app->add_option("--cfl", o.cfl, "CFL number in (0,1) [0.5]");
  app->add_option("--theta", o.theta, "viscosity factor in (0,1] [1.0]");
  app->add_option("--out", o.out, "output directory");
  app->add_option("--snap-every", o.snap_every, "snapshot cadence in steps");
  app->add_option("--threads", o.threads, "worker threads (0 = runtime default)");
}

void add_picard(CLI::App* app, Overrides& o) {
  app->add_option("--window", o.window, "window length in time units (default: 20 fixed steps)");
  app->add_option("--max-iter", o.max_iter, "iteration cap");
  app->add_option("--tol", o.tol, "stop when d_k < tol");
}

nlcl::RunConfig resolve(const Overrides& o, const char* fallback) {
  nlcl::RunConfig c;
  if (!o.config.empty()) {
    c = nlcl::load_config(o.config);
    if (!o.scenario.empty()) throw nlcl::ConfigError("--scenario and --config are mutually exclusive");
  } else {
    c = nlcl::make_preset(o.scenario.empty() ? fallback : o.scenario);
  }
  if (o.h) c.numerics.h = *o.h;
  if (o.T) c.numerics.T = *o.T;
  if (o.cfl) c.numerics.cfl = *o.cfl;
  if (o.theta) c.numerics.theta = *o.theta;
  if (!o.out.empty()) c.output.dir = o.out;
  if (o.snap_every) c.output.cadence = *o.snap_every;
  if (o.window) c.picard.window = *o.window;
  if (o.max_iter) c.picard.max_iter = *o.max_iter;
  if (o.tol) c.picard.tol = *o.tol;
  if (o.threads > 0) nlcl::set_thread_count(o.threads);
  c.validate();
  return c;
}

void print_summary(const nlcl::RunResult& r) {
  const auto& first = r.series.front();
  const auto& last = r.series.back();
  std::printf("steps %ld  t %.6g\n", last.step, last.t);
  for (std::size_t i = 0; i < last.populations.size(); ++i) {
    const auto& p = last.populations[i];
    std::printf("population %zu: mass %.12g -> %.12g  outflux %.12g  sup %.6g  tv %.6g  wallflux %g\n", i + 1,
                first.populations[i].mass, p.mass, p.outflux, p.sup, p.tv, p.wall_flux);
  }
}

int cmd_run(const Overrides& o) {
  const auto c = resolve(o, "room-eq25");
  nlcl::RunOptions opts;
  opts.keep_snapshots = false;
  const auto r = nlcl::run(nlcl::init_scenario(c), opts);
  print_summary(r);
  return kExitOk;
}

int cmd_picard(const Overrides& o) {
  const auto c = resolve(o, "room-eq25");
  const auto sc = nlcl::init_scenario(c);
  const auto r = nlcl::picard_solve(sc, sc.initial, c.picard.window, c.picard.window_steps, c.picard.max_iter,
                                    c.picard.tol);
  std::printf("window [%.6g, %.6g]  dt %.6g  substeps %d\n", sc.initial.t, r.state.t, r.dt, r.substeps);
  for (std::size_t k = 0; k < r.distances.size(); ++k) {
    std::printf("k %2zu  d_k %.6e", k + 1, r.distances[k]);
    if (k > 0 && r.distances[k - 1] > 0.0) std::printf("  ratio %.4f", r.distances[k] / r.distances[k - 1]);
    std::printf("\n");
  }
  std::printf("%s after %d iterations (fixed-point iterate %d)%s\n", r.converged ? "converged" : "not converged",
              r.iterations, r.fixed_point_iterate, r.non_contraction ? "; non-contraction detected" : "");
  if (!c.output.dir.empty()) {
    const std::filesystem::path dir = c.output.dir;
    for (std::size_t i = 0; i < r.state.densities.size(); ++i) {
      const std::string stem = "picard_rho" + std::to_string(i + 1);
      nlcl::write_snapshot(r.state.densities[i], sc.mesh->grid, r.state.t, dir / (stem + ".csv"));
      nlcl::write_raster(r.state.densities[i], *sc.mesh, dir / (stem + ".pgm"));
    }
  }
  return kExitOk;
}

int cmd_oracle(const Overrides& o) {
  const auto c = resolve(o, "linear-rotation");
  if (c.scenario != nlcl::ScenarioId::custom_linear) throw nlcl::ConfigError("oracle needs a custom-linear scenario");
  nlcl::RunConfig quiet = c;
  quiet.output.dir.clear();
  const auto sc = nlcl::init_scenario(quiet);
  nlcl::RunOptions opts;
  opts.keep_snapshots = false;
  const auto r = nlcl::run(sc, opts);
  const nlcl::LinearIBVP<nlcl::AffineVelocity> problem{*sc.linear_velocity, *sc.domain, *sc.mesh,
                                                       sc.initial.densities[0], c.numerics.T};
  const auto exact = nlcl::exact_solution(problem, r.final_state.t);
  const auto& fv = r.final_state.densities[0];
  nlcl::ScalarField diff(sc.mesh->grid);
  for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = fv[k] - exact[k];
  std::printf("h %.6g  t %.6g  steps %ld\n", c.numerics.h, r.final_state.t, r.final_state.step);
  std::printf("L1 error %.6e  (|exact|_L1 %.6e)\n", nlcl::l1_norm(diff, *sc.mesh), nlcl::l1_norm(exact, *sc.mesh));
  std::printf("sup error %.6e\n", nlcl::sup_norm(diff));
  if (!c.output.dir.empty()) {
    const std::filesystem::path dir = c.output.dir;
    nlcl::write_snapshot(exact, sc.mesh->grid, r.final_state.t, dir / "exact.csv");
    nlcl::write_snapshot(fv, sc.mesh->grid, r.final_state.t, dir / "fv.csv");
    nlcl::write_raster(exact, *sc.mesh, dir / "exact.pgm");
    nlcl::write_raster(fv, *sc.mesh, dir / "fv.pgm");
  }
  return kExitOk;
}

int cmd_verify(const Overrides& o) {
  const auto c = resolve(o, "room-eq25");
  nlcl::RunOptions opts;
  opts.keep_snapshots = false;
  const auto r = nlcl::run(nlcl::init_scenario(c), opts);
  print_summary(r);
  bool ok = true;
  for (const auto& chk : nlcl::check_invariants(r.series)) {
    std::printf("%s %-22s worst %.3e  limit %.3e\n", chk.pass ? "PASS" : "FAIL", chk.name.c_str(), chk.worst,
                chk.limit);
    ok = ok && chk.pass;
  }
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-local conservation laws on bounded domains"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print this help and exit");  // -h would clash with --h
  Overrides o;
  auto* run = app.add_subcommand("run", "time-step a scenario and write snapshots");
  auto* picard = app.add_subcommand("picard", "fixed-point iteration over one window");
  auto* oracle = app.add_subcommand("oracle", "compare the finite-volume scheme with the exact linear solution");
  auto* verify = app.add_subcommand("verify", "run a scenario and check the discrete invariants");
  for (auto* sub : {run, picard, oracle, verify}) {
    sub->set_help_flag("--help", "print this help and exit");
    add_common(sub, o);
  }
  add_picard(picard, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return cmd_run(o);
    if (*picard) return cmd_picard(o);
    if (*oracle) return cmd_oracle(o);
    if (*verify) return cmd_verify(o);
  } catch (const nlcl::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const nlcl::NonFiniteError& e) {
    std::fprintf(stderr, "aborted: %s\n", e.what());
    return kExitNonFinite;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFailure;
  }
  return kExitFailure;
}
