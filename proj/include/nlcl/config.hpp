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

#ifndef NLCL_CONFIG_HPP
#define NLCL_CONFIG_HPP

// Scenario files are YAML. Every key is optional; missing keys keep the value
// of the base preset (`preset:`) or, without one, of the preset named by
// `scenario:`.
//
//   preset: room-eq25
//   scenario: evacuation            # evacuation | corridor | custom-linear
//   domain:
//     shape: rectangle              # rectangle | disc
//     box: [0, 8, -4, 4]            # x0 x1 y0 y1
//     center: [0, 0]                # disc only
//     radius: 1                     # disc only
//     obstacles: [[6.5, 7.0, 0.5, 1.125]]
//     exits: [[8, -1, 8, 1]]        # ax ay bx by
//     interior_radius: 0.15
//   populations:
//     - speed_law: {a: 2, b: 4}
//       kernels: {l1: 0.625, l2: 1.5}        # l2 may be [l2_i1, l2_i2]
//       betas: [0.6]
//       targets: [0]                         # exit indices
//       initial: {type: quadrants, counts: [5, 14, 9, 20]}
//   numerics: {h: 0.125, T: 7.5, cfl: 0.5, theta: 1.0, kernel_floor: 4}
//   discomfort: {amplitude: 0.3, range: 1.25}
//   output: {dir: out, cadence: 50}
//   picard: {window: 0, window_steps: 20, max_iter: 12, tol: 1e-13}
//   linear: {velocity: rotation, center: [0, 0], omega: 1, u: [1, 0]}

#include <filesystem>
#include <string>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "nlcl/simulator.hpp"

namespace nlcl {

namespace detail {

template <typename T>
void read_if(const YAML::Node& node, const char* key, T& out) {
  if (node && node[key]) out = node[key].as<T>();
}

inline std::vector<double> numbers(const YAML::Node& node, std::size_t expected, const char* what) {
  if (!node.IsSequence() || node.size() != expected) {
    throw ConfigError(std::string(what) + " needs " + std::to_string(expected) + " numbers");
  }
  std::vector<double> v;
  for (const auto& x : node) v.push_back(x.as<double>());
  return v;
}

inline Vec2 read_vec2(const YAML::Node& node, const char* what) {
  const auto v = numbers(node, 2, what);
  return {v[0], v[1]};
}

inline Rect read_rect(const YAML::Node& node, const char* what) {
  const auto v = numbers(node, 4, what);
  return {v[0], v[1], v[2], v[3]};
}

inline void read_initial(const YAML::Node& node, InitialDatumConfig& init) {
  if (!node) return;
  if (node["type"]) {
    const auto type = node["type"].as<std::string>();
    if (type == "quadrants") {
      init.kind = InitialKind::quadrants;
    } else if (type == "ramp") {
      init.kind = InitialKind::ramp;
    } else if (type == "constant") {
      init.kind = InitialKind::constant;
    } else if (type == "bump") {
      init.kind = InitialKind::bump;
    } else {
      throw ConfigError("unknown initial datum type '" + type + "'");
    }
  }
  if (node["counts"]) {
    const auto v = numbers(node["counts"], 4, "initial.counts");
    for (std::size_t q = 0; q < 4; ++q) init.counts[q] = v[q];
  }
  read_if(node, "low", init.low);
  read_if(node, "high", init.high);
  if (node["orientation"]) {
    const auto o = node["orientation"].as<std::string>();
    if (o != "increasing" && o != "decreasing") throw ConfigError("ramp orientation must be increasing or decreasing");
    init.increasing = o == "increasing";
  }
  read_if(node, "value", init.value);
  if (node["center"]) init.center = read_vec2(node["center"], "initial.center");
  read_if(node, "radius", init.radius);
  read_if(node, "height", init.height);
}

inline void read_population(const YAML::Node& node, PopulationConfig& p) {
  if (const auto s = node["speed_law"]) {
    read_if(s, "a", p.speed.amplitude);
    read_if(s, "b", p.speed.capacity);
  }
  if (const auto k = node["kernels"]) {
    read_if(k, "l1", p.l1);
    if (k["l2"]) {
      if (k["l2"].IsSequence()) {
        const auto v = numbers(k["l2"], 2, "kernels.l2");
        p.l2 = {v[0], v[1]};
      } else {
        const double l = k["l2"].as<double>();
        p.l2 = {l, l};
      }
    }
  }
  if (const auto b = node["betas"]) {
    if (!b.IsSequence() || b.size() == 0 || b.size() > 2) throw ConfigError("betas needs one or two numbers");
    p.beta = {b[0].as<double>(), b.size() > 1 ? b[1].as<double>() : 0.0};
  }
  if (const auto t = node["targets"]) {
    p.targets.clear();
    for (const auto& x : t) p.targets.push_back(x.as<int>());
  }
  read_initial(node["initial"], p.initial);
}

}  // namespace detail

/// Applies a parsed YAML document on top of `base`.
inline RunConfig apply_config(const YAML::Node& root, RunConfig base) {
  RunConfig& c = base;
  try {
    if (root["scenario"]) c.scenario = parse_scenario_id(root["scenario"].as<std::string>());
    if (const auto d = root["domain"]) {
      if (d["shape"]) {
        const auto shape = d["shape"].as<std::string>();
        if (shape != "rectangle" && shape != "disc") throw ConfigError("domain.shape must be rectangle or disc");
        c.domain.disc = shape == "disc";
      }
      if (d["box"]) c.domain.box = detail::read_rect(d["box"], "domain.box");
      if (d["center"]) c.domain.center = detail::read_vec2(d["center"], "domain.center");
      detail::read_if(d, "radius", c.domain.radius);
      if (d["obstacles"]) {
        c.domain.obstacles.clear();
        for (const auto& o : d["obstacles"]) c.domain.obstacles.push_back(detail::read_rect(o, "domain.obstacles"));
      }
      if (d["exits"]) {
        c.domain.exits.clear();
        for (const auto& e : d["exits"]) {
          const auto v = detail::numbers(e, 4, "domain.exits");
          c.domain.exits.push_back({{v[0], v[1]}, {v[2], v[3]}});
        }
      }
      detail::read_if(d, "interior_radius", c.domain.interior_radius);
    }
    if (const auto pops = root["populations"]) {
      if (!pops.IsSequence()) throw ConfigError("populations must be a list");
      c.populations.resize(pops.size());
      for (std::size_t i = 0; i < pops.size(); ++i) detail::read_population(pops[i], c.populations[i]);
    }
    if (const auto n = root["numerics"]) {
      detail::read_if(n, "h", c.numerics.h);
      detail::read_if(n, "T", c.numerics.T);
      detail::read_if(n, "cfl", c.numerics.cfl);
      detail::read_if(n, "theta", c.numerics.theta);
      detail::read_if(n, "kernel_floor", c.numerics.kernel_floor);
    }
    if (const auto d = root["discomfort"]) {
      detail::read_if(d, "amplitude", c.discomfort.amplitude);
      detail::read_if(d, "range", c.discomfort.range);
    }
    if (const auto o = root["output"]) {
      detail::read_if(o, "dir", c.output.dir);
      detail::read_if(o, "cadence", c.output.cadence);
    }
    if (const auto p = root["picard"]) {
      detail::read_if(p, "window", c.picard.window);
      detail::read_if(p, "window_steps", c.picard.window_steps);
      detail::read_if(p, "max_iter", c.picard.max_iter);
      detail::read_if(p, "tol", c.picard.tol);
    }
    if (const auto l = root["linear"]) {
      if (l["velocity"]) {
        const auto v = l["velocity"].as<std::string>();
        if (v == "rotation") {
          c.linear.velocity = LinearVelocityKind::rotation;
        } else if (v == "contraction") {
          c.linear.velocity = LinearVelocityKind::contraction;
        } else if (v == "constant") {
          c.linear.velocity = LinearVelocityKind::constant;
        } else {
          throw ConfigError("unknown linear velocity '" + v + "'");
        }
      }
      if (l["center"]) c.linear.center = detail::read_vec2(l["center"], "linear.center");
      detail::read_if(l, "omega", c.linear.omega);
      if (l["u"]) c.linear.u = detail::read_vec2(l["u"], "linear.u");
    }
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

/// Parses YAML text; the base is the `preset:` (or `scenario:`) named in it.
inline RunConfig parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!root.IsMap()) throw ConfigError("config: top level must be a mapping");
  std::string base = "room-eq25";
  if (root["scenario"]) base = root["scenario"].as<std::string>();
  if (root["preset"]) base = root["preset"].as<std::string>();
  return apply_config(root, make_preset(base));
}

inline RunConfig load_config(const std::filesystem::path& path) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path.string());
  } catch (const YAML::Exception& e) {
    throw ConfigError("cannot read config " + path.string() + ": " + e.what());
  }
  if (!root.IsMap()) throw ConfigError("config: top level must be a mapping");
  std::string base = "room-eq25";
  if (root["scenario"]) base = root["scenario"].as<std::string>();
  if (root["preset"]) base = root["preset"].as<std::string>();
  return apply_config(root, make_preset(base));
}

}  // namespace nlcl

#endif  // NLCL_CONFIG_HPP
