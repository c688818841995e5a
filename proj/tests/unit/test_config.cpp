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

#include <gtest/gtest.h>

#include "nlcl/config.hpp"

namespace nlcl {
namespace {

TEST(Config, EmptyMappingFallsBackToRoomPreset) {
  const RunConfig c = parse_config("{}");
  EXPECT_EQ(c.preset, "room-eq25");
  EXPECT_EQ(c.numerics.h, 0.03125);
  EXPECT_EQ(c.numerics.cfl, 0.5);
  EXPECT_EQ(c.numerics.theta, 1.0);
}

TEST(Config, PresetWithOverrides) {
  const RunConfig c = parse_config(R"(
preset: corridor-eq20
numerics: {h: 0.0625, T: 2, kernel_floor: 3}
output: {dir: out/corridor, cadence: 25}
populations:
  - initial: {orientation: decreasing}
  - speed_law: {a: 1.25}
    kernels: {l2: [0.5, 0.75]}
)");
  EXPECT_EQ(c.scenario, ScenarioId::corridor);
  EXPECT_EQ(c.numerics.h, 0.0625);
  EXPECT_EQ(c.numerics.T, 2.0);
  EXPECT_EQ(c.numerics.kernel_floor, 3.0);
  EXPECT_EQ(c.output.dir, "out/corridor");
  EXPECT_EQ(c.output.cadence, 25);
  ASSERT_EQ(c.populations.size(), 2u);
  EXPECT_FALSE(c.populations[0].initial.increasing);
  EXPECT_EQ(c.populations[0].speed.amplitude, 1.0);
  EXPECT_EQ(c.populations[1].speed.amplitude, 1.25);
  EXPECT_EQ(c.populations[1].speed.capacity, 4.5);
  EXPECT_EQ(c.populations[1].l2[1], 0.75);
  EXPECT_EQ(c.populations[1].targets, std::vector<int>{0});
}

TEST(Config, CustomDomain) {
  const RunConfig c = parse_config(R"(
scenario: evacuation
domain:
  box: [0, 4, 0, 2]
  obstacles: []
  exits: [[4, 0.5, 4, 1.5]]
  interior_radius: 0.2
populations:
  - initial: {type: constant, value: 1.5}
numerics: {h: 0.125, T: 0.5}
)");
  EXPECT_TRUE(c.domain.obstacles.empty());
  ASSERT_EQ(c.domain.exits.size(), 1u);
  EXPECT_EQ(c.domain.exits[0].b, (Vec2{4.0, 1.5}));
  const Scenario sc = init_scenario(c);
  EXPECT_NEAR(discrete_diagnostics(sc.initial.densities[0], *sc.mesh).mass, 1.5 * 8.0, 1e-12);
}

TEST(Config, LinearSection) {
  const RunConfig c = parse_config(R"(
preset: linear-rotation
linear: {velocity: constant, u: [0.5, -0.25]}
)");
  EXPECT_EQ(c.linear.velocity, LinearVelocityKind::constant);
  EXPECT_EQ(c.linear.u, (Vec2{0.5, -0.25}));
}

TEST(Config, Errors) {
  EXPECT_THROW(parse_config("preset: nowhere"), ConfigError);
  EXPECT_THROW(parse_config("[1, 2]"), ConfigError);
  EXPECT_THROW(parse_config("numerics: {h: fast}"), ConfigError);
  EXPECT_THROW(parse_config("domain: {box: [0, 1, 2]}"), ConfigError);
  EXPECT_THROW(parse_config("domain: {shape: hexagon}"), ConfigError);
  EXPECT_THROW(parse_config("populations: [{initial: {type: spiral}}]"), ConfigError);
  EXPECT_THROW(parse_config("key: [unclosed"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/scenario.yaml"), ConfigError);
}

}  // namespace
}  // namespace nlcl
