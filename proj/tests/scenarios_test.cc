// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "covgame/scenarios.h"

#include <gtest/gtest.h>

#include <set>

namespace covgame {
namespace {

TEST(Figure2WorldTest, ThreeSensorsTwentyDeployments) {
  const WorldConfig w = GenerateFigure2World(1);
  EXPECT_EQ(w.num_agents(), 3);
  EXPECT_EQ(w.num_deployments(), 20);
  EXPECT_EQ(w.JointActionCount(), 16 * 16 * 16);
}

TEST(Figure2WorldTest, UnitBandwidth) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (const SensorSpec& s : GenerateFigure2World(seed).sensors()) {
      EXPECT_EQ(s.bandwidth, 1);
      EXPECT_EQ(s.orientations, 16);
    }
  }
}

TEST(Figure2WorldTest, SameSeedSameWorld) {
  const WorldConfig a = GenerateFigure2World(42);
  const WorldConfig b = GenerateFigure2World(42);
  const WorldConfig c = GenerateFigure2World(43);
  bool differs = false;
  for (int d = 0; d < a.num_deployments(); ++d) {
    const auto& ta = a.deployment(d).targets;
    const auto& tb = b.deployment(d).targets;
    const auto& tc = c.deployment(d).targets;
    ASSERT_EQ(ta.size(), tb.size());
    for (std::size_t j = 0; j < ta.size(); ++j) {
      EXPECT_EQ(ta[j].x, tb[j].x);
      EXPECT_EQ(ta[j].y, tb[j].y);
      differs = differs || ta[j].x != tc[j].x;
    }
  }
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(a.sensor(i).position.x, b.sensor(i).position.x);
  }
  EXPECT_TRUE(differs);
}

TEST(Figure3WorldTest, SensorParametersAsQuoted) {
  std::set<int> seen_bandwidths;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const WorldConfig w = GenerateFigure3World(seed);
    EXPECT_EQ(w.env_width(), 30.0);
    EXPECT_EQ(w.env_height(), 30.0);
    EXPECT_EQ(w.num_agents(), 8);
    EXPECT_EQ(w.num_deployments(), 20);
    EXPECT_EQ(w.target_count(), 60);
    for (const SensorSpec& s : w.sensors()) {
      EXPECT_GE(s.bandwidth, 1);
      EXPECT_LE(s.bandwidth, 3);
      seen_bandwidths.insert(s.bandwidth);
      EXPECT_EQ(s.fov_radius, 8.0);
      EXPECT_EQ(s.comm_range, 16.0);
      EXPECT_DOUBLE_EQ(s.aov, std::numbers::pi / 3.0);
      EXPECT_EQ(s.orientations, 16);
      EXPECT_GE(s.position.x, 0.0);
      EXPECT_LE(s.position.x, 30.0);
      EXPECT_GE(s.position.y, 0.0);
      EXPECT_LE(s.position.y, 30.0);
    }
    for (const Deployment& d : w.deployments()) {
      for (const Point2& p : d.targets) {
        EXPECT_GE(p.x, 0.0);
        EXPECT_LE(p.x, 30.0);
        EXPECT_GE(p.y, 0.0);
        EXPECT_LE(p.y, 30.0);
      }
    }
  }
  EXPECT_EQ(seen_bandwidths, (std::set<int>{1, 2, 3}));
}

TEST(Figure3WorldTest, EverySensorHasAPeerAndTargetsAreSensable) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const WorldConfig w = GenerateFigure3World(seed);
    for (const auto& peers : ReachablePeers(w)) EXPECT_FALSE(peers.empty());
    for (const Deployment& d : w.deployments()) {
      for (const Point2& p : d.targets) {
        bool near = false;
        for (const SensorSpec& s : w.sensors()) {
          near = near || Distance(p, s.position) <= s.fov_radius;
        }
        EXPECT_TRUE(near);
      }
    }
  }
}

TEST(ScenarioOptionsTest, KnobsAreHonoredAndValidated) {
  ScenarioOptions o = Figure3Defaults();
  o.num_sensors = 5;
  o.targets_per_deployment = 7;
  o.num_deployments = 4;
  const WorldConfig w = GenerateWorld(o, 3);
  EXPECT_EQ(w.num_agents(), 5);
  EXPECT_EQ(w.target_count(), 7);
  EXPECT_EQ(w.num_deployments(), 4);
  o.num_sensors = 0;
  EXPECT_THROW(GenerateWorld(o, 3), ConfigError);
  o = Figure3Defaults();
  o.bandwidth_choices.clear();
  EXPECT_THROW(GenerateWorld(o, 3), ConfigError);
  o = Figure3Defaults();
  o.hotspot_fraction = 1.5;
  EXPECT_THROW(GenerateWorld(o, 3), ConfigError);
}

TEST(ScenarioOptionsTest, SingleSensorWorld) {
  ScenarioOptions o = Figure2Defaults();
  o.num_sensors = 1;
  EXPECT_EQ(GenerateWorld(o, 4).num_agents(), 1);
}

}  // namespace
}  // namespace covgame
