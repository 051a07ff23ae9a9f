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

#include <algorithm>
#include <stdexcept>

namespace covgame {

namespace {

constexpr int kPlacementAttempts = 1000;
constexpr int kPointAttempts = 10000;

bool InSensedRegion(Point2 p, const std::vector<SensorSpec>& sensors) {
  return std::any_of(sensors.begin(), sensors.end(), [p](const SensorSpec& s) {
    return Distance(p, s.position) <= s.fov_radius;
  });
}

Point2 UniformPoint(const ScenarioOptions& o, Rng& rng) {
  std::uniform_real_distribution<double> ux(0.0, o.env_width);
  std::uniform_real_distribution<double> uy(0.0, o.env_height);
  const double x = ux(rng);
  return {x, uy(rng)};
}

Point2 UniformSensedPoint(const ScenarioOptions& o,
                          const std::vector<SensorSpec>& sensors, Rng& rng) {
  for (int attempt = 0; attempt < kPointAttempts; ++attempt) {
    const Point2 p = UniformPoint(o, rng);
    if (InSensedRegion(p, sensors)) return p;
  }
  // Sensed region of measure ~0; fall back to a sensor position.
  return sensors.front().position;
}

void Validate(const ScenarioOptions& o) {
  if (o.num_sensors < 1) throw ConfigError("num_sensors must be >= 1");
  if (o.num_deployments < 1) throw ConfigError("num_deployments must be >= 1");
  if (o.targets_per_deployment < 1) {
    throw ConfigError("targets_per_deployment must be >= 1");
  }
  if (o.bandwidth_choices.empty()) {
    throw ConfigError("bandwidth_choices must not be empty");
  }
  if (o.hotspot_fraction < 0.0 || o.hotspot_fraction > 1.0) {
    throw ConfigError("hotspot_fraction must lie in [0, 1]");
  }
}

}  // namespace

ScenarioOptions Figure2Defaults() {
  ScenarioOptions o;
  o.num_sensors = 3;
  o.bandwidth_choices = {1};
  return o;
}

ScenarioOptions Figure3Defaults() { return ScenarioOptions{}; }

std::vector<SensorSpec> PlaceSensors(const ScenarioOptions& o, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick_bw(
      0, o.bandwidth_choices.size() - 1);
  std::vector<SensorSpec> sensors;
  for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
    sensors.clear();
    for (int i = 0; i < o.num_sensors; ++i) {
      SensorSpec s;
      s.id = i;
      s.position = UniformPoint(o, rng);
      s.fov_radius = o.fov_radius;
      s.aov = o.aov;
      s.comm_range = o.comm_range;
      s.orientations = o.orientations;
      s.bandwidth = o.bandwidth_choices[pick_bw(rng)];
      sensors.push_back(s);
    }
    if (o.num_sensors == 1) break;
    bool everyone_reaches = true;
    for (const SensorSpec& s : sensors) {
      const bool has_peer =
          std::any_of(sensors.begin(), sensors.end(), [&](const SensorSpec& t) {
            return t.id != s.id &&
                   Distance(s.position, t.position) <= s.comm_range;
          });
      everyone_reaches = everyone_reaches && has_peer;
    }
    if (everyone_reaches) break;
  }
  return sensors;
}

std::vector<Deployment> GenerateDeployments(
    const ScenarioOptions& o, const std::vector<SensorSpec>& sensors,
    Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> jitter(0.0, o.hotspot_spread);
  std::vector<Deployment> deployments;
  for (int b = 0; b < o.num_deployments; ++b) {
    Deployment d;
    d.id = b;
    const Point2 hotspot = UniformSensedPoint(o, sensors, rng);
    for (int j = 0; j < o.targets_per_deployment; ++j) {
      Point2 p;
      bool placed = false;
      if (unit(rng) < o.hotspot_fraction) {
        for (int attempt = 0; attempt < kPointAttempts && !placed; ++attempt) {
          const double dx = jitter(rng);
          p = {hotspot.x + dx, hotspot.y + jitter(rng)};
          placed = p.x >= 0.0 && p.x <= o.env_width && p.y >= 0.0 &&
                   p.y <= o.env_height && InSensedRegion(p, sensors);
        }
      }
      if (!placed) p = UniformSensedPoint(o, sensors, rng);
      d.targets.push_back(p);
    }
    deployments.push_back(std::move(d));
  }
  return deployments;
}

WorldConfig GenerateWorld(const ScenarioOptions& options, std::uint64_t seed) {
  Validate(options);
  Rng rng(DeriveSeed(seed, {static_cast<std::uint64_t>(StreamRole::kWorld)}));
  std::vector<SensorSpec> sensors = PlaceSensors(options, rng);
  std::vector<Deployment> deployments =
      GenerateDeployments(options, sensors, rng);
  return WorldConfig(options.env_width, options.env_height, std::move(sensors),
                     std::move(deployments));
}

WorldConfig GenerateFigure2World(std::uint64_t seed,
                                 const ScenarioOptions& options) {
  return GenerateWorld(options, seed);
}

WorldConfig GenerateFigure3World(std::uint64_t seed,
                                 const ScenarioOptions& options) {
  return GenerateWorld(options, seed);
}

}  // namespace covgame
