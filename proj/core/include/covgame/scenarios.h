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

// Seeded world generators for the two experiment setups.
//
// Values that are not pinned by the experiment description (sensor count
// for the heterogeneous setup, targets per deployment, number of
// deployments, target layout) are knobs with documented defaults.

#ifndef COVGAME_SCENARIOS_H_
#define COVGAME_SCENARIOS_H_

#include <cstdint>
#include <numbers>
#include <vector>

#include "covgame/coverage_world.h"
#include "covgame/random.h"

namespace covgame {

struct ScenarioOptions {
  double env_width = 30.0;
  double env_height = 30.0;
  int num_sensors = 8;
  double fov_radius = 8.0;
  double aov = std::numbers::pi / 3.0;
  double comm_range = 16.0;
  int orientations = 16;
  // Bandwidth of each sensor drawn uniformly from this list.
  std::vector<int> bandwidth_choices = {1, 2, 3};
  int num_deployments = 20;
  int targets_per_deployment = 60;
  // Share of each deployment's targets clustered around one hotspot; the
  // rest are spread uniformly over the sensed region.
  double hotspot_fraction = 0.5;
  double hotspot_spread = 4.0;
};

// Three sensors, bandwidth 1, 16 orientations, 20 deployments.
ScenarioOptions Figure2Defaults();
// Eight sensors, bandwidth drawn from {1, 2, 3}, 20 deployments.
ScenarioOptions Figure3Defaults();

WorldConfig GenerateFigure2World(std::uint64_t seed,
                                 const ScenarioOptions& options =
                                     Figure2Defaults());
WorldConfig GenerateFigure3World(std::uint64_t seed,
                                 const ScenarioOptions& options =
                                     Figure3Defaults());

// Uniform placement inside the environment, redrawn (up to a fixed number
// of attempts) until every sensor has at least one reachable peer.
std::vector<SensorSpec> PlaceSensors(const ScenarioOptions& options, Rng& rng);

// Targets restricted to the sensed region (points within fov_radius of
// some sensor), part of them around a per-deployment hotspot.
std::vector<Deployment> GenerateDeployments(const ScenarioOptions& options,
                                            const std::vector<SensorSpec>& sensors,
                                            Rng& rng);

WorldConfig GenerateWorld(const ScenarioOptions& options, std::uint64_t seed);

}  // namespace covgame

#endif  // COVGAME_SCENARIOS_H_
