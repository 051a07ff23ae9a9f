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

// Geometric ground truth of the coverage game: sensors with wedge-shaped
// fields of view, attacker target deployments, the fraction-of-targets
// utility f(A, b), and receiver-side communication reachability.

#ifndef COVGAME_COVERAGE_WORLD_H_
#define COVGAME_COVERAGE_WORLD_H_

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "covgame/geometry.h"

namespace covgame {

// Raised for any structurally invalid world or experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SensorSpec {
  int id = 0;
  Point2 position;
  double fov_radius = 8.0;
  double aov = 1.0471975511965976;  // pi / 3
  double comm_range = 16.0;
  int bandwidth = 1;
  int orientations = 16;

  // Heading of orientation index k, i.e. 2*pi*k / orientations.
  double Heading(int orientation) const;
};

struct Deployment {
  int id = 0;
  std::vector<Point2> targets;
};

// One sensing action: an agent pointed at one of its orientation indices.
// Elements of the ground set of the coverage set function.
struct Action {
  int agent = 0;
  int orientation = 0;

  friend auto operator<=>(const Action&, const Action&) = default;
};

// Validated world description. Construction throws ConfigError when any
// invariant fails (no sensors, no deployments, zero or unequal target
// counts, targets outside the environment, bad sensor parameters).
class WorldConfig {
 public:
  WorldConfig(double env_width, double env_height,
              std::vector<SensorSpec> sensors,
              std::vector<Deployment> deployments);

  double env_width() const { return env_width_; }
  double env_height() const { return env_height_; }
  const std::vector<SensorSpec>& sensors() const { return sensors_; }
  const std::vector<Deployment>& deployments() const { return deployments_; }
  const SensorSpec& sensor(int i) const { return sensors_.at(i); }
  const Deployment& deployment(int b) const { return deployments_.at(b); }

  int num_agents() const { return static_cast<int>(sensors_.size()); }
  int num_deployments() const { return static_cast<int>(deployments_.size()); }
  // m, shared by every deployment.
  int target_count() const { return target_count_; }

  // Product of the per-agent orientation counts, saturating at INT64_MAX.
  std::int64_t JointActionCount() const;

 private:
  double env_width_;
  double env_height_;
  std::vector<SensorSpec> sensors_;
  std::vector<Deployment> deployments_;
  int target_count_ = 0;
};

// Closed wedge test: within fov_radius and within aov/2 of the heading.
// A target at the sensor position is always covered.
bool Covers(const SensorSpec& sensor, int orientation, Point2 target);

// Sorted indices of the deployment's targets covered by the sensor.
std::vector<int> CoverageSet(const SensorSpec& sensor, int orientation,
                             const Deployment& deployment);

// f(A, b) evaluated directly from geometry for any subset of agents'
// actions. Duplicate actions are harmless (union semantics).
double Utility(const WorldConfig& world, std::span<const Action> actions,
               int deployment);

// M_i for every agent: peers j != i with |p_i - p_j| <= c_i, ascending.
std::vector<std::vector<int>> ReachablePeers(const WorldConfig& world);

// Fixed-universe bitset over target indices.
class TargetSet {
 public:
  TargetSet() = default;
  explicit TargetSet(int universe);

  int universe() const { return universe_; }
  void Insert(int target);
  bool Contains(int target) const;
  int Count() const;
  void Clear();

  TargetSet& operator|=(const TargetSet& other);
  TargetSet& operator&=(const TargetSet& other);
  // |this \ other|
  int CountMinus(const TargetSet& other) const;
  // |this & other|
  int CountIntersection(const TargetSet& other) const;
  std::vector<int> ToIndices() const;

  friend bool operator==(const TargetSet&, const TargetSet&) = default;

 private:
  int universe_ = 0;
  std::vector<std::uint64_t> words_;
};

// Precomputed coverage of every (deployment, agent, orientation) triple,
// plus the per-target list of covering orientations used by closed-form
// expectations. Owns a copy of the world.
class CoverageIndex {
 public:
  // Agent covers the target with any of the listed orientations.
  struct Coverer {
    int agent = 0;
    std::vector<int> orientations;
  };

  explicit CoverageIndex(WorldConfig world);

  const WorldConfig& world() const { return world_; }
  int num_agents() const { return world_.num_agents(); }
  int num_deployments() const { return world_.num_deployments(); }
  int target_count() const { return world_.target_count(); }
  int orientations(int agent) const {
    return world_.sensor(agent).orientations;
  }

  const TargetSet& Covered(int deployment, int agent, int orientation) const {
    return sets_[Offset(deployment, agent) + orientation];
  }

  // f for a full joint action (one orientation per agent).
  double Utility(std::span<const int> joint_action, int deployment) const;
  // f for an arbitrary set of actions.
  double Utility(std::span<const Action> actions, int deployment) const;

  std::span<const Coverer> CoverersOf(int deployment, int target) const {
    return coverers_[static_cast<std::size_t>(deployment) * target_count() +
                     target];
  }

 private:
  std::size_t Offset(int deployment, int agent) const {
    return static_cast<std::size_t>(deployment) * per_deployment_ +
           agent_offset_[agent];
  }

  WorldConfig world_;
  std::vector<std::size_t> agent_offset_;
  std::size_t per_deployment_ = 0;
  std::vector<TargetSet> sets_;
  std::vector<std::vector<Coverer>> coverers_;
};

// Maximizer of sum_b weights[b] * f(A, b) over joint actions A.
struct WeightedCoverageOptimum {
  double value = 0.0;
  std::vector<int> joint_action;
  // False when the greedy surrogate was used (value is then a lower bound).
  bool exact = true;
};

// Enumerates all joint actions when their count is <= enumeration_cap,
// otherwise runs agent-by-agent greedy maximization.
WeightedCoverageOptimum MaximizeWeightedCoverage(
    const CoverageIndex& index, std::span<const double> weights,
    std::int64_t enumeration_cap);

inline constexpr std::int64_t kDefaultEnumerationCap = 1'000'000;

}  // namespace covgame

#endif  // COVGAME_COVERAGE_WORLD_H_
