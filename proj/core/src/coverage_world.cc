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

#include "covgame/coverage_world.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace covgame {

double SensorSpec::Heading(int orientation) const {
  return 2.0 * std::numbers::pi * orientation / orientations;
}

WorldConfig::WorldConfig(double env_width, double env_height,
                         std::vector<SensorSpec> sensors,
                         std::vector<Deployment> deployments)
    : env_width_(env_width),
      env_height_(env_height),
      sensors_(std::move(sensors)),
      deployments_(std::move(deployments)) {
  if (!(env_width_ > 0.0) || !(env_height_ > 0.0)) {
    throw ConfigError("environment dimensions must be positive");
  }
  if (sensors_.empty()) throw ConfigError("world needs at least one sensor");
  if (deployments_.empty()) {
    throw ConfigError("world needs at least one deployment");
  }
  for (std::size_t i = 0; i < sensors_.size(); ++i) {
    const SensorSpec& s = sensors_[i];
    std::ostringstream where;
    where << "sensor " << i << ": ";
    if (s.id != static_cast<int>(i)) {
      throw ConfigError(where.str() + "id must equal its index");
    }
    if (s.orientations < 1) {
      throw ConfigError(where.str() + "orientations must be >= 1");
    }
    if (s.bandwidth < 0) throw ConfigError(where.str() + "bandwidth < 0");
    if (!(s.fov_radius > 0.0)) {
      throw ConfigError(where.str() + "fov_radius must be > 0");
    }
    if (!(s.aov > 0.0) || s.aov > 2.0 * std::numbers::pi + 1e-12) {
      throw ConfigError(where.str() + "aov must lie in (0, 2*pi]");
    }
    if (!(s.comm_range >= 0.0)) {
      throw ConfigError(where.str() + "comm_range must be >= 0");
    }
  }
  target_count_ = static_cast<int>(deployments_.front().targets.size());
  if (target_count_ == 0) {
    throw ConfigError("deployments must contain at least one target");
  }
  for (std::size_t b = 0; b < deployments_.size(); ++b) {
    const Deployment& d = deployments_[b];
    if (d.id != static_cast<int>(b)) {
      throw ConfigError("deployment " + std::to_string(b) +
                        ": id must equal its index");
    }
    if (static_cast<int>(d.targets.size()) != target_count_) {
      throw ConfigError("deployment " + std::to_string(b) +
                        ": every deployment must have the same target count");
    }
    for (const Point2& p : d.targets) {
      if (p.x < 0.0 || p.x > env_width_ || p.y < 0.0 || p.y > env_height_) {
        throw ConfigError("deployment " + std::to_string(b) +
                          ": target outside the environment");
      }
    }
  }
}

std::int64_t WorldConfig::JointActionCount() const {
  constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();
  std::int64_t count = 1;
  for (const SensorSpec& s : sensors_) {
    if (count > kMax / s.orientations) return kMax;
    count *= s.orientations;
  }
  return count;
}

bool Covers(const SensorSpec& sensor, int orientation, Point2 target) {
  const double dx = target.x - sensor.position.x;
  const double dy = target.y - sensor.position.y;
  if (dx == 0.0 && dy == 0.0) return true;
  if (std::hypot(dx, dy) > sensor.fov_radius) return false;
  const double bearing = std::atan2(dy, dx);
  return AngularDistance(bearing, sensor.Heading(orientation)) <=
         0.5 * sensor.aov;
}

std::vector<int> CoverageSet(const SensorSpec& sensor, int orientation,
                             const Deployment& deployment) {
  std::vector<int> covered;
  for (std::size_t j = 0; j < deployment.targets.size(); ++j) {
    if (Covers(sensor, orientation, deployment.targets[j])) {
      covered.push_back(static_cast<int>(j));
    }
  }
  return covered;
}

double Utility(const WorldConfig& world, std::span<const Action> actions,
               int deployment) {
  const Deployment& d = world.deployment(deployment);
  int covered = 0;
  for (const Point2& target : d.targets) {
    for (const Action& a : actions) {
      if (Covers(world.sensor(a.agent), a.orientation, target)) {
        ++covered;
        break;
      }
    }
  }
  return static_cast<double>(covered) / world.target_count();
}

std::vector<std::vector<int>> ReachablePeers(const WorldConfig& world) {
  const int n = world.num_agents();
  std::vector<std::vector<int>> peers(n);
  for (int i = 0; i < n; ++i) {
    const SensorSpec& receiver = world.sensor(i);
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      if (Distance(receiver.position, world.sensor(j).position) <=
          receiver.comm_range) {
        peers[i].push_back(j);
      }
    }
  }
  return peers;
}

// -- TargetSet ----------------------------------------------------------------

TargetSet::TargetSet(int universe)
    : universe_(universe), words_((universe + 63) / 64, 0) {}

void TargetSet::Insert(int target) {
  words_[target >> 6] |= std::uint64_t{1} << (target & 63);
}

bool TargetSet::Contains(int target) const {
  return (words_[target >> 6] >> (target & 63)) & 1u;
}

int TargetSet::Count() const {
  int count = 0;
  for (std::uint64_t w : words_) count += std::popcount(w);
  return count;
}

void TargetSet::Clear() { std::fill(words_.begin(), words_.end(), 0); }

TargetSet& TargetSet::operator|=(const TargetSet& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

TargetSet& TargetSet::operator&=(const TargetSet& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

int TargetSet::CountMinus(const TargetSet& other) const {
  int count = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    count += std::popcount(words_[i] & ~other.words_[i]);
  }
  return count;
}

int TargetSet::CountIntersection(const TargetSet& other) const {
  int count = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    count += std::popcount(words_[i] & other.words_[i]);
  }
  return count;
}

std::vector<int> TargetSet::ToIndices() const {
  std::vector<int> out;
  for (int j = 0; j < universe_; ++j) {
    if (Contains(j)) out.push_back(j);
  }
  return out;
}

// -- CoverageIndex ------------------------------------------------------------

CoverageIndex::CoverageIndex(WorldConfig world) : world_(std::move(world)) {
  const int n = world_.num_agents();
  const int m = world_.target_count();
  agent_offset_.resize(n);
  for (int i = 0; i < n; ++i) {
    agent_offset_[i] = per_deployment_;
    per_deployment_ += world_.sensor(i).orientations;
  }
  sets_.assign(per_deployment_ * world_.num_deployments(), TargetSet(m));
  coverers_.resize(static_cast<std::size_t>(world_.num_deployments()) * m);

  for (int b = 0; b < world_.num_deployments(); ++b) {
    const Deployment& d = world_.deployment(b);
    for (int j = 0; j < m; ++j) {
      auto& coverers = coverers_[static_cast<std::size_t>(b) * m + j];
      for (int i = 0; i < n; ++i) {
        const SensorSpec& s = world_.sensor(i);
        Coverer c{i, {}};
        for (int k = 0; k < s.orientations; ++k) {
          if (Covers(s, k, d.targets[j])) {
            sets_[Offset(b, i) + k].Insert(j);
            c.orientations.push_back(k);
          }
        }
        if (!c.orientations.empty()) coverers.push_back(std::move(c));
      }
    }
  }
}

double CoverageIndex::Utility(std::span<const int> joint_action,
                              int deployment) const {
  TargetSet covered(target_count());
  for (std::size_t i = 0; i < joint_action.size(); ++i) {
    covered |= Covered(deployment, static_cast<int>(i), joint_action[i]);
  }
  return static_cast<double>(covered.Count()) / target_count();
}

double CoverageIndex::Utility(std::span<const Action> actions,
                              int deployment) const {
  TargetSet covered(target_count());
  for (const Action& a : actions) {
    covered |= Covered(deployment, a.agent, a.orientation);
  }
  return static_cast<double>(covered.Count()) / target_count();
}

// -- MaximizeWeightedCoverage -------------------------------------------------

namespace {

class JointActionSearch {
 public:
  JointActionSearch(const CoverageIndex& index, std::span<const double> weights)
      : index_(index), m_(index.target_count()) {
    for (int b = 0; b < index.num_deployments(); ++b) {
      if (weights[b] != 0.0) {
        active_.push_back(b);
        weights_.push_back(weights[b]);
      }
    }
    const int n = index.num_agents();
    unions_.assign(static_cast<std::size_t>(n + 1) * active_.size(),
                   TargetSet(m_));
    current_.assign(n, 0);
  }

  WeightedCoverageOptimum Enumerate() {
    best_.joint_action.assign(index_.num_agents(), 0);
    best_.value = -1.0;
    Recurse(0);
    best_.exact = true;
    return best_;
  }

  WeightedCoverageOptimum Greedy() {
    const int n = index_.num_agents();
    WeightedCoverageOptimum out;
    out.exact = false;
    out.joint_action.assign(n, 0);
    std::vector<TargetSet> acc(active_.size(), TargetSet(m_));
    for (int i = 0; i < n; ++i) {
      double best_gain = -1.0;
      int best_k = 0;
      for (int k = 0; k < index_.orientations(i); ++k) {
        double gain = 0.0;
        for (std::size_t a = 0; a < active_.size(); ++a) {
          gain += weights_[a] *
                  index_.Covered(active_[a], i, k).CountMinus(acc[a]);
        }
        if (gain > best_gain) {
          best_gain = gain;
          best_k = k;
        }
      }
      out.joint_action[i] = best_k;
      for (std::size_t a = 0; a < active_.size(); ++a) {
        acc[a] |= index_.Covered(active_[a], i, best_k);
      }
    }
    for (std::size_t a = 0; a < active_.size(); ++a) {
      out.value += weights_[a] * acc[a].Count() / m_;
    }
    return out;
  }

 private:
  TargetSet& Union(int level, std::size_t a) {
    return unions_[static_cast<std::size_t>(level) * active_.size() + a];
  }

  void Recurse(int agent) {
    const int n = index_.num_agents();
    if (agent == n) {
      double value = 0.0;
      for (std::size_t a = 0; a < active_.size(); ++a) {
        value += weights_[a] * Union(n, a).Count() / m_;
      }
      if (value > best_.value) {
        best_.value = value;
        best_.joint_action = current_;
      }
      return;
    }
    for (int k = 0; k < index_.orientations(agent); ++k) {
      current_[agent] = k;
      for (std::size_t a = 0; a < active_.size(); ++a) {
        TargetSet& next = Union(agent + 1, a);
        next = Union(agent, a);
        next |= index_.Covered(active_[a], agent, k);
      }
      Recurse(agent + 1);
    }
  }

  const CoverageIndex& index_;
  int m_;
  std::vector<int> active_;
  std::vector<double> weights_;
  std::vector<TargetSet> unions_;
  std::vector<int> current_;
  WeightedCoverageOptimum best_;
};

}  // namespace

WeightedCoverageOptimum MaximizeWeightedCoverage(
    const CoverageIndex& index, std::span<const double> weights,
    std::int64_t enumeration_cap) {
  if (static_cast<int>(weights.size()) != index.num_deployments()) {
    throw std::invalid_argument("one weight per deployment required");
  }
  JointActionSearch search(index, weights);
  if (index.world().JointActionCount() <= enumeration_cap) {
    return search.Enumerate();
  }
  return search.Greedy();
}

}  // namespace covgame
