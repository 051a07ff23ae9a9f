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

// Repeated play of the distributed target coverage game: an EXP3 attacker
// against sensing agents running ActSel plus a neighbor-selection rule,
// with regret accounting and running strategy averages.

#ifndef COVGAME_GAME_ENGINE_H_
#define COVGAME_GAME_ENGINE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "covgame/coverage_world.h"
#include "covgame/random.h"

namespace covgame {

enum class NeighborStrategy { kNeiSel, kNearest, kRandom, kAll };

std::string_view ToString(NeighborStrategy strategy);
std::optional<NeighborStrategy> ParseNeighborStrategy(std::string_view name);

struct GameConfig {
  std::int64_t horizon = 1;
  NeighborStrategy neighbor_strategy = NeighborStrategy::kNeiSel;
  std::uint64_t master_seed = 0;
  // Trial index; part of every random substream address.
  std::uint64_t trial = 0;
  // Keep q_t and p_{i,t} in the record every this many rounds (0: never).
  int snapshot_interval = 10;
  // Rounds after which a copy of the running averages is kept.
  std::vector<std::int64_t> checkpoints;
  bool keep_records = true;
  // Order in which agents are visited inside a round; empty means 0..N-1.
  // Results do not depend on it.
  std::vector<int> agent_order;
};

struct RoundRecord {
  std::int64_t t = 0;  // 1-based
  int deployment = 0;
  std::vector<int> joint_action;
  std::vector<std::vector<int>> neighborhoods;
  double utility = 0.0;  // f(A_t, b_t)
  double attacker_estimated_reward = 0.0;  // r_hat at b_t
  std::vector<double> marginal_rewards;  // clamped ActSel rewards
  std::vector<std::vector<double>> slot_rewards;  // NeiSel VoC increments
  std::optional<std::vector<double>> attacker_distribution;
  std::optional<std::vector<std::vector<double>>> defender_distributions;
};

// Running sums sufficient to evaluate the averaged strategies exactly.
struct AveragedStrategies {
  std::int64_t rounds = 0;
  std::vector<double> attacker_sum;  // sum_t q_t
  std::vector<std::vector<double>> defender_marginal_sums;  // sum_t p_{i,t}
  // S_b = sum_t E_{A ~ prod_i p_{i,t}} f(A, b)
  std::vector<double> deployment_value_sums;

  std::vector<double> AttackerAverage() const;
  std::vector<std::vector<double>> DefenderMarginalAverages() const;
};

struct MetricSeries {
  std::vector<double> utility;
  std::vector<double> running_average;
  std::vector<double> attacker_estimated_reward;
  std::vector<int> deployment;
};

struct GameResult {
  std::vector<RoundRecord> records;
  AveragedStrategies averages;
  // One entry per checkpoint that falls inside the horizon, in order.
  std::vector<AveragedStrategies> prefixes;
  MetricSeries metrics;
};

GameResult RunGame(const CoverageIndex& index, const GameConfig& config);

// Neighborhood chosen by a non-learning rule. peers is M_agent.
//  nearest: the bandwidth closest peers, ties broken by lower id
//  random:  bandwidth uniform draws without replacement
//  all:     every peer, ignoring bandwidth
std::vector<int> BaselineNeighbors(NeighborStrategy strategy, int agent,
                                   const WorldConfig& world,
                                   std::span<const int> peers, Rng& rng);

struct RegretResult {
  double value = 0.0;
  // False when the hindsight comparator came from the greedy surrogate.
  bool exact = true;
  std::vector<int> comparator;  // A_opt, or {b*} for the attacker
};

// sum_t f(A_opt, b_t) - sum_t f(A_t, b_t).
RegretResult DefenderRegret(std::span<const RoundRecord> records,
                            const CoverageIndex& index,
                            std::int64_t enumeration_cap =
                                kDefaultEnumerationCap);

// sum_t f(A_t, b_t) - min_b sum_t f(A_t, b).
RegretResult AttackerRegret(std::span<const RoundRecord> records,
                            const CoverageIndex& index);

}  // namespace covgame

#endif  // COVGAME_GAME_ENGINE_H_
