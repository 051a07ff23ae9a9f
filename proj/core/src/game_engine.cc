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

#include "covgame/game_engine.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "covgame/equilibrium.h"
#include "covgame/exp3.h"
#include "covgame/learners.h"

namespace covgame {

std::string_view ToString(NeighborStrategy strategy) {
  switch (strategy) {
    case NeighborStrategy::kNeiSel:
      return "neisel";
    case NeighborStrategy::kNearest:
      return "nearest";
    case NeighborStrategy::kRandom:
      return "random";
    case NeighborStrategy::kAll:
      return "all";
  }
  return "unknown";
}

std::optional<NeighborStrategy> ParseNeighborStrategy(std::string_view name) {
  for (NeighborStrategy s :
       {NeighborStrategy::kNeiSel, NeighborStrategy::kNearest,
        NeighborStrategy::kRandom, NeighborStrategy::kAll}) {
    if (ToString(s) == name) return s;
  }
  return std::nullopt;
}

std::vector<double> AveragedStrategies::AttackerAverage() const {
  std::vector<double> out(attacker_sum);
  if (rounds > 0) {
    for (double& v : out) v /= static_cast<double>(rounds);
  }
  return out;
}

std::vector<std::vector<double>> AveragedStrategies::DefenderMarginalAverages()
    const {
  std::vector<std::vector<double>> out(defender_marginal_sums);
  if (rounds > 0) {
    for (auto& dist : out) {
      for (double& v : dist) v /= static_cast<double>(rounds);
    }
  }
  return out;
}

std::vector<int> BaselineNeighbors(NeighborStrategy strategy, int agent,
                                   const WorldConfig& world,
                                   std::span<const int> peers, Rng& rng) {
  const int bandwidth = world.sensor(agent).bandwidth;
  std::vector<int> out(peers.begin(), peers.end());
  std::sort(out.begin(), out.end());
  switch (strategy) {
    case NeighborStrategy::kAll:
      return out;
    case NeighborStrategy::kNearest: {
      const Point2 self = world.sensor(agent).position;
      std::stable_sort(out.begin(), out.end(), [&](int a, int b) {
        return Distance(self, world.sensor(a).position) <
               Distance(self, world.sensor(b).position);
      });
      if (static_cast<int>(out.size()) > bandwidth) out.resize(bandwidth);
      std::sort(out.begin(), out.end());
      return out;
    }
    case NeighborStrategy::kRandom: {
      if (static_cast<int>(out.size()) <= bandwidth) return out;
      std::vector<int> picked;
      picked.reserve(bandwidth);
      std::sample(out.begin(), out.end(), std::back_inserter(picked),
                  bandwidth, rng);
      return picked;
    }
    case NeighborStrategy::kNeiSel:
      break;
  }
  throw std::invalid_argument("neisel is not a baseline neighbor rule");
}

GameResult RunGame(const CoverageIndex& index, const GameConfig& config) {
  if (config.horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  const WorldConfig& world = index.world();
  const int n = world.num_agents();
  const int num_deployments = world.num_deployments();
  const int m = world.target_count();
  const std::int64_t horizon = config.horizon;
  const NeighborStrategy strategy = config.neighbor_strategy;

  std::vector<int> order = config.agent_order;
  if (order.empty()) {
    order.resize(n);
    std::iota(order.begin(), order.end(), 0);
  } else {
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(sorted.size()) != n || sorted[i] != i) {
        throw std::invalid_argument("agent_order must be a permutation");
      }
    }
  }

  const std::vector<std::vector<int>> peers = ReachablePeers(world);

  // Random substreams, one per (entity, role, slot).
  Rng attacker_stream = MakeStream(config.master_seed, config.trial,
                                   kAttackerEntity, StreamRole::kAttacker);
  std::vector<Rng> action_streams;
  std::vector<std::vector<Rng>> slot_streams(n);
  for (int i = 0; i < n; ++i) {
    action_streams.push_back(
        MakeStream(config.master_seed, config.trial, i, StreamRole::kAction));
    const int slots = std::max(1, world.sensor(i).bandwidth);
    for (int k = 0; k < slots; ++k) {
      slot_streams[i].push_back(MakeStream(config.master_seed, config.trial, i,
                                           StreamRole::kNeighborSlot, k));
    }
  }

  Exp3State attacker =
      Exp3State::Create(num_deployments, horizon, BanditKind::kAttacker);
  std::vector<ActSel> actsel;
  std::vector<NeiSel> neisel;
  std::vector<std::vector<int>> fixed_neighbors(n);
  for (int i = 0; i < n; ++i) {
    actsel.emplace_back(world.sensor(i).orientations, horizon);
    if (strategy == NeighborStrategy::kNeiSel) {
      neisel.emplace_back(peers[i], world.sensor(i).bandwidth, horizon);
    } else if (strategy != NeighborStrategy::kRandom) {
      Rng unused(0);
      fixed_neighbors[i] =
          BaselineNeighbors(strategy, i, world, peers[i], unused);
    }
  }

  std::vector<std::int64_t> checkpoints = config.checkpoints;
  std::sort(checkpoints.begin(), checkpoints.end());
  checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()),
                    checkpoints.end());
  auto next_checkpoint = std::lower_bound(checkpoints.begin(),
                                          checkpoints.end(), std::int64_t{1});

  GameResult result;
  AveragedStrategies& avg = result.averages;
  avg.attacker_sum.assign(num_deployments, 0.0);
  avg.deployment_value_sums.assign(num_deployments, 0.0);
  for (int i = 0; i < n; ++i) {
    avg.defender_marginal_sums.emplace_back(world.sensor(i).orientations, 0.0);
  }
  if (config.keep_records) result.records.reserve(horizon);
  result.metrics.utility.reserve(horizon);
  result.metrics.running_average.reserve(horizon);
  result.metrics.attacker_estimated_reward.reserve(horizon);
  result.metrics.deployment.reserve(horizon);

  std::vector<ActSel::Draw> draws(n);
  std::vector<NeiSel::Selection> selections(n);
  std::vector<int> joint(n, 0);
  std::vector<std::vector<int>> neighborhoods(n);
  std::vector<double> marginal(n, 0.0);
  std::vector<std::vector<double>> distributions(n);
  TargetSet scratch(m);
  double utility_sum = 0.0;

  for (std::int64_t t = 1; t <= horizon; ++t) {
    // (1) attacker samples b_t from q_t.
    const auto q_span = attacker.probabilities();
    const std::vector<double> q(q_span.begin(), q_span.end());
    const Exp3State::Draw attack = attacker.Sample(attacker_stream);
    const int b = attack.arm;

    // (2) every agent draws an orientation.
    for (int i : order) {
      draws[i] = actsel[i].Select(action_streams[i]);
      joint[i] = draws[i].orientation;
    }

    // (3)-(4) neighborhoods form from this round's actions.
    for (int i : order) {
      switch (strategy) {
        case NeighborStrategy::kNeiSel: {
          const TargetSet& own = index.Covered(b, i, joint[i]);
          auto voc = [&](std::span<const int> chosen) {
            scratch.Clear();
            for (int j : chosen) scratch |= index.Covered(b, j, joint[j]);
            return static_cast<double>(own.CountIntersection(scratch)) / m;
          };
          selections[i] = neisel[i].Select(voc, slot_streams[i]);
          neighborhoods[i] = selections[i].neighborhood;
          break;
        }
        case NeighborStrategy::kRandom:
          neighborhoods[i] = BaselineNeighbors(strategy, i, world, peers[i],
                                               slot_streams[i][0]);
          break;
        default:
          neighborhoods[i] = fixed_neighbors[i];
          break;
      }
    }

    // (5) ActSel and NeiSel updates.
    for (int i : order) {
      scratch.Clear();
      for (int j : neighborhoods[i]) scratch |= index.Covered(b, j, joint[j]);
      const double gain =
          static_cast<double>(index.Covered(b, i, joint[i]).CountMinus(scratch)) /
          m;
      marginal[i] = actsel[i].Update(draws[i], gain);
      if (strategy == NeighborStrategy::kNeiSel) neisel[i].Update(selections[i]);
    }

    // (6) attacker observes r_{b,t} and updates.
    const double utility = index.Utility(joint, b);
    const std::vector<double> estimate =
        EstimateReward({b, attack.probability, ClampUnit(utility)},
                       num_deployments);
    attacker.Update(estimate);

    // (7) averaging accumulators.
    avg.rounds = t;
    for (int d = 0; d < num_deployments; ++d) avg.attacker_sum[d] += q[d];
    for (int i = 0; i < n; ++i) {
      distributions[i] = draws[i].distribution;
      auto& sums = avg.defender_marginal_sums[i];
      for (std::size_t k = 0; k < sums.size(); ++k) {
        sums[k] += distributions[i][k];
      }
    }
    for (int d = 0; d < num_deployments; ++d) {
      avg.deployment_value_sums[d] +=
          ExpectedUtilityProduct(index, distributions, d);
    }

    utility_sum += utility;
    result.metrics.utility.push_back(utility);
    result.metrics.running_average.push_back(utility_sum /
                                             static_cast<double>(t));
    result.metrics.attacker_estimated_reward.push_back(estimate[b]);
    result.metrics.deployment.push_back(b);

    if (config.keep_records) {
      RoundRecord record;
      record.t = t;
      record.deployment = b;
      record.joint_action = joint;
      record.neighborhoods = neighborhoods;
      record.utility = utility;
      record.attacker_estimated_reward = estimate[b];
      record.marginal_rewards = marginal;
      record.slot_rewards.resize(n);
      if (strategy == NeighborStrategy::kNeiSel) {
        for (int i = 0; i < n; ++i) {
          record.slot_rewards[i] = selections[i].slot_rewards;
        }
      }
      if (config.snapshot_interval > 0 &&
          (t - 1) % config.snapshot_interval == 0) {
        record.attacker_distribution = q;
        record.defender_distributions = distributions;
      }
      result.records.push_back(std::move(record));
    }

    if (next_checkpoint != checkpoints.end() && *next_checkpoint == t) {
      result.prefixes.push_back(avg);
      ++next_checkpoint;
    }
  }
  return result;
}

RegretResult DefenderRegret(std::span<const RoundRecord> records,
                            const CoverageIndex& index,
                            std::int64_t enumeration_cap) {
  std::vector<double> counts(index.num_deployments(), 0.0);
  double realized = 0.0;
  for (const RoundRecord& r : records) {
    counts[r.deployment] += 1.0;
    realized += r.utility;
  }
  const WeightedCoverageOptimum best =
      MaximizeWeightedCoverage(index, counts, enumeration_cap);
  // Recompute the comparator's sum round by round so that both sides of the
  // difference accumulate in the same order.
  double hindsight = 0.0;
  for (const RoundRecord& r : records) {
    hindsight += index.Utility(std::span<const int>(best.joint_action),
                               r.deployment);
  }
  return {hindsight - realized, best.exact, best.joint_action};
}

RegretResult AttackerRegret(std::span<const RoundRecord> records,
                            const CoverageIndex& index) {
  std::vector<double> per_deployment(index.num_deployments(), 0.0);
  double realized = 0.0;
  for (const RoundRecord& r : records) {
    realized += r.utility;
    for (int b = 0; b < index.num_deployments(); ++b) {
      per_deployment[b] += index.Utility(std::span<const int>(r.joint_action), b);
    }
  }
  const auto best =
      std::min_element(per_deployment.begin(), per_deployment.end());
  return {realized - *best, true,
          {static_cast<int>(best - per_deployment.begin())}};
}

}  // namespace covgame
