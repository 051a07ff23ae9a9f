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

#include "covgame/exp3.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace covgame {

double Exp3LearningRate(int arms, std::int64_t horizon) {
  if (arms < 1) throw std::invalid_argument("bandit needs at least one arm");
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  return std::sqrt(2.0 * std::log(static_cast<double>(arms)) /
                   (static_cast<double>(arms) * static_cast<double>(horizon)));
}

std::vector<double> EstimateReward(const EstimatorInput& input, int arms) {
  if (input.chosen_arm < 0 || input.chosen_arm >= arms) {
    throw std::invalid_argument("chosen arm out of range");
  }
  if (!(input.chosen_prob > 0.0)) {
    throw std::invalid_argument("chosen arm must have positive probability");
  }
  std::vector<double> estimate(arms, 1.0);
  estimate[input.chosen_arm] =
      1.0 - (1.0 - input.observed_reward) / input.chosen_prob;
  return estimate;
}

Exp3State Exp3State::Create(int arms, std::int64_t horizon, BanditKind kind) {
  const Direction direction = kind == BanditKind::kAttacker
                                  ? Direction::kLossSeeking
                                  : Direction::kGainSeeking;
  return Exp3State(arms, Exp3LearningRate(arms, horizon), direction);
}

Exp3State::Exp3State(int arms, double eta, Direction direction)
    : eta_(eta), direction_(direction) {
  if (arms < 1) throw std::invalid_argument("bandit needs at least one arm");
  if (!(eta >= 0.0)) throw std::invalid_argument("learning rate must be >= 0");
  log_weights_.assign(arms, 0.0);
  probabilities_.assign(arms, 1.0 / arms);
}

void Exp3State::SetLogWeights(std::span<const double> log_weights) {
  if (log_weights.size() != log_weights_.size()) {
    throw std::invalid_argument("log-weight dimension mismatch");
  }
  std::copy(log_weights.begin(), log_weights.end(), log_weights_.begin());
  Normalize();
}

void Exp3State::Normalize() {
  const double top = *std::max_element(log_weights_.begin(), log_weights_.end());
  double total = 0.0;
  for (std::size_t a = 0; a < log_weights_.size(); ++a) {
    // Keeping the max at zero bounds the log-weights for long horizons.
    log_weights_[a] -= top;
    probabilities_[a] = std::exp(log_weights_[a]);
    total += probabilities_[a];
  }
  for (double& p : probabilities_) p /= total;
}

Exp3State::Draw Exp3State::Sample(Rng& rng) const {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng);
  double cumulative = 0.0;
  int last_positive = 0;
  for (int a = 0; a < arms(); ++a) {
    if (probabilities_[a] <= 0.0) continue;
    last_positive = a;
    cumulative += probabilities_[a];
    if (u < cumulative) return {a, probabilities_[a]};
  }
  // Rounding left the cumulative sum just below u.
  return {last_positive, probabilities_[last_positive]};
}

void Exp3State::Update(std::span<const double> estimated_rewards) {
  if (estimated_rewards.size() != log_weights_.size()) {
    throw std::invalid_argument("estimator dimension mismatch");
  }
  const double sign = direction_ == Direction::kGainSeeking ? 1.0 : -1.0;
  for (std::size_t a = 0; a < log_weights_.size(); ++a) {
    log_weights_[a] += sign * eta_ * estimated_rewards[a];
  }
  Normalize();
  ++round_count_;
}

}  // namespace covgame
