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

// Exponential-weights adversarial bandit shared by the attacker, ActSel and
// NeiSel. Weights live in log-space; the importance-weighted estimator is
//   r_hat[a] = 1 - 1{a == chosen} / p_chosen * (1 - r).

#ifndef COVGAME_EXP3_H_
#define COVGAME_EXP3_H_

#include <cstdint>
#include <span>
#include <vector>

#include "covgame/random.h"

namespace covgame {

enum class BanditKind { kAttacker, kAction, kNeighbor };

// Sign of the multiplicative update: gain-seeking uses exp(+eta r_hat),
// loss-seeking uses exp(-eta r_hat).
enum class Direction { kGainSeeking, kLossSeeking };

// sqrt(2 ln K / (K T)).
double Exp3LearningRate(int arms, std::int64_t horizon);

struct EstimatorInput {
  int chosen_arm = 0;
  double chosen_prob = 1.0;
  double observed_reward = 0.0;
};

// Full estimator vector over `arms` arms. Throws std::invalid_argument when
// chosen_prob is not positive or chosen_arm is out of range.
std::vector<double> EstimateReward(const EstimatorInput& input, int arms);

class Exp3State {
 public:
  struct Draw {
    int arm = 0;
    double probability = 1.0;
  };

  // Uniform weights, rate and direction chosen by kind (the attacker is
  // loss-seeking, agent learners are gain-seeking).
  static Exp3State Create(int arms, std::int64_t horizon, BanditKind kind);

  Exp3State(int arms, double eta, Direction direction);

  int arms() const { return static_cast<int>(log_weights_.size()); }
  double eta() const { return eta_; }
  Direction direction() const { return direction_; }
  std::int64_t round_count() const { return round_count_; }
  std::span<const double> log_weights() const { return log_weights_; }
  std::span<const double> probabilities() const { return probabilities_; }
  double probability(int arm) const { return probabilities_[arm]; }

  // Replaces the weights; probabilities are renormalized.
  void SetLogWeights(std::span<const double> log_weights);

  Draw Sample(Rng& rng) const;
  void Update(std::span<const double> estimated_rewards);

 private:
  void Normalize();

  std::vector<double> log_weights_;
  std::vector<double> probabilities_;
  double eta_;
  Direction direction_;
  std::int64_t round_count_ = 0;
};

}  // namespace covgame

#endif  // COVGAME_EXP3_H_
