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

#include "covgame/learners.h"

#include <algorithm>
#include <stdexcept>

namespace covgame {

double ClampUnit(double reward) { return std::clamp(reward, 0.0, 1.0); }

ActSel::ActSel(int orientations, std::int64_t horizon)
    : bandit_(Exp3State::Create(orientations, horizon, BanditKind::kAction)) {}

ActSel::Draw ActSel::Select(Rng& rng) const {
  const auto probs = bandit_.probabilities();
  const Exp3State::Draw d = bandit_.Sample(rng);
  return {std::vector<double>(probs.begin(), probs.end()), d.arm,
          d.probability};
}

double ActSel::Update(const Draw& draw, double marginal_gain) {
  const double reward = ClampUnit(marginal_gain);
  bandit_.Update(EstimateReward({draw.orientation, draw.probability, reward},
                                bandit_.arms()));
  return reward;
}

NeiSel::NeiSel(std::vector<int> candidates, int bandwidth,
               std::int64_t horizon)
    : candidates_(std::move(candidates)) {
  if (bandwidth < 0) throw std::invalid_argument("bandwidth must be >= 0");
  std::sort(candidates_.begin(), candidates_.end());
  candidates_.erase(std::unique(candidates_.begin(), candidates_.end()),
                    candidates_.end());
  if (candidates_.empty()) return;
  slots_.reserve(bandwidth);
  for (int k = 0; k < bandwidth; ++k) {
    slots_.push_back(Exp3State::Create(static_cast<int>(candidates_.size()),
                                       horizon, BanditKind::kNeighbor));
  }
}

NeiSel::Selection NeiSel::Select(const VocOracle& voc,
                                 std::span<Rng> slot_streams) const {
  Selection out;
  if (slots_.empty()) return out;
  if (slot_streams.size() < slots_.size()) {
    throw std::invalid_argument("one random stream per slot required");
  }
  double previous = 0.0;  // VoC(a; {}) = 0
  for (std::size_t k = 0; k < slots_.size(); ++k) {
    const Exp3State::Draw d = slots_[k].Sample(slot_streams[k]);
    out.draws.push_back(candidates_[d.arm]);
    out.slot_probabilities.push_back(d.probability);
    const double current = voc(out.draws);
    out.slot_rewards.push_back(current - previous);
    previous = current;
  }
  out.neighborhood = out.draws;
  std::sort(out.neighborhood.begin(), out.neighborhood.end());
  out.neighborhood.erase(
      std::unique(out.neighborhood.begin(), out.neighborhood.end()),
      out.neighborhood.end());
  return out;
}

void NeiSel::Update(const Selection& selection) {
  for (std::size_t k = 0; k < slots_.size(); ++k) {
    const auto it = std::lower_bound(candidates_.begin(), candidates_.end(),
                                     selection.draws[k]);
    const int arm = static_cast<int>(it - candidates_.begin());
    slots_[k].Update(EstimateReward({arm, selection.slot_probabilities[k],
                                     ClampUnit(selection.slot_rewards[k])},
                                    slots_[k].arms()));
  }
}

}  // namespace covgame
