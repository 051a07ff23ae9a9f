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

// Per-agent learners: ActSel picks an orientation, NeiSel picks up to
// bandwidth neighbors through one bandit per slot rewarded by the VoC
// increment of the peer drawn in that slot.

#ifndef COVGAME_LEARNERS_H_
#define COVGAME_LEARNERS_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "covgame/exp3.h"
#include "covgame/random.h"

namespace covgame {

// Clamp of observed rewards into [0, 1].
double ClampUnit(double reward);

class ActSel {
 public:
  struct Draw {
    std::vector<double> distribution;  // p_{i,t} before the draw
    int orientation = 0;
    double probability = 1.0;
  };

  ActSel(int orientations, std::int64_t horizon);

  Draw Select(Rng& rng) const;
  // Feeds f(a | neighbor actions, b) for the draw; returns the clamped
  // reward actually used.
  double Update(const Draw& draw, double marginal_gain);

  const Exp3State& bandit() const { return bandit_; }

 private:
  Exp3State bandit_;
};

class NeiSel {
 public:
  // VoC(a_i; {a_j : j in peers}) for the current round.
  using VocOracle = std::function<double(std::span<const int> peers)>;

  struct Selection {
    std::vector<int> draws;                  // j^(k), one per slot
    std::vector<double> slot_probabilities;  // psi^(k) mass of j^(k)
    std::vector<double> slot_rewards;        // unclamped VoC increments
    std::vector<int> neighborhood;           // distinct draws, ascending
  };

  // candidates = M_i (agent ids); one bandit per slot over the candidates.
  NeiSel(std::vector<int> candidates, int bandwidth, std::int64_t horizon);

  const std::vector<int>& candidates() const { return candidates_; }
  int slots() const { return static_cast<int>(slots_.size()); }
  const Exp3State& slot(int k) const { return slots_[k]; }

  // slot_streams must hold one stream per slot.
  Selection Select(const VocOracle& voc, std::span<Rng> slot_streams) const;
  void Update(const Selection& selection);

 private:
  std::vector<int> candidates_;
  std::vector<Exp3State> slots_;
};

}  // namespace covgame

#endif  // COVGAME_LEARNERS_H_
