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

// Set-function machinery over (agent, orientation) actions: marginal gains,
// Value of Coordination, curvature, and randomized property checkers for
// monotone submodularity and 2nd-order submodularity.

#ifndef COVGAME_SUBMODULAR_H_
#define COVGAME_SUBMODULAR_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "covgame/coverage_world.h"
#include "covgame/random.h"

namespace covgame {

// f(., b): evaluated on a set of actions for one deployment.
class GroundedSetFunction {
 public:
  virtual ~GroundedSetFunction() = default;
  virtual double Evaluate(std::span<const Action> set, int deployment) const = 0;
};

// The game utility backed by a CoverageIndex. The index must outlive it.
class CoverageUtility final : public GroundedSetFunction {
 public:
  explicit CoverageUtility(const CoverageIndex& index) : index_(index) {}
  double Evaluate(std::span<const Action> set, int deployment) const override {
    return index_.Utility(set, deployment);
  }

 private:
  const CoverageIndex& index_;
};

// Adapts any callable; used for planted counterexamples and induced
// functions such as VoC over neighbor sets.
class LambdaSetFunction final : public GroundedSetFunction {
 public:
  using Fn = std::function<double(std::span<const Action>, int)>;
  explicit LambdaSetFunction(Fn fn) : fn_(std::move(fn)) {}
  double Evaluate(std::span<const Action> set, int deployment) const override {
    return fn_(set, deployment);
  }

 private:
  Fn fn_;
};

// f(element | base) with union semantics: 0 when element is in base.
double MarginalGain(const GroundedSetFunction& fn, Action element,
                    std::span<const Action> base, int deployment);

// VoC(a; S) = f({a}) - f(a | S).
double Voc(const GroundedSetFunction& fn, Action action,
           std::span<const Action> neighbor_actions, int deployment);

// 1 - min_v (f(V) - f(V \ {v})) / f(v), the min ranging over singletons
// with f(v) > 0. Empty when no singleton has positive value.
std::optional<double> Curvature(const GroundedSetFunction& fn,
                                std::span<const Action> ground_set,
                                int deployment);

struct PropertyViolation {
  std::string property;
  std::vector<Action> set_a;
  std::vector<Action> set_b;
  std::vector<Action> set_c;
  Action element;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct PropertyReport {
  int trials = 0;
  std::int64_t violation_count = 0;
  // Witnesses, first violation first; capped at kMaxWitnesses.
  std::vector<PropertyViolation> violations;

  static constexpr std::size_t kMaxWitnesses = 8;
  bool ok() const { return violation_count == 0; }
};

// Slack allowed on every checked inequality.
inline constexpr double kPropertyTolerance = 1e-12;

// Normalization, monotonicity on random chains A <= B <= V, and
// diminishing returns f(s|A) >= f(s|B).
PropertyReport CheckMonotoneSubmodular(const GroundedSetFunction& fn,
                                       std::span<const Action> ground_set,
                                       int deployment, int trials, Rng& rng);

// f(s|C) - f(s|A u C) >= f(s|B u C) - f(s|A u B u C) for random disjoint
// A, B, C. Vacuous for ground sets with fewer than two elements.
PropertyReport CheckSecondOrderSubmodular(const GroundedSetFunction& fn,
                                          std::span<const Action> ground_set,
                                          int deployment, int trials,
                                          Rng& rng);

// Every (agent, orientation) action of the world.
std::vector<Action> FullGroundSet(const WorldConfig& world);

}  // namespace covgame

#endif  // COVGAME_SUBMODULAR_H_
