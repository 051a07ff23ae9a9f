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

#include "covgame/submodular.h"

#include <algorithm>
#include <limits>

namespace covgame {

namespace {

std::vector<Action> WithElement(std::span<const Action> base, Action element) {
  std::vector<Action> out(base.begin(), base.end());
  if (std::find(out.begin(), out.end(), element) == out.end()) {
    out.push_back(element);
  }
  return out;
}

std::vector<Action> UnionOf(std::span<const Action> a,
                            std::span<const Action> b) {
  std::vector<Action> out(a.begin(), a.end());
  for (const Action& x : b) {
    if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
  }
  return out;
}

void Record(PropertyReport& report, PropertyViolation violation) {
  ++report.violation_count;
  if (report.violations.size() < PropertyReport::kMaxWitnesses) {
    report.violations.push_back(std::move(violation));
  }
}

}  // namespace

double MarginalGain(const GroundedSetFunction& fn, Action element,
                    std::span<const Action> base, int deployment) {
  if (std::find(base.begin(), base.end(), element) != base.end()) return 0.0;
  const std::vector<Action> extended = WithElement(base, element);
  return fn.Evaluate(extended, deployment) - fn.Evaluate(base, deployment);
}

double Voc(const GroundedSetFunction& fn, Action action,
           std::span<const Action> neighbor_actions, int deployment) {
  const Action single[] = {action};
  const double alone = fn.Evaluate(single, deployment);
  return std::clamp(
      alone - MarginalGain(fn, action, neighbor_actions, deployment), 0.0, alone);
}

std::optional<double> Curvature(const GroundedSetFunction& fn,
                                std::span<const Action> ground_set,
                                int deployment) {
  const double full = fn.Evaluate(ground_set, deployment);
  double min_ratio = std::numeric_limits<double>::infinity();
  std::vector<Action> rest;
  for (std::size_t v = 0; v < ground_set.size(); ++v) {
    const Action single[] = {ground_set[v]};
    const double alone = fn.Evaluate(single, deployment);
    if (!(alone > 0.0)) continue;
    rest.clear();
    for (std::size_t u = 0; u < ground_set.size(); ++u) {
      if (u != v) rest.push_back(ground_set[u]);
    }
    min_ratio = std::min(min_ratio, (full - fn.Evaluate(rest, deployment)) / alone);
  }
  if (min_ratio == std::numeric_limits<double>::infinity()) return std::nullopt;
  return 1.0 - min_ratio;
}

PropertyReport CheckMonotoneSubmodular(const GroundedSetFunction& fn,
                                       std::span<const Action> ground_set,
                                       int deployment, int trials, Rng& rng) {
  PropertyReport report;
  report.trials = trials;
  const double empty_value = fn.Evaluate({}, deployment);
  if (std::abs(empty_value) > kPropertyTolerance) {
    Record(report, {"normalization", {}, {}, {}, {}, empty_value, 0.0});
  }
  if (ground_set.empty()) return report;

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, ground_set.size() - 1);
  std::vector<Action> a, b;
  for (int trial = 0; trial < trials; ++trial) {
    // Chain A <= B with random densities so both sparse and dense sets occur.
    const double density_b = unit(rng);
    const double density_a = unit(rng);
    a.clear();
    b.clear();
    for (const Action& v : ground_set) {
      if (unit(rng) < density_b) {
        b.push_back(v);
        if (unit(rng) < density_a) a.push_back(v);
      }
    }
    const Action s = ground_set[pick(rng)];
    const double fa = fn.Evaluate(a, deployment);
    const double fb = fn.Evaluate(b, deployment);
    if (fa > fb + kPropertyTolerance) {
      Record(report, {"monotonicity", a, b, {}, s, fa, fb});
    }
    const double gain_a = MarginalGain(fn, s, a, deployment);
    const double gain_b = MarginalGain(fn, s, b, deployment);
    if (gain_a + kPropertyTolerance < gain_b) {
      Record(report, {"submodularity", a, b, {}, s, gain_a, gain_b});
    }
  }
  return report;
}

PropertyReport CheckSecondOrderSubmodular(const GroundedSetFunction& fn,
                                          std::span<const Action> ground_set,
                                          int deployment, int trials,
                                          Rng& rng) {
  PropertyReport report;
  if (ground_set.size() < 2) return report;
  report.trials = trials;

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, ground_set.size() - 1);
  std::vector<Action> a, b, c;
  for (int trial = 0; trial < trials; ++trial) {
    // Each element lands in A, B, C or none; per-trial odds vary.
    const double pa = 0.5 * unit(rng), pb = 0.5 * unit(rng),
                 pc = 0.5 * unit(rng);
    a.clear();
    b.clear();
    c.clear();
    for (const Action& v : ground_set) {
      const double u = unit(rng) * 1.5;
      if (u < pa) {
        a.push_back(v);
      } else if (u < pa + pb) {
        b.push_back(v);
      } else if (u < pa + pb + pc) {
        c.push_back(v);
      }
    }
    const Action s = ground_set[pick(rng)];
    const std::vector<Action> ac = UnionOf(a, c);
    const std::vector<Action> bc = UnionOf(b, c);
    const std::vector<Action> abc = UnionOf(ac, b);
    const double lhs = MarginalGain(fn, s, c, deployment) -
                       MarginalGain(fn, s, ac, deployment);
    const double rhs = MarginalGain(fn, s, bc, deployment) -
                       MarginalGain(fn, s, abc, deployment);
    if (lhs + kPropertyTolerance < rhs) {
      Record(report, {"second-order submodularity", a, b, c, s, lhs, rhs});
    }
  }
  return report;
}

std::vector<Action> FullGroundSet(const WorldConfig& world) {
  std::vector<Action> out;
  for (const SensorSpec& s : world.sensors()) {
    for (int k = 0; k < s.orientations; ++k) out.push_back({s.id, k});
  }
  return out;
}

}  // namespace covgame
