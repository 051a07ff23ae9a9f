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

#include <cmath>
#include <sstream>

#include "covgame/exp3.h"
#include "covgame/experiment.h"
#include "covgame/submodular.h"

namespace covgame {

namespace {

std::string Describe(const PropertyReport& report) {
  std::ostringstream out;
  out << report.trials << " trials, " << report.violation_count
      << " violations";
  if (!report.violations.empty()) {
    const PropertyViolation& v = report.violations.front();
    out << "; first: " << v.property << " lhs=" << v.lhs << " rhs=" << v.rhs
        << " |A|=" << v.set_a.size() << " |B|=" << v.set_b.size()
        << " |C|=" << v.set_c.size() << " element=(" << v.element.agent
        << "," << v.element.orientation << ")";
  }
  return out.str();
}

void Merge(PropertyReport& into, const PropertyReport& from) {
  into.trials += from.trials;
  into.violation_count += from.violation_count;
  for (const auto& v : from.violations) {
    if (into.violations.size() < PropertyReport::kMaxWitnesses) {
      into.violations.push_back(v);
    }
  }
}

}  // namespace

std::vector<CheckOutcome> RunPropertySuite(const WorldConfig& world,
                                           int trials, std::uint64_t seed) {
  const CoverageIndex index(world);
  const CoverageUtility utility(index);
  const std::vector<Action> ground = FullGroundSet(world);
  const int deployments = static_cast<int>(world.deployments().size());
  Rng rng(DeriveSeed(seed, {static_cast<std::uint64_t>(StreamRole::kChecker)}));
  std::vector<CheckOutcome> outcomes;

  {
    PropertyReport total;
    for (int b = 0; b < deployments; ++b) {
      Merge(total, CheckMonotoneSubmodular(utility, ground, b, trials, rng));
    }
    outcomes.push_back({"utility_monotone_submodular", total.ok(),
                        Describe(total)});
  }
  {
    PropertyReport total;
    for (int b = 0; b < deployments; ++b) {
      Merge(total, CheckSecondOrderSubmodular(utility, ground, b, trials, rng));
    }
    outcomes.push_back({"utility_second_order_submodular", total.ok(),
                        Describe(total)});
  }
  {
    // VoC of one fixed action, viewed as a function of the other agents'
    // actions.
    PropertyReport total;
    std::uniform_int_distribution<std::size_t> pick(0, ground.size() - 1);
    std::uniform_int_distribution<int> pick_b(0, deployments - 1);
    const int anchors = 8;
    for (int n = 0; n < anchors; ++n) {
      const Action anchor = ground[pick(rng)];
      const int b = pick_b(rng);
      std::vector<Action> others;
      for (const Action& v : ground) {
        if (v.agent != anchor.agent) others.push_back(v);
      }
      const LambdaSetFunction voc(
          [&](std::span<const Action> set, int dep) {
            return Voc(utility, anchor, set, dep);
          });
      Merge(total, CheckMonotoneSubmodular(voc, others, b,
                                           std::max(1, trials / anchors), rng));
    }
    outcomes.push_back({"voc_monotone_submodular", total.ok(), Describe(total)});
  }
  {
    int defined = 0, bad = 0;
    std::ostringstream detail;
    for (int b = 0; b < deployments; ++b) {
      const auto kappa = Curvature(utility, ground, b);
      if (!kappa) continue;
      ++defined;
      if (!(*kappa >= -kPropertyTolerance && *kappa <= 1.0 + kPropertyTolerance)) {
        if (bad++ == 0) detail << "deployment " << b << " curvature " << *kappa << "; ";
      }
    }
    detail << defined << " deployments with defined curvature, " << bad
           << " outside [0,1]";
    outcomes.push_back({"curvature_in_unit_interval", bad == 0, detail.str()});
  }
  {
    // E_{j~p}[rhat_a(j)] = r_a, computed exactly over the draw.
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int cases = 0;
    double worst = 0.0;
    for (int arms = 2; arms <= 5; ++arms) {
      for (int n = 0; n < std::max(1, trials / 10); ++n, ++cases) {
        std::vector<double> p(arms), r(arms);
        double total = 0.0;
        for (int k = 0; k < arms; ++k) {
          p[k] = 0.05 + unit(rng);
          total += p[k];
          r[k] = unit(rng);
        }
        for (double& x : p) x /= total;
        std::vector<double> expected(arms, 0.0);
        for (int j = 0; j < arms; ++j) {
          const auto rhat = EstimateReward({j, p[j], r[j]}, arms);
          for (int a = 0; a < arms; ++a) expected[a] += p[j] * rhat[a];
        }
        for (int a = 0; a < arms; ++a) {
          worst = std::max(worst, std::abs(expected[a] - r[a]));
        }
      }
    }
    std::ostringstream detail;
    detail << cases << " cases, max |E[rhat] - r| = " << worst;
    outcomes.push_back({"estimator_unbiased", worst <= 1e-12, detail.str()});
  }
  return outcomes;
}

}  // namespace covgame
