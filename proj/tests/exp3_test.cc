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

#include <gtest/gtest.h>

#include <boost/rational.hpp>
#include <cmath>
#include <numeric>

namespace covgame {
namespace {

using Rational = boost::rational<long long>;

TEST(LearningRateTest, AttackerFigureTwoScale) {
  const Exp3State s = Exp3State::Create(20, 15000, BanditKind::kAttacker);
  EXPECT_NEAR(s.eta(), std::sqrt(2.0 * std::log(20.0) / 300000.0), 1e-18);
  EXPECT_NEAR(s.eta(), 4.469e-3, 5e-7);
  EXPECT_EQ(s.direction(), Direction::kLossSeeking);
}

TEST(LearningRateTest, ActionSixteenOrientations) {
  const Exp3State s = Exp3State::Create(16, 10000, BanditKind::kAction);
  EXPECT_DOUBLE_EQ(s.eta(), std::sqrt(2.0 * std::log(16.0) / 160000.0));
  EXPECT_EQ(s.direction(), Direction::kGainSeeking);
  EXPECT_EQ(Exp3State::Create(3, 10, BanditKind::kNeighbor).direction(),
            Direction::kGainSeeking);
}

TEST(LearningRateTest, RejectsZeroArms) {
  EXPECT_THROW(Exp3State::Create(0, 10, BanditKind::kAction),
               std::invalid_argument);
  EXPECT_THROW(Exp3LearningRate(3, 0), std::invalid_argument);
}

TEST(Exp3StateTest, SingleArmStaysDegenerate) {
  Exp3State s = Exp3State::Create(1, 100, BanditKind::kAction);
  Rng rng(1);
  for (int t = 0; t < 100; ++t) {
    const auto d = s.Sample(rng);
    EXPECT_EQ(d.arm, 0);
    EXPECT_EQ(d.probability, 1.0);
    s.Update(EstimateReward({0, 1.0, 0.3}, 1));
    EXPECT_EQ(s.probability(0), 1.0);
  }
}

TEST(Exp3StateTest, UniformInitialization) {
  const Exp3State s = Exp3State::Create(4, 100, BanditKind::kAttacker);
  for (int a = 0; a < 4; ++a) EXPECT_EQ(s.probability(a), 0.25);
  EXPECT_EQ(s.round_count(), 0);
}

TEST(Exp3StateTest, LogWeightsNormalize) {
  Exp3State s(2, 0.1, Direction::kGainSeeking);
  const double lw[] = {std::log(3.0), std::log(1.0)};
  s.SetLogWeights(lw);
  EXPECT_NEAR(s.probability(0), 0.75, 1e-15);
  EXPECT_NEAR(s.probability(1), 0.25, 1e-15);
}

TEST(Exp3StateTest, EqualEstimatesLeaveProbabilitiesUnchanged) {
  Exp3State s(3, 0.5, Direction::kLossSeeking);
  const double lw[] = {0.2, -1.0, 0.7};
  s.SetLogWeights(lw);
  const std::vector<double> before(s.probabilities().begin(),
                                   s.probabilities().end());
  const double flat[] = {0.4, 0.4, 0.4};
  s.Update(flat);
  for (int a = 0; a < 3; ++a) EXPECT_NEAR(s.probability(a), before[a], 1e-15);
  EXPECT_EQ(s.round_count(), 1);
}

TEST(Exp3StateTest, GainSeekingDirectFormula) {
  Exp3State s(2, 1.0, Direction::kGainSeeking);
  const double r[] = {1.0, 0.0};
  s.Update(r);
  const double e = std::exp(1.0);
  EXPECT_NEAR(s.probability(0), e / (e + 1.0), 1e-15);
  EXPECT_NEAR(s.probability(1), 1.0 / (e + 1.0), 1e-15);
}

TEST(Exp3StateTest, LossSeekingMovesTowardSmallEstimate) {
  Exp3State s(2, 1.0, Direction::kLossSeeking);
  const double r[] = {1.0, 0.0};
  s.Update(r);
  EXPECT_GT(s.probability(1), 0.5);
  EXPECT_LT(s.probability(0), 0.5);
}

TEST(Exp3StateTest, SampleFrequenciesMatchProbabilities) {
  Exp3State s(5, 1.0, Direction::kGainSeeking);
  const double lw[] = {0.0, -0.5, -1.0, -2.0, 0.3};
  s.SetLogWeights(lw);
  Rng rng(2);
  const int n = 100000;
  std::vector<int> counts(5, 0);
  for (int i = 0; i < n; ++i) {
    const auto d = s.Sample(rng);
    ASSERT_GT(d.probability, 0.0);
    ASSERT_EQ(d.probability, s.probability(d.arm));
    ++counts[d.arm];
  }
  for (int a = 0; a < 5; ++a) {
    const double p = s.probability(a);
    const double sigma = std::sqrt(n * p * (1.0 - p));
    EXPECT_LE(std::abs(counts[a] - n * p), 4.0 * sigma) << "arm " << a;
  }
}

TEST(Exp3StateTest, SampleSkipsZeroMassArms) {
  Exp3State s(3, 1.0, Direction::kGainSeeking);
  const double lw[] = {-1e6, 0.0, -1e6};
  s.SetLogWeights(lw);
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(s.Sample(rng).arm, 1);
}

TEST(Exp3StateTest, StableOverAMillionUpdates) {
  Exp3State s(8, 0.05, Direction::kGainSeeking);
  Rng rng(4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < 1'000'000; ++t) {
    const auto d = s.Sample(rng);
    // Arm 3 is best on average, which drives the rest toward zero mass.
    const double r = d.arm == 3 ? 0.9 : 0.2 * unit(rng);
    s.Update(EstimateReward({d.arm, d.probability, r}, 8));
    if (t % 1000 == 0 || t == 999'999) {
      double total = 0.0;
      for (double p : s.probabilities()) {
        ASSERT_GE(p, 0.0);
        ASSERT_TRUE(std::isfinite(p));
        total += p;
      }
      ASSERT_NEAR(total, 1.0, 1e-12);
      for (double w : s.log_weights()) ASSERT_TRUE(std::isfinite(w));
    }
  }
  EXPECT_EQ(s.round_count(), 1'000'000);
  EXPECT_GT(s.probability(3), 0.99);
}

TEST(EstimateRewardTest, ZeroLoss) {
  EXPECT_EQ(EstimateReward({0, 0.5, 1.0}, 2), (std::vector<double>{1.0, 1.0}));
}

TEST(EstimateRewardTest, FullLoss) {
  EXPECT_EQ(EstimateReward({0, 0.5, 0.0}, 2), (std::vector<double>{-1.0, 1.0}));
}

TEST(EstimateRewardTest, RejectsBadInputs) {
  EXPECT_THROW(EstimateReward({0, 0.0, 0.5}, 2), std::invalid_argument);
  EXPECT_THROW(EstimateReward({2, 0.5, 0.5}, 2), std::invalid_argument);
  EXPECT_THROW(EstimateReward({-1, 0.5, 0.5}, 2), std::invalid_argument);
}

// Same formula in exact arithmetic: the expectation over the chosen arm.
TEST(EstimateRewardTest, UnbiasedInExactArithmetic) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long long> num(1, 97);
  for (int arms = 2; arms <= 6; ++arms) {
    for (int n = 0; n < 200; ++n) {
      std::vector<Rational> p(arms), r(arms);
      Rational total = 0;
      for (int k = 0; k < arms; ++k) {
        p[k] = Rational(num(rng));
        total += p[k];
        r[k] = Rational(num(rng) - 1, 96);
      }
      for (auto& x : p) x /= total;
      for (int a = 0; a < arms; ++a) {
        Rational expectation = 0;
        for (int j = 0; j < arms; ++j) {
          const Rational rhat =
              (j == a) ? Rational(1) - (Rational(1) - r[j]) / p[j] : Rational(1);
          expectation += p[j] * rhat;
        }
        ASSERT_EQ(expectation, r[a]);
      }
      // And the double implementation agrees with the exact value.
      for (int j = 0; j < arms; ++j) {
        const auto rhat = EstimateReward(
            {j, boost::rational_cast<double>(p[j]),
             boost::rational_cast<double>(r[j])},
            arms);
        const Rational exact = Rational(1) - (Rational(1) - r[j]) / p[j];
        EXPECT_NEAR(rhat[j], boost::rational_cast<double>(exact), 1e-12);
      }
    }
  }
}

// Realized regret of the gain-seeking engine against the best fixed arm.
TEST(Exp3RegretTest, GainSeekingWithinBound) {
  for (int arms : {3, 10}) {
    for (std::int64_t horizon : {500, 5000}) {
      for (int seq = 0; seq < 5; ++seq) {
        std::mt19937_64 rng(1000 * arms + 10 * seq + horizon);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        Exp3State s = Exp3State::Create(arms, horizon, BanditKind::kAction);
        std::vector<double> cumulative(arms, 0.0);
        double earned = 0.0;
        const int good = seq % arms;
        for (std::int64_t t = 0; t < horizon; ++t) {
          std::vector<double> r(arms);
          for (int a = 0; a < arms; ++a) {
            r[a] = (a == good) ? 0.6 + 0.4 * unit(rng) : 0.7 * unit(rng);
            cumulative[a] += r[a];
          }
          const auto d = s.Sample(rng);
          earned += r[d.arm];
          s.Update(EstimateReward({d.arm, d.probability, r[d.arm]}, arms));
        }
        const double regret =
            *std::max_element(cumulative.begin(), cumulative.end()) - earned;
        EXPECT_LE(regret,
                  std::sqrt(2.0 * horizon * arms * std::log(double(arms))));
      }
    }
  }
}

}  // namespace
}  // namespace covgame
