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

#include "covgame/equilibrium.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "covgame/game_engine.h"
#include "covgame/scenarios.h"
#include "matrix_game_oracle.h"
#include "test_support.h"

namespace covgame {
namespace {

using testing::MakeSensor;
using testing::RandomWorld;

std::vector<std::vector<double>> RandomDistributions(const WorldConfig& w,
                                                     Rng& rng) {
  std::vector<std::vector<double>> out;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const SensorSpec& s : w.sensors()) {
    std::vector<double> p(s.orientations);
    double total = 0.0;
    for (double& x : p) total += (x = unit(rng) * unit(rng));
    for (double& x : p) x /= total;
    out.push_back(p);
  }
  return out;
}

// Matching pennies as a coverage world: one sensor, east or west.
WorldConfig Pennies() {
  return WorldConfig(20, 20, {MakeSensor(0, {10, 10}, 2)},
                     {{0, {{13, 10}}}, {1, {{7, 10}}}});
}

TEST(ExpectedUtilityProductTest, DeterministicAgentsGiveUtility) {
  Rng rng(1);
  for (int n = 0; n < 100; ++n) {
    const WorldConfig w = RandomWorld(rng);
    const CoverageIndex index(w);
    testing::ForEachJointAction(w, [&](const std::vector<int>& joint) {
      std::vector<std::vector<double>> p;
      for (int i = 0; i < w.num_agents(); ++i) {
        p.emplace_back(w.sensor(i).orientations, 0.0);
        p.back()[joint[i]] = 1.0;
      }
      ASSERT_DOUBLE_EQ(ExpectedUtilityProduct(index, p, 0),
                       index.Utility(std::span<const int>(joint), 0));
    });
  }
}

TEST(ExpectedUtilityProductTest, IndependentCoverageEvents) {
  // Both sensors see the single target in one of their two orientations.
  const WorldConfig w(20, 20,
                      {MakeSensor(0, {8, 10}, 2), MakeSensor(1, {12, 10}, 2)},
                      {{0, {{10, 10}}}});
  const CoverageIndex index(w);
  const std::vector<std::vector<double>> p = {{0.5, 0.5}, {0.5, 0.5}};
  EXPECT_DOUBLE_EQ(ExpectedUtilityProduct(index, p, 0), 0.75);
}

TEST(ExpectedUtilityProductTest, MatchesJointEnumeration) {
  Rng rng(2);
  for (int n = 0; n < 100; ++n) {
    const WorldConfig w = RandomWorld(rng);
    const CoverageIndex index(w);
    const auto p = RandomDistributions(w, rng);
    for (int b = 0; b < w.num_deployments(); ++b) {
      double expected = 0.0;
      testing::ForEachJointAction(w, [&](const std::vector<int>& joint) {
        double prob = 1.0;
        for (int i = 0; i < w.num_agents(); ++i) prob *= p[i][joint[i]];
        expected += prob * index.Utility(std::span<const int>(joint), b);
      });
      EXPECT_NEAR(ExpectedUtilityProduct(index, p, b), expected, 1e-12);
    }
  }
}

TEST(ExpectedUtilityProductTest, MonteCarloAgreement) {
  Rng rng(3);
  const WorldConfig w = RandomWorld(rng, {.min_agents = 3});
  const CoverageIndex index(w);
  const auto p = RandomDistributions(w, rng);
  const int samples = 100000;
  std::vector<std::discrete_distribution<int>> draw;
  for (const auto& pi : p) draw.emplace_back(pi.begin(), pi.end());
  std::vector<int> joint(w.num_agents());
  double covered = 0.0;
  for (int s = 0; s < samples; ++s) {
    for (int i = 0; i < w.num_agents(); ++i) joint[i] = draw[i](rng);
    covered += index.Utility(std::span<const int>(joint), 0) * w.target_count();
  }
  const double exact = ExpectedUtilityProduct(index, p, 0);
  const double n = static_cast<double>(samples) * w.target_count();
  const double sigma = std::sqrt(n * exact * (1.0 - exact));
  EXPECT_LE(std::abs(covered - n * exact), 4.0 * sigma + 1e-9);
}

TEST(ExpectedUtilityProductTest, MonotoneInCoveringMass) {
  Rng rng(4);
  for (int n = 0; n < 200; ++n) {
    const WorldConfig w = RandomWorld(rng);
    const CoverageIndex index(w);
    auto p = RandomDistributions(w, rng);
    const SensorSpec& s = w.sensor(0);
    // Find k_small whose coverage is contained in k_big's.
    for (int small = 0; small < s.orientations; ++small) {
      for (int big = 0; big < s.orientations; ++big) {
        const TargetSet& a = index.Covered(0, 0, small);
        const TargetSet& c = index.Covered(0, 0, big);
        if (small == big || a.CountMinus(c) != 0) continue;
        auto q = p;
        const double moved = q[0][small] * 0.5;
        q[0][small] -= moved;
        q[0][big] += moved;
        EXPECT_GE(ExpectedUtilityProduct(index, q, 0) + 1e-15,
                  ExpectedUtilityProduct(index, p, 0));
      }
    }
  }
}

AveragedStrategies Averages(std::vector<double> attacker,
                            std::vector<std::vector<double>> defender,
                            const CoverageIndex& index) {
  AveragedStrategies avg;
  avg.rounds = 1;
  avg.attacker_sum = attacker;
  avg.defender_marginal_sums = defender;
  for (int b = 0; b < index.num_deployments(); ++b) {
    avg.deployment_value_sums.push_back(
        ExpectedUtilityProduct(index, defender, b));
  }
  return avg;
}

TEST(EpsCertificateTest, MatchingPenniesAtUniformIsExact) {
  const CoverageIndex index(Pennies());
  const auto cert =
      ComputeEpsCertificate(Averages({0.5, 0.5}, {{0.5, 0.5}}, index), index);
  EXPECT_DOUBLE_EQ(cert.best_response_value_vs_ybar, 0.5);
  EXPECT_DOUBLE_EQ(cert.worst_response_value_vs_xbar, 0.5);
  EXPECT_DOUBLE_EQ(cert.payoff_at_pair, 0.5);
  EXPECT_DOUBLE_EQ(cert.eps_hat, 0.0);
  EXPECT_TRUE(cert.exact);
}

TEST(EpsCertificateTest, DominatedDefenderHasPositiveGap) {
  // Orientation 1 covers nothing in either deployment.
  const WorldConfig w(20, 20, {MakeSensor(0, {10, 10}, 2)},
                      {{0, {{13, 10}}}, {1, {{12, 10.5}}}});
  const CoverageIndex index(w);
  const auto cert =
      ComputeEpsCertificate(Averages({0.5, 0.5}, {{0.1, 0.9}}, index), index);
  EXPECT_GT(cert.eps_hat, 0.5);
  EXPECT_EQ(cert.best_response, (std::vector<int>{0}));
}

TEST(EpsCertificateTest, RejectsEmptyAverages) {
  const CoverageIndex index(Pennies());
  EXPECT_THROW(ComputeEpsCertificate(AveragedStrategies{}, index),
               std::invalid_argument);
}

TEST(EpsCertificateTest, OrderedAndSandwichesGameValue) {
  Rng rng(5);
  for (int n = 0; n < 15; ++n) {
    const WorldConfig w =
        RandomWorld(rng, {.max_agents = 2, .max_orientations = 4});
    const CoverageIndex index(w);
    const MatrixGameSolution v = GameValue(index, 1e-3, 2'000'000);
    ASSERT_LE(v.gap, 1e-3);
    GameConfig c;
    c.horizon = 400;
    c.master_seed = n;
    c.checkpoints = DefaultCheckpoints(400);
    const GameResult r = RunGame(index, c);
    for (const GapPoint& g : DualityGapSeries(r.prefixes, index)) {
      const EpsCertificate& e = g.certificate;
      ASSERT_TRUE(e.exact);
      EXPECT_GE(e.eps_hat, -1e-12);
      EXPECT_LE(e.worst_response_value_vs_xbar, e.payoff_at_pair + 1e-12);
      EXPECT_LE(e.payoff_at_pair, e.best_response_value_vs_ybar + 1e-12);
      EXPECT_LE(e.worst_response_value_vs_xbar, v.value + 1e-3);
      EXPECT_GE(e.best_response_value_vs_ybar, v.value - 1e-3);
    }
  }
}

TEST(EpsCertificateTest, SurrogateBeyondCap) {
  const CoverageIndex index(GenerateFigure2World(6));
  GameConfig c;
  c.horizon = 50;
  c.checkpoints = {50};
  const GameResult r = RunGame(index, c);
  const auto exact = ComputeEpsCertificate(r.averages, index);
  const auto greedy = ComputeEpsCertificate(r.averages, index, 100);
  EXPECT_TRUE(exact.exact);
  EXPECT_FALSE(greedy.exact);
  EXPECT_LE(greedy.best_response_value_vs_ybar,
            exact.best_response_value_vs_ybar + 1e-12);
}

TEST(DualityGapSeriesTest, FirstPrefixIsSingleRound) {
  const CoverageIndex index(GenerateFigure2World(7));
  GameConfig c;
  c.horizon = 20;
  c.snapshot_interval = 1;
  c.checkpoints = {1, 20};
  const GameResult r = RunGame(index, c);
  const auto series = DualityGapSeries(r.prefixes, index);
  ASSERT_EQ(series.size(), 2u);
  EXPECT_EQ(series[0].t, 1);
  EXPECT_EQ(series[1].t, 20);
  const RoundRecord& first = r.records.front();
  const auto single = ComputeEpsCertificate(
      Averages(*first.attacker_distribution, *first.defender_distributions,
               index),
      index);
  EXPECT_DOUBLE_EQ(series[0].certificate.eps_hat, single.eps_hat);
  EXPECT_DOUBLE_EQ(series[0].certificate.payoff_at_pair, single.payoff_at_pair);
}

TEST(DualityGapSeriesTest, Reproducible) {
  const CoverageIndex index(GenerateFigure2World(8));
  GameConfig c;
  c.horizon = 300;
  c.master_seed = 8;
  c.checkpoints = DefaultCheckpoints(300);
  const auto a = DualityGapSeries(RunGame(index, c).prefixes, index);
  const auto b = DualityGapSeries(RunGame(index, c).prefixes, index);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].t, b[i].t);
    EXPECT_EQ(a[i].certificate.eps_hat, b[i].certificate.eps_hat);
  }
}

TEST(DualityGapSeriesTest, FigureTwoCertificatesAreExactAndNonnegative) {
  for (int trial = 0; trial < 3; ++trial) {
    const CoverageIndex index(GenerateFigure2World(
        DeriveSeed(2026, {static_cast<std::uint64_t>(trial),
                          static_cast<std::uint64_t>(StreamRole::kWorld)})));
    GameConfig c;
    c.horizon = 3000;
    c.master_seed = 2026;
    c.trial = trial;
    c.keep_records = false;
    c.checkpoints = DefaultCheckpoints(3000);
    const auto series = DualityGapSeries(RunGame(index, c).prefixes, index);
    ASSERT_EQ(series.size(), c.checkpoints.size());
    for (const auto& g : series) {
      EXPECT_TRUE(g.certificate.exact);
      EXPECT_GE(g.certificate.eps_hat, 0.0);
      EXPECT_LE(g.certificate.worst_response_value_vs_xbar,
                g.certificate.payoff_at_pair + 1e-12);
      EXPECT_LE(g.certificate.payoff_at_pair,
                g.certificate.best_response_value_vs_ybar + 1e-12);
    }
  }
}

TEST(DefaultCheckpointsTest, GeometricPlusHorizon) {
  EXPECT_EQ(DefaultCheckpoints(1), (std::vector<std::int64_t>{1}));
  EXPECT_EQ(DefaultCheckpoints(10), (std::vector<std::int64_t>{1, 2, 4, 8, 10}));
  EXPECT_EQ(DefaultCheckpoints(8), (std::vector<std::int64_t>{1, 2, 4, 8}));
}

TEST(SolveMatrixGameTest, MatchingPennies) {
  const auto s = SolveMatrixGame({{1, 0}, {0, 1}}, 1e-4, 10'000'000);
  EXPECT_NEAR(s.value, 0.5, 1e-3);
  EXPECT_LE(s.gap, 1e-4);
  EXPECT_LE(s.lower, s.upper);
}

TEST(SolveMatrixGameTest, ConstantMatrixStopsImmediately) {
  const auto s = SolveMatrixGame({{0.3, 0.3}, {0.3, 0.3}, {0.3, 0.3}}, 1e-9, 100);
  EXPECT_DOUBLE_EQ(s.value, 0.3);
  EXPECT_EQ(s.gap, 0.0);
  EXPECT_EQ(s.iterations, 1);
}

TEST(SolveMatrixGameTest, DominantRow) {
  // Row 1 dominates; the column player then picks its smallest entry.
  const auto s = SolveMatrixGame({{0.1, 0.4, 0.2}, {0.6, 0.9, 0.5}}, 1e-4,
                                 10'000'000);
  EXPECT_NEAR(s.value, 0.5, 1e-3);
  EXPECT_GT(s.row_strategy[1], 0.95);
}

TEST(SolveMatrixGameTest, FrozenGamesAgreeWithOracle) {
  for (const auto& game : testing::FrozenThreeByThreeGames()) {
    const auto oracle = testing::SupportEnumerationValue(game.payoff);
    ASSERT_TRUE(oracle.has_value());
    EXPECT_NEAR(*oracle, game.value, 1e-9);
    std::vector<double> flat;
    for (const auto& row : game.payoff) flat.insert(flat.end(), row.begin(), row.end());
    const auto s = SolveMatrixGame(PayoffMatrix(3, 3, flat), 1e-3, 100'000'000);
    EXPECT_LE(s.gap, 1e-3);
    EXPECT_NEAR(s.value, *oracle, 1e-3);
    EXPECT_LE(s.lower, *oracle + 1e-12);
    EXPECT_GE(s.upper, *oracle - 1e-12);
  }
}

TEST(SolveMatrixGameTest, RandomGamesAgreeWithOracle) {
  Rng rng(9);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int n = 0; n < 20; ++n) {
    const int rows = 2 + n % 3, cols = 2 + (n / 3) % 3;
    testing::Matrix g(rows, std::vector<double>(cols));
    std::vector<double> flat;
    for (auto& row : g) {
      for (double& x : row) flat.push_back(x = unit(rng));
    }
    const auto oracle = testing::SupportEnumerationValue(g);
    ASSERT_TRUE(oracle.has_value());
    const auto s = SolveMatrixGame(PayoffMatrix(rows, cols, flat), 1e-3,
                                   100'000'000);
    EXPECT_NEAR(s.value, *oracle, 1e-3);
  }
}

TEST(PayoffMatrixTest, RejectsBadShapes) {
  EXPECT_THROW(PayoffMatrix(2, 2, {1, 2, 3}), std::invalid_argument);
  EXPECT_THROW(PayoffMatrix({{1, 2}, {3}}), std::invalid_argument);
}

TEST(BuildPayoffMatrixTest, OdometerOrderAgentZeroFastest) {
  Rng rng(10);
  const WorldConfig w = RandomWorld(rng, {.min_agents = 2, .max_agents = 3});
  const CoverageIndex index(w);
  const PayoffMatrix g = BuildPayoffMatrix(index);
  int row = 0;
  testing::ForEachJointAction(w, [&](const std::vector<int>& joint) {
    for (int b = 0; b < w.num_deployments(); ++b) {
      ASSERT_EQ(g(row, b), index.Utility(std::span<const int>(joint), b));
    }
    ++row;
  });
  EXPECT_EQ(row, g.rows());
}

TEST(BuildPayoffMatrixTest, RefusesAboveCap) {
  const CoverageIndex index(GenerateFigure2World(11));
  EXPECT_THROW(BuildPayoffMatrix(index, 4095), std::length_error);
  EXPECT_THROW(GameValue(index, 1e-3, 10, 100), std::length_error);
  EXPECT_EQ(BuildPayoffMatrix(index, 4096).rows(), 4096);
}

TEST(GameValueTest, PenniesWorld) {
  const CoverageIndex index(Pennies());
  EXPECT_NEAR(GameValue(index, 1e-4, 10'000'000).value, 0.5, 1e-3);
}

}  // namespace
}  // namespace covgame
