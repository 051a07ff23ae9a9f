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

// Equilibrium diagnostics: closed-form payoffs of product strategies, the
// epsilon-NE certificate of averaged strategies, and a Hedge self-play
// solver for small explicit payoff matrices.

#ifndef COVGAME_EQUILIBRIUM_H_
#define COVGAME_EQUILIBRIUM_H_

#include <cstdint>
#include <span>
#include <vector>

#include "covgame/coverage_world.h"
#include "covgame/game_engine.h"

namespace covgame {

// E_{A ~ prod_i p_i} f(A, b)
//   = (1/m) sum_j [1 - prod_i (1 - Pr_{a ~ p_i}[i covers j])].
double ExpectedUtilityProduct(const CoverageIndex& index,
                              std::span<const std::vector<double>> distributions,
                              int deployment);

struct EpsCertificate {
  double best_response_value_vs_ybar = 0.0;  // max_A sum_b ybar_b f(A, b)
  double worst_response_value_vs_xbar = 0.0;  // min_b S_b / T
  double payoff_at_pair = 0.0;  // sum_b ybar_b S_b / T
  double eps_hat = 0.0;
  // False when the defender best response is the greedy surrogate.
  bool exact = true;
  std::vector<int> best_response;
  int worst_response = 0;
};

EpsCertificate ComputeEpsCertificate(
    const AveragedStrategies& averages, const CoverageIndex& index,
    std::int64_t enumeration_cap = kDefaultEnumerationCap);

struct GapPoint {
  std::int64_t t = 0;
  EpsCertificate certificate;
};

std::vector<GapPoint> DualityGapSeries(
    std::span<const AveragedStrategies> prefixes, const CoverageIndex& index,
    std::int64_t enumeration_cap = kDefaultEnumerationCap);

// {1, 2, 4, ...} up to horizon, plus horizon itself.
std::vector<std::int64_t> DefaultCheckpoints(std::int64_t horizon);

// Row player maximizes, column player minimizes.
class PayoffMatrix {
 public:
  PayoffMatrix(int rows, int cols, std::vector<double> values);
  PayoffMatrix(std::initializer_list<std::initializer_list<double>> rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double operator()(int r, int c) const {
    return values_[static_cast<std::size_t>(r) * cols_ + c];
  }

 private:
  int rows_;
  int cols_;
  std::vector<double> values_;
};

struct MatrixGameSolution {
  double value = 0.0;  // midpoint of the certified bracket
  double lower = 0.0;  // min_c (xbar^T G)_c
  double upper = 0.0;  // max_r (G ybar)_r
  double gap = 0.0;
  std::int64_t iterations = 0;
  std::vector<double> row_strategy;
  std::vector<double> col_strategy;
};

// Full-information Hedge self-play with rate sqrt(ln K / t), stopping once
// the primal-dual gap is <= tolerance or after max_iters iterations.
MatrixGameSolution SolveMatrixGame(const PayoffMatrix& game, double tolerance,
                                   std::int64_t max_iters);

// G with G[A][b] = f(A, b); joint actions in odometer order (agent 0
// fastest). Throws std::length_error above the enumeration cap.
PayoffMatrix BuildPayoffMatrix(const CoverageIndex& index,
                               std::int64_t enumeration_cap =
                                   kDefaultEnumerationCap);

MatrixGameSolution GameValue(const CoverageIndex& index, double tolerance,
                             std::int64_t max_iters,
                             std::int64_t enumeration_cap =
                                 kDefaultEnumerationCap);

}  // namespace covgame

#endif  // COVGAME_EQUILIBRIUM_H_
