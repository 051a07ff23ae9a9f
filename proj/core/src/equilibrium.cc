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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace covgame {

double ExpectedUtilityProduct(const CoverageIndex& index,
                              std::span<const std::vector<double>> distributions,
                              int deployment) {
  const int m = index.target_count();
  double covered = 0.0;
  for (int j = 0; j < m; ++j) {
    double miss = 1.0;
    for (const CoverageIndex::Coverer& c : index.CoverersOf(deployment, j)) {
      const std::vector<double>& p = distributions[c.agent];
      double hit = 0.0;
      for (int k : c.orientations) hit += p[k];
      miss *= 1.0 - hit;
    }
    covered += 1.0 - miss;
  }
  return covered / m;
}

EpsCertificate ComputeEpsCertificate(const AveragedStrategies& averages,
                                     const CoverageIndex& index,
                                     std::int64_t enumeration_cap) {
  if (averages.rounds < 1) {
    throw std::invalid_argument("certificate needs at least one round");
  }
  const double rounds = static_cast<double>(averages.rounds);
  const std::vector<double> ybar = averages.AttackerAverage();

  EpsCertificate cert;
  const WeightedCoverageOptimum best =
      MaximizeWeightedCoverage(index, ybar, enumeration_cap);
  cert.best_response_value_vs_ybar = best.value;
  cert.best_response = best.joint_action;
  cert.exact = best.exact;

  const auto& sums = averages.deployment_value_sums;
  const auto worst = std::min_element(sums.begin(), sums.end());
  cert.worst_response = static_cast<int>(worst - sums.begin());
  cert.worst_response_value_vs_xbar = *worst / rounds;

  double pair = 0.0;
  for (std::size_t b = 0; b < sums.size(); ++b) pair += ybar[b] * sums[b];
  cert.payoff_at_pair = pair / rounds;
  cert.eps_hat =
      cert.best_response_value_vs_ybar - cert.worst_response_value_vs_xbar;
  return cert;
}

std::vector<GapPoint> DualityGapSeries(
    std::span<const AveragedStrategies> prefixes, const CoverageIndex& index,
    std::int64_t enumeration_cap) {
  std::vector<GapPoint> series;
  series.reserve(prefixes.size());
  for (const AveragedStrategies& prefix : prefixes) {
    series.push_back(
        {prefix.rounds, ComputeEpsCertificate(prefix, index, enumeration_cap)});
  }
  return series;
}

std::vector<std::int64_t> DefaultCheckpoints(std::int64_t horizon) {
  std::vector<std::int64_t> out;
  for (std::int64_t t = 1; t < horizon; t *= 2) out.push_back(t);
  out.push_back(horizon);
  return out;
}

// -- Matrix games -------------------------------------------------------------

PayoffMatrix::PayoffMatrix(int rows, int cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (rows_ < 1 || cols_ < 1 ||
      values_.size() != static_cast<std::size_t>(rows_) * cols_) {
    throw std::invalid_argument("payoff matrix shape mismatch");
  }
}

PayoffMatrix::PayoffMatrix(
    std::initializer_list<std::initializer_list<double>> rows)
    : rows_(static_cast<int>(rows.size())),
      cols_(rows.size() ? static_cast<int>(rows.begin()->size()) : 0) {
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != cols_) {
      throw std::invalid_argument("ragged payoff matrix");
    }
    values_.insert(values_.end(), row.begin(), row.end());
  }
  if (rows_ < 1 || cols_ < 1) throw std::invalid_argument("empty matrix");
}

namespace {

// Softmax of scale * scores into out.
void ExpWeights(const std::vector<double>& scores, double scale,
                std::vector<double>& out) {
  double top = -std::numeric_limits<double>::infinity();
  for (double s : scores) top = std::max(top, scale * s);
  double total = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    out[i] = std::exp(scale * scores[i] - top);
    total += out[i];
  }
  for (double& v : out) v /= total;
}

}  // namespace

MatrixGameSolution SolveMatrixGame(const PayoffMatrix& game, double tolerance,
                                   std::int64_t max_iters) {
  const int rows = game.rows();
  const int cols = game.cols();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      lo = std::min(lo, game(r, c));
      hi = std::max(hi, game(r, c));
    }
  }
  const double range = hi > lo ? hi - lo : 1.0;

  std::vector<double> x(rows), y(cols);
  // Cumulative payoffs: row_score = sum_s G y_s, col_score = sum_s x_s^T G.
  std::vector<double> row_score(rows, 0.0), col_score(cols, 0.0);
  std::vector<double> x_sum(rows, 0.0), y_sum(cols, 0.0);

  MatrixGameSolution sol;
  const std::int64_t iters = std::max<std::int64_t>(max_iters, 1);
  for (std::int64_t t = 1; t <= iters; ++t) {
    const double td = static_cast<double>(t);
    ExpWeights(row_score, std::sqrt(std::log(rows) / td) / range, x);
    ExpWeights(col_score, -std::sqrt(std::log(cols) / td) / range, y);
    for (int r = 0; r < rows; ++r) x_sum[r] += x[r];
    for (int c = 0; c < cols; ++c) y_sum[c] += y[c];
    for (int r = 0; r < rows; ++r) {
      double v = 0.0;
      for (int c = 0; c < cols; ++c) v += game(r, c) * y[c];
      row_score[r] += v;
    }
    for (int c = 0; c < cols; ++c) {
      double v = 0.0;
      for (int r = 0; r < rows; ++r) v += x[r] * game(r, c);
      col_score[c] += v;
    }
    // G ybar = row_score / t and xbar^T G = col_score / t.
    sol.upper = *std::max_element(row_score.begin(), row_score.end()) / td;
    sol.lower = *std::min_element(col_score.begin(), col_score.end()) / td;
    sol.gap = sol.upper - sol.lower;
    sol.iterations = t;
    if (sol.gap <= tolerance) break;
  }
  const double n = static_cast<double>(sol.iterations);
  sol.row_strategy.resize(rows);
  sol.col_strategy.resize(cols);
  for (int r = 0; r < rows; ++r) sol.row_strategy[r] = x_sum[r] / n;
  for (int c = 0; c < cols; ++c) sol.col_strategy[c] = y_sum[c] / n;
  sol.value = 0.5 * (sol.upper + sol.lower);
  return sol;
}

PayoffMatrix BuildPayoffMatrix(const CoverageIndex& index,
                               std::int64_t enumeration_cap) {
  const std::int64_t count = index.world().JointActionCount();
  if (count > enumeration_cap) {
    throw std::length_error(
        "joint action space exceeds the enumeration cap; refusing to build "
        "the payoff matrix");
  }
  const int n = index.num_agents();
  const int cols = index.num_deployments();
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(count) * cols);
  std::vector<int> joint(n, 0);
  for (std::int64_t row = 0; row < count; ++row) {
    for (int b = 0; b < cols; ++b) {
      values.push_back(index.Utility(std::span<const int>(joint), b));
    }
    for (int i = 0; i < n; ++i) {
      if (++joint[i] < index.orientations(i)) break;
      joint[i] = 0;
    }
  }
  return PayoffMatrix(static_cast<int>(count), cols, std::move(values));
}

MatrixGameSolution GameValue(const CoverageIndex& index, double tolerance,
                             std::int64_t max_iters,
                             std::int64_t enumeration_cap) {
  return SolveMatrixGame(BuildPayoffMatrix(index, enumeration_cap), tolerance,
                         max_iters);
}

}  // namespace covgame
