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

// Monte Carlo experiment orchestration: per (strategy, trial) game runs on a
// worker pool, CSV output, and cross-trial summaries.

#ifndef COVGAME_EXPERIMENT_H_
#define COVGAME_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "covgame/coverage_world.h"
#include "covgame/equilibrium.h"
#include "covgame/game_engine.h"
#include "covgame/scenarios.h"

namespace covgame {

enum class Scenario { kFigure2, kFigure3, kCustom };

std::string_view ToString(Scenario scenario);
std::optional<Scenario> ParseScenario(std::string_view name);

struct ExperimentSpec {
  Scenario scenario = Scenario::kFigure2;
  int trials = 20;
  std::int64_t horizon = 15000;
  std::vector<NeighborStrategy> strategies = {NeighborStrategy::kNeiSel};
  std::uint64_t seed = 0;
  std::filesystem::path output_dir = "out";
  // Empty: DefaultCheckpoints(horizon).
  std::vector<std::int64_t> checkpoints;
  int snapshot_interval = 10;
  std::int64_t enumeration_cap = kDefaultEnumerationCap;
  int workers = 1;
  // Generator knobs for figure2 / figure3 worlds (regenerated per trial).
  ScenarioOptions scenario_options = Figure2Defaults();
  // Fixed world shared by every trial of a custom scenario.
  std::optional<WorldConfig> custom_world;
};

// Scenario-appropriate defaults (trials, horizon, strategies, knobs).
ExperimentSpec DefaultSpec(Scenario scenario);

// Validates trials/horizon/strategies and the custom world's presence.
void ValidateSpec(const ExperimentSpec& spec);

// Checkpoints actually used: the spec's grid clipped to [1, horizon] plus
// the horizon, sorted and unique.
std::vector<std::int64_t> EffectiveCheckpoints(const ExperimentSpec& spec);

// World for one trial.
WorldConfig TrialWorld(const ExperimentSpec& spec, int trial);

struct TrialOutcome {
  NeighborStrategy strategy = NeighborStrategy::kNeiSel;
  int trial = 0;
  double final_average_utility = 0.0;
  EpsCertificate final_certificate;
  RegretResult defender_regret;
  RegretResult attacker_regret;
  double wall_seconds = 0.0;
  MetricSeries metrics;
  std::vector<GapPoint> gap_series;
};

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
};

// Sample mean and standard error (n - 1 denominator; 0 for one sample).
MeanStderr Summarize(const std::vector<double>& samples);

struct StrategySummary {
  NeighborStrategy strategy = NeighborStrategy::kNeiSel;
  int trials = 0;
  MeanStderr coverage;
  MeanStderr eps_hat;
  bool eps_exact = true;
  MeanStderr defender_regret;
  bool defender_regret_exact = true;
  MeanStderr attacker_regret;
};

struct ExperimentResult {
  // Ordered by (strategy position in the spec, trial).
  std::vector<TrialOutcome> outcomes;
  // Sorted by mean coverage, best first.
  std::vector<StrategySummary> summary;
  std::vector<std::filesystem::path> files;
};

// Runs every (strategy, trial) pair. When write_files is set the output
// directory receives metrics.csv, gap_<strategy>.csv and summary.csv.
// Throws std::runtime_error if the output directory is not writable.
ExperimentResult RunExperiment(const ExperimentSpec& spec,
                               bool write_files = true);

std::vector<StrategySummary> SummarizeOutcomes(
    const std::vector<TrialOutcome>& outcomes);

// Exact column orders of the CSV files.
inline constexpr std::string_view kMetricsHeader =
    "trial,round,strategy,deployment_id,utility,running_avg_utility,"
    "attacker_estimated_reward,defender_regret_to_date_flag";
inline constexpr std::string_view kGapHeader =
    "trial,checkpoint_t,best_response,worst_response,payoff_at_pair,eps_hat,"
    "exact";
inline constexpr std::string_view kSummaryHeader =
    "strategy,trials,mean_coverage,stderr_coverage,mean_eps_hat,"
    "stderr_eps_hat,eps_exact,mean_defender_regret,stderr_defender_regret,"
    "defender_regret_exact,mean_attacker_regret,stderr_attacker_regret";

// Per-strategy table rebuilt from a results directory.
struct SummaryRow {
  std::string strategy;
  int trials = 0;
  MeanStderr coverage;
  std::optional<MeanStderr> eps_hat;
};

struct DirectorySummary {
  std::vector<SummaryRow> rows;
  std::vector<std::string> warnings;
};

// Reads metrics.csv and gap_*.csv. Missing or corrupt files become
// warnings; whatever could be read is still summarized.
DirectorySummary SummarizeDirectory(const std::filesystem::path& dir);

// -- Config files ---------------------------------------------------------------
//
// INI-style document with sections [experiment], [world], [sensors.<k>] and
// [deployments]. Unknown sections or keys are rejected with a ConfigError
// naming every offending key.

ExperimentSpec ParseExperimentConfig(std::istream& in);
ExperimentSpec LoadExperimentConfig(const std::filesystem::path& path);

// -- Property suite -------------------------------------------------------------

struct CheckOutcome {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Submodularity, 2nd-order submodularity, VoC submodularity in the
// neighbor set, curvature range and estimator unbiasedness on one world.
std::vector<CheckOutcome> RunPropertySuite(const WorldConfig& world,
                                           int trials, std::uint64_t seed);

}  // namespace covgame

#endif  // COVGAME_EXPERIMENT_H_
