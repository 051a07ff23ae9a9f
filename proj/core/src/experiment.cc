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

#include "covgame/experiment.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace covgame {

namespace {

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::ofstream OpenForWrite(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

TrialOutcome RunTrial(const ExperimentSpec& spec,
                      const std::vector<std::int64_t>& checkpoints,
                      NeighborStrategy strategy, int trial) {
  const auto start = std::chrono::steady_clock::now();
  const CoverageIndex index(TrialWorld(spec, trial));

  GameConfig config;
  config.horizon = spec.horizon;
  config.neighbor_strategy = strategy;
  config.master_seed = spec.seed;
  config.trial = static_cast<std::uint64_t>(trial);
  config.snapshot_interval = spec.snapshot_interval;
  config.checkpoints = checkpoints;
  GameResult game = RunGame(index, config);

  TrialOutcome out;
  out.strategy = strategy;
  out.trial = trial;
  out.final_average_utility = game.metrics.running_average.back();
  out.gap_series = DualityGapSeries(game.prefixes, index, spec.enumeration_cap);
  out.final_certificate = out.gap_series.back().certificate;
  out.defender_regret =
      DefenderRegret(game.records, index, spec.enumeration_cap);
  out.attacker_regret = AttackerRegret(game.records, index);
  out.metrics = std::move(game.metrics);
  out.wall_seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  return out;
}

void WriteOutputs(const ExperimentSpec& spec, ExperimentResult& result) {
  const auto& dir = spec.output_dir;
  {
    const auto path = dir / "metrics.csv";
    std::ofstream out = OpenForWrite(path);
    out << kMetricsHeader << '\n';
    for (const TrialOutcome& o : result.outcomes) {
      const std::string_view name = ToString(o.strategy);
      const int flag = o.defender_regret.exact ? 1 : 0;
      const MetricSeries& m = o.metrics;
      for (std::size_t t = 0; t < m.utility.size(); ++t) {
        out << o.trial << ',' << (t + 1) << ',' << name << ','
            << m.deployment[t] << ',' << Num(m.utility[t]) << ','
            << Num(m.running_average[t]) << ','
            << Num(m.attacker_estimated_reward[t]) << ',' << flag << '\n';
      }
    }
    result.files.push_back(path);
  }
  for (NeighborStrategy strategy : spec.strategies) {
    const auto path =
        dir / ("gap_" + std::string(ToString(strategy)) + ".csv");
    std::ofstream out = OpenForWrite(path);
    out << kGapHeader << '\n';
    for (const TrialOutcome& o : result.outcomes) {
      if (o.strategy != strategy) continue;
      for (const GapPoint& g : o.gap_series) {
        const EpsCertificate& c = g.certificate;
        out << o.trial << ',' << g.t << ','
            << Num(c.best_response_value_vs_ybar) << ','
            << Num(c.worst_response_value_vs_xbar) << ','
            << Num(c.payoff_at_pair) << ',' << Num(c.eps_hat) << ','
            << (c.exact ? 1 : 0) << '\n';
      }
    }
    result.files.push_back(path);
  }
  {
    const auto path = dir / "summary.csv";
    std::ofstream out = OpenForWrite(path);
    out << kSummaryHeader << '\n';
    for (const StrategySummary& s : result.summary) {
      out << ToString(s.strategy) << ',' << s.trials << ','
          << Num(s.coverage.mean) << ',' << Num(s.coverage.stderr_) << ','
          << Num(s.eps_hat.mean) << ',' << Num(s.eps_hat.stderr_) << ','
          << (s.eps_exact ? 1 : 0) << ',' << Num(s.defender_regret.mean)
          << ',' << Num(s.defender_regret.stderr_) << ','
          << (s.defender_regret_exact ? 1 : 0) << ','
          << Num(s.attacker_regret.mean) << ','
          << Num(s.attacker_regret.stderr_) << '\n';
    }
    result.files.push_back(path);
  }
}

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::string_view ToString(Scenario scenario) {
  switch (scenario) {
    case Scenario::kFigure2:
      return "figure2";
    case Scenario::kFigure3:
      return "figure3";
    case Scenario::kCustom:
      return "custom";
  }
  return "unknown";
}

std::optional<Scenario> ParseScenario(std::string_view name) {
  for (Scenario s : {Scenario::kFigure2, Scenario::kFigure3, Scenario::kCustom}) {
    if (ToString(s) == name) return s;
  }
  return std::nullopt;
}

ExperimentSpec DefaultSpec(Scenario scenario) {
  ExperimentSpec spec;
  spec.scenario = scenario;
  switch (scenario) {
    case Scenario::kFigure2:
      spec.trials = 20;
      spec.horizon = 15000;
      spec.strategies = {NeighborStrategy::kNeiSel};
      spec.scenario_options = Figure2Defaults();
      break;
    case Scenario::kFigure3:
      spec.trials = 20;
      spec.horizon = 10000;
      spec.strategies = {NeighborStrategy::kNeiSel, NeighborStrategy::kNearest,
                         NeighborStrategy::kRandom, NeighborStrategy::kAll};
      spec.scenario_options = Figure3Defaults();
      break;
    case Scenario::kCustom:
      spec.trials = 1;
      spec.horizon = 1000;
      spec.strategies = {NeighborStrategy::kNeiSel};
      spec.scenario_options = Figure3Defaults();
      break;
  }
  return spec;
}

void ValidateSpec(const ExperimentSpec& spec) {
  std::vector<std::string> problems;
  if (spec.trials < 1) problems.push_back("trials must be >= 1");
  if (spec.horizon < 1) problems.push_back("horizon must be >= 1");
  if (spec.strategies.empty()) problems.push_back("strategies must not be empty");
  if (std::set<NeighborStrategy>(spec.strategies.begin(), spec.strategies.end())
          .size() != spec.strategies.size()) {
    problems.push_back("strategies must be distinct");
  }
  if (spec.snapshot_interval < 0) {
    problems.push_back("snapshot_interval must be >= 0");
  }
  if (spec.workers < 1) problems.push_back("workers must be >= 1");
  if (spec.enumeration_cap < 1) problems.push_back("enumeration_cap must be >= 1");
  if (spec.scenario == Scenario::kCustom && !spec.custom_world) {
    problems.push_back("custom scenario needs a world from a config file");
  }
  if (!problems.empty()) {
    std::string msg = "invalid experiment spec:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw ConfigError(msg);
  }
}

std::vector<std::int64_t> EffectiveCheckpoints(const ExperimentSpec& spec) {
  std::vector<std::int64_t> out = spec.checkpoints.empty()
                                      ? DefaultCheckpoints(spec.horizon)
                                      : spec.checkpoints;
  out.push_back(spec.horizon);
  std::erase_if(out, [&](std::int64_t t) { return t < 1 || t > spec.horizon; });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

WorldConfig TrialWorld(const ExperimentSpec& spec, int trial) {
  if (spec.scenario == Scenario::kCustom) {
    if (!spec.custom_world) throw ConfigError("custom scenario without world");
    return *spec.custom_world;
  }
  return GenerateWorld(
      spec.scenario_options,
      DeriveSeed(spec.seed, {static_cast<std::uint64_t>(trial),
                             static_cast<std::uint64_t>(StreamRole::kWorld)}));
}

MeanStderr Summarize(const std::vector<double>& samples) {
  MeanStderr out;
  if (samples.empty()) return out;
  const double n = static_cast<double>(samples.size());
  for (double v : samples) out.mean += v;
  out.mean /= n;
  if (samples.size() > 1) {
    double ss = 0.0;
    for (double v : samples) ss += (v - out.mean) * (v - out.mean);
    out.stderr_ = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  return out;
}

std::vector<StrategySummary> SummarizeOutcomes(
    const std::vector<TrialOutcome>& outcomes) {
  // Keyed by (strategy, trial) so the result ignores input order.
  std::map<NeighborStrategy, std::map<int, const TrialOutcome*>> grouped;
  for (const TrialOutcome& o : outcomes) grouped[o.strategy][o.trial] = &o;

  std::vector<StrategySummary> summary;
  for (const auto& [strategy, trials] : grouped) {
    StrategySummary s;
    s.strategy = strategy;
    s.trials = static_cast<int>(trials.size());
    std::vector<double> coverage, eps, dreg, areg;
    for (const auto& [trial, o] : trials) {
      coverage.push_back(o->final_average_utility);
      eps.push_back(o->final_certificate.eps_hat);
      dreg.push_back(o->defender_regret.value);
      areg.push_back(o->attacker_regret.value);
      s.eps_exact = s.eps_exact && o->final_certificate.exact;
      s.defender_regret_exact = s.defender_regret_exact && o->defender_regret.exact;
    }
    s.coverage = Summarize(coverage);
    s.eps_hat = Summarize(eps);
    s.defender_regret = Summarize(dreg);
    s.attacker_regret = Summarize(areg);
    summary.push_back(s);
  }
  std::stable_sort(summary.begin(), summary.end(),
                   [](const StrategySummary& a, const StrategySummary& b) {
                     return a.coverage.mean > b.coverage.mean;
                   });
  return summary;
}

ExperimentResult RunExperiment(const ExperimentSpec& spec, bool write_files) {
  ValidateSpec(spec);
  if (write_files) {
    std::error_code ec;
    std::filesystem::create_directories(spec.output_dir, ec);
    // Fail before spending any compute on an unwritable destination.
    OpenForWrite(spec.output_dir / "metrics.csv");
  }
  const std::vector<std::int64_t> checkpoints = EffectiveCheckpoints(spec);

  struct Job {
    NeighborStrategy strategy;
    int trial;
  };
  std::vector<Job> jobs;
  for (NeighborStrategy s : spec.strategies) {
    for (int trial = 0; trial < spec.trials; ++trial) jobs.push_back({s, trial});
  }

  ExperimentResult result;
  result.outcomes.resize(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      try {
        result.outcomes[j] =
            RunTrial(spec, checkpoints, jobs[j].strategy, jobs[j].trial);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int workers =
      std::max(1, std::min<int>(spec.workers, static_cast<int>(jobs.size())));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  result.summary = SummarizeOutcomes(result.outcomes);
  if (write_files) WriteOutputs(spec, result);
  return result;
}

DirectorySummary SummarizeDirectory(const std::filesystem::path& dir) {
  DirectorySummary out;
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    out.warnings.push_back(dir.string() + ": not a directory");
    return out;
  }

  // strategy -> trial -> (round, running average)
  std::map<std::string, std::map<int, std::pair<long long, double>>> coverage;
  const auto metrics_path = dir / "metrics.csv";
  std::ifstream metrics(metrics_path);
  if (!metrics) {
    out.warnings.push_back(metrics_path.string() + ": missing");
  } else {
    std::string line;
    std::getline(metrics, line);
    if (line != kMetricsHeader) {
      out.warnings.push_back(metrics_path.string() + ": unexpected header");
    } else {
      long long line_no = 1, bad = 0;
      while (std::getline(metrics, line)) {
        ++line_no;
        const auto cells = SplitCsv(line);
        try {
          if (cells.size() != 8) throw std::invalid_argument("width");
          const int trial = std::stoi(cells[0]);
          const long long round = std::stoll(cells[1]);
          const double avg = std::stod(cells[5]);
          auto& slot = coverage[cells[2]][trial];
          if (round >= slot.first) slot = {round, avg};
        } catch (const std::exception&) {
          ++bad;
        }
      }
      if (bad > 0) {
        out.warnings.push_back(metrics_path.string() + ": skipped " +
                               std::to_string(bad) + " corrupt rows");
      }
    }
  }

  for (const auto& [strategy, trials] : coverage) {
    SummaryRow row;
    row.strategy = strategy;
    row.trials = static_cast<int>(trials.size());
    std::vector<double> values;
    for (const auto& [trial, last] : trials) values.push_back(last.second);
    row.coverage = Summarize(values);

    const auto gap_path = dir / ("gap_" + strategy + ".csv");
    std::ifstream gap(gap_path);
    if (!gap) {
      out.warnings.push_back(gap_path.string() + ": missing");
    } else {
      std::string line;
      std::getline(gap, line);
      if (line != kGapHeader) {
        out.warnings.push_back(gap_path.string() + ": unexpected header");
      } else {
        std::map<int, std::pair<long long, double>> last;
        long long bad = 0;
        while (std::getline(gap, line)) {
          const auto cells = SplitCsv(line);
          try {
            if (cells.size() != 7) throw std::invalid_argument("width");
            const int trial = std::stoi(cells[0]);
            const long long t = std::stoll(cells[1]);
            const double eps = std::stod(cells[5]);
            auto& slot = last[trial];
            if (t >= slot.first) slot = {t, eps};
          } catch (const std::exception&) {
            ++bad;
          }
        }
        if (bad > 0) {
          out.warnings.push_back(gap_path.string() + ": skipped " +
                                 std::to_string(bad) + " corrupt rows");
        }
        if (!last.empty()) {
          std::vector<double> eps;
          for (const auto& [trial, v] : last) eps.push_back(v.second);
          row.eps_hat = Summarize(eps);
        }
      }
    }
    out.rows.push_back(std::move(row));
  }
  std::stable_sort(out.rows.begin(), out.rows.end(),
                   [](const SummaryRow& a, const SummaryRow& b) {
                     return a.coverage.mean > b.coverage.mean;
                   });
  if (out.rows.empty()) out.warnings.push_back("no results found in " + dir.string());
  return out;
}

}  // namespace covgame
