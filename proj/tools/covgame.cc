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

// Command-line front end: run experiments, summarize their CSV output, and
// run the property suites against a world.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "covgame/experiment.h"
#include "json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

struct RunArgs {
  std::string scenario;
  std::string config;
  std::optional<int> trials;
  std::optional<std::int64_t> horizon;
  std::vector<std::string> strategies;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<int> workers;
};

struct SummarizeArgs {
  std::string dir;
  bool json = false;
};

struct CheckArgs {
  std::string scenario;
  std::string config;
  int trials = 1000;
  std::optional<std::uint64_t> seed;
};

covgame::Scenario ScenarioOrThrow(const std::string& name) {
  auto scenario = covgame::ParseScenario(name);
  if (!scenario) throw covgame::ConfigError("unknown scenario '" + name + "'");
  return *scenario;
}

covgame::ExperimentSpec BaseSpec(const std::string& config,
                                 const std::string& scenario) {
  if (!config.empty()) {
    covgame::ExperimentSpec spec = covgame::LoadExperimentConfig(config);
    if (!scenario.empty() && ScenarioOrThrow(scenario) != spec.scenario) {
      throw covgame::ConfigError("--scenario conflicts with config file");
    }
    return spec;
  }
  return covgame::DefaultSpec(
      ScenarioOrThrow(scenario.empty() ? "figure2" : scenario));
}

int Run(const RunArgs& args) {
  covgame::ExperimentSpec spec = BaseSpec(args.config, args.scenario);
  if (args.trials) spec.trials = *args.trials;
  if (args.horizon) spec.horizon = *args.horizon;
  if (args.seed) spec.seed = *args.seed;
  if (args.workers) spec.workers = *args.workers;
  if (!args.out.empty()) spec.output_dir = args.out;
  if (!args.strategies.empty()) {
    spec.strategies.clear();
    for (const std::string& name : args.strategies) {
      auto s = covgame::ParseNeighborStrategy(name);
      if (!s) throw covgame::ConfigError("unknown strategy '" + name + "'");
      spec.strategies.push_back(*s);
    }
  }
  covgame::ValidateSpec(spec);

  covgame::ExperimentResult result;
  try {
    result = covgame::RunExperiment(spec);
  } catch (const covgame::ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    std::cerr << "covgame run: " << e.what() << "\n";
    return kExitRuntime;
  }

  double wall = 0.0;
  for (const auto& o : result.outcomes) wall += o.wall_seconds;
  std::printf("%-8s %6s %22s %22s %14s\n", "strategy", "trials",
              "coverage", "eps_hat", "defender_R_T");
  for (const auto& s : result.summary) {
    std::printf("%-8s %6d %10.6f +- %8.6f %10.6f +- %8.6f %14.4f\n",
                std::string(covgame::ToString(s.strategy)).c_str(), s.trials,
                s.coverage.mean, s.coverage.stderr_, s.eps_hat.mean,
                s.eps_hat.stderr_, s.defender_regret.mean);
  }
  std::printf("trial compute time %.2f s\n", wall);
  for (const auto& f : result.files) std::printf("wrote %s\n", f.c_str());
  return kExitOk;
}

int Summarize(const SummarizeArgs& args) {
  const covgame::DirectorySummary summary = covgame::SummarizeDirectory(args.dir);
  for (const auto& w : summary.warnings) std::cerr << "warning: " << w << "\n";
  if (args.json) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : summary.rows) {
      nlohmann::json row = {{"strategy", r.strategy},
                            {"trials", r.trials},
                            {"mean_coverage", r.coverage.mean},
                            {"stderr_coverage", r.coverage.stderr_}};
      if (r.eps_hat) {
        row["mean_eps_hat"] = r.eps_hat->mean;
        row["stderr_eps_hat"] = r.eps_hat->stderr_;
      } else {
        row["mean_eps_hat"] = nullptr;
        row["stderr_eps_hat"] = nullptr;
      }
      rows.push_back(row);
    }
    nlohmann::json doc = {{"rows", rows}, {"warnings", summary.warnings}};
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
  }
  std::printf("%-8s %6s %22s %22s\n", "strategy", "trials", "coverage",
              "eps_hat");
  for (const auto& r : summary.rows) {
    std::string eps = "-";
    if (r.eps_hat) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%10.6f +- %8.6f", r.eps_hat->mean,
                    r.eps_hat->stderr_);
      eps = buf;
    }
    std::printf("%-8s %6d %10.6f +- %8.6f %22s\n", r.strategy.c_str(),
                r.trials, r.coverage.mean, r.coverage.stderr_, eps.c_str());
  }
  return kExitOk;
}

int Check(const CheckArgs& args) {
  covgame::ExperimentSpec spec = BaseSpec(args.config, args.scenario);
  if (args.seed) spec.seed = *args.seed;
  if (args.trials < 1) throw covgame::ConfigError("--trials must be >= 1");
  const covgame::WorldConfig world = covgame::TrialWorld(spec, 0);
  const auto outcomes = covgame::RunPropertySuite(world, args.trials, spec.seed);
  bool all = true;
  for (const auto& o : outcomes) {
    std::printf("%s %s: %s\n", o.passed ? "PASS" : "FAIL", o.name.c_str(),
                o.detail.c_str());
    all = all && o.passed;
  }
  return all ? kExitOk : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adversarial sensor coverage game: experiments and checks"};
  app.require_subcommand(1);

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "Run a Monte Carlo experiment");
  run->add_option("--scenario", run_args.scenario, "figure2, figure3 or custom");
  run->add_option("--config", run_args.config, "INI experiment config")
      ->check(CLI::ExistingFile);
  run->add_option("--trials", run_args.trials, "Monte Carlo trials");
  run->add_option("--horizon", run_args.horizon, "Rounds per trial");
  run->add_option("--strategies", run_args.strategies,
                  "Neighbor strategies: neisel nearest random all")
      ->delimiter(',');
  run->add_option("--seed", run_args.seed, "Master seed");
  run->add_option("--out", run_args.out, "Output directory");
  run->add_option("--workers", run_args.workers, "Worker threads");

  SummarizeArgs summarize_args;
  CLI::App* summarize =
      app.add_subcommand("summarize", "Summarize a directory of run output");
  summarize->add_option("dir", summarize_args.dir, "Run output directory")
      ->required();
  summarize->add_flag("--json", summarize_args.json, "Emit JSON");

  CheckArgs check_args;
  CLI::App* check =
      app.add_subcommand("check", "Run the property suites against a world");
  check->add_option("--scenario", check_args.scenario, "figure2, figure3 or custom");
  check->add_option("--config", check_args.config, "INI experiment config")
      ->check(CLI::ExistingFile);
  check->add_option("--trials", check_args.trials, "Draws per property");
  check->add_option("--seed", check_args.seed, "Seed for world and draws");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run) return Run(run_args);
    if (*summarize) return Summarize(summarize_args);
    return Check(check_args);
  } catch (const covgame::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
