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

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "covgame/experiment.h"

namespace covgame {

namespace {

using boost::property_tree::ptree;

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n\"");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n\"");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> SplitList(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    item = Trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Collects every offending key so one error reports them all.
class KeyErrors {
 public:
  void Add(const std::string& key, const std::string& why) {
    errors_.push_back(key + " (" + why + ")");
  }
  bool empty() const { return errors_.empty(); }
  [[noreturn]] void Throw() const {
    std::string msg = "invalid configuration; offending keys:";
    for (const auto& e : errors_) msg += "\n  " + e;
    throw ConfigError(msg);
  }

 private:
  std::vector<std::string> errors_;
};

template <typename T>
bool ParseNumber(const std::string& text, T& out) {
  const std::string s = Trim(text);
  if constexpr (std::is_floating_point_v<T>) {
    try {
      std::size_t used = 0;
      out = static_cast<T>(std::stod(s, &used));
      return used == s.size();
    } catch (const std::exception&) {
      return false;
    }
  } else {
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
  }
}

class Section {
 public:
  Section(std::string name, const ptree* tree, KeyErrors& errors)
      : name_(std::move(name)), tree_(tree), errors_(errors) {}

  std::optional<std::string> Raw(const std::string& key) {
    seen_.push_back(key);
    if (tree_ == nullptr) return std::nullopt;
    const auto it = tree_->find(key);
    if (it == tree_->not_found()) return std::nullopt;
    return Trim(it->second.data());
  }

  template <typename T>
  void Read(const std::string& key, T& out) {
    if (const auto raw = Raw(key)) {
      T value{};
      if (ParseNumber(*raw, value)) {
        out = value;
      } else {
        errors_.Add(name_ + "." + key, "expected a number, got '" + *raw + "'");
      }
    }
  }

  // Reports keys present in the file but never asked for.
  void RejectUnknown() {
    if (tree_ == nullptr) return;
    for (const auto& [key, value] : *tree_) {
      if (std::find(seen_.begin(), seen_.end(), key) == seen_.end()) {
        errors_.Add(name_ + "." + key, "unknown key");
      }
    }
  }

  const std::string& name() const { return name_; }

 private:
  std::string name_;
  const ptree* tree_;
  KeyErrors& errors_;
  std::vector<std::string> seen_;
};

const ptree* Child(const ptree& root, const std::string& name) {
  const auto it = root.find(name);
  return it == root.not_found() ? nullptr : &it->second;
}

std::vector<Point2> ParsePoints(const std::string& text, bool& ok) {
  std::vector<Point2> points;
  ok = true;
  for (const std::string& item : SplitList(text, ';')) {
    std::string normalized = item;
    std::replace(normalized.begin(), normalized.end(), ',', ' ');
    std::istringstream in(normalized);
    Point2 p;
    std::string extra;
    if (!(in >> p.x >> p.y) || (in >> extra)) {
      ok = false;
      return {};
    }
    points.push_back(p);
  }
  return points;
}

}  // namespace

ExperimentSpec ParseExperimentConfig(std::istream& in) {
  ptree root;
  try {
    boost::property_tree::read_ini(in, root);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }

  KeyErrors errors;
  std::map<int, const ptree*> sensor_sections;
  for (const auto& [name, tree] : root) {
    if (name == "experiment" || name == "world" || name == "deployments") {
      continue;
    }
    int index = -1;
    if (name.rfind("sensors.", 0) == 0 &&
        ParseNumber(name.substr(8), index) && index >= 0) {
      sensor_sections[index] = &tree;
    } else if (tree.empty() && !tree.data().empty()) {
      errors.Add(name, "key outside any section");
    } else {
      errors.Add("[" + name + "]", "unknown section");
    }
  }
  const ptree* deployments_tree = Child(root, "deployments");

  Section experiment("experiment", Child(root, "experiment"), errors);
  std::optional<Scenario> scenario;
  if (const auto raw = experiment.Raw("scenario")) {
    scenario = ParseScenario(*raw);
    if (!scenario) errors.Add("experiment.scenario", "unknown scenario '" + *raw + "'");
  }
  if (!scenario) {
    scenario = (!sensor_sections.empty() || deployments_tree != nullptr)
                   ? Scenario::kCustom
                   : Scenario::kFigure2;
  }
  ExperimentSpec spec = DefaultSpec(*scenario);

  experiment.Read("trials", spec.trials);
  experiment.Read("horizon", spec.horizon);
  experiment.Read("seed", spec.seed);
  experiment.Read("snapshot_interval", spec.snapshot_interval);
  experiment.Read("enumeration_cap", spec.enumeration_cap);
  experiment.Read("workers", spec.workers);
  if (const auto raw = experiment.Raw("strategies")) {
    spec.strategies.clear();
    for (const std::string& name : SplitList(*raw, ',')) {
      if (const auto s = ParseNeighborStrategy(name)) {
        spec.strategies.push_back(*s);
      } else {
        errors.Add("experiment.strategies", "unknown strategy '" + name + "'");
      }
    }
  }
  if (const auto raw = experiment.Raw("checkpoints")) {
    spec.checkpoints.clear();
    for (const std::string& item : SplitList(*raw, ',')) {
      std::int64_t t = 0;
      if (ParseNumber(item, t) && t >= 1) {
        spec.checkpoints.push_back(t);
      } else {
        errors.Add("experiment.checkpoints", "bad checkpoint '" + item + "'");
      }
    }
  }
  if (const auto raw = experiment.Raw("output_dir")) spec.output_dir = *raw;
  experiment.RejectUnknown();

  // [world]: generator knobs, also defaults for explicit sensors.
  ScenarioOptions& opts = spec.scenario_options;
  Section world("world", Child(root, "world"), errors);
  world.Read("width", opts.env_width);
  world.Read("height", opts.env_height);
  world.Read("sensors", opts.num_sensors);
  world.Read("fov_radius", opts.fov_radius);
  world.Read("aov", opts.aov);
  world.Read("comm_range", opts.comm_range);
  world.Read("orientations", opts.orientations);
  if (const auto raw = world.Raw("bandwidth")) {
    opts.bandwidth_choices.clear();
    for (const std::string& item : SplitList(*raw, ',')) {
      int bw = 0;
      if (ParseNumber(item, bw) && bw >= 0) {
        opts.bandwidth_choices.push_back(bw);
      } else {
        errors.Add("world.bandwidth", "bad bandwidth '" + item + "'");
      }
    }
  }
  world.Read("deployments", opts.num_deployments);
  world.Read("targets_per_deployment", opts.targets_per_deployment);
  world.Read("hotspot_fraction", opts.hotspot_fraction);
  world.Read("hotspot_spread", opts.hotspot_spread);
  std::uint64_t world_seed = spec.seed;
  world.Read("seed", world_seed);
  world.RejectUnknown();

  if (*scenario != Scenario::kCustom &&
      (!sensor_sections.empty() || deployments_tree != nullptr)) {
    errors.Add("[sensors.*]/[deployments]",
               "explicit layouts require scenario = custom");
  }

  std::vector<SensorSpec> sensors;
  for (const auto& [k, tree] : sensor_sections) {
    Section section("sensors." + std::to_string(k), tree, errors);
    if (k != static_cast<int>(sensors.size())) {
      errors.Add(section.name(), "sensor sections must be numbered 0..N-1");
    }
    SensorSpec s;
    s.id = static_cast<int>(sensors.size());
    s.fov_radius = opts.fov_radius;
    s.aov = opts.aov;
    s.comm_range = opts.comm_range;
    s.orientations = opts.orientations;
    s.bandwidth = opts.bandwidth_choices.empty() ? 1 : opts.bandwidth_choices[0];
    if (!section.Raw("x") || !section.Raw("y")) {
      errors.Add(section.name(), "x and y are required");
    }
    section.Read("x", s.position.x);
    section.Read("y", s.position.y);
    section.Read("fov_radius", s.fov_radius);
    section.Read("aov", s.aov);
    section.Read("comm_range", s.comm_range);
    section.Read("bandwidth", s.bandwidth);
    section.Read("orientations", s.orientations);
    section.RejectUnknown();
    sensors.push_back(s);
  }

  std::vector<Deployment> deployments;
  if (deployments_tree != nullptr) {
    std::map<int, std::string> by_index;
    for (const auto& [key, value] : *deployments_tree) {
      int b = -1;
      if (key.size() > 1 && key[0] == 'b' && ParseNumber(key.substr(1), b) &&
          b >= 0) {
        by_index[b] = value.data();
      } else {
        errors.Add("deployments." + key, "expected keys b0, b1, ...");
      }
    }
    for (const auto& [b, text] : by_index) {
      if (b != static_cast<int>(deployments.size())) {
        errors.Add("deployments.b" + std::to_string(b),
                   "deployments must be numbered b0..bN-1");
      }
      bool ok = false;
      Deployment d{static_cast<int>(deployments.size()), ParsePoints(text, ok)};
      if (!ok) {
        errors.Add("deployments.b" + std::to_string(b),
                   "expected 'x y; x y; ...'");
      }
      deployments.push_back(std::move(d));
    }
  }

  if (!errors.empty()) errors.Throw();

  if (*scenario == Scenario::kCustom) {
    Rng rng(DeriveSeed(world_seed, {static_cast<std::uint64_t>(StreamRole::kWorld)}));
    if (sensors.empty()) sensors = PlaceSensors(opts, rng);
    if (deployments.empty()) deployments = GenerateDeployments(opts, sensors, rng);
    spec.custom_world.emplace(opts.env_width, opts.env_height,
                              std::move(sensors), std::move(deployments));
  }
  ValidateSpec(spec);
  return spec;
}

ExperimentSpec LoadExperimentConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return ParseExperimentConfig(in);
}

}  // namespace covgame
