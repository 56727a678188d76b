// Copyright 2026 The mcmclab Authors
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

#ifndef MCMCLAB_HARNESS_CONFIG_HPP
#define MCMCLAB_HARNESS_CONFIG_HPP

#include "mcmclab/common.hpp"

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcmclab::harness {

/// Malformed or invalid configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultSeed = 1;

/// Everything an exercise or scaling run needs. Zero / empty members mean "use the
/// experiment's default".
struct ExperimentConfig {
  std::string command;     ///< "exercise" or "scaling"
  std::string name;        ///< exercise name or sampler kind
  std::vector<int> dims;
  std::vector<Eigen::Index> n;  ///< iterations (MH, IS draws) or sweeps (ensembles)
  Eigen::Index m = 100;
  std::optional<double> gamma;  ///< fixed proposal scale
  std::optional<double> delta;  ///< gamma = delta / sqrt(d)
  double a = 2.0;
  double jitter_fraction = 0.2;
  double burn_in = 0.2;
  int replicates = 0;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
  int jobs = 1;
  double budget = 2e9;          ///< max sum over dims of d * n * m * replicates
  double sigma = 1.0;
  std::optional<Vector> start;
  bool timing = true;

  /// Row label: "<command>-<name>" for scaling runs, the exercise name otherwise.
  [[nodiscard]] std::string experiment_id() const;
};

/// Ordered key=value settings. Later assignments win.
class Settings {
 public:
  /// Reads a config file. Top-level keys always apply; keys under [command] and
  /// [command.name] apply to that run, in that order. Other sections are ignored.
  void load(std::istream& in, const std::string& command, const std::string& name);
  void load_file(const std::string& path, const std::string& command, const std::string& name);

  void set(const std::string& key, const std::string& value);
  [[nodiscard]] const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

/// Keys accepted in config files and their meaning, one per line.
const std::vector<std::pair<std::string, std::string>>& known_keys();

/// Applies settings over `base`. Throws ConfigError for unknown keys or invalid values.
ExperimentConfig apply_settings(ExperimentConfig base, const Settings& settings);

/// Master seed from the MCMCLAB_SEED environment variable, if set and valid.
std::optional<std::uint64_t> seed_from_environment();

std::vector<int> parse_int_list(const std::string& text);

}  // namespace mcmclab::harness

#endif  // MCMCLAB_HARNESS_CONFIG_HPP
