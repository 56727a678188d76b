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

#include "mcmclab/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace mcmclab::harness {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(trim(item));
  return parts;
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const auto* begin = text.data();
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) throw ConfigError("config: cannot parse '" + text + "' for key '" + key + "'");
  return value;
}

double parse_positive(const std::string& key, const std::string& text) {
  const double v = parse_number<double>(key, text);
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("config: '" + key + "' must be positive");
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError("config: '" + key + "' must be true or false");
}

}  // namespace

std::string ExperimentConfig::experiment_id() const {
  return command == "scaling" ? command + "-" + name : name;
}

void Settings::load(std::istream& in, const std::string& command, const std::string& name) {
  std::string line;
  std::string section;
  int line_no = 0;
  // Apply in precedence order: top level, then [command], then [command.name].
  std::vector<std::pair<std::string, std::string>> top;
  std::vector<std::pair<std::string, std::string>> general;
  std::vector<std::pair<std::string, std::string>> specific;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("config line " + std::to_string(line_no) + ": unterminated section");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    std::pair<std::string, std::string> kv{trim(line.substr(0, eq)), trim(line.substr(eq + 1))};
    if (kv.first.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
    const bool known = std::any_of(known_keys().begin(), known_keys().end(), [&](const auto& k) { return k.first == kv.first; });
    if (!known) throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + kv.first + "'");
    if (section.empty()) {
      top.push_back(std::move(kv));
    } else if (section == command) {
      general.push_back(std::move(kv));
    } else if (section == command + "." + name) {
      specific.push_back(std::move(kv));
    }
  }
  for (const auto* group : {&top, &general, &specific}) {
    for (const auto& [k, v] : *group) values_[k] = v;
  }
}

void Settings::load_file(const std::string& path, const std::string& command, const std::string& name) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  load(in, command, name);
}

void Settings::set(const std::string& key, const std::string& value) { values_[key] = value; }

const std::vector<std::pair<std::string, std::string>>& known_keys() {
  static const std::vector<std::pair<std::string, std::string>> keys = {
      {"seed", "master seed (unsigned integer)"},
      {"dims", "comma-separated dimensions"},
      {"n", "iterations, draws or sweeps; a comma-separated list where the experiment supports several"},
      {"m", "ensemble size"},
      {"gamma", "fixed proposal scale"},
      {"delta", "proposal scale delta / sqrt(d)"},
      {"a", "stretch-move range parameter (> 1)"},
      {"jitter_fraction", "differential-evolution jitter covariance as a fraction of the ensemble covariance"},
      {"burn_in", "leading fraction of each chain to discard, in [0, 1)"},
      {"replicates", "independent repetitions"},
      {"out", "output CSV path"},
      {"jobs", "worker threads"},
      {"budget", "resource guard: max sum of d * n * m * replicates"},
      {"sigma", "per-dimension sd of the isotropic scaling target"},
      {"start", "comma-separated starting point"},
      {"timing", "emit wall_time_s (true/false)"},
  };
  return keys;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& part : split(text, ',')) {
    if (part.empty()) continue;
    out.push_back(parse_number<int>("dims", part));
  }
  return out;
}

ExperimentConfig apply_settings(ExperimentConfig cfg, const Settings& settings) {
  for (const auto& [key, value] : settings.values()) {
    if (key == "seed") {
      cfg.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "dims") {
      cfg.dims = parse_int_list(value);
      if (cfg.dims.empty()) throw ConfigError("config: 'dims' is empty");
      for (const int d : cfg.dims) {
        if (d < 1) throw ConfigError("config: dimensions must be >= 1");
      }
    } else if (key == "n") {
      cfg.n.clear();
      for (const auto& part : split(value, ',')) {
        const auto v = parse_number<long long>(key, part);
        if (v < 1) throw ConfigError("config: 'n' must be >= 1");
        cfg.n.push_back(static_cast<Eigen::Index>(v));
      }
      if (cfg.n.empty()) throw ConfigError("config: 'n' is empty");
    } else if (key == "m") {
      const auto v = parse_number<long long>(key, value);
      if (v < 1) throw ConfigError("config: 'm' must be >= 1");
      cfg.m = static_cast<Eigen::Index>(v);
    } else if (key == "gamma") {
      cfg.gamma = parse_positive(key, value);
    } else if (key == "delta") {
      cfg.delta = parse_positive(key, value);
    } else if (key == "a") {
      cfg.a = parse_number<double>(key, value);
      if (!(cfg.a > 1.0)) throw ConfigError("config: 'a' must exceed 1");
    } else if (key == "jitter_fraction") {
      cfg.jitter_fraction = parse_number<double>(key, value);
      if (!(cfg.jitter_fraction >= 0.0)) throw ConfigError("config: 'jitter_fraction' must be nonnegative");
    } else if (key == "burn_in") {
      cfg.burn_in = parse_number<double>(key, value);
      if (!(cfg.burn_in >= 0.0 && cfg.burn_in < 1.0)) throw ConfigError("config: 'burn_in' must lie in [0, 1)");
    } else if (key == "replicates") {
      cfg.replicates = parse_number<int>(key, value);
      if (cfg.replicates < 1) throw ConfigError("config: 'replicates' must be >= 1");
    } else if (key == "out") {
      cfg.out = value;
    } else if (key == "jobs") {
      cfg.jobs = parse_number<int>(key, value);
      if (cfg.jobs < 1) throw ConfigError("config: 'jobs' must be >= 1");
    } else if (key == "budget") {
      cfg.budget = parse_positive(key, value);
    } else if (key == "sigma") {
      cfg.sigma = parse_positive(key, value);
    } else if (key == "start") {
      const auto parts = split(value, ',');
      Vector start(static_cast<Eigen::Index>(parts.size()));
      for (std::size_t i = 0; i < parts.size(); ++i) start[static_cast<Eigen::Index>(i)] = parse_number<double>(key, parts[i]);
      if (start.size() == 0 || !start.allFinite()) throw ConfigError("config: 'start' must be a finite point");
      cfg.start = start;
    } else if (key == "timing") {
      cfg.timing = parse_bool(key, value);
    } else {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }
  return cfg;
}

std::optional<std::uint64_t> seed_from_environment() {
  const char* raw = std::getenv("MCMCLAB_SEED");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  const std::string text(raw);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) throw ConfigError("MCMCLAB_SEED is not an unsigned integer");
  return value;
}

}  // namespace mcmclab::harness
