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

#include "mcmclab/common.hpp"
#include "mcmclab/harness/config.hpp"
#include "mcmclab/harness/csv.hpp"
#include "mcmclab/harness/experiments.hpp"
#include "mcmclab/harness/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace mcmclab;
using namespace mcmclab::harness;

constexpr int kExitConfig = 2;
constexpr int kExitResource = 3;
constexpr int kExitNumerical = 4;

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
};

/// Flag values override config-file values, which override defaults.
ExperimentConfig resolve(const std::string& command, const std::string& name, const CommonFlags& flags,
                         const Settings& overrides) {
  Settings settings;
  if (!flags.config.empty()) settings.load_file(flags.config, command, name);
  for (const auto& [key, value] : overrides.values()) settings.set(key, value);
  ExperimentConfig base;
  base.command = command;
  base.name = name;
  if (auto env = seed_from_environment()) base.seed = *env;
  ExperimentConfig cfg = apply_settings(base, settings);
  if (flags.seed) cfg.seed = *flags.seed;
  if (!flags.out.empty()) cfg.out = flags.out;
  return cfg;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream file(path);
  if (!file) throw ConfigError("cannot write '" + path + "'");
  return file;
}

std::string sibling(const std::string& path, const std::string& suffix) {
  const auto dot = path.rfind(".csv");
  return (dot == std::string::npos ? path : path.substr(0, dot)) + suffix;
}

void emit_rows(const ExperimentConfig& cfg, const std::vector<ResultRow>& rows) {
  if (cfg.out.empty()) {
    write_results(std::cout, rows);
    return;
  }
  std::ofstream file = open_output(cfg.out);
  write_results(file, rows);
  if (!file) throw ConfigError("failed writing '" + cfg.out + "'");
}

int exercise(const std::string& name, const CommonFlags& flags) {
  const ExperimentConfig cfg = resolve("exercise", name, flags, {});
  const ExerciseResult result = run_exercise(cfg);
  emit_rows(cfg, result.rows);
  if (!result.quantities.empty()) {
    if (cfg.out.empty()) {
      std::cout << '\n';
      write_quantities(std::cout, result.quantities);
    } else {
      std::ofstream file = open_output(sibling(cfg.out, ".quantities.csv"));
      write_quantities(file, result.quantities);
    }
  }
  if (!result.trace.empty() && !cfg.out.empty()) {
    std::ofstream file = open_output(sibling(cfg.out, ".trace.csv"));
    write_trace(file, result.trace);
  }
  std::cerr << result.summary;
  return 0;
}

int scaling(const std::string& sampler, const CommonFlags& flags, const Settings& overrides) {
  const ExperimentConfig cfg = resolve("scaling", sampler, flags, overrides);
  emit_rows(cfg, run_scaling(cfg));
  return 0;
}

int report(const std::vector<std::string>& paths) {
  std::vector<ResultRow> rows;
  for (const auto& path : paths) {
    std::ifstream file(path);
    if (!file) throw ConfigError("cannot read '" + path + "'");
    try {
      const auto part = read_results(file);
      rows.insert(rows.end(), part.begin(), part.end());
    } catch (const SchemaError& e) {
      throw SchemaError(path + ": " + e.what());
    }
  }
  write_report(std::cout, summarize(rows));
  return 0;
}

std::string key_list() {
  std::ostringstream os;
  for (const auto& [key, meaning] : known_keys()) os << "  " << key << ": " << meaning << '\n';
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mcmclab: posterior integration experiments"};
  app.require_subcommand(1);
  app.footer("Config keys (key = value; sections [exercise], [scaling], [scaling.<sampler>]):\n" + key_list() +
             "Precedence: command-line flags > config file > MCMCLAB_SEED > defaults.");

  CommonFlags flags;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", flags.config, "key = value config file")->check(CLI::ExistingFile);
    cmd->add_option("--seed", flags.seed, "master seed");
    cmd->add_option("--out", flags.out, "output CSV (default: stdout)");
  };

  std::string exercise_name;
  auto* ex = app.add_subcommand("exercise", "run a worked exercise");
  ex->add_option("name", exercise_name)->required()->check(CLI::IsMember(exercise_names()));
  add_common(ex);

  std::string sampler;
  std::string dims;
  std::optional<long long> n;
  std::optional<long long> m;
  std::optional<int> replicates;
  std::optional<int> jobs;
  std::optional<double> gamma;
  std::optional<double> delta;
  std::optional<double> a;
  std::optional<double> budget;
  bool no_timing = false;
  auto* sc = app.add_subcommand("scaling", "dimension-scaling study on an isotropic Gaussian");
  sc->add_option("sampler", sampler)->required()->check(CLI::IsMember(sampler_names()));
  sc->add_option("--dims", dims, "comma-separated dimensions, e.g. 2,5,10,20");
  sc->add_option("--n", n, "iterations (MH) or sweeps (ensembles)");
  sc->add_option("--m", m, "ensemble size");
  sc->add_option("--replicates", replicates);
  sc->add_option("--jobs", jobs, "worker threads");
  sc->add_option("--gamma", gamma, "fixed proposal scale");
  sc->add_option("--delta", delta, "proposal scale delta / sqrt(d)");
  sc->add_option("--a", a, "stretch parameter");
  sc->add_option("--budget", budget, "max sum of d * n * m * replicates");
  sc->add_flag("--no-timing", no_timing, "leave wall_time_s empty");
  add_common(sc);

  std::vector<std::string> paths;
  auto* rep = app.add_subcommand("report", "aggregate result CSVs");
  rep->add_option("csv", paths, "result files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*ex) return exercise(exercise_name, flags);
    if (*sc) {
      Settings overrides;
      auto put = [&](const char* key, const auto& value) {
        if (value) {
          std::ostringstream os;
          os << std::setprecision(17) << *value;
          overrides.set(key, os.str());
        }
      };
      if (!dims.empty()) overrides.set("dims", dims);
      put("n", n);
      put("m", m);
      put("replicates", replicates);
      put("jobs", jobs);
      put("gamma", gamma);
      put("delta", delta);
      put("a", a);
      put("budget", budget);
      if (no_timing) overrides.set("timing", "false");
      return scaling(sampler, flags, overrides);
    }
    return report(paths);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ContractViolation& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}
