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

#ifndef MCMCLAB_HARNESS_EXPERIMENTS_HPP
#define MCMCLAB_HARNESS_EXPERIMENTS_HPP

#include "mcmclab/common.hpp"
#include "mcmclab/harness/config.hpp"
#include "mcmclab/harness/csv.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace mcmclab::harness {

const std::vector<std::string>& exercise_names();
const std::vector<std::string>& sampler_names();

/// One state of a chain, for burn-in inspection. Iteration 0 is the start point.
struct TracePoint {
  Eigen::Index iteration;
  Vector state;
  bool accepted;
};

struct ExerciseResult {
  std::vector<ResultRow> rows;
  std::vector<Quantity> quantities;
  std::vector<TracePoint> trace;
  std::string summary;
};

/// Seed of one replicate, a pure function of (master, experiment, dim, replicate).
std::uint64_t replicate_seed(std::uint64_t master, const std::string& experiment, std::uint64_t dim, std::uint64_t replicate);

/// Runs a named exercise (noisy-mean, grid-2d, importance-2d, mh-2d).
/// Throws ConfigError for an unknown name.
ExerciseResult run_exercise(const ExperimentConfig& cfg);

/// Fills scaling defaults for cfg.name: n = 20000 (MH) or 1500 sweeps with m = 100
/// (ensembles), dims {2, 5, 10, 20}, one replicate.
ExperimentConfig with_scaling_defaults(ExperimentConfig cfg);

/// sum over dims of d * n * m * replicates.
double scaling_cost(const ExperimentConfig& cfg);

/// Proposal scale used for `dim`: cfg.gamma, else cfg.delta / sqrt(d), else the sampler default.
double scaling_gamma(const ExperimentConfig& cfg, int dim);

/// One (dim, replicate) cell of a scaling run. `cfg` must already carry defaults.
ResultRow run_scaling_replicate(const ExperimentConfig& cfg, int dim, int replicate);

/// Every dim x replicate, fanned out over cfg.jobs threads; rows come back ordered by
/// (dim, replicate). Throws ResourceError when the cost exceeds cfg.budget.
std::vector<ResultRow> run_scaling(const ExperimentConfig& cfg);

void write_trace(std::ostream& out, const std::vector<TracePoint>& trace);

}  // namespace mcmclab::harness

#endif  // MCMCLAB_HARNESS_EXPERIMENTS_HPP
