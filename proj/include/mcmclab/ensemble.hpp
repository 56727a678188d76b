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

#ifndef MCMCLAB_ENSEMBLE_HPP
#define MCMCLAB_ENSEMBLE_HPP

#include "mcmclab/common.hpp"
#include "mcmclab/mh.hpp"
#include "mcmclab/rng.hpp"
#include "mcmclab/targets.hpp"

#include <string>
#include <variant>
#include <vector>

namespace mcmclab {

/// m chains advanced together. Column j of `positions` is chain j's current point.
struct EnsembleState {
  Matrix positions;
  Vector log_densities;
  std::vector<Chain> histories;
  Eigen::Index iteration = 0;

  [[nodiscard]] Eigen::Index size() const { return positions.cols(); }
  [[nodiscard]] Eigen::Index dim() const { return positions.rows(); }
};

/// Ensemble at explicit starting points (one per column). Throws if any has zero density.
EnsembleState make_ensemble(const TargetDensity& target, Matrix positions, std::uint64_t seed = 0);

/// m chains at center + N(0, I) jitter.
EnsembleState disperse_ensemble(const TargetDensity& target, ConstPoint center, Eigen::Index m, Rng& rng);

/// Sample covariance (denominator m - 2) of every chain's position except chain `excluded`.
/// Requires m >= 3.
Matrix ensemble_covariance(const Matrix& positions, Eigen::Index excluded);

/// Lower Cholesky factor of `covariance`. When the plain factorization fails a ridge
/// 1e-10 trace / d + 1e-300 is added to the diagonal (and grown tenfold until it succeeds).
Matrix regularized_cholesky(const Matrix& covariance);

/// Stretch-factor law g(gamma | a) proportional to gamma^(-1/2) on [1/a, a].
struct StretchLaw {
  double a = 2.0;
};

/// Inverse CDF of g: ((a - 1) u + 1)^2 / a.
double stretch_factor_from_uniform(const StretchLaw& law, double u);
double sample_stretch_factor(const StretchLaw& law, Rng& rng);
/// Unnormalized g(gamma | a); zero outside [1/a, a].
double stretch_density(const StretchLaw& law, double gamma);

/// Gaussian move with covariance gamma^2 C_j, C_j estimated from the other chains.
bool ensemble_gaussian_step(const TargetDensity& target, EnsembleState& state, Eigen::Index j, double gamma, Rng& rng);

/// Differential-evolution move theta_j + gamma (theta_k - theta_l + eps), eps ~ N(0, jitter_fraction C_j),
/// k != l drawn uniformly from the chains other than j.
bool de_step(const TargetDensity& target, EnsembleState& state, Eigen::Index j, double gamma, double jitter_fraction,
             Rng& rng);

/// Affine-invariant stretch theta_k + gamma (theta_j - theta_k), accepted with
/// min(1, gamma^(d-1) P~(cand) / P~(cur)).
bool stretch_step(const TargetDensity& target, EnsembleState& state, Eigen::Index j, const StretchLaw& law, Rng& rng);

struct EnsembleGaussianMove {
  double gamma;
};

struct DifferentialEvolutionMove {
  double gamma;
  double jitter_fraction = 0.2;
};

struct StretchMove {
  StretchLaw law;
};

using EnsembleMethod = std::variant<EnsembleGaussianMove, DifferentialEvolutionMove, StretchMove>;

/// Smallest ensemble the method can run with.
Eigen::Index minimum_ensemble_size(const EnsembleMethod& method);

struct EnsembleRun {
  EnsembleState state;
  std::vector<std::string> warnings;
};

/// n sweeps; each sweep updates chains 0..m-1 in order, each seeing the others' latest positions.
EnsembleRun run_ensemble(const EnsembleMethod& method, const TargetDensity& target, EnsembleState initial,
                         Eigen::Index sweeps, Rng& rng);

/// Accepted moves over all chains and sweeps.
double ensemble_acceptance_fraction(const EnsembleState& state);

}  // namespace mcmclab

#endif  // MCMCLAB_ENSEMBLE_HPP
