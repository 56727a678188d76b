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

#ifndef MCMCLAB_SUMMARIES_HPP
#define MCMCLAB_SUMMARIES_HPP

#include "mcmclab/common.hpp"
#include "mcmclab/diagnostics.hpp"
#include "mcmclab/grid.hpp"
#include "mcmclab/targets.hpp"
#include "mcmclab/weighted_samples.hpp"

#include <utility>
#include <vector>

namespace mcmclab {

/// A posterior reduced to support points with normalized masses. `volumes` holds the cell
/// volume behind each point (1 for samples); mass / volume is the density.
struct DiscretizedPosterior {
  Matrix points;
  Vector masses;
  Vector volumes;

  [[nodiscard]] Eigen::Index size() const { return masses.size(); }
  [[nodiscard]] Eigen::Index dim() const { return points.rows(); }
  [[nodiscard]] double density(Eigen::Index i) const { return masses[i] / volumes[i]; }

  /// Normalizes exp(log_masses). Throws NumericalError when every mass is zero.
  static DiscretizedPosterior from_log_masses(Matrix points, const Vector& log_masses, Vector volumes);
};

/// Grid cells weighted by P~ dTheta.
DiscretizedPosterior discretize(const TargetDensity& target, const GridCells& cells);
/// Importance-weighted samples (unit volumes).
DiscretizedPosterior discretize(const WeightedSamples& samples);
/// Equally weighted draws such as a post-burn-in chain.
DiscretizedPosterior discretize(const Eigen::Ref<const Matrix>& samples);
/// Histogram bins at their midpoints, for region summaries of sampler output.
DiscretizedPosterior discretize(const HistogramDensity& histogram);

Vector posterior_mean(const DiscretizedPosterior& post);
/// Per-coordinate standard deviation.
Vector posterior_sd(const DiscretizedPosterior& post);

enum class LossKind {
  squared,       ///< |a - b|^2
  absolute,      ///< sum_i |a_i - b_i|; equals |a - b| in 1-D
  catastrophic,  ///< 0 when a == b, else 1: the discrete stand-in for the negative delta
  asymmetric,    ///< 1-D: |a - b|^cold when the truth b < threshold, |a - b|^warm otherwise
};

struct LossSpec {
  LossKind kind = LossKind::squared;
  double threshold = 25.0;
  double cold_exponent = 3.0;
  double warm_exponent = 1.0;

  static LossSpec squared() { return {LossKind::squared}; }
  static LossSpec absolute() { return {LossKind::absolute}; }
  static LossSpec catastrophic() { return {LossKind::catastrophic}; }
  static LossSpec asymmetric(double threshold, double cold_exponent = 3.0, double warm_exponent = 1.0) {
    return {LossKind::asymmetric, threshold, cold_exponent, warm_exponent};
  }
};

/// L(candidate | truth).
double loss(const LossSpec& spec, ConstPoint candidate, ConstPoint truth);

/// sum_i L(candidate | theta_i) p_i.
double expected_loss(const DiscretizedPosterior& post, const LossSpec& spec, ConstPoint candidate);

/// Minimizer of the expected loss: mean (squared), per-coordinate weighted median
/// (absolute), highest-density support point (catastrophic), or a support scan refined by
/// golden section (asymmetric, 1-D only). Ties go to the smaller value.
Vector point_estimate(const DiscretizedPosterior& post, const LossSpec& spec);

/// Quantile of a 1-D posterior. Point i carries cumulative mass F_i = sum_{k<i} p_k + p_i / 2;
/// values between support points are linearly interpolated.
double quantile(const DiscretizedPosterior& post, double p);

/// Central interval [q((1-Y)/2), q((1+Y)/2)].
std::pair<double, double> percentile_interval(const DiscretizedPosterior& post, double coverage);

struct CredibleRegion {
  double threshold;            ///< density of the least dense member
  std::vector<bool> members;   ///< per support point
  double mass;                 ///< total mass inside
};

/// Highest-density region {theta : P(theta) >= P_X} reaching mass >= X. Points of equal
/// density enter or leave together.
CredibleRegion threshold_credible_region(const DiscretizedPosterior& post, double coverage);

/// For each candidate new reading: sum_i N(reading; T_i, sigma_new) p_i. sigma_new = 0 gives
/// the posterior density itself (linear interpolation between support points).
Vector posterior_predictive_noisy_mean(const DiscretizedPosterior& post, double sigma_new, const Vector& readings);

/// log[(Z1 / Z2) (pi1 / pi2)].
double log_bayes_factor(double log_z1, double log_z2, double log_prior_odds = 0.0);
double bayes_factor(double z1, double z2, double prior_odds = 1.0);

}  // namespace mcmclab

#endif  // MCMCLAB_SUMMARIES_HPP
