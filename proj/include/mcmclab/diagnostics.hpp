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

#ifndef MCMCLAB_DIAGNOSTICS_HPP
#define MCMCLAB_DIAGNOSTICS_HPP

#include "mcmclab/common.hpp"
#include "mcmclab/grid.hpp"
#include "mcmclab/log_math.hpp"
#include "mcmclab/mh.hpp"
#include "mcmclab/targets.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace mcmclab {

/// Window multiplier c in W = min{t : t >= c tau(t)}.
inline constexpr double kDefaultWindowFactor = 5.0;
/// Shortest series for which an autocorrelation time is estimated.
inline constexpr Eigen::Index kMinTauSamples = 100;

/// Biased autocovariance at lag t: (1/n) sum_{i < n-t} (x_i - xbar)(x_{i+t} - xbar).
template <typename Derived>
double autocovariance(const Eigen::DenseBase<Derived>& series, Eigen::Index lag) {
  const Eigen::Index n = series.size();
  require(lag >= 0 && lag < n, "autocovariance: lag must lie in [0, n)");
  const Vector centered = series.derived().template cast<double>().array() - series.derived().template cast<double>().mean();
  return centered.head(n - lag).dot(centered.tail(n - lag)) / static_cast<double>(n);
}

struct AutocorrCurve {
  Vector values;  ///< values[t] = A(t), values[0] = 1

  [[nodiscard]] Eigen::Index max_lag() const { return values.size() - 1; }
};

/// A(t) = C(t) / C(0) for t = 0..max_lag (clamped to n - 1). Throws NumericalError on a
/// constant series.
AutocorrCurve autocorrelation(const Eigen::Ref<const Vector>& series, Eigen::Index max_lag);

struct TauEstimate {
  double tau = 0.0;           ///< 2 sum_{t=1}^{W} A(t), clamped at 0
  Eigen::Index window = 0;    ///< W
  bool truncated = false;     ///< the self-consistency condition was never met before n - 1
  bool sufficient = true;     ///< false when the series is shorter than kMinTauSamples
};

/// Integrated autocorrelation time with the self-consistent window W = min{t : t >= c tau(t)}.
/// Throws NumericalError on a constant series.
TauEstimate integrated_autocorr_time(const Eigen::Ref<const Vector>& series, double window_factor = kDefaultWindowFactor);

struct ChainTau {
  std::vector<TauEstimate> per_coordinate;
  double max_tau = 0.0;
  bool sufficient = true;
};

/// tau per coordinate of a d x n sample matrix, and their maximum.
ChainTau autocorr_times(const Eigen::Ref<const Matrix>& samples, double window_factor = kDefaultWindowFactor);

/// n / (1 + tau).
double chain_ess(double n, double tau);
/// ESS of one series; throws NumericalError when tau cannot be estimated.
double chain_ess(const Eigen::Ref<const Vector>& series);
/// Minimum ESS over coordinates.
double chain_ess(const Chain& chain);

/// Kish ESS (sum w)^2 / sum w^2 from log weights; -inf entries are zero weights.
template <typename Derived>
double kish_ess_log(const Eigen::DenseBase<Derived>& log_weights) {
  const double peak = log_weights.maxCoeff();
  if (!std::isfinite(peak)) throw NumericalError("kish_ess: all weights are zero");
  const Vector scaled = (log_weights.derived().template cast<double>().array() - peak).exp().matrix();
  const double s = scaled.sum();
  return s * s / scaled.squaredNorm();
}

/// Kish ESS of nonnegative linear weights.
double kish_ess(const Eigen::Ref<const Vector>& weights);

/// Binned sample density. Bins are the cells of `bins`, ordered as in build_grid.
struct HistogramDensity {
  GridSpec bins;
  Vector masses;        ///< count / n per bin
  Vector volumes;       ///< bin volumes
  double overflow_mass; ///< fraction of samples outside the box
  Eigen::Index samples;

  /// Flat bin index of a point, or nullopt outside the box. Upper box edges are inclusive.
  [[nodiscard]] std::optional<Eigen::Index> bin_of(ConstPoint point) const;
  [[nodiscard]] double density(Eigen::Index bin) const { return masses[bin] / volumes[bin]; }
};

HistogramDensity histogram_density(const Eigen::Ref<const Matrix>& samples, const GridSpec& bins);

/// `base` widened by whole bins of the same width until every sample lies inside.
/// Axes must be uniformly spaced.
GridSpec covering_bins(const Eigen::Ref<const Matrix>& samples, const GridSpec& base);

/// Z ~ mean over samples of P~(theta_i) / rho(theta_i), rho the histogram density.
/// Throws NumericalError for a sample in an empty or out-of-box bin.
LogEstimate evidence_from_chain(const TargetDensity& target, const Eigen::Ref<const Matrix>& samples,
                                const HistogramDensity& density);
LogEstimate evidence_from_chain(const TargetDensity& target, const Chain& chain, const HistogramDensity& density);

/// Samples needed to pin a probability p to +-eps with autocorrelation time tau:
/// ceil(p (1 - p) / eps^2 (1 + tau)).
std::uint64_t binomial_sample_bound(double p, double eps, double tau);

}  // namespace mcmclab

#endif  // MCMCLAB_DIAGNOSTICS_HPP
