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

#include "mcmclab/diagnostics.hpp"

#include <algorithm>
#include <limits>

namespace mcmclab {

namespace {

Vector centered_copy(const Eigen::Ref<const Vector>& series) {
  return series.array() - series.mean();
}

double zero_lag(const Vector& centered) {
  const double c0 = centered.squaredNorm() / static_cast<double>(centered.size());
  if (!(c0 > 0.0)) throw NumericalError("autocorrelation: series has zero variance");
  return c0;
}

double lagged(const Vector& centered, Eigen::Index t) {
  const Eigen::Index n = centered.size();
  return centered.head(n - t).dot(centered.tail(n - t)) / static_cast<double>(n);
}

}  // namespace

AutocorrCurve autocorrelation(const Eigen::Ref<const Vector>& series, Eigen::Index max_lag) {
  require(series.size() >= 1, "autocorrelation: empty series");
  require(max_lag >= 0, "autocorrelation: max_lag must be nonnegative");
  const Vector centered = centered_copy(series);
  const double c0 = zero_lag(centered);
  const Eigen::Index lags = std::min(max_lag, series.size() - 1);
  AutocorrCurve curve{Vector(lags + 1)};
  curve.values[0] = 1.0;
  for (Eigen::Index t = 1; t <= lags; ++t) curve.values[t] = std::clamp(lagged(centered, t) / c0, -1.0, 1.0);
  return curve;
}

TauEstimate integrated_autocorr_time(const Eigen::Ref<const Vector>& series, double window_factor) {
  require(window_factor > 0.0, "integrated_autocorr_time: window factor must be positive");
  TauEstimate est;
  if (series.size() < kMinTauSamples) {
    est.sufficient = false;
    est.tau = std::numeric_limits<double>::quiet_NaN();
    return est;
  }
  const Vector centered = centered_copy(series);
  const double c0 = zero_lag(centered);
  const Eigen::Index n = centered.size();
  double sum = 0.0;
  est.truncated = true;
  est.window = n - 1;
  for (Eigen::Index t = 1; t < n; ++t) {
    sum += lagged(centered, t) / c0;
    if (static_cast<double>(t) >= window_factor * 2.0 * sum) {
      est.window = t;
      est.truncated = false;
      break;
    }
  }
  est.tau = std::max(0.0, 2.0 * sum);
  return est;
}

ChainTau autocorr_times(const Eigen::Ref<const Matrix>& samples, double window_factor) {
  ChainTau out;
  out.per_coordinate.reserve(static_cast<std::size_t>(samples.rows()));
  for (Eigen::Index i = 0; i < samples.rows(); ++i) {
    const Vector row = samples.row(i).transpose();
    out.per_coordinate.push_back(integrated_autocorr_time(row, window_factor));
    const auto& e = out.per_coordinate.back();
    out.sufficient = out.sufficient && e.sufficient;
    if (e.sufficient) out.max_tau = std::max(out.max_tau, e.tau);
  }
  if (!out.sufficient) out.max_tau = std::numeric_limits<double>::quiet_NaN();
  return out;
}

double chain_ess(double n, double tau) {
  if (!(tau >= 0.0)) throw NumericalError("chain_ess: autocorrelation time is unavailable");
  return n / (1.0 + tau);
}

double chain_ess(const Eigen::Ref<const Vector>& series) {
  const TauEstimate e = integrated_autocorr_time(series);
  if (!e.sufficient) throw NumericalError("chain_ess: series too short to estimate tau");
  return chain_ess(static_cast<double>(series.size()), e.tau);
}

double chain_ess(const Chain& chain) {
  const ChainTau taus = autocorr_times(chain.samples());
  if (!taus.sufficient) throw NumericalError("chain_ess: chain too short to estimate tau");
  return chain_ess(static_cast<double>(chain.size()), taus.max_tau);
}

double kish_ess(const Eigen::Ref<const Vector>& weights) {
  require((weights.array() >= 0.0).all(), "kish_ess: weights must be nonnegative");
  return kish_ess_log(weights.array().log().matrix());
}

std::optional<Eigen::Index> HistogramDensity::bin_of(ConstPoint point) const {
  require(point.size() == bins.dim(), "HistogramDensity: dimension mismatch");
  Eigen::Index flat = 0;
  for (Eigen::Index j = 0; j < bins.dim(); ++j) {
    const auto& e = bins.axis(j).edges;
    const double x = point[j];
    if (!(x >= e.front() && x <= e.back())) return std::nullopt;
    auto idx = static_cast<Eigen::Index>(std::upper_bound(e.begin(), e.end(), x) - e.begin()) - 1;
    idx = std::min(idx, bins.axis(j).cells() - 1);
    flat = flat * bins.axis(j).cells() + idx;
  }
  return flat;
}

HistogramDensity histogram_density(const Eigen::Ref<const Matrix>& samples, const GridSpec& bins) {
  require(samples.rows() == bins.dim(), "histogram_density: sample dimension does not match bins");
  require(samples.cols() >= 1, "histogram_density: no samples");
  const GridCells cells = build_grid(bins);
  HistogramDensity h{bins, Vector::Zero(cells.size()), cells.volumes, 0.0, samples.cols()};
  std::vector<std::int64_t> counts(static_cast<std::size_t>(cells.size()), 0);
  std::int64_t outside = 0;
  for (Eigen::Index i = 0; i < samples.cols(); ++i) {
    if (const auto b = h.bin_of(samples.col(i))) {
      ++counts[static_cast<std::size_t>(*b)];
    } else {
      ++outside;
    }
  }
  const double n = static_cast<double>(samples.cols());
  for (Eigen::Index b = 0; b < cells.size(); ++b) h.masses[b] = static_cast<double>(counts[static_cast<std::size_t>(b)]) / n;
  h.overflow_mass = static_cast<double>(outside) / n;
  return h;
}

GridSpec covering_bins(const Eigen::Ref<const Matrix>& samples, const GridSpec& base) {
  require(samples.rows() == base.dim(), "covering_bins: sample dimension does not match bins");
  std::vector<Axis> axes;
  for (Eigen::Index j = 0; j < base.dim(); ++j) {
    const Axis& axis = base.axis(j);
    const double width = (axis.upper() - axis.lower()) / static_cast<double>(axis.cells());
    for (std::size_t k = 1; k < axis.edges.size(); ++k) {
      require(std::abs(axis.edges[k] - axis.edges[k - 1] - width) <= 1e-9 * width, "covering_bins: axis is not uniform");
    }
    const double lo = samples.cols() > 0 ? samples.row(j).minCoeff() : axis.lower();
    const double hi = samples.cols() > 0 ? samples.row(j).maxCoeff() : axis.upper();
    const auto below = static_cast<Eigen::Index>(std::max(0.0, std::ceil((axis.lower() - lo) / width)));
    const auto above = static_cast<Eigen::Index>(std::max(0.0, std::ceil((hi - axis.upper()) / width)));
    if (below == 0 && above == 0) {
      axes.push_back(axis);
    } else {
      axes.push_back(Axis::uniform(axis.lower() - static_cast<double>(below) * width,
                                   axis.upper() + static_cast<double>(above) * width, axis.cells() + below + above));
    }
  }
  return GridSpec(std::move(axes));
}

LogEstimate evidence_from_chain(const TargetDensity& target, const Eigen::Ref<const Matrix>& samples,
                                const HistogramDensity& density) {
  require(samples.cols() >= 1, "evidence_from_chain: no samples");
  require(samples.rows() == target.dim(), "evidence_from_chain: sample dimension does not match target");
  Vector terms(samples.cols());
  for (Eigen::Index i = 0; i < samples.cols(); ++i) {
    const auto bin = density.bin_of(samples.col(i));
    if (!bin || density.masses[*bin] <= 0.0) throw NumericalError("evidence_from_chain: sample falls in a zero-density bin");
    terms[i] = target.log_density(samples.col(i)) - std::log(density.density(*bin));
  }
  const double lz = log_mean_exp(terms);
  return {lz, !std::isfinite(lz)};
}

LogEstimate evidence_from_chain(const TargetDensity& target, const Chain& chain, const HistogramDensity& density) {
  return evidence_from_chain(target, chain.samples(), density);
}

std::uint64_t binomial_sample_bound(double p, double eps, double tau) {
  require(eps > 0.0 && eps < 1.0, "binomial_sample_bound: eps must lie in (0, 1)");
  require(p >= 0.0 && p <= 1.0, "binomial_sample_bound: p must lie in [0, 1]");
  require(tau >= 0.0, "binomial_sample_bound: tau must be nonnegative");
  const double bound = p * (1.0 - p) / (eps * eps) * (1.0 + tau);
  // Exact products such as 0.25 / 0.05^2 must not round up.
  return static_cast<std::uint64_t>(std::ceil(bound * (1.0 - 1e-12)));
}

}  // namespace mcmclab
