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

#include "mcmclab/summaries.hpp"

#include "mcmclab/log_math.hpp"

#include <algorithm>
#include <numeric>

namespace mcmclab {

namespace {

constexpr double kInvSqrtTwoPi = 0.39894228040143267793994605993438;

void require_1d(const DiscretizedPosterior& post, const char* what) {
  require(post.dim() == 1, std::string(what) + ": posterior must be 1-D");
  require(post.size() >= 1, std::string(what) + ": empty support");
}

/// Support indices sorted by the first coordinate.
std::vector<Eigen::Index> sorted_by_value(const DiscretizedPosterior& post) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(post.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return post.points(0, a) < post.points(0, b); });
  return order;
}

double weighted_median(const Vector& values, const Vector& masses) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
  double cum = 0.0;
  for (const auto i : order) {
    cum += masses[i];
    if (cum >= 0.5 - 1e-12) return values[i];
  }
  return values[order.back()];
}

}  // namespace

DiscretizedPosterior DiscretizedPosterior::from_log_masses(Matrix points, const Vector& log_masses, Vector volumes) {
  require(points.cols() == log_masses.size() && volumes.size() == log_masses.size(),
          "DiscretizedPosterior: points, masses and volumes differ in count");
  require(log_masses.size() >= 1, "DiscretizedPosterior: empty support");
  return {std::move(points), normalized_exp(log_masses), std::move(volumes)};
}

DiscretizedPosterior discretize(const TargetDensity& target, const GridCells& cells) {
  return DiscretizedPosterior::from_log_masses(cells.midpoints, grid_log_weights(target, cells), cells.volumes);
}

DiscretizedPosterior discretize(const WeightedSamples& samples) {
  return DiscretizedPosterior::from_log_masses(samples.points, samples.log_weights, Vector::Ones(samples.size()));
}

DiscretizedPosterior discretize(const Eigen::Ref<const Matrix>& samples) {
  const Eigen::Index n = samples.cols();
  require(n >= 1, "discretize: no samples");
  return {samples, Vector::Constant(n, 1.0 / static_cast<double>(n)), Vector::Ones(n)};
}

DiscretizedPosterior discretize(const HistogramDensity& histogram) {
  const GridCells cells = build_grid(histogram.bins);
  const double inside = histogram.masses.sum();
  if (!(inside > 0.0)) throw NumericalError("discretize: histogram has no mass inside its bins");
  return {cells.midpoints, histogram.masses / inside, cells.volumes};
}

Vector posterior_mean(const DiscretizedPosterior& post) { return post.points * post.masses; }

Vector posterior_sd(const DiscretizedPosterior& post) {
  const Vector mean = posterior_mean(post);
  const Matrix centered = post.points.colwise() - mean;
  return (centered.array().square().matrix() * post.masses).array().sqrt().matrix();
}

double loss(const LossSpec& spec, ConstPoint candidate, ConstPoint truth) {
  require(candidate.size() == truth.size(), "loss: dimension mismatch");
  switch (spec.kind) {
    case LossKind::squared:
      return (candidate - truth).squaredNorm();
    case LossKind::absolute:
      return (candidate - truth).lpNorm<1>();
    case LossKind::catastrophic:
      return candidate == truth ? 0.0 : 1.0;
    case LossKind::asymmetric: {
      require(candidate.size() == 1, "loss: asymmetric loss is 1-D");
      const double gap = std::abs(candidate[0] - truth[0]);
      return std::pow(gap, truth[0] < spec.threshold ? spec.cold_exponent : spec.warm_exponent);
    }
  }
  return 0.0;
}

double expected_loss(const DiscretizedPosterior& post, const LossSpec& spec, ConstPoint candidate) {
  require(candidate.size() == post.dim(), "expected_loss: candidate dimension does not match posterior");
  double total = 0.0;
  for (Eigen::Index i = 0; i < post.size(); ++i) {
    if (post.masses[i] > 0.0) total += post.masses[i] * loss(spec, candidate, post.points.col(i));
  }
  return total;
}

Vector point_estimate(const DiscretizedPosterior& post, const LossSpec& spec) {
  require(post.size() >= 1, "point_estimate: empty support");
  switch (spec.kind) {
    case LossKind::squared:
      return posterior_mean(post);
    case LossKind::absolute: {
      Vector out(post.dim());
      for (Eigen::Index j = 0; j < post.dim(); ++j) out[j] = weighted_median(post.points.row(j).transpose(), post.masses);
      return out;
    }
    case LossKind::catastrophic: {
      Eigen::Index best = 0;
      for (Eigen::Index i = 1; i < post.size(); ++i) {
        const double di = post.density(i);
        const double db = post.density(best);
        const bool smaller = std::lexicographical_compare(post.points.col(i).data(), post.points.col(i).data() + post.dim(),
                                                          post.points.col(best).data(), post.points.col(best).data() + post.dim());
        if (di > db || (di == db && smaller)) best = i;
      }
      return post.points.col(best);
    }
    case LossKind::asymmetric: {
      require_1d(post, "point_estimate");
      const auto order = sorted_by_value(post);
      auto risk = [&](double x) { return expected_loss(post, spec, Vector::Constant(1, x)); };
      std::size_t first = 0;
      std::size_t last = order.size() - 1;
      if (spec.cold_exponent >= 1.0 && spec.warm_exponent >= 1.0) {
        // Convex risk: narrow the support bracket before the linear scan.
        while (last - first > 2) {
          const std::size_t m1 = first + (last - first) / 3;
          const std::size_t m2 = last - (last - first) / 3;
          if (risk(post.points(0, order[m1])) <= risk(post.points(0, order[m2]))) {
            last = m2;
          } else {
            first = m1;
          }
        }
      }
      std::size_t best = first;
      double best_risk = risk(post.points(0, order[first]));
      for (std::size_t k = first + 1; k <= last; ++k) {
        const double r = risk(post.points(0, order[k]));
        if (r < best_risk) {
          best = k;
          best_risk = r;
        }
      }
      double lo = post.points(0, order[best == 0 ? 0 : best - 1]);
      double hi = post.points(0, order[std::min(best + 1, order.size() - 1)]);
      const double tol = 1e-6 * std::max(post.points(0, order.back()) - post.points(0, order.front()), 1e-300);
      const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
      double a = hi - phi * (hi - lo);
      double b = lo + phi * (hi - lo);
      double ra = risk(a);
      double rb = risk(b);
      while (hi - lo > tol) {
        if (ra <= rb) {
          hi = b;
          b = a;
          rb = ra;
          a = hi - phi * (hi - lo);
          ra = risk(a);
        } else {
          lo = a;
          a = b;
          ra = rb;
          b = lo + phi * (hi - lo);
          rb = risk(b);
        }
      }
      const double refined = 0.5 * (lo + hi);
      const double x = risk(refined) <= best_risk ? refined : post.points(0, order[best]);
      return Vector::Constant(1, x);
    }
  }
  return {};
}

double quantile(const DiscretizedPosterior& post, double p) {
  require_1d(post, "quantile");
  require(p >= 0.0 && p <= 1.0, "quantile: p must lie in [0, 1]");
  const auto order = sorted_by_value(post);
  double before = 0.0;
  double prev_f = 0.0;
  double prev_x = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const double mass = post.masses[order[k]];
    const double f = before + 0.5 * mass;
    const double x = post.points(0, order[k]);
    if (p <= f) {
      if (k == 0 || f == prev_f) return x;
      return prev_x + (x - prev_x) * (p - prev_f) / (f - prev_f);
    }
    before += mass;
    prev_f = f;
    prev_x = x;
  }
  return prev_x;
}

std::pair<double, double> percentile_interval(const DiscretizedPosterior& post, double coverage) {
  require(coverage > 0.0 && coverage < 1.0, "percentile_interval: coverage must lie in (0, 1)");
  return {quantile(post, 0.5 * (1.0 - coverage)), quantile(post, 0.5 * (1.0 + coverage))};
}

CredibleRegion threshold_credible_region(const DiscretizedPosterior& post, double coverage) {
  require(coverage > 0.0 && coverage < 1.0, "threshold_credible_region: coverage must lie in (0, 1)");
  require(post.size() >= 1, "threshold_credible_region: empty support");
  std::vector<Eigen::Index> order(static_cast<std::size_t>(post.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return post.density(a) > post.density(b); });

  CredibleRegion region{0.0, std::vector<bool>(static_cast<std::size_t>(post.size()), false), 0.0};
  std::size_t k = 0;
  while (k < order.size() && region.mass < coverage - 1e-12) {
    const double level = post.density(order[k]);
    // Take the whole group of equal density.
    while (k < order.size() && post.density(order[k]) == level) {
      region.members[static_cast<std::size_t>(order[k])] = true;
      region.mass += post.masses[order[k]];
      ++k;
    }
    region.threshold = level;
  }
  return region;
}

Vector posterior_predictive_noisy_mean(const DiscretizedPosterior& post, double sigma_new, const Vector& readings) {
  require_1d(post, "posterior_predictive_noisy_mean");
  require(sigma_new >= 0.0, "posterior_predictive_noisy_mean: sigma_new must be nonnegative");
  Vector out(readings.size());
  if (sigma_new == 0.0) {
    const auto order = sorted_by_value(post);
    std::vector<double> xs;
    std::vector<double> ds;
    for (const auto i : order) {
      xs.push_back(post.points(0, i));
      ds.push_back(post.density(i));
    }
    for (Eigen::Index r = 0; r < readings.size(); ++r) {
      const double t = readings[r];
      if (t < xs.front() || t > xs.back()) {
        out[r] = 0.0;
        continue;
      }
      const auto hi = static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), t) - xs.begin());
      if (hi == 0 || xs[hi] == t) {
        out[r] = ds[hi];
        continue;
      }
      const double w = (t - xs[hi - 1]) / (xs[hi] - xs[hi - 1]);
      out[r] = (1.0 - w) * ds[hi - 1] + w * ds[hi];
    }
    return out;
  }
  for (Eigen::Index r = 0; r < readings.size(); ++r) {
    const Eigen::ArrayXd z = (readings[r] - post.points.row(0).transpose().array()) / sigma_new;
    out[r] = ((-0.5 * z.square()).exp() * post.masses.array()).sum() * kInvSqrtTwoPi / sigma_new;
  }
  return out;
}

double log_bayes_factor(double log_z1, double log_z2, double log_prior_odds) {
  require(std::isfinite(log_z1) && std::isfinite(log_z2) && std::isfinite(log_prior_odds),
          "log_bayes_factor: evidences and odds must be positive and finite");
  return log_z1 - log_z2 + log_prior_odds;
}

double bayes_factor(double z1, double z2, double prior_odds) {
  require(z1 > 0.0 && z2 > 0.0 && prior_odds > 0.0, "bayes_factor: inputs must be positive");
  return std::exp(log_bayes_factor(std::log(z1), std::log(z2), std::log(prior_odds)));
}

}  // namespace mcmclab
