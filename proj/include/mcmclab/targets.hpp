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

#ifndef MCMCLAB_TARGETS_HPP
#define MCMCLAB_TARGETS_HPP

#include "mcmclab/common.hpp"

#include <functional>
#include <vector>

namespace mcmclab {

/// An unnormalized posterior log P~(theta) = log L(theta) + log pi(theta) over R^d.
///
/// Implementations are immutable and deterministic. Points outside the support evaluate to
/// -inf rather than throwing.
class TargetDensity {
 public:
  virtual ~TargetDensity() = default;

  [[nodiscard]] virtual Eigen::Index dim() const = 0;

  /// Throws ContractViolation when theta has the wrong length.
  [[nodiscard]] double log_density(ConstPoint theta) const {
    require(theta.size() == dim(), "target: point dimension does not match target dimension");
    return do_log_density(theta);
  }

 protected:
  [[nodiscard]] virtual double do_log_density(ConstPoint theta) const = 0;
};

inline double log_unnorm_density(const TargetDensity& target, ConstPoint theta) {
  return target.log_density(theta);
}

/// log P~ = -|theta|^2 / (2 sigma^2).
class IsotropicGaussianTarget final : public TargetDensity {
 public:
  IsotropicGaussianTarget(Eigen::Index dim, double sigma = 1.0);

  [[nodiscard]] Eigen::Index dim() const override { return dim_; }
  [[nodiscard]] double sigma() const { return sigma_; }
  /// log of the integral of the kernel, d/2 log(2 pi sigma^2).
  [[nodiscard]] double log_evidence() const;

 protected:
  [[nodiscard]] double do_log_density(ConstPoint theta) const override;

 private:
  Eigen::Index dim_;
  double sigma_;
};

/// Product of independent 1-D Gaussian kernels exp(-(x_i - mu_i)^2 / (2 s_i^2)).
class DiagonalGaussianTarget final : public TargetDensity {
 public:
  DiagonalGaussianTarget(Vector mean, Vector sigmas);

  [[nodiscard]] Eigen::Index dim() const override { return mean_.size(); }
  [[nodiscard]] const Vector& mean() const { return mean_; }
  [[nodiscard]] const Vector& sigmas() const { return sigmas_; }
  [[nodiscard]] double log_evidence() const;

 protected:
  [[nodiscard]] double do_log_density(ConstPoint theta) const override;

 private:
  Vector mean_;
  Vector sigmas_;
};

/// The 2-D toy posterior used by the grid, importance and MCMC exercises:
/// means (-0.3, 0.8), variances (2, 0.5). Its evidence is 2 pi.
DiagonalGaussianTarget exercise_gaussian_2d();

struct Observation {
  double value;
  double sigma;
};

/// Gaussian measurements of one unknown mean with a Gaussian prior on it.
///
/// Likelihood and prior are both normalized densities; the posterior kernel integrates
/// to the model evidence.
class NoisyMeanModel final : public TargetDensity {
 public:
  NoisyMeanModel(std::vector<Observation> observations, double prior_mean, double prior_sd);

  [[nodiscard]] Eigen::Index dim() const override { return 1; }
  [[nodiscard]] double log_likelihood(double t) const;
  [[nodiscard]] double log_prior(double t) const;

  [[nodiscard]] const std::vector<Observation>& observations() const { return observations_; }
  [[nodiscard]] double prior_mean() const { return prior_mean_; }
  [[nodiscard]] double prior_sd() const { return prior_sd_; }

 protected:
  [[nodiscard]] double do_log_density(ConstPoint theta) const override;

 private:
  std::vector<Observation> observations_;
  double prior_mean_;
  double prior_sd_;
};

/// Five station temperature readings (deg C) with a N(25, 1.5) historical prior.
NoisyMeanModel station_temperature_model(double prior_mean = 25.0, double prior_sd = 1.5);

/// Weighted sum of diagonal Gaussian densities (each normalized), for multimodal checks.
class GaussianMixtureTarget final : public TargetDensity {
 public:
  struct Component {
    double weight;
    Vector mean;
    Vector sigmas;
  };

  explicit GaussianMixtureTarget(std::vector<Component> components);

  [[nodiscard]] Eigen::Index dim() const override { return dim_; }

 protected:
  [[nodiscard]] double do_log_density(ConstPoint theta) const override;

 private:
  std::vector<Component> components_;
  Eigen::Index dim_;
};

/// Wraps a callable; the callable must be pure.
class FunctionTarget final : public TargetDensity {
 public:
  using Fn = std::function<double(ConstPoint)>;

  FunctionTarget(Eigen::Index dim, Fn fn);

  [[nodiscard]] Eigen::Index dim() const override { return dim_; }

 protected:
  [[nodiscard]] double do_log_density(ConstPoint theta) const override { return fn_(theta); }

 private:
  Eigen::Index dim_;
  Fn fn_;
};

/// Radial statistics of an isotropic Gaussian, all in the same units as sigma.
struct ShellStats {
  double r_peak;   ///< maximizer of the radial mass r^(d-1) exp(-r^2 / 2 sigma^2)
  double r_mean;   ///< mean radius
  double dr_mean;  ///< standard deviation of the radius
  double dr_sep;   ///< rms distance between two independent draws
};

ShellStats shell_stats(int dim, double sigma);

/// (d-1) ln r - r^2 / (2 sigma^2): log radial mass up to a constant.
double radial_log_mass(int dim, double sigma, double r);

/// Edge fraction of the centred sub-cube holding half of a d-cube's volume, 2^(-1/d).
double half_volume_length_fraction(int dim);

}  // namespace mcmclab

#endif  // MCMCLAB_TARGETS_HPP
