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

#include "mcmclab/targets.hpp"

#include "mcmclab/log_math.hpp"

#include <numbers>
#include <utility>

namespace mcmclab {

namespace {

constexpr double kLogTwoPi = 1.8378770664093454835606594728112;

double log_normal_pdf(double x, double mean, double sd) {
  const double z = (x - mean) / sd;
  return -0.5 * z * z - std::log(sd) - 0.5 * kLogTwoPi;
}

}  // namespace

IsotropicGaussianTarget::IsotropicGaussianTarget(Eigen::Index dim, double sigma) : dim_(dim), sigma_(sigma) {
  require(dim >= 1, "IsotropicGaussianTarget: dim must be >= 1");
  require(sigma > 0.0 && std::isfinite(sigma), "IsotropicGaussianTarget: sigma must be positive");
}

double IsotropicGaussianTarget::log_evidence() const {
  return 0.5 * static_cast<double>(dim_) * (kLogTwoPi + 2.0 * std::log(sigma_));
}

double IsotropicGaussianTarget::do_log_density(ConstPoint theta) const {
  return -theta.squaredNorm() / (2.0 * sigma_ * sigma_);
}

DiagonalGaussianTarget::DiagonalGaussianTarget(Vector mean, Vector sigmas)
    : mean_(std::move(mean)), sigmas_(std::move(sigmas)) {
  require(mean_.size() >= 1, "DiagonalGaussianTarget: empty mean");
  require(mean_.size() == sigmas_.size(), "DiagonalGaussianTarget: mean and sigmas differ in length");
  require((sigmas_.array() > 0.0).all(), "DiagonalGaussianTarget: sigmas must be positive");
}

double DiagonalGaussianTarget::log_evidence() const {
  return 0.5 * static_cast<double>(dim()) * kLogTwoPi + sigmas_.array().log().sum();
}

double DiagonalGaussianTarget::do_log_density(ConstPoint theta) const {
  return -0.5 * ((theta - mean_).array() / sigmas_.array()).square().sum();
}

DiagonalGaussianTarget exercise_gaussian_2d() {
  return DiagonalGaussianTarget(Vector{{-0.3, 0.8}}, Vector{{std::sqrt(2.0), std::sqrt(0.5)}});
}

NoisyMeanModel::NoisyMeanModel(std::vector<Observation> observations, double prior_mean, double prior_sd)
    : observations_(std::move(observations)), prior_mean_(prior_mean), prior_sd_(prior_sd) {
  require(prior_sd > 0.0, "NoisyMeanModel: prior_sd must be positive");
  for (const auto& o : observations_) require(o.sigma > 0.0, "NoisyMeanModel: observation sigma must be positive");
}

double NoisyMeanModel::log_likelihood(double t) const {
  double total = 0.0;
  for (const auto& o : observations_) total += log_normal_pdf(o.value, t, o.sigma);
  return total;
}

double NoisyMeanModel::log_prior(double t) const { return log_normal_pdf(t, prior_mean_, prior_sd_); }

double NoisyMeanModel::do_log_density(ConstPoint theta) const {
  return log_likelihood(theta[0]) + log_prior(theta[0]);
}

NoisyMeanModel station_temperature_model(double prior_mean, double prior_sd) {
  return NoisyMeanModel({{26.3, 1.7}, {30.2, 1.8}, {29.4, 1.2}, {30.1, 0.5}, {29.8, 1.3}}, prior_mean, prior_sd);
}

GaussianMixtureTarget::GaussianMixtureTarget(std::vector<Component> components)
    : components_(std::move(components)) {
  require(!components_.empty(), "GaussianMixtureTarget: no components");
  dim_ = components_.front().mean.size();
  for (const auto& c : components_) {
    require(c.weight > 0.0, "GaussianMixtureTarget: weights must be positive");
    require(c.mean.size() == dim_ && c.sigmas.size() == dim_, "GaussianMixtureTarget: inconsistent dimensions");
    require((c.sigmas.array() > 0.0).all(), "GaussianMixtureTarget: sigmas must be positive");
  }
}

double GaussianMixtureTarget::do_log_density(ConstPoint theta) const {
  Vector terms(static_cast<Eigen::Index>(components_.size()));
  for (std::size_t k = 0; k < components_.size(); ++k) {
    const auto& c = components_[k];
    double lp = std::log(c.weight);
    for (Eigen::Index i = 0; i < dim_; ++i) lp += log_normal_pdf(theta[i], c.mean[i], c.sigmas[i]);
    terms[static_cast<Eigen::Index>(k)] = lp;
  }
  return log_sum_exp(terms);
}

FunctionTarget::FunctionTarget(Eigen::Index dim, Fn fn) : dim_(dim), fn_(std::move(fn)) {
  require(dim >= 1, "FunctionTarget: dim must be >= 1");
  require(static_cast<bool>(fn_), "FunctionTarget: empty callable");
}

ShellStats shell_stats(int dim, double sigma) {
  require(dim >= 1, "shell_stats: dim must be >= 1");
  require(sigma > 0.0, "shell_stats: sigma must be positive");
  const double d = dim;
  // Gamma((d+1)/2) / Gamma(d/2) through lgamma.
  const double ratio = std::exp(std::lgamma(0.5 * (d + 1.0)) - std::lgamma(0.5 * d));
  ShellStats s{};
  s.r_peak = std::sqrt(d - 1.0) * sigma;
  s.r_mean = std::numbers::sqrt2 * ratio * sigma;
  s.dr_mean = sigma * std::sqrt(std::max(0.0, d - 2.0 * ratio * ratio));
  s.dr_sep = std::sqrt(2.0 * d) * sigma;
  return s;
}

double radial_log_mass(int dim, double sigma, double r) {
  require(dim >= 1, "radial_log_mass: dim must be >= 1");
  require(r >= 0.0, "radial_log_mass: r must be nonnegative");
  const double kernel = -r * r / (2.0 * sigma * sigma);
  if (dim == 1) return kernel;
  if (r == 0.0) return kNegInf;
  return (dim - 1) * std::log(r) + kernel;
}

double half_volume_length_fraction(int dim) {
  require(dim >= 1, "half_volume_length_fraction: dim must be >= 1");
  return std::pow(2.0, -1.0 / dim);
}

}  // namespace mcmclab
