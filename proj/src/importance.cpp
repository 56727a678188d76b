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

#include "mcmclab/importance.hpp"

#include "mcmclab/log_math.hpp"

namespace mcmclab {

namespace {
constexpr double kLogTwoPi = 1.8378770664093454835606594728112;
}

UniformBoxProposal::UniformBoxProposal(Vector lower, Vector upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
  require(lower_.size() >= 1 && lower_.size() == upper_.size(), "UniformBoxProposal: bounds must be nonempty and equal length");
  require((lower_.array() < upper_.array()).all() && lower_.allFinite() && upper_.allFinite(),
          "UniformBoxProposal: bounds must be finite with lower < upper");
  log_volume_ = (upper_ - lower_).array().log().sum();
}

Vector UniformBoxProposal::sample(Rng& rng) const {
  Vector x(dim());
  for (Eigen::Index i = 0; i < dim(); ++i) x[i] = lower_[i] + (upper_[i] - lower_[i]) * rng.uniform();
  return x;
}

double UniformBoxProposal::log_pdf(ConstPoint theta) const {
  require(theta.size() == dim(), "UniformBoxProposal: dimension mismatch");
  const bool inside = (theta.array() >= lower_.array()).all() && (theta.array() <= upper_.array()).all();
  return inside ? -log_volume_ : kNegInf;
}

GaussianProposal::GaussianProposal(Vector mean, Vector sds) : mean_(std::move(mean)), sds_(std::move(sds)) {
  require(mean_.size() >= 1 && mean_.size() == sds_.size(), "GaussianProposal: mean and sds must be nonempty and equal length");
  require((sds_.array() > 0.0).all(), "GaussianProposal: sds must be positive");
  log_norm_ = -0.5 * static_cast<double>(dim()) * kLogTwoPi - sds_.array().log().sum();
}

Vector GaussianProposal::sample(Rng& rng) const {
  return mean_ + sds_.cwiseProduct(rng.normal(dim()));
}

double GaussianProposal::log_pdf(ConstPoint theta) const {
  require(theta.size() == dim(), "GaussianProposal: dimension mismatch");
  return log_norm_ - 0.5 * ((theta - mean_).array() / sds_.array()).square().sum();
}

GaussianProposal prior_proposal(const NoisyMeanModel& model) {
  return GaussianProposal(Vector::Constant(1, model.prior_mean()), Vector::Constant(1, model.prior_sd()));
}

Matrix draw_iid(const Proposal& proposal, Eigen::Index n, Rng& rng) {
  require(n >= 1, "draw_iid: n must be >= 1");
  Matrix points(proposal.dim(), n);
  for (Eigen::Index i = 0; i < n; ++i) points.col(i) = proposal.sample(rng);
  return points;
}

WeightedSamples importance_weights(const TargetDensity& target, const Proposal& proposal, const Matrix& points) {
  require(target.dim() == proposal.dim(), "importance_weights: target and proposal dimensions differ");
  require(points.rows() == target.dim(), "importance_weights: point dimension does not match target");
  WeightedSamples ws{points, Vector(points.cols())};
  for (Eigen::Index i = 0; i < points.cols(); ++i) {
    const double lp = target.log_density(points.col(i));
    const double lq = proposal.log_pdf(points.col(i));
    if (lq == kNegInf) {
      if (lp != kNegInf) throw CoverageError("importance_weights: proposal has zero density where the target does not");
      ws.log_weights[i] = kNegInf;
    } else {
      ws.log_weights[i] = lp - lq;
    }
  }
  return ws;
}

LogEstimate is_evidence(const WeightedSamples& samples) {
  require(samples.size() >= 1, "is_evidence: no samples");
  const double lz = log_mean_exp(samples.log_weights);
  return {lz, !std::isfinite(lz)};
}

}  // namespace mcmclab
