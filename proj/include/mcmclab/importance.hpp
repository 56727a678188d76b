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

#ifndef MCMCLAB_IMPORTANCE_HPP
#define MCMCLAB_IMPORTANCE_HPP

#include "mcmclab/common.hpp"
#include "mcmclab/rng.hpp"
#include "mcmclab/targets.hpp"
#include "mcmclab/weighted_samples.hpp"

#include <utility>

namespace mcmclab {

/// A normalized distribution Q that can be sampled and evaluated.
class Proposal {
 public:
  virtual ~Proposal() = default;

  [[nodiscard]] virtual Eigen::Index dim() const = 0;
  [[nodiscard]] virtual Vector sample(Rng& rng) const = 0;
  /// Normalized log Q(theta); -inf outside the support.
  [[nodiscard]] virtual double log_pdf(ConstPoint theta) const = 0;
};

/// Uniform on an axis-aligned box.
class UniformBoxProposal final : public Proposal {
 public:
  UniformBoxProposal(Vector lower, Vector upper);

  [[nodiscard]] Eigen::Index dim() const override { return lower_.size(); }
  [[nodiscard]] Vector sample(Rng& rng) const override;
  [[nodiscard]] double log_pdf(ConstPoint theta) const override;
  [[nodiscard]] double log_volume() const { return log_volume_; }

 private:
  Vector lower_;
  Vector upper_;
  double log_volume_;
};

/// Independent normals with per-axis means and standard deviations.
class GaussianProposal final : public Proposal {
 public:
  GaussianProposal(Vector mean, Vector sds);

  [[nodiscard]] Eigen::Index dim() const override { return mean_.size(); }
  [[nodiscard]] Vector sample(Rng& rng) const override;
  [[nodiscard]] double log_pdf(ConstPoint theta) const override;

  [[nodiscard]] const Vector& mean() const { return mean_; }
  [[nodiscard]] const Vector& sds() const { return sds_; }

 private:
  Vector mean_;
  Vector sds_;
  double log_norm_;
};

/// The model's prior as a proposal; importance weights then equal the likelihood.
GaussianProposal prior_proposal(const NoisyMeanModel& model);

/// n iid draws, one per column.
Matrix draw_iid(const Proposal& proposal, Eigen::Index n, Rng& rng);

/// log w_i = log P~(theta_i) - log Q(theta_i).
///
/// Throws CoverageError for a point where Q vanishes but P~ does not.
WeightedSamples importance_weights(const TargetDensity& target, const Proposal& proposal, const Matrix& points);

/// Z ~ mean of the weights.
LogEstimate is_evidence(const WeightedSamples& samples);

/// Self-normalized estimate of <f>_P. Throws NumericalError when all weights are zero.
template <typename F>
Vector is_expectation(const WeightedSamples& samples, F&& f) {
  return weighted_expectation(samples.points, samples.log_weights, std::forward<F>(f));
}

}  // namespace mcmclab

#endif  // MCMCLAB_IMPORTANCE_HPP
