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

#ifndef MCMCLAB_MH_HPP
#define MCMCLAB_MH_HPP

#include "mcmclab/common.hpp"
#include "mcmclab/rng.hpp"
#include "mcmclab/targets.hpp"

#include <cstdint>
#include <vector>

namespace mcmclab {

/// Burn-in fraction used when none is configured.
inline constexpr double kDefaultBurnIn = 0.2;

/// A Markov proposal Q(to | from).
class MarkovProposal {
 public:
  virtual ~MarkovProposal() = default;

  [[nodiscard]] virtual Vector propose(ConstPoint current, Rng& rng) const = 0;
  /// log Q(to | from), up to a constant shared by all (from, to) pairs.
  [[nodiscard]] virtual double log_q(ConstPoint from, ConstPoint to) const = 0;
  /// When true the Hastings correction is skipped; log_q(a, b) must equal log_q(b, a).
  [[nodiscard]] virtual bool symmetric() const = 0;
};

/// Gaussian random walk: candidate = current + scale * L z with z ~ N(0, I). L = I for
/// the isotropic form.
class GaussianRandomWalk final : public MarkovProposal {
 public:
  GaussianRandomWalk(Eigen::Index dim, double scale);
  /// Walk with covariance scale^2 * covariance. Throws ContractViolation if not positive definite.
  GaussianRandomWalk(const Matrix& covariance, double scale);

  [[nodiscard]] Vector propose(ConstPoint current, Rng& rng) const override;
  [[nodiscard]] double log_q(ConstPoint from, ConstPoint to) const override;
  [[nodiscard]] bool symmetric() const override { return true; }

  [[nodiscard]] double scale() const { return scale_; }

 private:
  Eigen::Index dim_;
  double scale_;
  Matrix chol_;  // empty for isotropic
};

/// gamma = delta / sqrt(d).
inline double scaled_step(double delta, Eigen::Index dim) { return delta / std::sqrt(static_cast<double>(dim)); }

/// An MCMC trace: the states after each of n steps and whether each step accepted.
///
/// A rejected step repeats the previous state bit for bit.
class Chain {
 public:
  Chain() = default;
  Chain(Vector start, std::uint64_t seed);

  void append(ConstPoint state, double log_density, bool accepted);
  void reserve(std::size_t n);

  [[nodiscard]] Eigen::Index dim() const { return start_.size(); }
  [[nodiscard]] Eigen::Index size() const { return static_cast<Eigen::Index>(accepted_.size()); }
  [[nodiscard]] bool empty() const { return accepted_.empty(); }

  /// d x n view, one state per column.
  [[nodiscard]] Eigen::Map<const Matrix> samples() const {
    return {data_.data(), dim(), size()};
  }
  [[nodiscard]] Eigen::Map<const Vector> state(Eigen::Index i) const {
    return {data_.data() + i * dim(), dim()};
  }
  [[nodiscard]] const std::vector<bool>& accepted() const { return accepted_; }
  [[nodiscard]] const std::vector<double>& log_densities() const { return log_densities_; }
  [[nodiscard]] const Vector& start() const { return start_; }
  [[nodiscard]] std::uint64_t seed() const { return seed_; }

  /// Copy of states [first, size()); start becomes the state before `first`.
  [[nodiscard]] Chain tail(Eigen::Index first) const;

 private:
  Vector start_;
  std::uint64_t seed_ = 0;
  std::vector<double> data_;
  std::vector<double> log_densities_;
  std::vector<bool> accepted_;
};

/// Hastings log ratio log P~(cand) - log P~(cur) + log Q(cur|cand) - log Q(cand|cur).
double log_acceptance_ratio(const MarkovProposal& proposal, ConstPoint current, double current_log_density,
                            ConstPoint candidate, double candidate_log_density);

/// min(1, P~(cand) Q(cur|cand) / (P~(cur) Q(cand|cur))). Throws ContractViolation when
/// the current point is outside the support.
double transition_probability(const TargetDensity& target, const MarkovProposal& proposal, ConstPoint current,
                              ConstPoint candidate);

struct StepResult {
  Vector point;
  double log_density;
  bool accepted;
};

/// One Metropolis-Hastings step. u is drawn even when the acceptance probability is one.
StepResult mh_step(const TargetDensity& target, const MarkovProposal& proposal, ConstPoint current, Rng& rng);
StepResult mh_step(const TargetDensity& target, const MarkovProposal& proposal, ConstPoint current,
                   double current_log_density, Rng& rng);

/// n steps from `start`. Throws ContractViolation when start has zero density.
Chain run_chain(const TargetDensity& target, const MarkovProposal& proposal, ConstPoint start, Eigen::Index n,
                Rng& rng);

double acceptance_fraction(const Chain& chain);

/// Drops the leading floor(fraction * n) states.
Chain drop_burn_in(const Chain& chain, double fraction = kDefaultBurnIn);

}  // namespace mcmclab

#endif  // MCMCLAB_MH_HPP
