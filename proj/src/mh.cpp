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

#include "mcmclab/mh.hpp"

#include <algorithm>
#include <utility>

namespace mcmclab {

GaussianRandomWalk::GaussianRandomWalk(Eigen::Index dim, double scale) : dim_(dim), scale_(scale) {
  require(dim >= 1, "GaussianRandomWalk: dim must be >= 1");
  require(scale >= 0.0 && std::isfinite(scale), "GaussianRandomWalk: scale must be finite and nonnegative");
}

GaussianRandomWalk::GaussianRandomWalk(const Matrix& covariance, double scale)
    : dim_(covariance.rows()), scale_(scale) {
  require(covariance.rows() >= 1 && covariance.rows() == covariance.cols(), "GaussianRandomWalk: covariance must be square");
  require(scale >= 0.0 && std::isfinite(scale), "GaussianRandomWalk: scale must be finite and nonnegative");
  Eigen::LLT<Matrix> llt(covariance);
  require(llt.info() == Eigen::Success, "GaussianRandomWalk: covariance is not positive definite");
  chol_ = llt.matrixL();
}

Vector GaussianRandomWalk::propose(ConstPoint current, Rng& rng) const {
  require(current.size() == dim_, "GaussianRandomWalk: dimension mismatch");
  const Vector z = rng.normal(dim_);
  if (chol_.size() == 0) return current + scale_ * z;
  return current + scale_ * (chol_ * z);
}

double GaussianRandomWalk::log_q(ConstPoint from, ConstPoint to) const {
  const Vector step = to - from;
  if (chol_.size() == 0) return -0.5 * step.squaredNorm() / (scale_ * scale_);
  const Vector white = chol_.triangularView<Eigen::Lower>().solve(step);
  return -0.5 * white.squaredNorm() / (scale_ * scale_);
}

Chain::Chain(Vector start, std::uint64_t seed) : start_(std::move(start)), seed_(seed) {}

void Chain::reserve(std::size_t n) {
  data_.reserve(n * static_cast<std::size_t>(dim()));
  log_densities_.reserve(n);
  accepted_.reserve(n);
}

void Chain::append(ConstPoint state, double log_density, bool accepted) {
  require(state.size() == dim(), "Chain::append: dimension mismatch");
  data_.insert(data_.end(), state.data(), state.data() + state.size());
  log_densities_.push_back(log_density);
  accepted_.push_back(accepted);
}

Chain Chain::tail(Eigen::Index first) const {
  require(first >= 0 && first <= size(), "Chain::tail: index out of range");
  Chain out(first == 0 ? start_ : Vector(state(first - 1)), seed_);
  const auto d = static_cast<std::size_t>(dim());
  const auto f = static_cast<std::size_t>(first);
  out.data_.assign(data_.begin() + static_cast<std::ptrdiff_t>(f * d), data_.end());
  out.log_densities_.assign(log_densities_.begin() + static_cast<std::ptrdiff_t>(f), log_densities_.end());
  out.accepted_.assign(accepted_.begin() + static_cast<std::ptrdiff_t>(f), accepted_.end());
  return out;
}

double log_acceptance_ratio(const MarkovProposal& proposal, ConstPoint current, double current_log_density,
                            ConstPoint candidate, double candidate_log_density) {
  if (candidate_log_density == kNegInf) return kNegInf;
  double ratio = candidate_log_density - current_log_density;
  if (!proposal.symmetric()) ratio += proposal.log_q(candidate, current) - proposal.log_q(current, candidate);
  return ratio;
}

double transition_probability(const TargetDensity& target, const MarkovProposal& proposal, ConstPoint current,
                              ConstPoint candidate) {
  const double lc = target.log_density(current);
  require(std::isfinite(lc), "transition_probability: current point has zero density");
  const double lr = log_acceptance_ratio(proposal, current, lc, candidate, target.log_density(candidate));
  if (std::isnan(lr)) return 0.0;
  return std::exp(std::min(0.0, lr));
}

StepResult mh_step(const TargetDensity& target, const MarkovProposal& proposal, ConstPoint current,
                   double current_log_density, Rng& rng) {
  Vector candidate = proposal.propose(current, rng);
  const double lp = target.log_density(candidate);
  const double lr = log_acceptance_ratio(proposal, current, current_log_density, candidate, lp);
  const double log_u = std::log(rng.uniform());
  if (lr != kNegInf && !std::isnan(lr) && log_u <= std::min(0.0, lr)) return {std::move(candidate), lp, true};
  return {Vector(current), current_log_density, false};
}

StepResult mh_step(const TargetDensity& target, const MarkovProposal& proposal, ConstPoint current, Rng& rng) {
  const double lc = target.log_density(current);
  require(std::isfinite(lc), "mh_step: current point has zero density");
  return mh_step(target, proposal, current, lc, rng);
}

Chain run_chain(const TargetDensity& target, const MarkovProposal& proposal, ConstPoint start, Eigen::Index n,
                Rng& rng) {
  require(n >= 1, "run_chain: n must be >= 1");
  double lp = target.log_density(start);
  require(std::isfinite(lp), "run_chain: start point has zero density");
  Chain chain(Vector(start), rng.seed());
  chain.reserve(static_cast<std::size_t>(n));
  Vector current = start;
  for (Eigen::Index i = 0; i < n; ++i) {
    StepResult step = mh_step(target, proposal, current, lp, rng);
    if (step.accepted) {
      current = std::move(step.point);
      lp = step.log_density;
    }
    chain.append(current, lp, step.accepted);
  }
  return chain;
}

double acceptance_fraction(const Chain& chain) {
  require(!chain.empty(), "acceptance_fraction: empty chain");
  const auto hits = std::count(chain.accepted().begin(), chain.accepted().end(), true);
  return static_cast<double>(hits) / static_cast<double>(chain.size());
}

Chain drop_burn_in(const Chain& chain, double fraction) {
  require(fraction >= 0.0 && fraction < 1.0, "drop_burn_in: fraction must lie in [0, 1)");
  require(!chain.empty(), "drop_burn_in: empty chain");
  const auto drop = static_cast<Eigen::Index>(std::floor(fraction * static_cast<double>(chain.size())));
  return chain.tail(drop);
}

}  // namespace mcmclab
