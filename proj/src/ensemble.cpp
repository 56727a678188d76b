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

#include "mcmclab/ensemble.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace mcmclab {

namespace {

/// Running sums that give C_j for any j in O(d^2). Sums are taken about a reference
/// point, the ensemble mean at the last reset.
class CovarianceTracker {
 public:
  explicit CovarianceTracker(const Matrix& positions) { reset(positions); }

  void reset(const Matrix& positions) {
    count_ = positions.cols();
    reference_ = positions.rowwise().mean();
    const Matrix centered = positions.colwise() - reference_;
    sum_ = centered.rowwise().sum();
    outer_ = centered * centered.transpose();
  }

  [[nodiscard]] Matrix excluding(const Vector& point) const {
    const Vector c = point - reference_;
    const Vector s = sum_ - c;
    const double k = static_cast<double>(count_ - 1);
    return (outer_ - c * c.transpose() - s * s.transpose() / k) / (k - 1.0);
  }

  void replace(const Vector& before, const Vector& after) {
    const Vector b = before - reference_;
    const Vector a = after - reference_;
    sum_ += a - b;
    outer_ += a * a.transpose() - b * b.transpose();
  }

 private:
  Eigen::Index count_ = 0;
  Vector reference_;
  Vector sum_;
  Matrix outer_;
};

Eigen::Index other_chain(Eigen::Index j, Eigen::Index offset) { return offset >= j ? offset + 1 : offset; }

/// Metropolis accept/reject of `candidate` for chain j, with an extra log factor; records history.
bool settle(const TargetDensity& target, EnsembleState& state, Eigen::Index j, const Vector& candidate,
            double extra_log_factor, Rng& rng) {
  const double lp = target.log_density(candidate);
  const double lr = lp == kNegInf ? kNegInf : extra_log_factor + lp - state.log_densities[j];
  const double log_u = std::log(rng.uniform());
  const bool accept = lr != kNegInf && !std::isnan(lr) && log_u <= std::min(0.0, lr);
  if (accept) {
    state.positions.col(j) = candidate;
    state.log_densities[j] = lp;
  }
  state.histories[static_cast<std::size_t>(j)].append(state.positions.col(j), state.log_densities[j], accept);
  return accept;
}

void check_chain_index(const EnsembleState& state, Eigen::Index j) {
  require(j >= 0 && j < state.size(), "ensemble: chain index out of range");
  require(static_cast<Eigen::Index>(state.histories.size()) == state.size(), "ensemble: state has no histories");
}

bool gaussian_move(const TargetDensity& target, EnsembleState& state, Eigen::Index j, double gamma,
                   const Matrix& chol, Rng& rng) {
  const Vector candidate = state.positions.col(j) + gamma * (chol * rng.normal(state.dim()));
  return settle(target, state, j, candidate, 0.0, rng);
}

bool de_move(const TargetDensity& target, EnsembleState& state, Eigen::Index j, double gamma, double jitter_fraction,
             const Matrix* chol, Rng& rng) {
  const Eigen::Index m = state.size();
  const auto a = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(m - 1)));
  auto b = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(m - 2)));
  if (b >= a) ++b;
  const Eigen::Index k = other_chain(j, a);
  const Eigen::Index l = other_chain(j, b);
  Vector shift = state.positions.col(k) - state.positions.col(l);
  if (jitter_fraction > 0.0) shift += std::sqrt(jitter_fraction) * (*chol * rng.normal(state.dim()));
  const Vector candidate = state.positions.col(j) + gamma * shift;
  return settle(target, state, j, candidate, 0.0, rng);
}

}  // namespace

EnsembleState make_ensemble(const TargetDensity& target, Matrix positions, std::uint64_t seed) {
  require(positions.rows() == target.dim(), "make_ensemble: position dimension does not match target");
  require(positions.cols() >= 1, "make_ensemble: at least one chain is required");
  EnsembleState state;
  state.log_densities.resize(positions.cols());
  for (Eigen::Index j = 0; j < positions.cols(); ++j) {
    state.log_densities[j] = target.log_density(positions.col(j));
    require(std::isfinite(state.log_densities[j]), "make_ensemble: chain " + std::to_string(j) + " starts at zero density");
    state.histories.emplace_back(Vector(positions.col(j)), seed);
  }
  state.positions = std::move(positions);
  return state;
}

EnsembleState disperse_ensemble(const TargetDensity& target, ConstPoint center, Eigen::Index m, Rng& rng) {
  require(m >= 1, "disperse_ensemble: m must be >= 1");
  require(center.size() == target.dim(), "disperse_ensemble: center dimension does not match target");
  Matrix positions(target.dim(), m);
  for (Eigen::Index j = 0; j < m; ++j) {
    // A bounded number of redraws for targets with restricted support.
    for (int attempt = 0;; ++attempt) {
      positions.col(j) = center + rng.normal(target.dim());
      if (std::isfinite(target.log_density(positions.col(j)))) break;
      require(attempt < 1000, "disperse_ensemble: could not place a chain inside the support");
    }
  }
  return make_ensemble(target, std::move(positions), rng.seed());
}

Matrix ensemble_covariance(const Matrix& positions, Eigen::Index excluded) {
  const Eigen::Index m = positions.cols();
  require(m >= 3, "ensemble_covariance: at least 3 chains are required");
  require(excluded >= 0 && excluded < m, "ensemble_covariance: chain index out of range");
  Matrix others(positions.rows(), m - 1);
  others << positions.leftCols(excluded), positions.rightCols(m - 1 - excluded);
  const Vector mean = others.rowwise().mean();
  const Matrix centered = others.colwise() - mean;
  return centered * centered.transpose() / static_cast<double>(m - 2);
}

Matrix regularized_cholesky(const Matrix& covariance) {
  require(covariance.rows() == covariance.cols() && covariance.rows() >= 1, "regularized_cholesky: matrix must be square");
  Eigen::LLT<Matrix> llt(covariance);
  if (llt.info() == Eigen::Success) return llt.matrixL();
  const double d = static_cast<double>(covariance.rows());
  double ridge = 1e-10 * std::max(0.0, covariance.trace()) / d + 1e-300;
  for (int attempt = 0; attempt < 400; ++attempt, ridge *= 10.0) {
    llt.compute(covariance + ridge * Matrix::Identity(covariance.rows(), covariance.cols()));
    if (llt.info() == Eigen::Success) return llt.matrixL();
  }
  throw NumericalError("regularized_cholesky: matrix could not be regularized");
}

double stretch_factor_from_uniform(const StretchLaw& law, double u) {
  require(law.a > 1.0, "StretchLaw: a must exceed 1");
  const double root = (law.a - 1.0) * u + 1.0;
  return root * root / law.a;
}

double sample_stretch_factor(const StretchLaw& law, Rng& rng) { return stretch_factor_from_uniform(law, rng.uniform()); }

double stretch_density(const StretchLaw& law, double gamma) {
  require(law.a > 1.0, "StretchLaw: a must exceed 1");
  if (gamma < 1.0 / law.a || gamma > law.a) return 0.0;
  return 1.0 / std::sqrt(gamma);
}

bool ensemble_gaussian_step(const TargetDensity& target, EnsembleState& state, Eigen::Index j, double gamma, Rng& rng) {
  check_chain_index(state, j);
  const Matrix chol = regularized_cholesky(ensemble_covariance(state.positions, j));
  return gaussian_move(target, state, j, gamma, chol, rng);
}

bool de_step(const TargetDensity& target, EnsembleState& state, Eigen::Index j, double gamma, double jitter_fraction,
             Rng& rng) {
  check_chain_index(state, j);
  require(state.size() >= 3, "de_step: at least 3 chains are required");
  require(jitter_fraction >= 0.0, "de_step: jitter fraction must be nonnegative");
  if (jitter_fraction > 0.0) {
    const Matrix chol = regularized_cholesky(ensemble_covariance(state.positions, j));
    return de_move(target, state, j, gamma, jitter_fraction, &chol, rng);
  }
  return de_move(target, state, j, gamma, 0.0, nullptr, rng);
}

bool stretch_step(const TargetDensity& target, EnsembleState& state, Eigen::Index j, const StretchLaw& law, Rng& rng) {
  check_chain_index(state, j);
  require(state.size() >= 2, "stretch_step: at least 2 chains are required");
  const Eigen::Index k = other_chain(j, static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(state.size() - 1))));
  const double z = sample_stretch_factor(law, rng);
  const Vector candidate = state.positions.col(k) + z * (state.positions.col(j) - state.positions.col(k));
  return settle(target, state, j, candidate, static_cast<double>(state.dim() - 1) * std::log(z), rng);
}

Eigen::Index minimum_ensemble_size(const EnsembleMethod& method) {
  return std::holds_alternative<StretchMove>(method) ? 2 : 3;
}

EnsembleRun run_ensemble(const EnsembleMethod& method, const TargetDensity& target, EnsembleState initial,
                         Eigen::Index sweeps, Rng& rng) {
  require(sweeps >= 0, "run_ensemble: sweep count must be nonnegative");
  require(initial.dim() == target.dim(), "run_ensemble: ensemble dimension does not match target");
  require(initial.size() >= minimum_ensemble_size(method),
          "run_ensemble: method needs at least " + std::to_string(minimum_ensemble_size(method)) + " chains, got " +
              std::to_string(initial.size()));
  require(static_cast<Eigen::Index>(initial.histories.size()) == initial.size(), "run_ensemble: state has no histories");

  EnsembleRun run{std::move(initial), {}};
  EnsembleState& state = run.state;
  const Eigen::Index m = state.size();

  std::visit(
      [&](const auto& move) {
        using Move = std::decay_t<decltype(move)>;
        if constexpr (std::is_same_v<Move, StretchMove>) {
          require(move.law.a > 1.0, "run_ensemble: stretch parameter a must exceed 1");
        } else {
          require(move.gamma >= 0.0 && std::isfinite(move.gamma), "run_ensemble: gamma must be finite and nonnegative");
          if constexpr (std::is_same_v<Move, DifferentialEvolutionMove>) {
            require(move.jitter_fraction >= 0.0, "run_ensemble: jitter fraction must be nonnegative");
          }
          if (move.gamma == 0.0) run.warnings.emplace_back("degenerate configuration: gamma = 0 proposes the current point");
        }
      },
      method);

  for (auto& h : state.histories) h.reserve(static_cast<std::size_t>(sweeps));

  for (Eigen::Index sweep = 0; sweep < sweeps; ++sweep) {
    std::visit(
        [&](const auto& move) {
          using Move = std::decay_t<decltype(move)>;
          if constexpr (std::is_same_v<Move, StretchMove>) {
            for (Eigen::Index j = 0; j < m; ++j) stretch_step(target, state, j, move.law, rng);
          } else {
            constexpr bool is_de = std::is_same_v<Move, DifferentialEvolutionMove>;
            bool needs_covariance = true;
            if constexpr (is_de) needs_covariance = move.jitter_fraction > 0.0;
            if (!needs_covariance) {
              for (Eigen::Index j = 0; j < m; ++j) de_move(target, state, j, move.gamma, 0.0, nullptr, rng);
              return;
            }
            CovarianceTracker tracker(state.positions);
            for (Eigen::Index j = 0; j < m; ++j) {
              const Vector before = state.positions.col(j);
              const Matrix chol = regularized_cholesky(tracker.excluding(before));
              bool accepted = false;
              if constexpr (is_de) {
                accepted = de_move(target, state, j, move.gamma, move.jitter_fraction, &chol, rng);
              } else {
                accepted = gaussian_move(target, state, j, move.gamma, chol, rng);
              }
              if (accepted) tracker.replace(before, state.positions.col(j));
            }
          }
        },
        method);
    ++state.iteration;
  }
  return run;
}

double ensemble_acceptance_fraction(const EnsembleState& state) {
  std::size_t hits = 0;
  std::size_t total = 0;
  for (const auto& h : state.histories) {
    hits += static_cast<std::size_t>(std::count(h.accepted().begin(), h.accepted().end(), true));
    total += h.accepted().size();
  }
  require(total > 0, "ensemble_acceptance_fraction: no moves recorded");
  return static_cast<double>(hits) / static_cast<double>(total);
}

}  // namespace mcmclab
