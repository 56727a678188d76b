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
#include "mcmclab/importance.hpp"
#include "mcmclab/log_math.hpp"
#include "mcmclab/rng.hpp"
#include "mcmclab/targets.hpp"

#include <doctest.h>

using namespace mcmclab;

namespace {

Vector vec2(double a, double b) { return (Vector(2) << a, b).finished(); }

GaussianProposal exact_proposal() { return GaussianProposal(vec2(-0.3, 0.8), vec2(std::sqrt(2.0), std::sqrt(0.5))); }

}  // namespace

TEST_CASE("uniform draws have the right mean") {
  Rng rng(1);
  const Matrix x = draw_iid(UniformBoxProposal(Vector::Zero(2), Vector::Ones(2)), 100'000, rng);
  CHECK(std::abs(x.row(0).mean() - 0.5) < 0.005);
  CHECK(std::abs(x.row(1).mean() - 0.5) < 0.005);
  CHECK(x.minCoeff() >= 0.0);
  CHECK(x.maxCoeff() < 1.0);
}

TEST_CASE("gaussian draws have identity covariance") {
  Rng rng(2);
  const Matrix x = draw_iid(GaussianProposal(Vector::Zero(3), Vector::Ones(3)), 100'000, rng);
  const Matrix centered = x.colwise() - x.rowwise().mean();
  const Matrix cov = centered * centered.transpose() / static_cast<double>(x.cols() - 1);
  CHECK((cov - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 0.02);
}

TEST_CASE("draws are reproducible") {
  const GaussianProposal q(Vector::Zero(2), Vector::Ones(2));
  Rng a(99);
  Rng b(99);
  CHECK(draw_iid(q, 50, a) == draw_iid(q, 50, b));
  CHECK_THROWS_AS(draw_iid(q, 0, a), ContractViolation);
}

TEST_CASE("proposal densities are normalized") {
  const UniformBoxProposal box(vec2(-1.0, 0.0), vec2(3.0, 0.5));
  CHECK(box.log_volume() == doctest::Approx(std::log(2.0)));
  CHECK(box.log_pdf(vec2(0.0, 0.25)) == doctest::Approx(-std::log(2.0)));
  CHECK(box.log_pdf(vec2(4.0, 0.25)) == kNegInf);
  const GaussianProposal q(Vector::Constant(1, 1.0), Vector::Constant(1, 2.0));
  CHECK(q.log_pdf(Vector::Constant(1, 1.0)) == doctest::Approx(-std::log(2.0 * std::sqrt(2.0 * std::numbers::pi))));
  const IsotropicGaussianTarget kernel(1, 2.0);
  CHECK(q.log_pdf(Vector::Constant(1, 3.0)) - q.log_pdf(Vector::Constant(1, 1.0)) ==
        doctest::Approx(kernel.log_density(Vector::Constant(1, 2.0))));
}

TEST_CASE("a proposal shaped like the posterior gives constant weights") {
  Rng rng(3);
  const DiagonalGaussianTarget g = exercise_gaussian_2d();
  const GaussianProposal q = exact_proposal();
  for (const Eigen::Index n : {1, 7, 1000}) {
    const WeightedSamples ws = importance_weights(g, q, draw_iid(q, n, rng));
    CHECK((ws.log_weights.array() - std::log(2.0 * std::numbers::pi)).abs().maxCoeff() < 1e-12);
    CHECK(is_evidence(ws).value() == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-12));
    CHECK(kish_ess_log(ws.log_weights) == doctest::Approx(static_cast<double>(n)));
  }
}

TEST_CASE("uniform box weights are V times the density") {
  Rng rng(4);
  const DiagonalGaussianTarget g = exercise_gaussian_2d();
  const UniformBoxProposal box(vec2(-3.0, -1.0), vec2(2.0, 3.0));
  const WeightedSamples ws = importance_weights(g, box, draw_iid(box, 200, rng));
  for (Eigen::Index i = 0; i < ws.size(); ++i) {
    CHECK(ws.log_weights[i] == doctest::Approx(std::log(20.0) + g.log_density(ws.points.col(i))));
  }
}

TEST_CASE("prior proposal weights are the likelihood") {
  Rng rng(5);
  const NoisyMeanModel model = station_temperature_model();
  const GaussianProposal prior = prior_proposal(model);
  const WeightedSamples ws = importance_weights(model, prior, draw_iid(prior, 300, rng));
  for (Eigen::Index i = 0; i < ws.size(); ++i) {
    CHECK(ws.log_weights[i] == doctest::Approx(model.log_likelihood(ws.points(0, i))).epsilon(1e-12));
  }
}

TEST_CASE("missing coverage is fatal") {
  const IsotropicGaussianTarget g(1, 1.0);
  const UniformBoxProposal box(Vector::Constant(1, -1.0), Vector::Constant(1, 1.0));
  Matrix pts(1, 3);
  pts << 0.0, 0.5, 2.0;
  CHECK_THROWS_AS(importance_weights(g, box, pts), CoverageError);
  const FunctionTarget inside(1, [](ConstPoint x) { return std::abs(x[0]) <= 1.0 ? 0.0 : kNegInf; });
  const WeightedSamples ws = importance_weights(inside, box, pts);
  CHECK(ws.log_weights[2] == kNegInf);
  CHECK_THROWS_AS(importance_weights(IsotropicGaussianTarget(2, 1.0), box, pts), ContractViolation);
}

TEST_CASE("evidence from constant and zero weights") {
  WeightedSamples ws{Matrix::Zero(1, 4), Vector::Constant(4, std::log(3.5))};
  CHECK(is_evidence(ws).value() == doctest::Approx(3.5));
  ws.log_weights.setConstant(kNegInf);
  const LogEstimate z = is_evidence(ws);
  CHECK(z.degenerate);
  CHECK(z.value() == 0.0);
  CHECK_THROWS_AS(is_expectation(ws, [](const Vector& x) { return x; }), NumericalError);
}

TEST_CASE("standard normal proposal recovers 2 pi on average") {
  const DiagonalGaussianTarget g = exercise_gaussian_2d();
  const GaussianProposal q(Vector::Zero(2), Vector::Ones(2));
  constexpr int kReplicates = 100;
  Vector z(kReplicates);
  for (int r = 0; r < kReplicates; ++r) {
    Rng rng(derive_seed(2024, {static_cast<std::uint64_t>(r)}));
    z[r] = is_evidence(importance_weights(g, q, draw_iid(q, 10'000, rng))).value();
  }
  const double se = std::sqrt((z.array() - z.mean()).square().sum() / (kReplicates - 1) / kReplicates);
  CHECK(std::abs(z.mean() - 2.0 * std::numbers::pi) < 3.0 * se);
}

TEST_CASE("self-normalized expectations") {
  Rng rng(6);
  const DiagonalGaussianTarget g = exercise_gaussian_2d();
  const GaussianProposal q(Vector::Zero(2), Vector::Constant(2, 2.0));
  const WeightedSamples ws = importance_weights(g, q, draw_iid(q, 10'000, rng));
  CHECK(is_expectation(ws, [](const Vector&) { return 4.25; })[0] == doctest::Approx(4.25));
  const Vector mean = is_expectation(ws, [](const Vector& x) { return x; });
  const Vector p = normalized_exp(ws.log_weights);
  for (Eigen::Index j = 0; j < 2; ++j) {
    const double se = std::sqrt((p.array().square() * (ws.points.row(j).transpose().array() - mean[j]).square()).sum());
    CHECK(std::abs(mean[j] - g.mean()[j]) < 3.0 * se);
  }
  WeightedSamples scaled = ws;
  scaled.log_weights.array() += std::log(10.0);
  const Vector rescaled = is_expectation(scaled, [](const Vector& x) { return x; });
  CHECK((rescaled - mean).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(is_evidence(scaled).log_value == doctest::Approx(is_evidence(ws).log_value + std::log(10.0)).epsilon(1e-14));
}

TEST_CASE("kish ESS falls as the proposal widens") {
  const IsotropicGaussianTarget g(1, 1.0);
  double prev = std::numeric_limits<double>::infinity();
  for (const double s : {1.0, 2.0, 4.0, 8.0}) {
    Rng rng(7);
    const GaussianProposal q(Vector::Zero(1), Vector::Constant(1, s));
    const double ess = kish_ess_log(importance_weights(g, q, draw_iid(q, 100'000, rng)).log_weights) / 1e5;
    CHECK(ess == doctest::Approx(std::sqrt(2.0 * s * s - 1.0) / (s * s)).epsilon(0.05));
    CHECK(ess < prev + 1e-12);
    prev = ess;
  }
}

TEST_CASE("narrow and wide proposals are both consistent") {
  const DiagonalGaussianTarget g = exercise_gaussian_2d();
  for (const double s : {1.0, 2.0}) {
    const GaussianProposal q(Vector::Zero(2), Vector::Constant(2, s));
    auto rmse = [&](Eigen::Index n) {
      double sq = 0.0;
      for (int r = 0; r < 40; ++r) {
        Rng rng(derive_seed(77, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(r)}));
        const double z = is_evidence(importance_weights(g, q, draw_iid(q, n, rng))).value();
        sq += (z - 2.0 * std::numbers::pi) * (z - 2.0 * std::numbers::pi);
      }
      return std::sqrt(sq / 40.0);
    };
    CHECK(rmse(10'000) < 0.3 * rmse(100));
  }
}
