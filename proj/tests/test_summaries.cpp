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

#include "mcmclab/grid.hpp"
#include "mcmclab/summaries.hpp"
#include "mcmclab/targets.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace mcmclab;

namespace {

DiscretizedPosterior on_grid(const TargetDensity& target, double lo, double hi, Eigen::Index k) {
  return discretize(target, build_grid(GridSpec({Axis::uniform(lo, hi, k)})));
}

DiscretizedPosterior station(Eigen::Index k = 10000) { return on_grid(station_temperature_model(), 15.0, 40.0, k); }

DiscretizedPosterior points_1d(std::initializer_list<double> xs, std::initializer_list<double> masses) {
  Matrix pts(1, static_cast<Eigen::Index>(xs.size()));
  Vector m(static_cast<Eigen::Index>(masses.size()));
  Eigen::Index i = 0;
  for (double x : xs) pts(0, i++) = x;
  i = 0;
  for (double p : masses) m[i++] = std::log(p);
  return DiscretizedPosterior::from_log_masses(pts, m, Vector::Ones(pts.cols()));
}

Vector scalar(double x) { return Vector::Constant(1, x); }

}  // namespace

TEST_CASE("normalized masses") {
  const DiscretizedPosterior post = station();
  CHECK(std::abs(post.masses.sum() - 1.0) < 1e-12);
  CHECK(post.masses.minCoeff() >= 0.0);
  CHECK_THROWS_AS(DiscretizedPosterior::from_log_masses(Matrix::Zero(1, 2), Vector::Constant(2, kNegInf), Vector::Ones(2)),
                  NumericalError);
}

TEST_CASE("expected loss examples") {
  const DiscretizedPosterior at3 = points_1d({3.0}, {1.0});
  CHECK(expected_loss(at3, LossSpec::squared(), scalar(5.0)) == doctest::Approx(4.0));
  const DiscretizedPosterior pair = points_1d({0.0, 2.0}, {0.5, 0.5});
  CHECK(expected_loss(pair, LossSpec::absolute(), scalar(1.0)) == doctest::Approx(1.0));

  const LossSpec asym = LossSpec::asymmetric(25.0);
  CHECK(loss(asym, scalar(26.0), scalar(23.0)) == doctest::Approx(27.0));
  CHECK(loss(asym, scalar(23.0), scalar(26.0)) == doctest::Approx(3.0));
  CHECK(loss(asym, scalar(27.0), scalar(25.0)) == doctest::Approx(2.0));
  CHECK(loss(LossSpec::catastrophic(), scalar(1.0), scalar(1.0)) == 0.0);
  CHECK(loss(LossSpec::catastrophic(), scalar(1.0), scalar(1.5)) == 1.0);
}

TEST_CASE("point estimates of a symmetric posterior agree") {
  const IsotropicGaussianTarget g(1, 1.0);
  const DiscretizedPosterior post = on_grid(g, -6.0, 6.0, 1200);
  const double step = 0.01;
  CHECK(std::abs(point_estimate(post, LossSpec::squared())[0]) < 1e-10);
  CHECK(std::abs(point_estimate(post, LossSpec::absolute())[0]) <= step);
  CHECK(std::abs(point_estimate(post, LossSpec::catastrophic())[0]) <= step);
}

TEST_CASE("squared loss gives the weighted mean") {
  const oracle::Conjugate exact = oracle::station_posterior();
  const DiscretizedPosterior post = station();
  const double est = point_estimate(post, LossSpec::squared())[0];
  CHECK(est == doctest::Approx(exact.mean).epsilon(1e-4));
  CHECK(std::abs(est - 29.44) < 0.01);
  CHECK(std::abs(est - posterior_mean(post)[0]) < 1e-10);
  CHECK(std::abs(posterior_sd(post)[0] - exact.sd) < 1e-4);

  const DiscretizedPosterior lumpy = points_1d({-1.0, 0.5, 4.0}, {0.2, 0.5, 0.3});
  CHECK(std::abs(point_estimate(lumpy, LossSpec::squared())[0] - 1.25) < 1e-12);
}

TEST_CASE("estimates minimize their expected loss") {
  const GaussianMixtureTarget skew({{0.8, scalar(0.0), scalar(1.0)}, {0.2, scalar(4.0), scalar(0.3)}});
  const DiscretizedPosterior post = on_grid(skew, -6.0, 8.0, 1400);
  for (const LossSpec& spec : {LossSpec::squared(), LossSpec::absolute(), LossSpec::asymmetric(0.5)}) {
    const Vector best = point_estimate(post, spec);
    const double at = expected_loss(post, spec, best);
    for (double d : {-0.05, -0.01, 0.01, 0.05}) CHECK(expected_loss(post, spec, scalar(best[0] + d)) >= at - 1e-12);
  }
  const Vector mode = point_estimate(post, LossSpec::catastrophic());
  Eigen::Index top = 0;
  post.masses.maxCoeff(&top);
  CHECK(mode[0] == post.points(0, top));
}

TEST_CASE("catastrophic ties go to the smaller value") {
  const DiscretizedPosterior post = points_1d({2.0, -1.0, 0.0}, {0.4, 0.4, 0.2});
  CHECK(point_estimate(post, LossSpec::catastrophic())[0] == -1.0);
}

TEST_CASE("asymmetric loss on the station posterior") {
  const DiscretizedPosterior post = station();
  const double est = point_estimate(post, LossSpec::asymmetric(25.0))[0];
  const double median = quantile(post, 0.5);
  // Almost no posterior mass lies below 25; the linear branch dominates.
  CHECK(std::abs(est - median) < 0.01);
  const double below = (post.points.row(0).array() < 25.0).cast<double>().matrix().dot(post.masses);
  CHECK(below < 1e-10);
}

TEST_CASE("asymmetric loss pulls toward the cold side when the posterior straddles the threshold") {
  const GaussianMixtureTarget g({{1.0, scalar(25.0), scalar(2.0)}});
  const DiscretizedPosterior post = on_grid(g, 10.0, 40.0, 3000);
  const double est = point_estimate(post, LossSpec::asymmetric(25.0))[0];
  CHECK(est < posterior_mean(post)[0] - 0.1);
}

TEST_CASE("percentile interval") {
  SUBCASE("uniform") {
    const FunctionTarget flat(1, [](ConstPoint) { return 0.0; });
    const DiscretizedPosterior post = on_grid(flat, 0.0, 1.0, 1000);
    const auto [lo, hi] = percentile_interval(post, 0.5);
    CHECK(std::abs(lo - 0.25) <= 1e-3);
    CHECK(std::abs(hi - 0.75) <= 1e-3);
    const auto [wlo, whi] = percentile_interval(post, 0.99999);
    CHECK(wlo < 0.001);
    CHECK(whi > 0.999);
  }
  SUBCASE("station posterior") {
    const oracle::Conjugate exact = oracle::station_posterior();
    const double z = oracle::normal_quantile(0.84);
    const auto [lo, hi] = percentile_interval(station(), 0.68);
    CHECK(std::abs(lo - (exact.mean - z * exact.sd)) < 0.01);
    CHECK(std::abs(hi - (exact.mean + z * exact.sd)) < 0.01);
    CHECK(std::abs(lo - 29.05) < 0.01);
    CHECK(std::abs(hi - 29.84) < 0.01);
  }
  SUBCASE("nested in the coverage") {
    const GaussianMixtureTarget skew({{0.8, scalar(0.0), scalar(1.0)}, {0.2, scalar(4.0), scalar(0.3)}});
    const DiscretizedPosterior post = on_grid(skew, -6.0, 8.0, 700);
    const double median = quantile(post, 0.5);
    double prev_lo = median;
    double prev_hi = median;
    for (double y = 0.05; y < 0.999; y += 0.05) {
      const auto [lo, hi] = percentile_interval(post, y);
      CHECK(lo <= prev_lo);
      CHECK(hi >= prev_hi);
      prev_lo = lo;
      prev_hi = hi;
    }
  }
  SUBCASE("bad coverage") {
    const DiscretizedPosterior post = points_1d({0.0, 1.0}, {0.5, 0.5});
    CHECK_THROWS_AS(percentile_interval(post, 0.0), ContractViolation);
    CHECK_THROWS_AS(percentile_interval(post, 1.0), ContractViolation);
    CHECK_THROWS_AS(percentile_interval(post, -0.2), ContractViolation);
  }
}

TEST_CASE("threshold credible region") {
  SUBCASE("heavy cell") {
    const DiscretizedPosterior post = points_1d({0.0, 1.0}, {0.9, 0.1});
    const CredibleRegion r = threshold_credible_region(post, 0.9);
    CHECK(r.members[0]);
    CHECK_FALSE(r.members[1]);
    CHECK(r.mass == doctest::Approx(0.9));
    CHECK(r.threshold == doctest::Approx(0.9));
  }
  SUBCASE("ties enter together") {
    const DiscretizedPosterior post = points_1d({0.0, 1.0, 2.0}, {0.4, 0.3, 0.3});
    const CredibleRegion r = threshold_credible_region(post, 0.5);
    CHECK(r.members[1]);
    CHECK(r.members[2]);
    CHECK(r.mass == doctest::Approx(1.0));
  }
  SUBCASE("matches the percentile interval for a symmetric posterior") {
    const IsotropicGaussianTarget g(1, 1.0);
    const DiscretizedPosterior post = on_grid(g, -5.0, 5.0, 1000);
    const CredibleRegion r = threshold_credible_region(post, 0.68);
    double lo = 1e300;
    double hi = -1e300;
    for (Eigen::Index i = 0; i < post.size(); ++i) {
      if (!r.members[static_cast<std::size_t>(i)]) continue;
      lo = std::min(lo, post.points(0, i));
      hi = std::max(hi, post.points(0, i));
    }
    const auto [plo, phi] = percentile_interval(post, 0.68);
    CHECK(std::max(std::abs(lo - plo), std::abs(hi - phi)) <= 2 * 0.01);
  }
  SUBCASE("differs from the percentile interval for a skewed posterior") {
    const GaussianMixtureTarget skew({{0.8, scalar(0.0), scalar(1.0)}, {0.2, scalar(4.0), scalar(0.3)}});
    const DiscretizedPosterior post = on_grid(skew, -6.0, 8.0, 1400);
    const CredibleRegion r = threshold_credible_region(post, 0.68);
    const auto [plo, phi] = percentile_interval(post, 0.68);
    double inside_interval = 0.0;
    double overlap = 0.0;
    for (Eigen::Index i = 0; i < post.size(); ++i) {
      const double x = post.points(0, i);
      const bool in_pct = x >= plo && x <= phi;
      inside_interval += in_pct ? post.masses[i] : 0.0;
      overlap += (in_pct && r.members[static_cast<std::size_t>(i)]) ? post.masses[i] : 0.0;
    }
    CHECK(r.mass - overlap > 0.05);
    CHECK(inside_interval - overlap > 0.05);
  }
  SUBCASE("minimal at the discretization") {
    const GaussianMixtureTarget skew({{0.8, scalar(0.0), scalar(1.0)}, {0.2, scalar(4.0), scalar(0.3)}});
    const DiscretizedPosterior post = on_grid(skew, -6.0, 8.0, 333);
    for (double x : {0.1, 0.4, 0.68, 0.95}) {
      const CredibleRegion r = threshold_credible_region(post, x);
      CHECK(r.mass >= x - 1e-12);
      double least = 1e300;
      for (Eigen::Index i = 0; i < post.size(); ++i)
        if (r.members[static_cast<std::size_t>(i)]) least = std::min(least, post.masses[i]);
      CHECK(r.mass - least < x);
    }
  }
  SUBCASE("two dimensions") {
    const IsotropicGaussianTarget g(2, 1.0);
    const DiscretizedPosterior post =
        discretize(g, build_grid(GridSpec({Axis::uniform(-5.0, 5.0, 200), Axis::uniform(-5.0, 5.0, 200)})));
    const CredibleRegion r = threshold_credible_region(post, 0.68);
    // The 68% disc of a 2-D standard normal has radius sqrt(-2 ln 0.32).
    const double radius = std::sqrt(-2.0 * std::log(0.32));
    double rmax = 0.0;
    for (Eigen::Index i = 0; i < post.size(); ++i)
      if (r.members[static_cast<std::size_t>(i)]) rmax = std::max(rmax, post.points.col(i).norm());
    CHECK(std::abs(rmax - radius) < 0.05);
  }
  SUBCASE("bad coverage") {
    CHECK_THROWS_AS(threshold_credible_region(points_1d({0.0}, {1.0}), 1.0), ContractViolation);
  }
}

TEST_CASE("posterior predictive of a new reading") {
  const DiscretizedPosterior post = station();
  const oracle::Conjugate exact = oracle::station_posterior();
  SUBCASE("zero noise returns the posterior") {
    const Vector t = Vector::LinSpaced(41, 28.0, 31.0);
    const Vector pred = posterior_predictive_noisy_mean(post, 0.0, t);
    for (Eigen::Index i = 0; i < t.size(); ++i) {
      const double z = (t[i] - exact.mean) / exact.sd;
      const double pdf = std::exp(-0.5 * z * z) / (exact.sd * std::sqrt(2.0 * std::numbers::pi));
      CHECK(std::abs(pred[i] - pdf) < 1e-3 * pdf + 1e-6);
    }
  }
  SUBCASE("convolution width and normalization") {
    const double sd = std::hypot(exact.sd, 2.0);
    const Eigen::Index k = 4001;
    const Vector t = Vector::LinSpaced(k, exact.mean - 8 * sd, exact.mean + 8 * sd);
    const double dt = t[1] - t[0];
    const Vector pred = posterior_predictive_noisy_mean(post, 2.0, t);
    const double total = pred.sum() * dt;
    const double mean = t.dot(pred) * dt / total;
    const double var = (t.array() - mean).square().matrix().dot(pred) * dt / total;
    CHECK(std::abs(total - 1.0) < 1e-3);
    CHECK(std::abs(std::sqrt(var) / 2.039 - 1.0) < 0.01);
    CHECK(std::abs(std::sqrt(var) / sd - 1.0) < 1e-3);
  }
  SUBCASE("negative noise") {
    CHECK_THROWS_AS(posterior_predictive_noisy_mean(post, -1.0, scalar(1.0)), ContractViolation);
  }
}

TEST_CASE("Bayes factor") {
  CHECK(bayes_factor(2.5, 2.5) == doctest::Approx(1.0));
  CHECK(bayes_factor(1.0, 4.0, 8.0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(bayes_factor(0.0, 1.0), ContractViolation);
  CHECK_THROWS_AS(bayes_factor(1.0, 1.0, -1.0), ContractViolation);

  const Eigen::Index k = 100000;
  const GridCells cells = build_grid(GridSpec({Axis::uniform(0.0, 60.0, k)}));
  const double z1 = grid_evidence(station_temperature_model(25.0, 1.5), cells).log_value;
  const double z2 = grid_evidence(station_temperature_model(30.0, 3.0), cells).log_value;
  const double exact = oracle::station_log_evidence(25.0, 1.5) - oracle::station_log_evidence(30.0, 3.0);
  const double lr = log_bayes_factor(z1, z2);
  CHECK(std::abs(std::exp(lr - exact) - 1.0) < 0.01);
  CHECK(log_bayes_factor(z2, z1) == doctest::Approx(-lr));
  CHECK(bayes_factor(std::exp(z1), std::exp(z2)) * bayes_factor(std::exp(z2), std::exp(z1)) == doctest::Approx(1.0));
}

TEST_CASE("summaries ignore the normalization of the masses") {
  const GaussianMixtureTarget skew({{0.8, scalar(0.0), scalar(1.0)}, {0.2, scalar(4.0), scalar(0.3)}});
  const GridCells cells = build_grid(GridSpec({Axis::uniform(-6.0, 8.0, 500)}));
  const Vector lw = grid_log_weights(skew, cells);
  const DiscretizedPosterior a = DiscretizedPosterior::from_log_masses(cells.midpoints, lw, cells.volumes);
  const DiscretizedPosterior b =
      DiscretizedPosterior::from_log_masses(cells.midpoints, (lw.array() + std::log(37.5)).matrix(), cells.volumes);
  CHECK((a.masses - b.masses).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(point_estimate(a, LossSpec::asymmetric(0.5))[0] == doctest::Approx(point_estimate(b, LossSpec::asymmetric(0.5))[0]));
  CHECK(percentile_interval(a, 0.68).first == doctest::Approx(percentile_interval(b, 0.68).first));
  CHECK(threshold_credible_region(a, 0.68).members == threshold_credible_region(b, 0.68).members);
}
