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

#ifndef MCMCLAB_TESTS_ORACLES_HPP
#define MCMCLAB_TESTS_ORACLES_HPP

#include "mcmclab/common.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace oracle {

/// Normal-normal conjugate update for the station readings.
struct Conjugate {
  double mean;
  double sd;
  double precision;
};

inline Conjugate station_posterior(double prior_mean = 25.0, double prior_sd = 1.5) {
  const std::vector<double> x = {26.3, 30.2, 29.4, 30.1, 29.8};
  const std::vector<double> s = {1.7, 1.8, 1.2, 0.5, 1.3};
  double precision = 1.0 / (prior_sd * prior_sd);
  double weighted = prior_mean * precision;
  for (std::size_t i = 0; i < x.size(); ++i) {
    precision += 1.0 / (s[i] * s[i]);
    weighted += x[i] / (s[i] * s[i]);
  }
  return {weighted / precision, 1.0 / std::sqrt(precision), precision};
}

/// log of the evidence of the station model: a product of Gaussians integrated over T.
inline double station_log_evidence(double prior_mean, double prior_sd) {
  const std::vector<double> x = {26.3, 30.2, 29.4, 30.1, 29.8};
  const std::vector<double> s = {1.7, 1.8, 1.2, 0.5, 1.3};
  double a = 1.0 / (prior_sd * prior_sd);
  double b = prior_mean * a;
  double c = prior_mean * prior_mean * a;
  double log_norm = -0.5 * std::log(2.0 * std::numbers::pi * prior_sd * prior_sd);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double w = 1.0 / (s[i] * s[i]);
    a += w;
    b += x[i] * w;
    c += x[i] * x[i] * w;
    log_norm -= 0.5 * std::log(2.0 * std::numbers::pi * s[i] * s[i]);
  }
  return log_norm - 0.5 * (c - b * b / a) + 0.5 * std::log(2.0 * std::numbers::pi / a);
}

/// Standard normal quantile by bisection on erfc.
inline double normal_quantile(double p) {
  double lo = -40.0;
  double hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (0.5 * std::erfc(-mid / std::numbers::sqrt2) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// AR(1) x_t = phi x_{t-1} + e_t with unit-variance stationary law.
template <typename Rng>
mcmclab::Vector ar1(double phi, Eigen::Index n, Rng& rng) {
  mcmclab::Vector x(n);
  const double innovation = std::sqrt(1.0 - phi * phi);
  x[0] = rng.normal();
  for (Eigen::Index t = 1; t < n; ++t) x[t] = phi * x[t - 1] + innovation * rng.normal();
  return x;
}

inline double ar1_tau(double phi) { return 2.0 * phi / (1.0 - phi); }

}  // namespace oracle

#endif  // MCMCLAB_TESTS_ORACLES_HPP
