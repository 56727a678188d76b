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

#ifndef MCMCLAB_LOG_MATH_HPP
#define MCMCLAB_LOG_MATH_HPP

#include "mcmclab/common.hpp"

#include <algorithm>
#include <cmath>

namespace mcmclab {

/// log(sum(exp(x))) without overflow. Returns -inf for an empty or all -inf input.
template <typename Derived>
double log_sum_exp(const Eigen::DenseBase<Derived>& x) {
  if (x.size() == 0) return kNegInf;
  const double peak = x.maxCoeff();
  if (!std::isfinite(peak)) return peak;
  return peak + std::log((x.derived().array() - peak).exp().sum());
}

/// log of the arithmetic mean of exp(x).
template <typename Derived>
double log_mean_exp(const Eigen::DenseBase<Derived>& x) {
  return log_sum_exp(x) - std::log(static_cast<double>(x.size()));
}

inline double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  if (a == kNegInf) return a;
  return a + std::log1p(std::exp(b - a));
}

/// Normalized probabilities exp(x - log_sum_exp(x)).
template <typename Derived>
Vector normalized_exp(const Eigen::DenseBase<Derived>& x) {
  const double total = log_sum_exp(x);
  if (!std::isfinite(total)) throw NumericalError("normalized_exp: total weight is zero");
  return (x.derived().array() - total).exp().matrix();
}

}  // namespace mcmclab

#endif  // MCMCLAB_LOG_MATH_HPP
