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

#ifndef MCMCLAB_WEIGHTED_SAMPLES_HPP
#define MCMCLAB_WEIGHTED_SAMPLES_HPP

#include "mcmclab/common.hpp"
#include "mcmclab/log_math.hpp"

#include <type_traits>
#include <utility>

namespace mcmclab {

/// Points (one per column) with unnormalized log weights. Weights may be -inf (zero).
struct WeightedSamples {
  Matrix points;
  Vector log_weights;

  [[nodiscard]] Eigen::Index size() const { return log_weights.size(); }
  [[nodiscard]] Eigen::Index dim() const { return points.rows(); }
};

namespace detail {

template <typename R>
Vector as_vector(R&& value) {
  if constexpr (std::is_arithmetic_v<std::decay_t<R>>) {
    return Vector::Constant(1, static_cast<double>(value));
  } else {
    return Vector(std::forward<R>(value));
  }
}

}  // namespace detail

/// Self-normalized weighted mean of f over the columns of `points`:
/// sum_i f(x_i) w_i / sum_i w_i. `f` may return a scalar or an Eigen vector.
template <typename F>
Vector weighted_expectation(const Matrix& points, const Vector& log_weights, F&& f) {
  require(points.cols() == log_weights.size(), "weighted_expectation: points and weights differ in count");
  const double peak = log_weights.size() > 0 ? log_weights.maxCoeff() : kNegInf;
  if (!std::isfinite(peak)) throw NumericalError("weighted_expectation: total weight is zero");
  Vector acc;
  double total = 0.0;
  for (Eigen::Index i = 0; i < points.cols(); ++i) {
    const double w = std::exp(log_weights[i] - peak);
    if (w == 0.0) continue;
    Vector fi = detail::as_vector(f(Vector(points.col(i))));
    if (acc.size() == 0) acc = Vector::Zero(fi.size());
    acc += w * fi;
    total += w;
  }
  return acc / total;
}

}  // namespace mcmclab

#endif  // MCMCLAB_WEIGHTED_SAMPLES_HPP
