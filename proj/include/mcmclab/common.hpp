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

#ifndef MCMCLAB_COMMON_HPP
#define MCMCLAB_COMMON_HPP

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace mcmclab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using ConstPoint = Eigen::Ref<const Eigen::VectorXd>;

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// A caller broke a precondition (dimension mismatch, out-of-range parameter).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A request would exceed a configured size guard.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical quantity is undefined for the given input (zero variance, zero total weight).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A proposal assigns zero density where the target does not.
class CoverageError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A positive quantity accumulated in log space.
///
/// `degenerate` is set when every contribution was zero; `log_value` is then -inf.
struct LogEstimate {
  double log_value = kNegInf;
  bool degenerate = true;

  [[nodiscard]] double value() const { return std::exp(log_value); }
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ContractViolation(message);
}

}  // namespace mcmclab

#endif  // MCMCLAB_COMMON_HPP
