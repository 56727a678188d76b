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

#ifndef MCMCLAB_GRID_HPP
#define MCMCLAB_GRID_HPP

#include "mcmclab/common.hpp"
#include "mcmclab/targets.hpp"
#include "mcmclab/weighted_samples.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace mcmclab {

/// Refuse to enumerate grids larger than this many cells.
inline constexpr std::size_t kMaxGridCells = 100'000'000;

/// Cell edges along one axis, strictly increasing and finite.
struct Axis {
  std::vector<double> edges;

  static Axis uniform(double lower, double upper, Eigen::Index cells);

  [[nodiscard]] Eigen::Index cells() const { return static_cast<Eigen::Index>(edges.size()) - 1; }
  [[nodiscard]] double lower() const { return edges.front(); }
  [[nodiscard]] double upper() const { return edges.back(); }
};

/// A rectangular N-D grid as the product of per-axis edge lists.
class GridSpec {
 public:
  /// Throws ContractViolation on an empty axis list or malformed edges.
  explicit GridSpec(std::vector<Axis> axes);

  /// Same bounds and cell count on every axis.
  static GridSpec cube(Eigen::Index dim, double lower, double upper, Eigen::Index cells_per_axis);

  [[nodiscard]] Eigen::Index dim() const { return static_cast<Eigen::Index>(axes_.size()); }
  [[nodiscard]] const std::vector<Axis>& axes() const { return axes_; }
  [[nodiscard]] const Axis& axis(Eigen::Index j) const { return axes_[static_cast<std::size_t>(j)]; }
  /// Product of per-axis cell counts, saturating at SIZE_MAX.
  [[nodiscard]] std::size_t cell_count() const;
  [[nodiscard]] double box_volume() const;

 private:
  std::vector<Axis> axes_;
};

/// Midpoint-rule cells. Cell i is column i of `midpoints`; the first axis varies slowest.
struct GridCells {
  Matrix midpoints;
  Vector volumes;

  [[nodiscard]] Eigen::Index size() const { return volumes.size(); }
  [[nodiscard]] Eigen::Index dim() const { return midpoints.rows(); }
};

/// Throws ResourceError when the grid has more than `max_cells` cells.
GridCells build_grid(const GridSpec& spec, std::size_t max_cells = kMaxGridCells);

/// log(P~(theta_i) dTheta_i) for every cell.
Vector grid_log_weights(const TargetDensity& target, const GridCells& cells);

/// P~(theta_i) dTheta_i for every cell.
Vector grid_weights(const TargetDensity& target, const GridCells& cells);

/// Riemann-sum evidence, sum_i P~(theta_i) dTheta_i, accumulated in log space.
/// A grid on which the target vanishes everywhere yields a degenerate estimate.
LogEstimate grid_evidence(const TargetDensity& target, const GridCells& cells);

/// Cells as weighted samples, weights P~ dTheta.
WeightedSamples grid_samples(const TargetDensity& target, const GridCells& cells);

/// Riemann-sum posterior expectation of f. Throws NumericalError on zero evidence.
template <typename F>
Vector grid_expectation(const TargetDensity& target, const GridCells& cells, F&& f) {
  return weighted_expectation(cells.midpoints, grid_log_weights(target, cells), std::forward<F>(f));
}

}  // namespace mcmclab

#endif  // MCMCLAB_GRID_HPP
