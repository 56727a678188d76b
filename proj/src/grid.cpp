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

#include "mcmclab/log_math.hpp"

#include <limits>
#include <string>

namespace mcmclab {

Axis Axis::uniform(double lower, double upper, Eigen::Index cells) {
  require(cells >= 1, "Axis::uniform: cell count must be >= 1");
  require(std::isfinite(lower) && std::isfinite(upper) && lower < upper, "Axis::uniform: bounds must be finite and increasing");
  Axis axis;
  axis.edges.resize(static_cast<std::size_t>(cells) + 1);
  const double width = (upper - lower) / static_cast<double>(cells);
  for (Eigen::Index j = 0; j <= cells; ++j) axis.edges[static_cast<std::size_t>(j)] = lower + width * static_cast<double>(j);
  axis.edges.back() = upper;
  return axis;
}

GridSpec::GridSpec(std::vector<Axis> axes) : axes_(std::move(axes)) {
  require(!axes_.empty(), "GridSpec: at least one axis is required");
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    const auto& e = axes_[a].edges;
    require(e.size() >= 2, "GridSpec: axis " + std::to_string(a) + " needs at least one cell");
    for (std::size_t i = 0; i < e.size(); ++i) {
      require(std::isfinite(e[i]), "GridSpec: axis " + std::to_string(a) + " has a nonfinite edge");
      if (i > 0) require(e[i] > e[i - 1], "GridSpec: axis " + std::to_string(a) + " edges must be strictly increasing");
    }
  }
}

GridSpec GridSpec::cube(Eigen::Index dim, double lower, double upper, Eigen::Index cells_per_axis) {
  require(dim >= 1, "GridSpec::cube: dim must be >= 1");
  return GridSpec(std::vector<Axis>(static_cast<std::size_t>(dim), Axis::uniform(lower, upper, cells_per_axis)));
}

std::size_t GridSpec::cell_count() const {
  std::size_t n = 1;
  for (const auto& a : axes_) {
    const auto k = static_cast<std::size_t>(a.cells());
    if (n > std::numeric_limits<std::size_t>::max() / k) return std::numeric_limits<std::size_t>::max();
    n *= k;
  }
  return n;
}

double GridSpec::box_volume() const {
  double v = 1.0;
  for (const auto& a : axes_) v *= a.upper() - a.lower();
  return v;
}

GridCells build_grid(const GridSpec& spec, std::size_t max_cells) {
  const std::size_t n = spec.cell_count();
  if (n > max_cells) {
    throw ResourceError("build_grid: " + std::to_string(n) + " cells exceeds the limit of " + std::to_string(max_cells));
  }
  const Eigen::Index d = spec.dim();
  GridCells cells{Matrix(d, static_cast<Eigen::Index>(n)), Vector(static_cast<Eigen::Index>(n))};

  std::vector<Eigen::Index> index(static_cast<std::size_t>(d), 0);
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i) {
    double volume = 1.0;
    for (Eigen::Index j = 0; j < d; ++j) {
      const auto& e = spec.axis(j).edges;
      const auto k = static_cast<std::size_t>(index[static_cast<std::size_t>(j)]);
      cells.midpoints(j, i) = 0.5 * (e[k] + e[k + 1]);
      volume *= e[k + 1] - e[k];
    }
    cells.volumes[i] = volume;
    // Odometer increment, last axis fastest.
    for (Eigen::Index j = d - 1; j >= 0; --j) {
      auto& idx = index[static_cast<std::size_t>(j)];
      if (++idx < spec.axis(j).cells()) break;
      idx = 0;
    }
  }
  return cells;
}

Vector grid_log_weights(const TargetDensity& target, const GridCells& cells) {
  require(cells.dim() == target.dim(), "grid: cell dimension does not match target dimension");
  Vector lw(cells.size());
  for (Eigen::Index i = 0; i < cells.size(); ++i) {
    lw[i] = target.log_density(cells.midpoints.col(i)) + std::log(cells.volumes[i]);
  }
  return lw;
}

Vector grid_weights(const TargetDensity& target, const GridCells& cells) {
  return grid_log_weights(target, cells).array().exp().matrix();
}

LogEstimate grid_evidence(const TargetDensity& target, const GridCells& cells) {
  const double lz = log_sum_exp(grid_log_weights(target, cells));
  return {lz, !std::isfinite(lz)};
}

WeightedSamples grid_samples(const TargetDensity& target, const GridCells& cells) {
  return {cells.midpoints, grid_log_weights(target, cells)};
}

}  // namespace mcmclab
