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
#include "mcmclab/grid.hpp"
#include "mcmclab/log_math.hpp"
#include "mcmclab/rng.hpp"
#include "mcmclab/targets.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace mcmclab;

namespace {

const FunctionTarget flat1(1, [](ConstPoint) { return 0.0; });

IsotropicGaussianTarget standard_normal() { return IsotropicGaussianTarget(1, 1.0); }

}  // namespace

TEST_CASE("midpoints and volumes") {
  SUBCASE("bisection") {
    const GridCells c = build_grid(GridSpec({Axis::uniform(0.0, 1.0, 2)}));
    REQUIRE(c.size() == 2);
    CHECK(c.midpoints(0, 0) == 0.25);
    CHECK(c.midpoints(0, 1) == 0.75);
    CHECK(c.volumes[0] == 0.5);
    CHECK(c.volumes[1] == 0.5);
  }
  SUBCASE("single 2-D cell") {
    const GridCells c = build_grid(GridSpec({Axis::uniform(0.0, 1.0, 1), Axis::uniform(0.0, 2.0, 1)}));
    REQUIRE(c.size() == 1);
    CHECK(c.midpoints(0, 0) == 0.5);
    CHECK(c.midpoints(1, 0) == 1.0);
    CHECK(c.volumes[0] == 2.0);
  }
  SUBCASE("nonuniform edges") {
    const GridCells c = build_grid(GridSpec({Axis{{0.0, 0.1, 1.0}}}));
    CHECK(c.volumes[0] == doctest::Approx(0.1));
    CHECK(c.volumes[1] == doctest::Approx(0.9));
    CHECK(c.midpoints(0, 1) == doctest::Approx(0.55));
  }
}

TEST_CASE("cells are ordered with the first axis slowest") {
  const GridCells c = build_grid(GridSpec({Axis::uniform(0.0, 2.0, 2), Axis::uniform(0.0, 3.0, 3)}));
  REQUIRE(c.size() == 6);
  CHECK(c.midpoints(0, 0) == 0.5);
  CHECK(c.midpoints(1, 0) == 0.5);
  CHECK(c.midpoints(1, 1) == 1.5);
  CHECK(c.midpoints(0, 3) == 1.5);
  CHECK(c.midpoints(1, 3) == 0.5);
}

TEST_CASE("volumes sum to the box volume") {
  const GridSpec spec({Axis{{-1.0, -0.3, 0.2, 2.5}}, Axis::uniform(0.0, 0.7, 7), Axis{{1.0, 1.5, 4.0}}});
  const GridCells c = build_grid(spec);
  CHECK(c.size() == 42);
  CHECK(c.volumes.sum() == doctest::Approx(spec.box_volume()).epsilon(1e-12));
  CHECK(spec.box_volume() == doctest::Approx(3.5 * 0.7 * 3.0));
}

TEST_CASE("malformed specifications") {
  CHECK_THROWS_AS(Axis::uniform(0.0, 1.0, 0), ContractViolation);
  CHECK_THROWS_AS(Axis::uniform(1.0, 0.0, 3), ContractViolation);
  CHECK_THROWS_AS(Axis::uniform(0.0, std::numeric_limits<double>::infinity(), 3), ContractViolation);
  CHECK_THROWS_AS(GridSpec({Axis{{0.0, 0.5, 0.5}}}), ContractViolation);
  CHECK_THROWS_AS(GridSpec({Axis{{0.0}}}), ContractViolation);
  CHECK_THROWS_AS(GridSpec(std::vector<Axis>{}), ContractViolation);
}

TEST_CASE("oversized grids are refused") {
  const GridSpec big = GridSpec::cube(9, 0.0, 1.0, 10);
  CHECK(big.cell_count() == 1'000'000'000u);
  CHECK_THROWS_AS(build_grid(big), ResourceError);
  CHECK_THROWS_AS(build_grid(GridSpec::cube(2, 0.0, 1.0, 10), 99), ResourceError);
  CHECK(GridSpec::cube(40, 0.0, 1.0, 1000).cell_count() == std::numeric_limits<std::size_t>::max());
}

TEST_CASE("evidence of simple targets") {
  for (const Eigen::Index k : {1, 3, 10}) {
    CHECK(grid_evidence(flat1, build_grid(GridSpec({Axis::uniform(0.0, 1.0, k)}))).value() == doctest::Approx(1.0));
  }
  const LogEstimate gauss = grid_evidence(standard_normal(), build_grid(GridSpec({Axis::uniform(-8.0, 8.0, 1000)})));
  CHECK(std::abs(gauss.value() - std::sqrt(2.0 * std::numbers::pi)) < 1e-4);
  CHECK_FALSE(gauss.degenerate);
  const GridCells cells = build_grid(GridSpec::cube(2, -8.0, 8.0, 200));
  CHECK(std::abs(grid_evidence(exercise_gaussian_2d(), cells).value() - 2.0 * std::numbers::pi) < 0.01);
}

TEST_CASE("evidence with no support is flagged") {
  const FunctionTarget nowhere(1, [](ConstPoint) { return kNegInf; });
  const LogEstimate z = grid_evidence(nowhere, build_grid(GridSpec({Axis::uniform(0.0, 1.0, 4)})));
  CHECK(z.degenerate);
  CHECK(z.value() == 0.0);
  CHECK_THROWS_AS(grid_expectation(nowhere, build_grid(GridSpec({Axis::uniform(0.0, 1.0, 4)})), [](const Vector& x) { return x; }),
                  NumericalError);
}

TEST_CASE("expectations on the exercise gaussian") {
  const DiagonalGaussianTarget g = exercise_gaussian_2d();
  const GridCells cells = build_grid(GridSpec::cube(2, -8.0, 8.0, 200));
  const Vector mean = grid_expectation(g, cells, [](const Vector& x) { return x; });
  CHECK(std::abs(mean[0] + 0.3) < 1e-3);
  CHECK(std::abs(mean[1] - 0.8) < 1e-3);
  const Vector var = grid_expectation(g, cells, [](const Vector& x) { return (x - Vector((Vector(2) << -0.3, 0.8).finished())).array().square().matrix().eval(); });
  CHECK(std::abs(var[0] - 2.0) < 0.01);
  CHECK(std::abs(var[1] - 0.5) < 0.01);
  CHECK(grid_expectation(g, cells, [](const Vector&) { return 7.5; })[0] == doctest::Approx(7.5));
  CHECK(grid_expectation(g, cells, [](const Vector&) { return 1.0; })[0] == 1.0);
}

TEST_CASE("grid weights") {
  const GridCells flat_cells = build_grid(GridSpec({Axis::uniform(-1.0, 3.0, 8)}));
  const Vector w = grid_weights(flat1, flat_cells);
  CHECK((w.array() == w[0]).all());

  const GridCells one = build_grid(GridSpec({Axis::uniform(-1.0, 1.0, 1)}));
  CHECK(grid_weights(standard_normal(), one)[0] == doctest::Approx(grid_evidence(standard_normal(), one).value()));

  const DiagonalGaussianTarget g = exercise_gaussian_2d();
  const GridCells cells = build_grid(GridSpec::cube(2, -8.0, 8.0, 60));
  CHECK(grid_weights(g, cells).sum() == doctest::Approx(grid_evidence(g, cells).value()).epsilon(1e-12));
}

TEST_CASE("wide grids waste samples") {
  const DiagonalGaussianTarget g = exercise_gaussian_2d();
  const double tight = kish_ess_log(grid_log_weights(g, build_grid(GridSpec::cube(2, -2.0, 2.0, 30))));
  const double wide = kish_ess_log(grid_log_weights(g, build_grid(GridSpec::cube(2, -6.0, 6.0, 30))));
  CHECK(tight > 2.0 * wide);
}

TEST_CASE("refinement converges with shrinking increments") {
  const IsotropicGaussianTarget g = standard_normal();
  double prev_z = grid_evidence(g, build_grid(GridSpec({Axis::uniform(-3.0, 3.0, 4)}))).value();
  double prev_step = std::numeric_limits<double>::infinity();
  double last_step = 0.0;
  for (Eigen::Index k = 8; k <= 4096; k *= 2) {
    const double z = grid_evidence(g, build_grid(GridSpec({Axis::uniform(-3.0, 3.0, k)}))).value();
    last_step = std::abs(z - prev_z);
    CHECK(last_step < prev_step);
    prev_step = last_step;
    prev_z = z;
  }
  CHECK(last_step < 1e-6);
}

TEST_CASE("a grid over one mode finds half the evidence") {
  const GaussianMixtureTarget two({{0.5, Vector::Constant(1, -6.0), Vector::Ones(1)}, {0.5, Vector::Constant(1, 6.0), Vector::Ones(1)}});
  const double one_mode = grid_evidence(two, build_grid(GridSpec({Axis::uniform(0.0, 12.0, 4000)}))).value();
  const double both = grid_evidence(two, build_grid(GridSpec({Axis::uniform(-12.0, 12.0, 8000)}))).value();
  CHECK(one_mode == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(both == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("accumulation order does not matter") {
  const DiagonalGaussianTarget g = exercise_gaussian_2d();
  const Vector lw = grid_log_weights(g, build_grid(GridSpec::cube(2, -5.0, 5.0, 150)));
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(lw.size()));
  std::iota(perm.begin(), perm.end(), Eigen::Index{0});
  Rng rng(5);
  std::shuffle(perm.begin(), perm.end(), rng);
  Vector shuffled(lw.size());
  for (Eigen::Index i = 0; i < lw.size(); ++i) shuffled[i] = lw[perm[static_cast<std::size_t>(i)]];
  CHECK(std::exp(log_sum_exp(shuffled)) == doctest::Approx(std::exp(log_sum_exp(lw))).epsilon(1e-10));
}

TEST_CASE("high-dimensional grids do not underflow") {
  const IsotropicGaussianTarget g(6, 0.005);
  const LogEstimate z = grid_evidence(g, build_grid(GridSpec::cube(6, -1.0, 1.0, 12)));
  CHECK(std::isfinite(z.log_value));
  CHECK(z.log_value < -700.0);
  CHECK_FALSE(z.degenerate);
}
