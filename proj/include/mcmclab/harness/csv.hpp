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

#ifndef MCMCLAB_HARNESS_CSV_HPP
#define MCMCLAB_HARNESS_CSV_HPP

#include <array>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mcmclab::harness {

inline constexpr std::string_view kSchemaLine = "# schema=1";
inline constexpr std::string_view kResultHeader =
    "experiment,dim,replicate,seed,sampler,n,m,acceptance_fraction,tau_hat,ess,evidence_hat,"
    "mean_0,mean_1,ci68_lo_0,ci68_hi_0,ci68_lo_1,ci68_hi_1,wall_time_s";

inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

/// The file does not follow the result schema.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One run of one sampler. NaN fields are written as empty cells.
struct ResultRow {
  std::string experiment;
  int dim = 0;
  int replicate = 0;
  std::uint64_t seed = 0;
  std::string sampler;
  long long n = 0;
  long long m = 1;
  double acceptance_fraction = kMissing;
  double tau_hat = kMissing;
  double ess = kMissing;
  double evidence_hat = kMissing;
  std::array<double, 2> mean{kMissing, kMissing};
  std::array<double, 2> ci68_lo{kMissing, kMissing};
  std::array<double, 2> ci68_hi{kMissing, kMissing};
  double wall_time_s = kMissing;
};

/// Shortest round-trip decimal; empty for NaN.
std::string format_number(double value);

/// Schema line, header, then one line per row.
void write_results(std::ostream& out, const std::vector<ResultRow>& rows);

/// Parses a result file. Comment lines other than the schema line are skipped.
std::vector<ResultRow> read_results(std::istream& in);

/// Long-form named quantities: `experiment,quantity,value`.
struct Quantity {
  std::string experiment;
  std::string name;
  double value;
};

inline constexpr std::string_view kQuantityHeader = "experiment,quantity,value";

void write_quantities(std::ostream& out, const std::vector<Quantity>& quantities);

}  // namespace mcmclab::harness

#endif  // MCMCLAB_HARNESS_CSV_HPP
