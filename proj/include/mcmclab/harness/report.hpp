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

#ifndef MCMCLAB_HARNESS_REPORT_HPP
#define MCMCLAB_HARNESS_REPORT_HPP

#include "mcmclab/harness/csv.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace mcmclab::harness {

/// Adaptive samplers whose acceptance fraction should sit in this band.
inline constexpr double kAcceptanceBandLow = 0.15;
inline constexpr double kAcceptanceBandHigh = 0.35;

/// Mean and sample standard deviation of one column over a group (NaN cells skipped).
struct Aggregate {
  double mean = kMissing;
  double spread = kMissing;
  int count = 0;
};

struct ReportGroup {
  std::string experiment;
  int dim = 0;
  std::string sampler;
  long long n = 0;
  long long m = 1;
  int rows = 0;
  Aggregate acceptance;
  Aggregate tau;
  Aggregate ess;
  Aggregate evidence;
  Aggregate mean_0;
  /// Mean over rows of the ci68 half-width of coordinate 0 over sqrt(ess * m).
  double se_pred_0 = kMissing;
  bool acceptance_flag = false;
};

Aggregate aggregate(const std::vector<double>& values);

/// Groups by (experiment, dim, sampler, n, m) in first-seen order.
std::vector<ReportGroup> summarize(const std::vector<ResultRow>& rows);

bool in_acceptance_band_scope(const std::string& sampler);

/// Fixed-width text table; flagged groups end with "ACC-BAND".
void write_report(std::ostream& out, const std::vector<ReportGroup>& groups);

}  // namespace mcmclab::harness

#endif  // MCMCLAB_HARNESS_REPORT_HPP
