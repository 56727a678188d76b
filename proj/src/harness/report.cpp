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

#include "mcmclab/harness/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>
#include <tuple>

namespace mcmclab::harness {

Aggregate aggregate(const std::vector<double>& values) {
  Aggregate agg;
  double sum = 0.0;
  for (const double v : values) {
    if (std::isnan(v)) continue;
    sum += v;
    ++agg.count;
  }
  if (agg.count == 0) return agg;
  agg.mean = sum / agg.count;
  double ss = 0.0;
  for (const double v : values) {
    if (!std::isnan(v)) ss += (v - agg.mean) * (v - agg.mean);
  }
  agg.spread = agg.count > 1 ? std::sqrt(ss / (agg.count - 1)) : 0.0;
  return agg;
}

bool in_acceptance_band_scope(const std::string& sampler) {
  return sampler == "mh-adaptive" || sampler == "ens-gaussian" || sampler == "ens-de";
}

std::vector<ReportGroup> summarize(const std::vector<ResultRow>& rows) {
  using Key = std::tuple<std::string, int, std::string, long long, long long>;
  std::map<Key, std::size_t> index;
  std::vector<std::vector<const ResultRow*>> members;
  for (const auto& row : rows) {
    const Key key{row.experiment, row.dim, row.sampler, row.n, row.m};
    const auto [it, inserted] = index.emplace(key, members.size());
    if (inserted) members.emplace_back();
    members[it->second].push_back(&row);
  }
  std::vector<ReportGroup> groups;
  groups.reserve(members.size());
  for (const auto& group : members) {
    const ResultRow& first = *group.front();
    ReportGroup g;
    g.experiment = first.experiment;
    g.dim = first.dim;
    g.sampler = first.sampler;
    g.n = first.n;
    g.m = first.m;
    g.rows = static_cast<int>(group.size());
    auto column = [&](auto field) {
      std::vector<double> v;
      v.reserve(group.size());
      for (const ResultRow* r : group) v.push_back(field(*r));
      return aggregate(v);
    };
    g.acceptance = column([](const ResultRow& r) { return r.acceptance_fraction; });
    g.tau = column([](const ResultRow& r) { return r.tau_hat; });
    g.ess = column([](const ResultRow& r) { return r.ess; });
    g.evidence = column([](const ResultRow& r) { return r.evidence_hat; });
    g.mean_0 = column([](const ResultRow& r) { return r.mean[0]; });
    g.se_pred_0 = column([](const ResultRow& r) {
                    if (!(r.ess > 0.0)) return kMissing;
                    return 0.5 * (r.ci68_hi[0] - r.ci68_lo[0]) / std::sqrt(r.ess * static_cast<double>(r.m));
                  }).mean;
    g.acceptance_flag = in_acceptance_band_scope(g.sampler) && g.acceptance.count > 0 &&
                        (g.acceptance.mean < kAcceptanceBandLow || g.acceptance.mean > kAcceptanceBandHigh);
    groups.push_back(g);
  }
  return groups;
}

namespace {

std::string cell(const Aggregate& a, int precision) {
  if (a.count == 0) return "-";
  std::ostringstream os;
  os << std::setprecision(precision) << a.mean << " +- " << std::setprecision(2) << a.spread;
  return os.str();
}

}  // namespace

void write_report(std::ostream& out, const std::vector<ReportGroup>& groups) {
  std::vector<std::vector<std::string>> table = {
      {"experiment", "dim", "sampler", "n", "m", "rows", "acceptance", "tau_hat", "ess", "evidence", "mean_0", "se_pred_0", ""}};
  for (const auto& g : groups) {
    std::ostringstream se;
    if (std::isnan(g.se_pred_0)) {
      se << '-';
    } else {
      se << std::setprecision(3) << g.se_pred_0;
    }
    table.push_back({g.experiment, std::to_string(g.dim), g.sampler, std::to_string(g.n), std::to_string(g.m),
                     std::to_string(g.rows), cell(g.acceptance, 4), cell(g.tau, 4), cell(g.ess, 5), cell(g.evidence, 5),
                     cell(g.mean_0, 5), se.str(), g.acceptance_flag ? "ACC-BAND" : ""});
  }
  std::vector<std::size_t> width(table.front().size(), 0);
  for (const auto& row : table) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  for (const auto& row : table) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += row[c];
      if (c + 1 < row.size()) line += std::string(width[c] - row[c].size() + 2, ' ');
    }
    line.erase(line.find_last_not_of(' ') + 1);
    out << line << '\n';
  }
}

}  // namespace mcmclab::harness
