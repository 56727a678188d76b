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

#include "mcmclab/harness/csv.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace mcmclab::harness {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (const char c : line) {
    if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  fields.push_back(field);
  return fields;
}

double parse_double(const std::string& field, int line_no) {
  if (field.empty()) return kMissing;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw SchemaError("line " + std::to_string(line_no) + ": '" + field + "' is not a number");
  }
  return value;
}

template <typename T>
T parse_integer(const std::string& field, int line_no) {
  T value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    throw SchemaError("line " + std::to_string(line_no) + ": '" + field + "' is not an integer");
  }
  return value;
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return {};
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return {buf, ptr};
}

void write_results(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kSchemaLine << '\n' << kResultHeader << '\n';
  for (const auto& r : rows) {
    out << r.experiment << ',' << r.dim << ',' << r.replicate << ',' << r.seed << ',' << r.sampler << ',' << r.n << ','
        << r.m << ',' << format_number(r.acceptance_fraction) << ',' << format_number(r.tau_hat) << ','
        << format_number(r.ess) << ',' << format_number(r.evidence_hat) << ',' << format_number(r.mean[0]) << ','
        << format_number(r.mean[1]) << ',' << format_number(r.ci68_lo[0]) << ',' << format_number(r.ci68_hi[0]) << ','
        << format_number(r.ci68_lo[1]) << ',' << format_number(r.ci68_hi[1]) << ',' << format_number(r.wall_time_s)
        << '\n';
  }
}

std::vector<ResultRow> read_results(std::istream& in) {
  std::vector<ResultRow> rows;
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line.rfind("# schema=", 0) == 0 && line != kSchemaLine) {
        throw SchemaError("unsupported schema '" + line.substr(2) + "'");
      }
      continue;
    }
    if (!header_seen) {
      if (line != kResultHeader) throw SchemaError("line " + std::to_string(line_no) + ": header does not match the result schema");
      header_seen = true;
      continue;
    }
    const auto f = split_fields(line);
    if (f.size() != 18) {
      throw SchemaError("line " + std::to_string(line_no) + ": expected 18 fields, got " + std::to_string(f.size()));
    }
    ResultRow r;
    r.experiment = f[0];
    r.dim = parse_integer<int>(f[1], line_no);
    r.replicate = parse_integer<int>(f[2], line_no);
    r.seed = parse_integer<std::uint64_t>(f[3], line_no);
    r.sampler = f[4];
    r.n = parse_integer<long long>(f[5], line_no);
    r.m = parse_integer<long long>(f[6], line_no);
    r.acceptance_fraction = parse_double(f[7], line_no);
    r.tau_hat = parse_double(f[8], line_no);
    r.ess = parse_double(f[9], line_no);
    r.evidence_hat = parse_double(f[10], line_no);
    r.mean = {parse_double(f[11], line_no), parse_double(f[12], line_no)};
    r.ci68_lo = {parse_double(f[13], line_no), parse_double(f[15], line_no)};
    r.ci68_hi = {parse_double(f[14], line_no), parse_double(f[16], line_no)};
    r.wall_time_s = parse_double(f[17], line_no);
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_quantities(std::ostream& out, const std::vector<Quantity>& quantities) {
  out << kSchemaLine << '\n' << kQuantityHeader << '\n';
  for (const auto& q : quantities) out << q.experiment << ',' << q.name << ',' << format_number(q.value) << '\n';
}

}  // namespace mcmclab::harness
