// Copyright 2026 The pottstree Authors
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

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pottstree/solver.hpp"

namespace pottstree {

/// Set on rows whose root search raised an error; the row keeps its place.
inline constexpr unsigned kRowError = 1u << 3;

struct ScanRow {
  int k = 0;
  double theta = 0.0;
  double theta_cr = 0.0;
  int count = 0;
  std::vector<double> roots;  ///< ascending
  std::vector<OrbitPair> pairs;
  unsigned flags = 0;         ///< RootFlag bits plus kRowError
  std::string error;          ///< message when kRowError is set; not serialised
};

/// Inclusive grid of `steps` points from lo to hi; a single point is lo itself.
std::vector<double> theta_grid(double lo, double hi, int steps);

/// One row per grid value of theta, in ascending order. Requires
/// 0 < lo < hi < 1, steps >= 1 and k >= 3.
std::vector<ScanRow> scan_theta(int k, double lo, double hi, int steps, int grid = kDefaultGrid);

ScanRow make_row(const RootReport& report);

enum class TableFormat { Csv, Json };

/// Header `k,theta,theta_cr,count,x0,x1,x2,flags`. x1 holds the root x = 1,
/// x0 the smallest root below it and x2 the smallest root above it. Any other
/// roots go to an extra `overflow` column, added only when some row needs it.
/// Reals use 17 significant digits; lines end in LF.
void emit_csv(const std::vector<ScanRow>& rows, std::ostream& out);

/// JSON array of row objects with the same field names as the CSV columns.
void emit_json(const std::vector<ScanRow>& rows, std::ostream& out);

std::string render(const std::vector<ScanRow>& rows, TableFormat format);

/// Writes to `path`; throws IoError naming the path on failure.
void write_rows(const std::vector<ScanRow>& rows, TableFormat format, const std::string& path);

/// Inverse of emit_csv. Pairs are rebuilt from (x0, x2) unless the row is
/// flagged unpaired.
std::vector<ScanRow> parse_csv(std::istream& in);

std::string flag_names(unsigned flags);
unsigned parse_flag_names(std::string_view text);

}  // namespace pottstree
