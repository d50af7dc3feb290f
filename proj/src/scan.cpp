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

#include "pottstree/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "pottstree/error.hpp"

namespace pottstree {

namespace {

struct FlagName {
  unsigned bit;
  const char* name;
};

constexpr FlagName kFlagNames[] = {
    {kNearDegenerate, "near-degenerate"},
    {kDomainEdge, "domain-edge"},
    {kUnpaired, "unpaired"},
    {kRowError, "error"},
};

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Column assignment for one row.
struct RootColumns {
  std::optional<double> x0, x1, x2;
  std::vector<double> overflow;
};

RootColumns split_roots(const std::vector<double>& roots) {
  RootColumns c;
  for (double r : roots) {
    if (r == 1.0 && !c.x1) {
      c.x1 = r;
    } else if (r < 1.0 && !c.x0) {
      c.x0 = r;
    } else if (r > 1.0 && !c.x2) {
      c.x2 = r;
    } else {
      c.overflow.push_back(r);
    }
  }
  return c;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_real(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw InvalidArgument("bad number in CSV: '" + s + "'");
  return v;
}

int parse_int(const std::string& s) {
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size()) throw InvalidArgument("bad integer in CSV: '" + s + "'");
  return int(v);
}

}  // namespace

std::string flag_names(unsigned flags) {
  std::string out;
  for (const auto& f : kFlagNames) {
    if (flags & f.bit) {
      if (!out.empty()) out += ';';
      out += f.name;
    }
  }
  return out;
}

unsigned parse_flag_names(std::string_view text) {
  unsigned flags = 0;
  if (text.empty()) return flags;
  for (const auto& name : split(text, ';')) {
    bool known = false;
    for (const auto& f : kFlagNames) {
      if (name == f.name) {
        flags |= f.bit;
        known = true;
      }
    }
    if (!known) throw InvalidArgument("unknown flag '" + name + "'");
  }
  return flags;
}

std::vector<double> theta_grid(double lo, double hi, int steps) {
  if (steps < 1) throw InvalidArgument("theta grid needs at least one step");
  if (!(lo < hi)) throw InvalidArgument("theta range must satisfy lo < hi");
  if (steps == 1) return {lo};
  std::vector<double> grid(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    grid[std::size_t(i)] = (i == steps - 1) ? hi : lo + (hi - lo) * double(i) / double(steps - 1);
  }
  return grid;
}

ScanRow make_row(const RootReport& report) {
  ScanRow row;
  row.k = report.k;
  row.theta = report.theta;
  row.theta_cr = theta_cr(report.k);
  row.count = int(report.count());
  for (const auto& r : report.roots) row.roots.push_back(r.x);
  row.pairs = report.pairs;
  row.flags = report.flags;
  return row;
}

std::vector<ScanRow> scan_theta(int k, double lo, double hi, int steps, int grid) {
  if (k < 3) throw InvalidArgument("k must be >= 3 for the period-2 theory, got " + std::to_string(k));
  if (!(lo > 0.0 && lo < hi && hi < 1.0)) {
    throw InvalidArgument("theta range must satisfy 0 < lo < hi < 1");
  }
  std::vector<ScanRow> rows;
  for (double theta : theta_grid(lo, hi, steps)) {
    try {
      rows.push_back(make_row(find_h_roots(theta, k, grid)));
    } catch (const Error& e) {
      ScanRow row;
      row.k = k;
      row.theta = theta;
      row.theta_cr = theta_cr(k);
      row.flags = kRowError;
      row.error = e.what();
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void emit_csv(const std::vector<ScanRow>& rows, std::ostream& out) {
  if (rows.empty()) throw InvalidArgument("no rows to emit");
  bool overflow = false;
  for (const auto& row : rows) overflow = overflow || !split_roots(row.roots).overflow.empty();

  out << "k,theta,theta_cr,count,x0,x1,x2,flags" << (overflow ? ",overflow" : "") << '\n';
  auto opt = [](const std::optional<double>& v) { return v ? format_real(*v) : std::string(); };
  for (const auto& row : rows) {
    const auto c = split_roots(row.roots);
    out << row.k << ',' << format_real(row.theta) << ',' << format_real(row.theta_cr) << ','
        << row.count << ',' << opt(c.x0) << ',' << opt(c.x1) << ',' << opt(c.x2) << ','
        << flag_names(row.flags);
    if (overflow) {
      out << ',';
      for (std::size_t i = 0; i < c.overflow.size(); ++i) {
        out << (i ? ";" : "") << format_real(c.overflow[i]);
      }
    }
    out << '\n';
  }
}

void emit_json(const std::vector<ScanRow>& rows, std::ostream& out) {
  if (rows.empty()) throw InvalidArgument("no rows to emit");
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    const auto c = split_roots(row.roots);
    auto opt = [](const std::optional<double>& v) {
      return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
    };
    nlohmann::ordered_json o;
    o["k"] = row.k;
    o["theta"] = row.theta;
    o["theta_cr"] = row.theta_cr;
    o["count"] = row.count;
    o["x0"] = opt(c.x0);
    o["x1"] = opt(c.x1);
    o["x2"] = opt(c.x2);
    o["flags"] = flag_names(row.flags);
    if (!c.overflow.empty()) o["overflow"] = c.overflow;
    arr.push_back(std::move(o));
  }
  out << arr.dump(2) << '\n';
}

std::string render(const std::vector<ScanRow>& rows, TableFormat format) {
  std::ostringstream s;
  if (format == TableFormat::Csv) {
    emit_csv(rows, s);
  } else {
    emit_json(rows, s);
  }
  return s.str();
}

void write_rows(const std::vector<ScanRow>& rows, TableFormat format, const std::string& path) {
  const std::string text = render(rows, format);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file.write(text.data(), std::streamsize(text.size()));
  file.flush();
  if (!file) throw IoError("failed writing to '" + path + "'");
}

std::vector<ScanRow> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("empty CSV input");
  const auto header = split(line, ',');
  const bool overflow = header.size() == 9;
  if (header.size() < 8 || header.size() > 9) throw InvalidArgument("unexpected CSV header: " + line);

  std::vector<ScanRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != header.size()) throw InvalidArgument("CSV row has wrong field count: " + line);
    ScanRow row;
    row.k = parse_int(f[0]);
    row.theta = parse_real(f[1]);
    row.theta_cr = parse_real(f[2]);
    row.count = parse_int(f[3]);
    for (int i = 4; i <= 6; ++i) {
      if (!f[std::size_t(i)].empty()) row.roots.push_back(parse_real(f[std::size_t(i)]));
    }
    row.flags = parse_flag_names(f[7]);
    if (overflow && !f[8].empty()) {
      for (const auto& v : split(f[8], ';')) row.roots.push_back(parse_real(v));
    }
    std::sort(row.roots.begin(), row.roots.end());
    if (!(row.flags & kUnpaired) && !f[4].empty() && !f[6].empty()) {
      row.pairs.push_back({parse_real(f[4]), parse_real(f[6])});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace pottstree
