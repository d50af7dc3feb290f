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

#include "pottstree/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "pottstree/error.hpp"

namespace pottstree {

namespace {

bool negative(double v) { return v < 0.0; }

bool usable(const Sample& s) { return std::isfinite(s.value) && !s.domain_edge; }

bool relatively_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

// Logit coordinate on (lower, upper): t = ln((x - lower) / (upper - x)).
class LogitCoordinate {
 public:
  LogitCoordinate(double lower, double upper, double clamp_lo, double clamp_hi)
      : lower_(lower), upper_(upper), clamp_lo_(clamp_lo), clamp_hi_(clamp_hi) {}

  double to_t(double x) const { return std::log((x - lower_) / (upper_ - x)); }

  double to_x(double t) const {
    const double width = upper_ - lower_;
    const double x = (t <= 0.0) ? lower_ + width * (std::exp(t) / (1.0 + std::exp(t)))
                                : upper_ - width / (1.0 + std::exp(t));
    return std::clamp(x, clamp_lo_, clamp_hi_);
  }

 private:
  double lower_, upper_, clamp_lo_, clamp_hi_;
};

}  // namespace

std::vector<Bracket> scan_brackets(const SampledFunction& fn, double lo, double hi, int grid) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw InvalidArgument("scan interval must satisfy lo < hi");
  }
  if (grid < 2) throw InvalidArgument("scan grid needs at least 2 points");

  std::vector<Bracket> out;
  const double step = (hi - lo) / double(grid - 1);
  double prev_t = lo;
  Sample prev = fn(lo);
  for (int i = 1; i < grid; ++i) {
    const double t = (i == grid - 1) ? hi : lo + step * double(i);
    const Sample cur = fn(t);
    if (usable(prev) && usable(cur) && negative(prev.value) != negative(cur.value)) {
      out.push_back({prev_t, t, prev.value, cur.value});
    }
    prev_t = t;
    prev = cur;
  }
  return out;
}

double bisect(const SampledFunction& fn, Bracket b, double tol_x, double tol_f, int max_iter) {
  if (!(b.lo < b.hi) || negative(b.f_lo) == negative(b.f_hi)) {
    throw InvalidArgument("bisection needs lo < hi and a sign change across the bracket");
  }
  double best = std::abs(b.f_lo) <= std::abs(b.f_hi) ? b.lo : b.hi;
  double best_f = std::min(std::abs(b.f_lo), std::abs(b.f_hi));

  for (int iter = 0; iter < max_iter; ++iter) {
    if (best_f <= tol_f) return best;
    const double mid = b.lo + (b.hi - b.lo) / 2.0;
    if (b.hi - b.lo <= tol_x * std::max(1.0, std::abs(mid))) return best;
    if (!(mid > b.lo && mid < b.hi)) return best;

    const double fm = fn(mid).value;
    if (!std::isfinite(fm)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "bisection hit a non-finite value at x = " << mid;
      throw NumericalError(msg.str());
    }
    if (std::abs(fm) < best_f) {
      best = mid;
      best_f = std::abs(fm);
    }
    if (negative(fm) == negative(b.f_lo)) {
      b.lo = mid;
      b.f_lo = fm;
    } else {
      b.hi = mid;
      b.f_hi = fm;
    }
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << "bisection did not converge in " << max_iter << " iterations; final bracket [" << b.lo
      << ", " << b.hi << "]";
  throw NumericalError(msg.str());
}

std::size_t RootReport::period2_count() const noexcept {
  return std::size_t(std::count_if(roots.begin(), roots.end(),
                                   [](const Root& r) { return r.kind == RootKind::Period2; }));
}

RootReport find_h_roots(double theta, int k, int grid) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw InvalidArgument("root search needs 0 < theta < 1, got " + std::to_string(theta));
  }
  if (k < 3) {
    throw InvalidArgument("k must be >= 3 for the period-2 theory, got " + std::to_string(k));
  }
  if (grid < 2) throw InvalidArgument("root scan grid needs at least 2 points");

  const ThetaDomain dom = theta_domain(theta, k);
  const double a = dom.lower * (1.0 + kDomainClampMargin);
  const double b = dom.upper * (1.0 - kDomainClampMargin);
  const LogitCoordinate coord(dom.lower, dom.upper, a, b);
  const double ta = coord.to_t(a);
  const double tb = coord.to_t(b);

  const SampledFunction h_of_x = [theta, k](double x) { return Sample(h_scalar(x, theta, k)); };
  const SampledFunction h_of_t = [&](double t) { return h_of_x(coord.to_x(t)); };

  RootReport report;
  report.theta = theta;
  report.k = k;

  std::vector<Root> found;
  for (const Bracket& bt : scan_brackets(h_of_t, ta, tb, grid)) {
    if (bt.lo == ta || bt.hi == tb) report.flags |= kDomainEdge;
    const Bracket bx{coord.to_x(bt.lo), coord.to_x(bt.hi), bt.f_lo, bt.f_hi};
    const double x = bisect(h_of_x, bx, 0.0, 0.0, 400);
    found.push_back({x, 0.0, bx, RootKind::Period2});
  }
  // h(1) = 0 exactly; the scan normally finds it as well.
  found.push_back({1.0, 0.0, Bracket{1.0, 1.0, 0.0, 0.0}, RootKind::TranslationInvariant});
  std::sort(found.begin(), found.end(), [](const Root& l, const Root& r) { return l.x < r.x; });

  for (auto& r : found) r.residual = (r.x == 1.0) ? 0.0 : std::abs(h_scalar(r.x, theta, k));

  // Duplicates of the same root collapse silently; distinct but unresolvable
  // roots collapse with a flag. The exact root x = 1 wins either way.
  for (const Root& r : found) {
    if (!report.roots.empty()) {
      Root& last = report.roots.back();
      const bool duplicate = relatively_close(last.x, r.x, kDedupTolerance);
      if (duplicate || relatively_close(last.x, r.x, kMergeTolerance)) {
        if (!duplicate) report.flags |= kNearDegenerate;
        const bool keep_incoming = r.kind == RootKind::TranslationInvariant ||
                                   (last.kind != RootKind::TranslationInvariant &&
                                    r.residual < last.residual);
        if (keep_incoming) last = r;
        continue;
      }
    }
    report.roots.push_back(r);
  }

  std::vector<bool> paired(report.roots.size(), false);
  for (std::size_t i = 0; i < report.roots.size(); ++i) {
    const Root& lo = report.roots[i];
    if (lo.kind != RootKind::Period2 || lo.x > 1.0) continue;
    const double image = f_scalar(lo.x, theta, k);
    std::size_t partner = report.roots.size();
    double gap = kPairTolerance;
    for (std::size_t j = i + 1; j < report.roots.size(); ++j) {
      const Root& hi = report.roots[j];
      if (hi.kind != RootKind::Period2 || hi.x < 1.0 || paired[j]) continue;
      const double d = std::abs(image - hi.x);
      if (d <= gap) {
        gap = d;
        partner = j;
      }
    }
    if (partner < report.roots.size()) {
      paired[i] = paired[partner] = true;
      report.pairs.push_back({lo.x, report.roots[partner].x});
    }
  }
  for (std::size_t i = 0; i < report.roots.size(); ++i) {
    if (report.roots[i].kind == RootKind::Period2 && !paired[i]) report.flags |= kUnpaired;
  }
  return report;
}

FixedPointResult fixed_point_iterate(const ZMap& map, const ZVector& z0, double tol, int max_iter,
                                     const IterationObserver& observer) {
  if (!(tol > 0.0)) throw InvalidArgument("fixed-point tolerance must be positive");
  if (max_iter < 0) throw InvalidArgument("max_iter must be >= 0");
  ZVector z = z0;
  for (int it = 0;; ++it) {
    const ZVector next = map(z);
    if (next.distance_inf(z) <= tol) return {z, it, true};
    if (it == max_iter) return {z, it, false};
    z = next;
    if (observer) observer(it + 1, z);
  }
}

ZMap even_step_map(double theta, int k) {
  return [theta, k](const ZVector& z) {
    return system6_map(system6_map(z, theta, k), theta, k);
  };
}

}  // namespace pottstree
