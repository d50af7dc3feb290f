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

#include <cstdint>
#include <functional>
#include <vector>

#include "pottstree/period2.hpp"

namespace pottstree {

/// Function value together with a flag marking evaluations that were moved
/// onto a domain margin. Flagged samples never form a bracket.
struct Sample {
  Sample(double v, bool edge = false) : value(v), domain_edge(edge) {}  // NOLINT(google-explicit-constructor)

  double value;
  bool domain_edge;
};

using SampledFunction = std::function<Sample(double)>;

struct Bracket {
  double lo;
  double hi;
  double f_lo;
  double f_hi;
};

/// Brackets every sign change of fn between consecutive nodes of the uniform
/// grid lo = t_0 < ... < t_{grid-1} = hi. Values < 0 and >= 0 form the two
/// sign classes; non-finite or edge-flagged samples break the chain.
std::vector<Bracket> scan_brackets(const SampledFunction& fn, double lo, double hi, int grid);

/// Bisection on a sign-change bracket. Stops when |fn| <= tol_f, when the
/// bracket is narrower than tol_x * max(1, |x|), or when the midpoint is no
/// longer representable strictly inside the bracket. Returns the endpoint or
/// midpoint with the smallest |fn|. Throws NumericalError if max_iter runs out.
double bisect(const SampledFunction& fn, Bracket bracket, double tol_x, double tol_f,
              int max_iter);

enum class RootKind { TranslationInvariant, Period2 };

struct Root {
  double x;
  double residual;  ///< |h(x)|
  Bracket bracket;
  RootKind kind;
};

/// Two roots exchanged by f: f(lower) = upper and f(upper) = lower.
struct OrbitPair {
  double lower;
  double upper;
};

enum RootFlag : unsigned {
  kNearDegenerate = 1u << 0,  ///< roots closer than kMergeTolerance were merged
  kDomainEdge = 1u << 1,      ///< a sign change sits in the outermost grid cell
  kUnpaired = 1u << 2,        ///< a period-2 root has no partner within kPairTolerance
};

inline constexpr double kRootResidualTolerance = 1e-10;
inline constexpr double kPairTolerance = 1e-8;
inline constexpr double kDedupTolerance = 1e-9;
inline constexpr double kMergeTolerance = 1e-7;
inline constexpr double kDomainClampMargin = 1e-9;
inline constexpr int kDefaultGrid = 4001;

struct RootReport {
  double theta = 0.0;
  int k = 0;
  std::vector<Root> roots;  ///< ascending
  std::vector<OrbitPair> pairs;
  unsigned flags = 0;

  std::size_t count() const noexcept { return roots.size(); }
  std::size_t period2_count() const noexcept;
};

/// All roots of h on (theta_1, theta_2), clamped by kDomainClampMargin.
///
/// The sign scan runs over t = ln((x - theta_1) / (theta_2 - x)) so that grid
/// nodes crowd geometrically towards both endpoints, where the lower
/// period-2 root sits for small theta. x = 1 is always reported.
RootReport find_h_roots(double theta, int k, int grid = kDefaultGrid);

struct FixedPointResult {
  ZVector point;
  int iterations;
  bool converged;
};

using ZMap = std::function<ZVector(const ZVector&)>;
/// Called after every iteration with the iteration number and the new iterate.
using IterationObserver = std::function<void(int, const ZVector&)>;

/// Iterates z <- map(z) until ||map(z) - z||_inf <= tol. When z0 already
/// satisfies the test, returns it with zero iterations.
FixedPointResult fixed_point_iterate(const ZMap& map, const ZVector& z0, double tol, int max_iter,
                                     const IterationObserver& observer = {});

/// T o T for the period-2 system, whose fixed points include both period-2 points.
ZMap even_step_map(double theta, int k);

}  // namespace pottstree
