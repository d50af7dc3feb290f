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

#include <doctest.h>

#include <cmath>
#include <limits>

#include "pottstree/error.hpp"
#include "pottstree/solver.hpp"

using namespace pottstree;

namespace {

// Period-2 roots of h, computed with 50-digit arithmetic.
struct Golden {
  double theta;
  int k;
  double x0, x2;
};
constexpr Golden kGolden[] = {
    {0.1, 3, 0.19649931210530604064, 15.011479580653045655},
    {0.2, 4, 0.14088307533223654, 34.67381385391325},
    {0.05, 3, 0.15740006104944274, 32.59228756884669},
    {0.02, 5, 0.0345033117405095028, 212811.84422731639},
};

}  // namespace

TEST_CASE("bracket scan") {
  const auto b = scan_brackets([](double x) { return x - 1.0; }, 0.5, 2.0, 10);
  REQUIRE(b.size() == 1);
  CHECK(b[0].lo < 1.0);
  CHECK(b[0].hi >= 1.0);
  CHECK(b[0].f_lo < 0.0);

  CHECK(scan_brackets([](double x) { return x * x + 1.0; }, -1.0, 1.0, 50).empty());
  CHECK(scan_brackets([](double x) { return std::sin(x); }, 0.5, 10.0, 200).size() == 3);

  // Non-finite and edge samples never form a bracket.
  const auto gap = scan_brackets(
      [](double x) { return x < 0.0 ? -1.0 : std::numeric_limits<double>::quiet_NaN(); }, -1.0,
      1.0, 11);
  CHECK(gap.empty());
  const auto edge = scan_brackets([](double x) { return Sample(x, x > -0.5); }, -1.0, 1.0, 11);
  CHECK(edge.empty());

  CHECK_THROWS_AS(scan_brackets([](double x) { return x; }, 1.0, 0.0, 10), InvalidArgument);
  CHECK_THROWS_AS(scan_brackets([](double x) { return x; }, 0.0, 1.0, 1), InvalidArgument);
}

TEST_CASE("bracket scan of h finds three sign changes below the threshold") {
  const auto d = theta_domain(0.1, 3);
  const auto fn = [](double x) { return h_scalar(x, 0.1, 3); };
  CHECK(scan_brackets(fn, d.lower * (1 + 1e-9), d.upper * (1 - 1e-9), 2000).size() == 3);
  const auto d3 = theta_domain(0.3, 3);
  const auto fn3 = [](double x) { return h_scalar(x, 0.3, 3); };
  CHECK(scan_brackets(fn3, d3.lower * (1 + 1e-9), d3.upper * (1 - 1e-9), 2000).size() == 1);
}

TEST_CASE("bisection") {
  const SampledFunction fn = [](double x) { return x * x - 2.0; };
  const double r = bisect(fn, {1.0, 2.0, -1.0, 2.0}, 1e-12, 0.0, 200);
  CHECK(r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(bisect(fn, {1.0, 2.0, -1.0, 2.0}, 1e-15, 0.0, 3), NumericalError);
  CHECK_THROWS_AS(bisect(fn, {2.0, 3.0, 2.0, 7.0}, 1e-12, 0.0, 100), InvalidArgument);

  const SampledFunction h = [](double x) { return h_scalar(x, 0.1, 3); };
  const double one = bisect(h, {0.9, 1.1, h(0.9).value, h(1.1).value}, 0.0, 0.0, 400);
  CHECK(std::fabs(one - 1.0) <= 1e-10);
}

TEST_CASE("roots of h below the threshold") {
  for (const auto& g : kGolden) {
    CAPTURE(g.theta);
    CAPTURE(g.k);
    const auto rep = find_h_roots(g.theta, g.k);
    REQUIRE(rep.count() == 3);
    CHECK(rep.flags == 0);
    CHECK(rep.period2_count() == 2);
    CHECK(rep.roots[1].x == 1.0);
    CHECK(rep.roots[1].kind == RootKind::TranslationInvariant);
    CHECK(rep.roots[0].kind == RootKind::Period2);
    CHECK(rep.roots[0].x == doctest::Approx(g.x0).epsilon(1e-11));
    CHECK(rep.roots[2].x == doctest::Approx(g.x2).epsilon(1e-11));
    for (const auto& r : rep.roots) CHECK(r.residual <= kRootResidualTolerance);
    REQUIRE(rep.pairs.size() == 1);
    CHECK(rep.pairs[0].lower == rep.roots[0].x);
    CHECK(rep.pairs[0].upper == rep.roots[2].x);
    const double x0 = rep.pairs[0].lower;
    CHECK(std::fabs(f_scalar(f_scalar(x0, g.theta, g.k), g.theta, g.k) - x0) <= 1e-8);
  }
}

TEST_CASE("a single root above the threshold") {
  for (int k : {3, 4, 5}) {
    for (double theta : {1.05 * theta_cr(k), 0.9}) {
      const auto rep = find_h_roots(theta, k);
      REQUIRE(rep.count() == 1);
      CHECK(rep.roots[0].x == 1.0);
      CHECK(rep.pairs.empty());
    }
  }
}

TEST_CASE("root search is deterministic") {
  const auto a = find_h_roots(0.13, 4);
  const auto b = find_h_roots(0.13, 4);
  REQUIRE(a.count() == b.count());
  for (std::size_t i = 0; i < a.count(); ++i) CHECK(a.roots[i].x == b.roots[i].x);
}

TEST_CASE("root search arguments") {
  CHECK_THROWS_AS(find_h_roots(0.1, 2), InvalidArgument);
  CHECK_THROWS_AS(find_h_roots(1.0, 3), InvalidArgument);
  CHECK_THROWS_AS(find_h_roots(0.0, 3), InvalidArgument);
  CHECK_THROWS_AS(find_h_roots(0.1, 3, 1), InvalidArgument);
}

TEST_CASE("even-step iteration from the invariant set reaches the period-2 point") {
  const auto rep = find_h_roots(0.1, 3);
  const auto res =
      fixed_point_iterate(even_step_map(0.1, 3), ZVector::on_invariant_set(0.2, 15.0), 1e-12, 1000);
  REQUIRE(res.converged);
  CHECK(res.point.on_invariant_set());
  CHECK(res.point[0] == doctest::Approx(rep.pairs[0].lower).epsilon(1e-8));
  CHECK(res.point[2] == doctest::Approx(rep.pairs[0].upper).epsilon(1e-8));
}

TEST_CASE("even-step iteration from a generic start") {
  // Starting off the invariant set the iteration settles on a fixed point of
  // T o T of the form (a, 1, 1, a), which lies outside I. The sign relations
  // hold on every half step along the way.
  const double theta = 0.1;
  const int k = 3;
  int checked = 0;
  ZVector prev(2, 1, 1, 3);
  const auto res = fixed_point_iterate(
      even_step_map(theta, k), prev, 1e-10, 1000, [&](int, const ZVector& z) {
        const auto half = system6_map(prev, theta, k);
        CHECK(proposition_sign_check(prev, half, theta).all());
        CHECK(proposition_sign_check(half, z, theta).all());
        prev = z;
        ++checked;
      });
  REQUIRE(res.converged);
  CHECK(checked == res.iterations);
  CHECK_FALSE(res.point.on_invariant_set(1e-6));
  CHECK(res.point[1] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(res.point[2] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(res.point[0] == doctest::Approx(res.point[3]).epsilon(1e-8));
  CHECK(even_step_map(theta, k)(res.point).distance_inf(res.point) <= 1e-9);
}

TEST_CASE("fixed-point iteration bookkeeping") {
  const auto id = [](const ZVector& z) { return z; };
  const auto r0 = fixed_point_iterate(id, ZVector(1, 2, 3, 4), 1e-12, 10);
  CHECK(r0.converged);
  CHECK(r0.iterations == 0);

  const auto grow = [](const ZVector& z) { return ZVector(2 * z[0], z[1], z[2], z[3]); };
  const auto r1 = fixed_point_iterate(grow, ZVector(1, 1, 1, 1), 1e-12, 5);
  CHECK_FALSE(r1.converged);
  CHECK(r1.iterations == 5);
  CHECK_THROWS_AS(fixed_point_iterate(id, ZVector(1, 1, 1, 1), 0.0, 5), InvalidArgument);
}
