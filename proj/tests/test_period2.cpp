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
#include <random>

#include "pottstree/error.hpp"
#include "pottstree/period2.hpp"

using namespace pottstree;

namespace {

std::vector<double> interior_grid(double theta, int k, int points) {
  const auto d = theta_domain(theta, k);
  const double a = std::log(d.lower), b = std::log(d.upper);
  std::vector<double> xs;
  for (int i = 1; i <= points; ++i) xs.push_back(std::exp(a + (b - a) * i / (points + 1)));
  return xs;
}

}  // namespace

TEST_CASE("critical activity") {
  CHECK(theta_cr(3) == 0.25);
  CHECK(theta_cr(4) == 0.4);
  CHECK(theta_cr(10) == 8.0 / 11.0);
  CHECK_THROWS_AS(theta_cr(2), InvalidArgument);
}

TEST_CASE("domain of the inverse") {
  const auto d = theta_domain(0.1, 3);
  CHECK(d.lower == doctest::Approx(0.166375).epsilon(1e-15));
  CHECK(d.upper == doctest::Approx(1000.0).epsilon(1e-14));
  CHECK(d.contains(1.0));
  CHECK_FALSE(d.contains(0.1));
}

TEST_CASE("z vectors") {
  CHECK_THROWS_AS(ZVector(1, 0, 1, 1), InvalidArgument);
  CHECK_THROWS_AS(ZVector(1, 1, -2, 1), InvalidArgument);
  CHECK_THROWS_AS(ZVector(1, 1, 1, std::nan("")), InvalidArgument);
  CHECK(ZVector::on_invariant_set(2, 3).on_invariant_set());
  CHECK_FALSE(ZVector(2, 1, 1, 3).on_invariant_set());
  CHECK(ZVector(2, 1, 1, 3).distance_inf(ZVector(2, 1, 1, 1)) == 2.0);
}

TEST_CASE("period-2 system values") {
  const auto out = system6_map(ZVector(2, 1, 1, 3), 0.5, 3);
  // 50-digit reference values.
  CHECK(out[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(out[1] == doctest::Approx(0.47050754458161865569).epsilon(1e-15));
  CHECK(out[2] == doctest::Approx(0.62973760932944606414).epsilon(1e-15));
  CHECK(out[3] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(system6_map(ZVector(1, 1, 1, 1), 0.3, 4) == ZVector(1, 1, 1, 1));
}

TEST_CASE("scalar functions") {
  CHECK(f_scalar(2.0, 0.1, 3) == doctest::Approx(0.47544289839091133327).epsilon(1e-15));
  CHECK(f_scalar(1.0, 0.1, 3) == 1.0);
  CHECK(g_scalar(1.0, 0.1, 3) == 1.0);
  CHECK(h_scalar(1.0, 0.1, 3) == 0.0);
  CHECK(h_prime(0.8, 0.1, 3) == doctest::Approx(-0.70903607783769043841).epsilon(1e-13));
  CHECK(h_prime(1.2, 0.1, 3) == doctest::Approx(-0.36876960625983516096).epsilon(1e-13));
  CHECK_THROWS_AS(f_scalar(0.0, 0.1, 3), DomainError);
  CHECK_THROWS_AS(g_scalar(0.1, 0.1, 3), DomainError);
  CHECK_THROWS_AS(h_scalar(2000.0, 0.1, 3), DomainError);
  CHECK_THROWS_AS(g_scalar(1.0, 1.5, 3), InvalidArgument);
}

TEST_CASE("g inverts f on the domain") {
  for (int k : {3, 4, 5}) {
    for (double theta : {0.05, 0.1, 0.2, 0.6}) {
      for (double x : interior_grid(theta, k, 100)) {
        CHECK(f_scalar(g_scalar(x, theta, k), theta, k) == doctest::Approx(x).epsilon(1e-12));
        const double y = g_scalar(x, theta, k);
        CHECK(g_scalar(f_scalar(y, theta, k), theta, k) == doctest::Approx(y).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("analytic derivative agrees with a central difference") {
  for (int k : {3, 4, 5}) {
    for (double theta : {0.05, 0.1, 0.2}) {
      for (double x : interior_grid(theta, k, 60)) {
        const double step = 1e-5 * x;
        const double fd = (h_scalar(x + step, theta, k) - h_scalar(x - step, theta, k)) / (2 * step);
        CHECK(h_prime(x, theta, k) == doctest::Approx(fd).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("derivative factors through the critical-point polynomial") {
  // h'(x) = -(theta-1)(theta+2) p(u) / (k A B u^{k-1} D E), u = x^{1/k}.
  for (int k : {3, 4, 6}) {
    for (double theta : {0.05, 0.2, 0.7}) {
      const auto p = p_coefficients(theta, k);
      for (double x : interior_grid(theta, k, 40)) {
        const double u = std::pow(x, 1.0 / k);
        const double a = (theta + 1) * x + 1, b = 2 * x + theta;
        const double d = 2 * u - theta - 1, e = 1 - theta * u;
        const double alt = -(theta - 1) * (theta + 2) * evaluate(p, u) /
                           (k * a * b * std::pow(u, k - 1) * d * e);
        CHECK(h_prime(x, theta, k) == doctest::Approx(alt).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("critical-point polynomial") {
  const auto p = p_coefficients(0.1, 3);
  CHECK(evaluate(p, 1.0) == doctest::Approx(-2.88).epsilon(1e-14));
  CHECK(p.size() == 5);
  CHECK(p.begin()->first == 6);
  for (int k = 3; k <= 12; ++k) {
    for (int i = 1; i <= 50; ++i) {
      CHECK(descartes_positive_root_bound(p_coefficients(i / 51.0, k)) == 2);
    }
  }
  CHECK(descartes_positive_root_bound({{3, 1.0}, {1, 0.0}, {0, 1.0}}) == 0);
  CHECK(descartes_positive_root_bound({{2, 1.0}, {1, -3.0}, {0, 2.0}}) == 2);
  CHECK_THROWS_AS(descartes_positive_root_bound({{1, 0.0}}), InvalidArgument);
  CHECK_THROWS_AS(p_coefficients(0.1, 2), InvalidArgument);
}

TEST_CASE("sign relations hold for random antiferromagnetic inputs") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> logz(-4.0, 4.0);
  std::uniform_real_distribution<double> th(1e-3, 0.999);
  std::uniform_int_distribution<int> kd(1, 8);
  for (int trial = 0; trial < 5000; ++trial) {
    const double theta = th(rng);
    const int k = kd(rng);
    const ZVector z(std::exp(logz(rng)), std::exp(logz(rng)), std::exp(logz(rng)), std::exp(logz(rng)));
    CHECK(proposition_sign_check(z, system6_map(z, theta, k), theta).all());
  }
  const ZVector z(1, 1, 1, 1);
  CHECK_THROWS_AS(proposition_sign_check(z, z, 1.0), InvalidArgument);
}

TEST_CASE("the invariant set is preserved and carries f") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> logz(-3.0, 3.0);
  std::uniform_real_distribution<double> th(0.01, 3.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double x = std::exp(logz(rng)), y = std::exp(logz(rng)), theta = th(rng);
    const int k = 1 + trial % 7;
    const auto out = system6_map(ZVector::on_invariant_set(x, y), theta, k);
    CHECK(out.on_invariant_set());
    CHECK(out[0] == doctest::Approx(f_scalar(y, theta, k)).epsilon(1e-14));
    CHECK(out[2] == doctest::Approx(f_scalar(x, theta, k)).epsilon(1e-14));
  }
}

TEST_CASE("derivative sign at the domain edges and at one") {
  for (int k : {3, 4, 5, 8}) {
    for (double frac : {0.1, 0.5, 0.9}) {
      const double theta = frac * theta_cr(k);
      const auto d = theta_domain(theta, k);
      CHECK(h_prime(1.0, theta, k) < 0.0);
      CHECK(h_prime(d.lower * (1 + 1e-4), theta, k) > 0.0);
      CHECK(h_prime(d.upper * (1 - 1e-4), theta, k) > 0.0);
    }
  }
  CHECK(h_prime(1.0, 0.3, 3) > 0.0);
}

TEST_CASE("clamped evaluation near the edges") {
  const auto d = theta_domain(0.1, 3);
  const auto at_edge = h_scalar_clamped(d.lower, 0.1, 3);
  CHECK(at_edge.domain_edge);
  CHECK(std::isfinite(at_edge.value));
  const auto inside = h_scalar_clamped(1.0, 0.1, 3);
  CHECK_FALSE(inside.domain_edge);
  CHECK(inside.value == 0.0);
  CHECK(h_prime_clamped(d.upper, 0.1, 3).domain_edge);
  CHECK_THROWS_AS(h_scalar_clamped(d.lower * 0.5, 0.1, 3), DomainError);
}
