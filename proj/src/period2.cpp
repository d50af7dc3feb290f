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

#include "pottstree/period2.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pottstree/error.hpp"

namespace pottstree {

namespace {

void require_positive_theta(double theta) {
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw InvalidArgument("theta must be positive and finite, got " + std::to_string(theta));
  }
}

void require_order(int k, int minimum) {
  if (k < minimum) {
    throw InvalidArgument("tree order k must be >= " + std::to_string(minimum) + ", got " +
                          std::to_string(k));
  }
}

void require_antiferromagnetic(double theta) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw InvalidArgument("theta must lie in (0, 1), got " + std::to_string(theta));
  }
}

// (theta a + b + 1) / (a + b + theta), written as 1 + (theta-1)(a-1)/(a+b+theta)
// so that the result compares against 1 exactly as (theta-1)(a-1) does.
double update_ratio(double a, double b, double theta) {
  return 1.0 + (theta - 1.0) * (a - 1.0) / (a + b + theta);
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

// Pieces of g shared by g, h and h'. With u = x^{1/k}:
//   numerator   1 - theta u        = (1 - theta) - theta (u - 1)
//   denominator 2u - theta - 1     = 2 (u - 1) + (1 - theta)
struct InverseParts {
  double u;
  double numerator;
  double denominator;
};

InverseParts inverse_parts(double x, double theta, int k) {
  require_antiferromagnetic(theta);
  require_order(k, 1);
  const ThetaDomain dom = theta_domain(theta, k);
  if (!dom.contains(x)) {
    throw DomainError("x = " + std::to_string(x) + " outside (theta_1, theta_2) = (" +
                      std::to_string(dom.lower) + ", " + std::to_string(dom.upper) + ")");
  }
  const double lu = std::log(x) / double(k);
  const double um1 = std::expm1(lu);
  InverseParts p{std::exp(lu), (1.0 - theta) - theta * um1, 2.0 * um1 + (1.0 - theta)};
  if (!(p.numerator > 0.0 && p.denominator > 0.0)) {
    throw DomainError("x = " + std::to_string(x) + " too close to the domain boundary");
  }
  return p;
}

double log_f(double x, double theta, int k) {
  return double(k) * std::log1p((theta - 1.0) * (x - 1.0) / (2.0 * x + theta));
}

template <class Fn>
EdgeValue clamped(double x, double theta, int k, Fn&& fn) {
  require_antiferromagnetic(theta);
  require_order(k, 1);
  const ThetaDomain dom = theta_domain(theta, k);
  if (!(x >= dom.lower && x <= dom.upper)) {
    throw DomainError("x = " + std::to_string(x) + " outside [theta_1, theta_2]");
  }
  const double lo = dom.lower * (1.0 + kEdgeMargin);
  const double hi = dom.upper * (1.0 - kEdgeMargin);
  if (x <= lo) return {fn(lo), true};
  if (x >= hi) return {fn(hi), true};
  return {fn(x), false};
}

}  // namespace

ZVector::ZVector(double z1, double z2, double z3, double z4) : z_{z1, z2, z3, z4} {
  for (double z : z_) {
    if (!(z > 0.0) || !std::isfinite(z)) {
      throw InvalidArgument("z components must be positive and finite");
    }
  }
}

bool ZVector::on_invariant_set(double rel_tol) const {
  auto close = [rel_tol](double a, double b) {
    return std::abs(a - b) <= rel_tol * std::max(std::abs(a), std::abs(b));
  };
  return close(z_[0], z_[1]) && close(z_[2], z_[3]);
}

double ZVector::distance_inf(const ZVector& other) const {
  double d = 0.0;
  for (std::size_t i = 0; i < 4; ++i) d = std::max(d, std::abs(z_[i] - other.z_[i]));
  return d;
}

ThetaDomain theta_domain(double theta, int k) {
  require_positive_theta(theta);
  require_order(k, 1);
  return {std::pow((theta + 1.0) / 2.0, k), 1.0 / std::pow(theta, k)};
}

double theta_cr(int k) {
  if (k < 3) {
    throw InvalidArgument("k must be >= 3 for the period-2 theory, got " + std::to_string(k));
  }
  return double(k - 2) / double(k + 1);
}

ZVector system6_map(const ZVector& z, double theta, int k) {
  require_positive_theta(theta);
  require_order(k, 1);
  return ZVector(std::pow(update_ratio(z[2], z[3], theta), k),
                 std::pow(update_ratio(z[3], z[2], theta), k),
                 std::pow(update_ratio(z[0], z[1], theta), k),
                 std::pow(update_ratio(z[1], z[0], theta), k));
}

SignRelations proposition_sign_check(const ZVector& z_in, const ZVector& z_out, double theta) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw InvalidArgument("sign relations hold only for 0 < theta < 1 (J < 0), got theta = " +
                          std::to_string(theta));
  }
  auto versus_one = [](double in, double out) {
    const bool upper = !(in >= 1.0) || out <= 1.0;
    const bool lower = !(in <= 1.0) || out >= 1.0;
    return upper && lower;
  };
  SignRelations r;
  r.order_reversed = sign(z_out[0] - z_out[1]) == -sign(z_in[2] - z_in[3]);
  r.first_vs_one = versus_one(z_in[2], z_out[0]);
  r.second_vs_one = versus_one(z_in[3], z_out[1]);
  return r;
}

double f_scalar(double x, double theta, int k) {
  require_positive_theta(theta);
  require_order(k, 1);
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("f is defined for positive finite x, got " + std::to_string(x));
  }
  return std::pow(1.0 + (theta - 1.0) * (x - 1.0) / (2.0 * x + theta), k);
}

double g_scalar(double x, double theta, int k) {
  const auto p = inverse_parts(x, theta, k);
  return p.numerator / p.denominator;
}

double h_scalar(double x, double theta, int k) {
  const auto p = inverse_parts(x, theta, k);
  return log_f(x, theta, k) - (std::log(p.numerator) - std::log(p.denominator));
}

double h_prime(double x, double theta, int k) {
  const auto p = inverse_parts(x, theta, k);
  const double kk = double(k);
  const double scale = (theta - 1.0) * (theta + 2.0) / kk;
  const double forward = kk * kk / (((theta + 1.0) * x + 1.0) * (2.0 * x + theta));
  const double inverse = 1.0 / (std::pow(p.u, k - 1) * p.denominator * p.numerator);
  return scale * (forward - inverse);
}

EdgeValue h_scalar_clamped(double x, double theta, int k) {
  return clamped(x, theta, k, [&](double v) { return h_scalar(v, theta, k); });
}

EdgeValue h_prime_clamped(double x, double theta, int k) {
  return clamped(x, theta, k, [&](double v) { return h_prime(v, theta, k); });
}

SparsePolynomial p_coefficients(double theta, int k) {
  require_positive_theta(theta);
  require_order(k, 3);
  const double kk = double(k) * double(k);
  SparsePolynomial p;
  p[2 * k] = 2.0 * (theta + 1.0);
  p[k + 1] = 2.0 * theta * kk;
  p[k] = -(kk - 1.0) * (theta * theta + theta + 2.0);
  p[k - 1] = kk * (theta + 1.0);
  p[0] = theta;
  return p;
}

double evaluate(const SparsePolynomial& p, double y) {
  double s = 0.0;
  for (const auto& [degree, c] : p) s += c * std::pow(y, degree);
  return s;
}

int descartes_positive_root_bound(const SparsePolynomial& p) {
  int changes = 0;
  int previous = 0;
  for (const auto& [degree, c] : p) {
    const int s = sign(c);
    if (s == 0) continue;
    if (previous != 0 && s != previous) ++changes;
    previous = s;
  }
  if (previous == 0) throw InvalidArgument("Descartes bound of the zero polynomial is undefined");
  return changes;
}

}  // namespace pottstree
