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

#include <array>
#include <functional>
#include <map>

namespace pottstree {

/// Exponentiated period-2 fields (z1, z2, z3, z4) = (e^{h^1_1}, e^{h^1_2}, e^{h^2_1}, e^{h^2_2}),
/// where h^1 sits on even generations and h^2 on odd ones.
class ZVector {
 public:
  ZVector(double z1, double z2, double z3, double z4);
  explicit ZVector(const std::array<double, 4>& z) : ZVector(z[0], z[1], z[2], z[3]) {}

  /// The point (x, x, y, y) of the invariant set I.
  static ZVector on_invariant_set(double x, double y) { return ZVector(x, x, y, y); }

  double operator[](std::size_t i) const { return z_[i]; }
  const std::array<double, 4>& values() const noexcept { return z_; }

  bool on_invariant_set(double rel_tol = 0.0) const;
  double distance_inf(const ZVector& other) const;

  friend bool operator==(const ZVector&, const ZVector&) = default;

 private:
  std::array<double, 4> z_;
};

/// Valid range (theta_1, theta_2) = (((theta+1)/2)^k, theta^-k) for g and h.
struct ThetaDomain {
  double lower;
  double upper;

  bool contains(double x) const noexcept { return x > lower && x < upper; }
};

ThetaDomain theta_domain(double theta, int k);

/// theta_cr = (k - 2) / (k + 1); requires k >= 3.
double theta_cr(int k);

/// One step of the period-2 fixed-point system for q = 3:
///   z1' = ((theta z3 + z4 + 1) / (z3 + z4 + theta))^k, z2' likewise with z3 <-> z4,
///   z3', z4' the same expressions in (z1, z2).
ZVector system6_map(const ZVector& z, double theta, int k);

/// Outcome of the three sign relations between z and its image z' = T(z).
struct SignRelations {
  bool order_reversed = false;  ///< sign(z1' - z2') == -sign(z3 - z4)
  bool first_vs_one = false;    ///< z3 >= 1 implies z1' <= 1, and z3 <= 1 implies z1' >= 1
  bool second_vs_one = false;   ///< the same between z4 and z2'

  bool all() const noexcept { return order_reversed && first_vs_one && second_vs_one; }
};

/// Checks the relations for z_out = system6_map(z_in). Throws InvalidArgument
/// unless 0 < theta < 1.
SignRelations proposition_sign_check(const ZVector& z_in, const ZVector& z_out, double theta);

/// f(x) = [((theta + 1) x + 1) / (2x + theta)]^k, the restriction of the
/// system to the invariant set.
double f_scalar(double x, double theta, int k);

/// Inverse of f: with u = x^{1/k}, g(x) = (1 - theta u) / (2u - theta - 1).
/// Throws DomainError outside (theta_1, theta_2).
double g_scalar(double x, double theta, int k);

/// h(x) = ln f(x) - ln g(x) on (theta_1, theta_2).
double h_scalar(double x, double theta, int k);

/// h'(x) = ((theta-1)(theta+2)/k) * (k^2 / (((theta+1)x+1)(2x+theta))
///                                   - 1 / (u^{k-1} (2u-theta-1)(1-theta u))).
double h_prime(double x, double theta, int k);

/// h evaluated near the domain boundary. Points within relative distance
/// kEdgeMargin of an endpoint (but not beyond it) are moved to that margin and
/// reported with `domain_edge` set.
struct EdgeValue {
  double value;
  bool domain_edge;
};

inline constexpr double kEdgeMargin = 1e-12;

EdgeValue h_scalar_clamped(double x, double theta, int k);
EdgeValue h_prime_clamped(double x, double theta, int k);

/// Sparse real polynomial keyed by degree, iterated from the highest degree down.
using SparsePolynomial = std::map<int, double, std::greater<int>>;

/// p(y) = 2(theta+1) y^{2k} + 2 theta k^2 y^{k+1} - (k^2-1)(theta^2+theta+2) y^k
///        + k^2 (theta+1) y^{k-1} + theta, whose positive roots are the
/// critical points of h in the variable y = x^{1/k}.
SparsePolynomial p_coefficients(double theta, int k);

double evaluate(const SparsePolynomial& p, double y);

/// Number of sign changes in the coefficient sequence, zeros skipped.
int descartes_positive_root_bound(const SparsePolynomial& p);

}  // namespace pottstree
