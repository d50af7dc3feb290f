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

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "pottstree/tree.hpp"

namespace pottstree {

/// Largest number of configurations the exhaustive routines will enumerate.
inline constexpr std::uint64_t kMaxEnumeration = 20'000'000;

/// Parameters of the Potts model on a Cayley tree.
///
/// The activity theta = exp(J * beta) is stored next to the coupling. When
/// the model is specified by theta alone, beta is 1 and J = ln(theta).
class ModelParams {
 public:
  static ModelParams from_theta(int k, int q, double theta);
  static ModelParams from_coupling(int k, int q, double coupling, double beta);

  int order() const noexcept { return k_; }
  int states() const noexcept { return q_; }
  double coupling() const noexcept { return coupling_; }
  double beta() const noexcept { return beta_; }
  double theta() const noexcept { return theta_; }

  /// J < 0, equivalently theta < 1.
  bool antiferromagnetic() const noexcept { return theta_ < 1.0; }

 private:
  ModelParams(int k, int q, double coupling, double beta, double theta)
      : k_(k), q_(q), coupling_(coupling), beta_(beta), theta_(theta) {}

  int k_;
  int q_;
  double coupling_;
  double beta_;
  double theta_;
};

/// Boundary field h = (h_1, ..., h_{q-1}) in the gauge h_q = 0.
class FieldVector {
 public:
  FieldVector() = default;
  explicit FieldVector(std::vector<double> components);
  FieldVector(std::initializer_list<double> components)
      : FieldVector(std::vector<double>(components)) {}

  static FieldVector zero(int q) { return FieldVector(std::vector<double>(std::size_t(q - 1), 0.0)); }

  std::size_t size() const noexcept { return h_.size(); }
  /// Number of spin states this vector is a field for.
  int states() const noexcept { return int(h_.size()) + 1; }

  double operator[](std::size_t i) const { return h_[i]; }
  /// Log-weight of spin state s in {0, ..., q-1}; the last state has weight 0.
  double weight_of(int s) const { return std::size_t(s) < h_.size() ? h_[std::size_t(s)] : 0.0; }

  std::span<const double> components() const noexcept { return h_; }

  FieldVector& operator+=(const FieldVector& other);
  friend FieldVector operator+(FieldVector a, const FieldVector& b) { return a += b; }
  friend bool operator==(const FieldVector&, const FieldVector&) = default;

 private:
  std::vector<double> h_;
};

/// Spin assignment on the vertices of a finite tree. States are 0-based:
/// spin value s corresponds to Potts state s+1, and state q carries the
/// gauge-fixed zero field.
struct Configuration {
  std::vector<int> spins;
};

/// H(sigma) = -J * (number of edges whose endpoints carry equal spins).
double hamiltonian(const FiniteTree& tree, const Configuration& config, const ModelParams& params);

/// Probability table of a finite-volume measure on V_n.
///
/// Configurations are indexed lexicographically with vertex 0 as the most
/// significant digit, so all configurations sharing the same restriction to
/// V_{n-1} form one contiguous block.
class MeasureTable {
 public:
  MeasureTable(int q, std::size_t vertices, std::vector<double> probabilities);

  int states() const noexcept { return q_; }
  std::size_t vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return p_.size(); }

  std::span<const double> probabilities() const noexcept { return p_; }
  double operator[](std::size_t index) const { return p_[index]; }
  double probability(const Configuration& config) const { return p_[index_of(config)]; }

  std::size_t index_of(const Configuration& config) const;
  Configuration configuration(std::size_t index) const;

 private:
  int q_;
  std::size_t vertices_;
  std::vector<double> p_;
};

/// Number of configurations q^|V| of the tree, or 0 when it exceeds kMaxEnumeration.
std::uint64_t enumeration_size(const FiniteTree& tree, int q);

/// mu_n(sigma) = exp(-beta H_n(sigma) + sum_{x in W_n} h_{sigma(x), x}) / Z_n.
///
/// `boundary_fields` holds one vector per vertex of W_n in ascending index
/// order. Throws SizeError when q^|V_n| exceeds kMaxEnumeration.
MeasureTable finite_volume_measure(const FiniteTree& tree,
                                   std::span<const FieldVector> boundary_fields,
                                   const ModelParams& params);

/// The recursion map F(h, theta), component i:
///   ln( (theta * e^{h_i} + sum_{j != i} e^{h_j} + 1) / (theta + sum_j e^{h_j}) ).
/// Evaluated in log-sum-exp form; throws DomainError on non-finite input or output.
FieldVector f_map(const FieldVector& h, const ModelParams& params);

/// h_x = sum_{y in S(x)} F(h_y) for every interior vertex, leaves keep their inputs.
std::vector<FieldVector> propagate_fields(const FiniteTree& tree,
                                          std::span<const FieldVector> leaf_fields,
                                          const ModelParams& params);

/// Largest |sum_omega mu_n(sigma v omega) - mu_{n-1}(sigma)| over sigma on V_{n-1}.
///
/// `fields` has one vector per vertex of the tree. mu_n uses the fields on
/// W_n and mu_{n-1} those on W_{n-1}; both are computed by exhaustive
/// enumeration. Requires depth >= 1.
double check_consistency(const FiniteTree& tree, std::span<const FieldVector> fields,
                         const ModelParams& params);

struct VerifyReport {
  int trials = 0;
  double max_violation = 0.0;
  std::vector<double> violations;
};

/// Draws `trials` sets of leaf fields uniformly from [-2, 2], propagates them,
/// optionally adds `perturb` to the first component of the first W_{n-1}
/// field, and runs check_consistency on each draw.
VerifyReport verify_random_fields(const ModelParams& params, int depth, std::uint64_t seed,
                                  int trials, double perturb = 0.0);

}  // namespace pottstree
