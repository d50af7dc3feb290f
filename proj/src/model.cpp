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

#include "pottstree/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "pottstree/error.hpp"
#include "summation.hpp"

namespace pottstree {

namespace {

void check_order_and_states(int k, int q) {
  if (k < 1) throw InvalidArgument("tree order k must be >= 1, got " + std::to_string(k));
  if (q < 2) throw InvalidArgument("number of states q must be >= 2, got " + std::to_string(q));
}

double log_sum_exp(std::span<const double> v) {
  const double m = *std::max_element(v.begin(), v.end());
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

void check_field_count(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw InvalidArgument(std::string(what) + ": expected " + std::to_string(want) +
                          " field vectors, got " + std::to_string(got));
  }
}

void check_field_states(const FieldVector& h, int q) {
  if (h.states() != q) {
    throw InvalidArgument("field vector has " + std::to_string(h.size()) +
                          " components, expected q-1 = " + std::to_string(q - 1));
  }
}

// Walks every configuration of the tree in lexicographic order (vertex 0 most
// significant) and hands visit(index, log_weight) the unnormalised log-weight
// minus `shift`. Each vertex contributes J*beta when it agrees with its parent
// plus its boundary field when it is a leaf; prefix sums are recomputed only
// for the digits that changed, so no rounding drift accumulates.
template <class Visit>
void enumerate_log_weights(const FiniteTree& tree, std::span<const FieldVector> boundary,
                           const ModelParams& params, Visit&& visit) {
  const int q = params.states();
  const std::size_t n = tree.size();
  const double bond = params.coupling() * params.beta();
  const auto leaves = tree.leaves();
  const std::size_t first_leaf = leaves.front();

  std::vector<std::size_t> parent(n, 0);
  for (std::size_t v = 1; v < n; ++v) parent[v] = *tree.parent(v);

  auto term = [&](std::size_t v, const std::vector<int>& s) {
    double t = 0.0;
    if (v > 0 && s[v] == s[parent[v]]) t += bond;
    if (v >= first_leaf) t += boundary[v - first_leaf].weight_of(s[v]);
    return t;
  };

  std::vector<int> digits(n, 0);
  std::vector<double> prefix(n, 0.0);
  auto refresh_from = [&](std::size_t v) {
    for (std::size_t u = v; u < n; ++u) prefix[u] = (u == 0 ? 0.0 : prefix[u - 1]) + term(u, digits);
  };
  refresh_from(0);

  std::size_t index = 0;
  for (;;) {
    visit(index++, prefix[n - 1]);
    std::size_t v = n;
    while (v > 0) {
      --v;
      if (++digits[v] < q) break;
      digits[v] = 0;
      if (v == 0) return;
    }
    refresh_from(v);
  }
}

// Upper bound on any log-weight, subtracted before exponentiation.
double log_weight_ceiling(const FiniteTree& tree, std::span<const FieldVector> boundary,
                          const ModelParams& params) {
  double c = std::max(0.0, params.coupling() * params.beta()) * double(tree.edge_count());
  for (const auto& h : boundary) {
    double m = 0.0;
    for (double x : h.components()) m = std::max(m, x);
    c += m;
  }
  return c;
}

std::uint64_t checked_enumeration_size(const FiniteTree& tree, int q) {
  const auto count = enumeration_size(tree, q);
  if (count == 0) {
    throw SizeError("exhaustive enumeration of " + std::to_string(q) + "^" +
                    std::to_string(tree.size()) + " configurations exceeds the limit of " +
                    std::to_string(kMaxEnumeration));
  }
  return count;
}

}  // namespace

ModelParams ModelParams::from_theta(int k, int q, double theta) {
  check_order_and_states(k, q);
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw InvalidArgument("theta must be positive and finite, got " + std::to_string(theta));
  }
  return ModelParams(k, q, std::log(theta), 1.0, theta);
}

ModelParams ModelParams::from_coupling(int k, int q, double coupling, double beta) {
  check_order_and_states(k, q);
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw InvalidArgument("beta must be positive and finite, got " + std::to_string(beta));
  }
  if (!std::isfinite(coupling)) throw InvalidArgument("coupling J must be finite");
  const double theta = std::exp(coupling * beta);
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw InvalidArgument("theta = exp(J*beta) is not a positive finite number");
  }
  return ModelParams(k, q, coupling, beta, theta);
}

FieldVector::FieldVector(std::vector<double> components) : h_(std::move(components)) {
  for (double x : h_) {
    if (!std::isfinite(x)) throw InvalidArgument("field components must be finite");
  }
}

FieldVector& FieldVector::operator+=(const FieldVector& other) {
  if (other.size() != size()) throw InvalidArgument("field vectors of different length");
  for (std::size_t i = 0; i < h_.size(); ++i) h_[i] += other.h_[i];
  return *this;
}

double hamiltonian(const FiniteTree& tree, const Configuration& config, const ModelParams& params) {
  if (config.spins.size() != tree.size()) {
    throw InvalidArgument("configuration assigns " + std::to_string(config.spins.size()) +
                          " spins to a tree with " + std::to_string(tree.size()) + " vertices");
  }
  std::size_t monochromatic = 0;
  for (VertexId x = 0; x < tree.size(); ++x) {
    for (VertexId y : tree.children(x)) {
      if (config.spins[x] == config.spins[y]) ++monochromatic;
    }
  }
  return -params.coupling() * double(monochromatic);
}

MeasureTable::MeasureTable(int q, std::size_t vertices, std::vector<double> probabilities)
    : q_(q), vertices_(vertices), p_(std::move(probabilities)) {}

std::size_t MeasureTable::index_of(const Configuration& config) const {
  if (config.spins.size() != vertices_) throw InvalidArgument("configuration size mismatch");
  std::size_t index = 0;
  for (int s : config.spins) {
    if (s < 0 || s >= q_) throw InvalidArgument("spin value out of range");
    index = index * std::size_t(q_) + std::size_t(s);
  }
  return index;
}

Configuration MeasureTable::configuration(std::size_t index) const {
  Configuration c;
  c.spins.assign(vertices_, 0);
  for (std::size_t v = vertices_; v > 0; --v) {
    c.spins[v - 1] = int(index % std::size_t(q_));
    index /= std::size_t(q_);
  }
  return c;
}

std::uint64_t enumeration_size(const FiniteTree& tree, int q) {
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < tree.size(); ++i) {
    if (count > kMaxEnumeration / std::uint64_t(q)) return 0;
    count *= std::uint64_t(q);
  }
  return count;
}

MeasureTable finite_volume_measure(const FiniteTree& tree,
                                   std::span<const FieldVector> boundary_fields,
                                   const ModelParams& params) {
  const int q = params.states();
  check_field_count(boundary_fields.size(), tree.leaves().size(), "finite_volume_measure");
  for (const auto& h : boundary_fields) check_field_states(h, q);
  const auto count = checked_enumeration_size(tree, q);

  const double shift = log_weight_ceiling(tree, boundary_fields, params);
  std::vector<double> p(count);
  NeumaierSum z;
  enumerate_log_weights(tree, boundary_fields, params, [&](std::size_t i, double logw) {
    p[i] = std::exp(logw - shift);
    z.add(p[i]);
  });
  const double total = z.value();
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw NumericalError("partition function is not a positive finite number");
  }
  for (double& x : p) x /= total;
  return MeasureTable(q, tree.size(), std::move(p));
}

FieldVector f_map(const FieldVector& h, const ModelParams& params) {
  const int q = params.states();
  check_field_states(h, q);
  const double theta = params.theta();

  // L = ln(theta + sum_j e^{h_j}); F_i = log1p((theta - 1) (e^{h_i} - 1) / e^L).
  std::vector<double> terms;
  terms.reserve(h.size() + 1);
  terms.push_back(std::log(theta));
  for (double x : h.components()) terms.push_back(x);
  const double log_den = log_sum_exp(terms);

  std::vector<double> out(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double excess = std::exp(h[i] - log_den) - std::exp(-log_den);
    const double arg = (theta - 1.0) * excess;
    if (!(arg > -1.0)) {
      throw DomainError("recursion map numerator is not positive for component " +
                        std::to_string(i + 1));
    }
    out[i] = std::log1p(arg);
    if (!std::isfinite(out[i])) throw DomainError("recursion map produced a non-finite value");
  }
  return FieldVector(std::move(out));
}

std::vector<FieldVector> propagate_fields(const FiniteTree& tree,
                                          std::span<const FieldVector> leaf_fields,
                                          const ModelParams& params) {
  const int q = params.states();
  const auto leaves = tree.leaves();
  check_field_count(leaf_fields.size(), leaves.size(), "propagate_fields");
  for (const auto& h : leaf_fields) check_field_states(h, q);

  std::vector<FieldVector> fields(tree.size());
  for (std::size_t i = 0; i < leaves.size(); ++i) fields[leaves[i]] = leaf_fields[i];

  for (std::size_t x = leaves.front(); x > 0; --x) {
    const VertexId v = x - 1;
    FieldVector sum = FieldVector::zero(q);
    for (VertexId y : tree.children(v)) sum += f_map(fields[y], params);
    fields[v] = std::move(sum);
  }
  return fields;
}

double check_consistency(const FiniteTree& tree, std::span<const FieldVector> fields,
                         const ModelParams& params) {
  if (tree.depth() < 1) throw InvalidArgument("check_consistency needs a tree of depth >= 1");
  const int q = params.states();
  check_field_count(fields.size(), tree.size(), "check_consistency");
  for (const auto& h : fields) check_field_states(h, q);
  checked_enumeration_size(tree, q);

  const auto leaves = tree.leaves();
  const auto boundary = fields.subspan(leaves.front(), leaves.size());
  std::uint64_t block = 1;
  for (std::size_t i = 0; i < leaves.size(); ++i) block *= std::uint64_t(q);

  const auto inner = FiniteTree::build(tree.order(), tree.depth() - 1);
  const auto inner_leaves = inner.leaves();
  const auto inner_boundary = fields.subspan(inner_leaves.front(), inner_leaves.size());
  const MeasureTable coarse = finite_volume_measure(inner, inner_boundary, params);

  const double shift = log_weight_ceiling(tree, boundary, params);
  std::vector<NeumaierSum> marginal(coarse.size());
  NeumaierSum z;
  enumerate_log_weights(tree, boundary, params, [&](std::size_t i, double logw) {
    const double w = std::exp(logw - shift);
    marginal[i / block].add(w);
    z.add(w);
  });
  const double total = z.value();
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw NumericalError("partition function is not a positive finite number");
  }

  double worst = 0.0;
  for (std::size_t s = 0; s < coarse.size(); ++s) {
    worst = std::max(worst, std::abs(marginal[s].value() / total - coarse[s]));
  }
  return worst;
}

VerifyReport verify_random_fields(const ModelParams& params, int depth, std::uint64_t seed,
                                  int trials, double perturb) {
  if (depth < 1) throw InvalidArgument("verification needs depth n >= 1");
  if (trials < 1) throw InvalidArgument("number of trials must be >= 1");
  if (!std::isfinite(perturb)) throw InvalidArgument("perturbation must be finite");
  const auto tree = FiniteTree::build(params.order(), depth);
  checked_enumeration_size(tree, params.states());

  std::mt19937_64 rng(seed);
  // Top 53 bits of the engine output; avoids implementation-defined distributions.
  auto uniform = [&rng] { return double(rng() >> 11) * 0x1.0p-53; };

  const auto leaves = tree.leaves();
  const VertexId perturbed = tree.sphere(depth - 1).front();
  VerifyReport report;
  report.trials = trials;
  for (int t = 0; t < trials; ++t) {
    std::vector<FieldVector> leaf_fields;
    leaf_fields.reserve(leaves.size());
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      std::vector<double> h(std::size_t(params.states() - 1));
      for (double& x : h) x = -2.0 + 4.0 * uniform();
      leaf_fields.emplace_back(std::move(h));
    }
    auto fields = propagate_fields(tree, leaf_fields, params);
    if (perturb != 0.0) {
      std::vector<double> h(fields[perturbed].components().begin(),
                            fields[perturbed].components().end());
      h[0] += perturb;
      fields[perturbed] = FieldVector(std::move(h));
    }
    const double v = check_consistency(tree, fields, params);
    report.violations.push_back(v);
    report.max_violation = std::max(report.max_violation, v);
  }
  return report;
}

}  // namespace pottstree
