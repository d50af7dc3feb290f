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

#include "pottstree/pottstree.h"

#include <algorithm>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "pottstree/error.hpp"
#include "pottstree/model.hpp"
#include "pottstree/period2.hpp"
#include "pottstree/scan.hpp"
#include "pottstree/solver.hpp"
#include "pottstree/tree.hpp"

struct pottstree_tree {
  pottstree::FiniteTree tree;
};

struct pottstree_roots {
  pottstree::RootReport report;
  std::string rendered;
};

struct pottstree_scan {
  std::vector<pottstree::ScanRow> rows;
  std::string rendered;
};

struct pottstree_orbit {
  pottstree::FixedPointResult result;
  std::vector<pottstree::ZVector> trace;
  bool signs_checked = false;
  int sign_failures = 0;
};

namespace {

thread_local std::string g_last_error;

pottstree_status fail(pottstree_status status, const char* message) {
  g_last_error = message;
  return status;
}

// Runs body and maps the library's exception hierarchy onto status codes.
template <class Body>
pottstree_status guarded(Body&& body) {
  try {
    body();
    g_last_error.clear();
    return POTTSTREE_OK;
  } catch (const pottstree::InvalidArgument& e) {
    return fail(POTTSTREE_INVALID_ARGUMENT, e.what());
  } catch (const pottstree::DomainError& e) {
    return fail(POTTSTREE_DOMAIN_ERROR, e.what());
  } catch (const pottstree::SizeError& e) {
    return fail(POTTSTREE_SIZE_ERROR, e.what());
  } catch (const pottstree::NumericalError& e) {
    return fail(POTTSTREE_NUMERICAL_ERROR, e.what());
  } catch (const pottstree::IoError& e) {
    return fail(POTTSTREE_IO_ERROR, e.what());
  } catch (const std::bad_alloc&) {
    return fail(POTTSTREE_SIZE_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(POTTSTREE_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(POTTSTREE_INTERNAL_ERROR, "unknown error");
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw pottstree::InvalidArgument(std::string(what) + " must not be NULL");
}

pottstree::ZVector to_z(const double z[4]) { return pottstree::ZVector(z[0], z[1], z[2], z[3]); }

void from_z(const pottstree::ZVector& z, double out[4]) {
  for (std::size_t i = 0; i < 4; ++i) out[i] = z[i];
}

pottstree::TableFormat to_format(pottstree_format f) {
  switch (f) {
    case POTTSTREE_FORMAT_CSV:
      return pottstree::TableFormat::Csv;
    case POTTSTREE_FORMAT_JSON:
      return pottstree::TableFormat::Json;
  }
  throw pottstree::InvalidArgument("unknown table format");
}

}  // namespace

extern "C" {

const char* pottstree_version(void) { return "0.1.0"; }

const char* pottstree_status_string(pottstree_status status) {
  switch (status) {
    case POTTSTREE_OK:
      return "ok";
    case POTTSTREE_INVALID_ARGUMENT:
      return "invalid argument";
    case POTTSTREE_DOMAIN_ERROR:
      return "domain error";
    case POTTSTREE_SIZE_ERROR:
      return "size error";
    case POTTSTREE_NUMERICAL_ERROR:
      return "numerical error";
    case POTTSTREE_IO_ERROR:
      return "i/o error";
    case POTTSTREE_INTERNAL_ERROR:
      return "internal error";
  }
  return "unknown status";
}

const char* pottstree_last_error(void) { return g_last_error.c_str(); }

pottstree_status pottstree_theta_from_coupling(double coupling, double beta, double* theta) {
  return guarded([&] {
    require(theta, "theta");
    *theta = pottstree::ModelParams::from_coupling(1, 2, coupling, beta).theta();
  });
}

pottstree_status pottstree_tree_create(int k, int depth, pottstree_tree** out) {
  return guarded([&] {
    require(out, "out");
    *out = new pottstree_tree{pottstree::FiniteTree::build(k, depth)};
  });
}

void pottstree_tree_destroy(pottstree_tree* tree) { delete tree; }

size_t pottstree_tree_vertex_count(const pottstree_tree* tree) {
  return tree ? tree->tree.size() : 0;
}

size_t pottstree_tree_edge_count(const pottstree_tree* tree) {
  return tree ? tree->tree.edge_count() : 0;
}

int pottstree_tree_depth(const pottstree_tree* tree) { return tree ? tree->tree.depth() : -1; }

pottstree_status pottstree_tree_sphere_size(const pottstree_tree* tree, int m, size_t* size) {
  return guarded([&] {
    require(tree, "tree");
    require(size, "size");
    *size = tree->tree.sphere_size(m);
  });
}

pottstree_status pottstree_tree_children(const pottstree_tree* tree, size_t vertex,
                                         size_t* children, size_t capacity, size_t* count) {
  return guarded([&] {
    require(tree, "tree");
    require(count, "count");
    const auto c = tree->tree.children(vertex);
    *count = c.size();
    if (capacity > 0) require(children, "children");
    std::copy_n(c.begin(), std::min(capacity, c.size()), children);
  });
}

pottstree_status pottstree_theta_cr(int k, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = pottstree::theta_cr(k);
  });
}

pottstree_status pottstree_f(double x, double theta, int k, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = pottstree::f_scalar(x, theta, k);
  });
}

pottstree_status pottstree_g(double x, double theta, int k, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = pottstree::g_scalar(x, theta, k);
  });
}

pottstree_status pottstree_h(double x, double theta, int k, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = pottstree::h_scalar(x, theta, k);
  });
}

pottstree_status pottstree_h_prime(double x, double theta, int k, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = pottstree::h_prime(x, theta, k);
  });
}

pottstree_status pottstree_system6_map(const double z_in[4], double theta, int k,
                                       double z_out[4]) {
  return guarded([&] {
    require(z_in, "z_in");
    require(z_out, "z_out");
    from_z(pottstree::system6_map(to_z(z_in), theta, k), z_out);
  });
}

pottstree_status pottstree_sign_relations(const double z_in[4], const double z_out[4],
                                          double theta, int ok[3]) {
  return guarded([&] {
    require(z_in, "z_in");
    require(z_out, "z_out");
    require(ok, "ok");
    const auto r = pottstree::proposition_sign_check(to_z(z_in), to_z(z_out), theta);
    ok[0] = r.order_reversed;
    ok[1] = r.first_vs_one;
    ok[2] = r.second_vs_one;
  });
}

pottstree_status pottstree_descartes_bound(double theta, int k, int* changes) {
  return guarded([&] {
    require(changes, "changes");
    *changes = pottstree::descartes_positive_root_bound(pottstree::p_coefficients(theta, k));
  });
}

pottstree_status pottstree_roots_find(double theta, int k, int grid, pottstree_roots** out) {
  return guarded([&] {
    require(out, "out");
    *out = new pottstree_roots{
        pottstree::find_h_roots(theta, k, grid <= 0 ? pottstree::kDefaultGrid : grid), {}};
  });
}

void pottstree_roots_destroy(pottstree_roots* roots) { delete roots; }

size_t pottstree_roots_count(const pottstree_roots* roots) {
  return roots ? roots->report.count() : 0;
}

unsigned pottstree_roots_flags(const pottstree_roots* roots) {
  return roots ? roots->report.flags : 0u;
}

pottstree_status pottstree_roots_get(const pottstree_roots* roots, size_t index, double* x,
                                     double* residual, int* kind) {
  return guarded([&] {
    require(roots, "roots");
    if (index >= roots->report.count()) throw pottstree::InvalidArgument("root index out of range");
    const auto& r = roots->report.roots[index];
    if (x) *x = r.x;
    if (residual) *residual = r.residual;
    if (kind) {
      *kind = r.kind == pottstree::RootKind::TranslationInvariant
                  ? POTTSTREE_ROOT_TRANSLATION_INVARIANT
                  : POTTSTREE_ROOT_PERIOD2;
    }
  });
}

size_t pottstree_roots_pair_count(const pottstree_roots* roots) {
  return roots ? roots->report.pairs.size() : 0;
}

pottstree_status pottstree_roots_pair(const pottstree_roots* roots, size_t index, double* lower,
                                      double* upper) {
  return guarded([&] {
    require(roots, "roots");
    if (index >= roots->report.pairs.size()) throw pottstree::InvalidArgument("pair index out of range");
    if (lower) *lower = roots->report.pairs[index].lower;
    if (upper) *upper = roots->report.pairs[index].upper;
  });
}

pottstree_status pottstree_roots_render(pottstree_roots* roots, pottstree_format format,
                                        const char** text, size_t* length) {
  return guarded([&] {
    require(roots, "roots");
    require(text, "text");
    roots->rendered = pottstree::render({pottstree::make_row(roots->report)}, to_format(format));
    *text = roots->rendered.c_str();
    if (length) *length = roots->rendered.size();
  });
}

pottstree_status pottstree_scan_theta(int k, double theta_lo, double theta_hi, int steps,
                                      pottstree_scan** out) {
  return guarded([&] {
    require(out, "out");
    *out = new pottstree_scan{pottstree::scan_theta(k, theta_lo, theta_hi, steps), {}};
  });
}

void pottstree_scan_destroy(pottstree_scan* scan) { delete scan; }

size_t pottstree_scan_row_count(const pottstree_scan* scan) { return scan ? scan->rows.size() : 0; }

pottstree_status pottstree_scan_row(const pottstree_scan* scan, size_t index, double* theta,
                                    int* count, unsigned* flags) {
  return guarded([&] {
    require(scan, "scan");
    if (index >= scan->rows.size()) throw pottstree::InvalidArgument("row index out of range");
    const auto& row = scan->rows[index];
    if (theta) *theta = row.theta;
    if (count) *count = row.count;
    if (flags) *flags = row.flags;
  });
}

pottstree_status pottstree_scan_render(pottstree_scan* scan, pottstree_format format,
                                       const char** text, size_t* length) {
  return guarded([&] {
    require(scan, "scan");
    require(text, "text");
    scan->rendered = pottstree::render(scan->rows, to_format(format));
    *text = scan->rendered.c_str();
    if (length) *length = scan->rendered.size();
  });
}

pottstree_status pottstree_scan_write(const pottstree_scan* scan, pottstree_format format,
                                      const char* path) {
  return guarded([&] {
    require(scan, "scan");
    require(path, "path");
    pottstree::write_rows(scan->rows, to_format(format), path);
  });
}

pottstree_status pottstree_verify(int k, int q, int depth, double theta, uint64_t seed,
                                  int trials, double perturb, pottstree_verify_result* result) {
  return guarded([&] {
    require(result, "result");
    const auto params = pottstree::ModelParams::from_theta(k, q, theta);
    const auto report = pottstree::verify_random_fields(params, depth, seed, trials, perturb);
    result->trials = report.trials;
    result->max_violation = report.max_violation;
  });
}

pottstree_status pottstree_orbit_run(double theta, int k, const double z0[4], double tol,
                                     int max_iter, pottstree_orbit** out) {
  return guarded([&] {
    require(z0, "z0");
    require(out, "out");
    const auto start = to_z(z0);
    const bool check = theta > 0.0 && theta < 1.0;
    auto orbit = std::make_unique<pottstree_orbit>(
        pottstree_orbit{pottstree::FixedPointResult{start, 0, false}, {start}, check, 0});

    auto count_failures = [&](const pottstree::ZVector& z) {
      if (!check) return;
      const auto half = pottstree::system6_map(z, theta, k);
      const auto full = pottstree::system6_map(half, theta, k);
      if (!pottstree::proposition_sign_check(z, half, theta).all()) ++orbit->sign_failures;
      if (!pottstree::proposition_sign_check(half, full, theta).all()) ++orbit->sign_failures;
    };
    count_failures(start);
    orbit->result = pottstree::fixed_point_iterate(
        pottstree::even_step_map(theta, k), start, tol, max_iter,
        [&](int, const pottstree::ZVector& z) {
          orbit->trace.push_back(z);
          count_failures(z);
        });
    *out = orbit.release();
  });
}

void pottstree_orbit_destroy(pottstree_orbit* orbit) { delete orbit; }

int pottstree_orbit_converged(const pottstree_orbit* orbit) {
  return orbit && orbit->result.converged ? 1 : 0;
}

int pottstree_orbit_iterations(const pottstree_orbit* orbit) {
  return orbit ? orbit->result.iterations : 0;
}

int pottstree_orbit_signs_checked(const pottstree_orbit* orbit) {
  return orbit && orbit->signs_checked ? 1 : 0;
}

int pottstree_orbit_sign_failures(const pottstree_orbit* orbit) {
  return orbit ? orbit->sign_failures : 0;
}

void pottstree_orbit_point(const pottstree_orbit* orbit, double z[4]) {
  if (orbit && z) from_z(orbit->result.point, z);
}

size_t pottstree_orbit_trace_length(const pottstree_orbit* orbit) {
  return orbit ? orbit->trace.size() : 0;
}

pottstree_status pottstree_orbit_trace(const pottstree_orbit* orbit, size_t index, double z[4]) {
  return guarded([&] {
    require(orbit, "orbit");
    require(z, "z");
    if (index >= orbit->trace.size()) throw pottstree::InvalidArgument("trace index out of range");
    from_z(orbit->trace[index], z);
  });
}

}  // extern "C"
