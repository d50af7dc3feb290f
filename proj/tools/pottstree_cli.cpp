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

// Command-line front end for libpottstree. Everything goes through the C API.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pottstree/pottstree.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;
constexpr double kVerifyThreshold = 1e-10;

struct CliFailure {
  int code;
  std::string message;
};

int exit_code_for(pottstree_status s) {
  return (s == POTTSTREE_NUMERICAL_ERROR || s == POTTSTREE_INTERNAL_ERROR) ? kExitNumerical
                                                                          : kExitValidation;
}

void check(pottstree_status s) {
  if (s != POTTSTREE_OK) throw CliFailure{exit_code_for(s), pottstree_last_error()};
}

[[noreturn]] void invalid(const std::string& message) { throw CliFailure{kExitValidation, message}; }

std::string real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

template <class T, void (*Destroy)(T*)>
struct Deleter {
  void operator()(T* p) const { Destroy(p); }
};
using RootsPtr = std::unique_ptr<pottstree_roots, Deleter<pottstree_roots, pottstree_roots_destroy>>;
using ScanPtr = std::unique_ptr<pottstree_scan, Deleter<pottstree_scan, pottstree_scan_destroy>>;
using OrbitPtr = std::unique_ptr<pottstree_orbit, Deleter<pottstree_orbit, pottstree_orbit_destroy>>;
using TreePtr = std::unique_ptr<pottstree_tree, Deleter<pottstree_tree, pottstree_tree_destroy>>;

// Activity given either directly or as a coupling and inverse temperature.
struct Activity {
  std::optional<double> theta;
  std::optional<double> coupling;
  std::optional<double> beta;

  void add_to(CLI::App* app) {
    auto* t = app->add_option("--theta", theta, "Activity theta = exp(J*beta)");
    auto* j = app->add_option("--J", coupling, "Coupling J (with --beta)");
    auto* b = app->add_option("--beta", beta, "Inverse temperature (with --J)");
    t->excludes(j)->excludes(b);
  }

  double resolve() const {
    if (theta) {
      if (!(*theta > 0.0) || !std::isfinite(*theta)) invalid("--theta must be positive");
      return *theta;
    }
    if (coupling && beta) {
      double value = 0.0;
      check(pottstree_theta_from_coupling(*coupling, *beta, &value));
      return value;
    }
    invalid("give either --theta or both --J and --beta");
  }
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) invalid("cannot open '" + path + "' for writing");
    }
    path_ = path;
  }
  std::ostream& stream() { return path_.empty() ? std::cout : file_; }
  void finish() {
    stream().flush();
    if (!stream()) invalid("failed writing to '" + (path_.empty() ? std::string("stdout") : path_) + "'");
  }

 private:
  std::string path_;
  std::ofstream file_;
};

pottstree_format table_format(const std::string& f) {
  return f == "json" ? POTTSTREE_FORMAT_JSON : POTTSTREE_FORMAT_CSV;
}

void require_period2_k(int k) {
  if (k < 3) invalid("k must be >= 3 for the period-2 theory (got " + std::to_string(k) + ")");
}

// ---- roots ----

struct RootsOptions {
  int k = 0;
  Activity activity;
  int grid = 4001;
  std::string format = "text";
  std::string out;
};

int run_roots(const RootsOptions& o) {
  require_period2_k(o.k);
  const double theta = o.activity.resolve();
  if (!(theta < 1.0)) invalid("root search needs 0 < theta < 1 (antiferromagnetic regime)");
  pottstree_roots* raw = nullptr;
  check(pottstree_roots_find(theta, o.k, o.grid, &raw));
  RootsPtr roots(raw);

  Output out(o.out);
  if (o.format != "text") {
    const char* text = nullptr;
    check(pottstree_roots_render(roots.get(), table_format(o.format), &text, nullptr));
    out.stream() << text;
    out.finish();
    return kExitOk;
  }

  double tcr = 0.0;
  check(pottstree_theta_cr(o.k, &tcr));
  auto& s = out.stream();
  s << "k = " << o.k << ", theta = " << real(theta) << ", theta_cr = " << real(tcr)
    << (theta < tcr ? " (below critical)" : " (at or above critical)") << '\n';
  const std::size_t n = pottstree_roots_count(roots.get());
  std::size_t period2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double x = 0.0, residual = 0.0;
    int kind = 0;
    check(pottstree_roots_get(roots.get(), i, &x, &residual, &kind));
    const bool ti = kind == POTTSTREE_ROOT_TRANSLATION_INVARIANT;
    period2 += ti ? 0 : 1;
    s << "  x = " << real(x) << "  |h(x)| = " << short_real(residual) << "  "
      << (ti ? "translation-invariant" : "period-2") << '\n';
  }
  for (std::size_t i = 0; i < pottstree_roots_pair_count(roots.get()); ++i) {
    double lo = 0.0, hi = 0.0;
    check(pottstree_roots_pair(roots.get(), i, &lo, &hi));
    s << "  orbit pair: f(" << real(lo) << ") = " << real(hi) << '\n';
  }
  const unsigned flags = pottstree_roots_flags(roots.get());
  if (flags & POTTSTREE_FLAG_NEAR_DEGENERATE) s << "  note: near-degenerate roots were merged\n";
  if (flags & POTTSTREE_FLAG_DOMAIN_EDGE) s << "  note: a sign change lies at the domain edge\n";
  if (flags & POTTSTREE_FLAG_UNPAIRED) s << "  note: a period-2 root has no orbit partner\n";
  s << "count = " << n << ": 1 translation-invariant + " << period2 << " period-2\n";
  out.finish();
  return kExitOk;
}

// ---- scan ----

struct ScanOptions {
  int k = 0;
  std::string range;
  std::string format = "csv";
  std::string out;
};

struct ThetaRange {
  double lo;
  double hi;
  int steps;
};

ThetaRange parse_range(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 3) invalid("invalid range '" + text + "': expected lo:hi:steps");
  auto number = [&](const std::string& p) {
    char* end = nullptr;
    const double v = std::strtod(p.c_str(), &end);
    if (p.empty() || *end != '\0') invalid("invalid range '" + text + "': bad number '" + p + "'");
    return v;
  };
  ThetaRange r{number(parts[0]), number(parts[1]), 0};
  char* end = nullptr;
  const long steps = std::strtol(parts[2].c_str(), &end, 10);
  if (parts[2].empty() || *end != '\0' || steps < 1 || steps > 1000000) {
    invalid("invalid range '" + text + "': steps must be a positive integer");
  }
  r.steps = int(steps);
  if (!(r.lo > 0.0 && r.lo < r.hi && r.hi < 1.0)) {
    invalid("invalid range '" + text + "': need 0 < lo < hi < 1");
  }
  return r;
}

int run_scan(const ScanOptions& o) {
  require_period2_k(o.k);
  const ThetaRange range = parse_range(o.range);
  pottstree_scan* raw = nullptr;
  check(pottstree_scan_theta(o.k, range.lo, range.hi, range.steps, &raw));
  ScanPtr scan(raw);

  Output out(o.out);
  if (o.format == "text") {
    auto& s = out.stream();
    for (std::size_t i = 0; i < pottstree_scan_row_count(scan.get()); ++i) {
      double theta = 0.0;
      int count = 0;
      unsigned flags = 0;
      check(pottstree_scan_row(scan.get(), i, &theta, &count, &flags));
      s << "theta = " << real(theta) << "  count = " << count
        << ((flags & POTTSTREE_FLAG_ERROR) ? "  (error)" : "")
        << ((flags & POTTSTREE_FLAG_NEAR_DEGENERATE) ? "  (near-degenerate)" : "") << '\n';
    }
  } else {
    const char* text = nullptr;
    std::size_t length = 0;
    check(pottstree_scan_render(scan.get(), table_format(o.format), &text, &length));
    out.stream().write(text, std::streamsize(length));
  }
  out.finish();
  return kExitOk;
}

// ---- verify ----

struct VerifyOptions {
  int k = 2;
  int q = 3;
  int n = 2;
  Activity activity;
  std::uint64_t seed = 1;
  int trials = 20;
  double perturb = 0.0;
  std::string format = "text";
  std::string out;
};

int run_verify(const VerifyOptions& o) {
  const double theta = o.activity.resolve();
  pottstree_verify_result result{};
  check(pottstree_verify(o.k, o.q, o.n, theta, o.seed, o.trials, o.perturb, &result));
  const bool pass = result.max_violation <= kVerifyThreshold;

  Output out(o.out);
  auto& s = out.stream();
  if (o.format == "json") {
    s << "{\"k\": " << o.k << ", \"q\": " << o.q << ", \"n\": " << o.n << ", \"theta\": "
      << real(theta) << ", \"seed\": " << o.seed << ", \"trials\": " << result.trials
      << ", \"perturb\": " << real(o.perturb) << ", \"max_violation\": " << real(result.max_violation)
      << ", \"pass\": " << (pass ? "true" : "false") << "}\n";
  } else {
    s << "consistency check: k = " << o.k << ", q = " << o.q << ", n = " << o.n
      << ", theta = " << real(theta) << ", trials = " << result.trials << ", seed = " << o.seed;
    if (o.perturb != 0.0) s << ", perturb = " << real(o.perturb);
    s << '\n'
      << "max violation = " << short_real(result.max_violation) << '\n'
      << (pass ? "PASS" : "FAIL") << '\n';
  }
  out.finish();
  return pass ? kExitOk : kExitNumerical;
}

// ---- orbit ----

struct OrbitOptions {
  int k = 0;
  Activity activity;
  std::string z = "1,1,1,1";
  double tol = 1e-10;
  int max_iter = 1000;
  bool quiet = false;
  std::string out;
};

std::vector<double> parse_z(const std::string& text) {
  std::vector<double> z;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) {
    char* end = nullptr;
    const double v = std::strtod(p.c_str(), &end);
    if (p.empty() || *end != '\0') invalid("bad --z component '" + p + "'");
    z.push_back(v);
  }
  if (z.size() != 4) invalid("--z needs four comma-separated positive numbers");
  return z;
}

int run_orbit(const OrbitOptions& o) {
  const double theta = o.activity.resolve();
  const auto z0 = parse_z(o.z);
  if (!(theta < 1.0)) {
    std::cerr << "warning: theta >= 1 is outside the antiferromagnetic regime; "
                 "sign-relation checks skipped\n";
  }
  pottstree_orbit* raw = nullptr;
  check(pottstree_orbit_run(theta, o.k, z0.data(), o.tol, o.max_iter, &raw));
  OrbitPtr orbit(raw);

  Output out(o.out);
  auto& s = out.stream();
  double z[4];
  if (!o.quiet) {
    for (std::size_t i = 0; i < pottstree_orbit_trace_length(orbit.get()); ++i) {
      check(pottstree_orbit_trace(orbit.get(), i, z));
      s << "step " << i << ": " << real(z[0]) << ' ' << real(z[1]) << ' ' << real(z[2]) << ' '
        << real(z[3]) << '\n';
    }
  }
  const bool converged = pottstree_orbit_converged(orbit.get()) != 0;
  pottstree_orbit_point(orbit.get(), z);
  s << (converged ? "converged" : "not converged") << " after "
    << pottstree_orbit_iterations(orbit.get()) << " even steps\n"
    << "point: " << real(z[0]) << ' ' << real(z[1]) << ' ' << real(z[2]) << ' ' << real(z[3])
    << '\n';

  const double scale = std::max({z[0], z[1], z[2], z[3]});
  const bool on_set = std::abs(z[0] - z[1]) <= 1e-8 * scale && std::abs(z[2] - z[3]) <= 1e-8 * scale;
  s << "on invariant set I: " << (on_set ? "yes" : "no") << '\n';

  int failures = 0;
  if (pottstree_orbit_signs_checked(orbit.get())) {
    failures = pottstree_orbit_sign_failures(orbit.get());
    s << "sign relations: " << (failures == 0 ? "held at every step" : std::to_string(failures) + " violations")
      << '\n';
  } else {
    s << "sign relations: not checked (theta >= 1)\n";
  }

  // Compare with the roots of h when the period-2 theory applies.
  if (converged && on_set && theta < 1.0 && o.k >= 3) {
    pottstree_roots* rr = nullptr;
    if (pottstree_roots_find(theta, o.k, 0, &rr) == POTTSTREE_OK) {
      RootsPtr roots(rr);
      std::string match = "none";
      for (std::size_t i = 0; i < pottstree_roots_count(roots.get()); ++i) {
        double x = 0.0;
        int kind = 0;
        check(pottstree_roots_get(roots.get(), i, &x, nullptr, &kind));
        if (std::abs(z[0] - x) <= 1e-8 * std::max(1.0, x)) {
          match = real(x) + (kind == POTTSTREE_ROOT_TRANSLATION_INVARIANT ? " (translation-invariant)"
                                                                          : " (period-2)");
        }
      }
      s << "matches root of h: " << match << '\n';
    }
  }
  out.finish();
  return (converged && failures == 0) ? kExitOk : kExitNumerical;
}

// ---- tree-check ----

struct TreeOptions {
  int k = 2;
  int n = 2;
};

int run_tree_check(const TreeOptions& o) {
  pottstree_tree* raw = nullptr;
  check(pottstree_tree_create(o.k, o.n, &raw));
  TreePtr tree(raw);
  std::cout << "k = " << o.k << ", n = " << o.n << '\n';
  for (int m = 0; m <= o.n; ++m) {
    std::size_t size = 0;
    check(pottstree_tree_sphere_size(tree.get(), m, &size));
    std::cout << "|W_" << m << "| = " << size << '\n';
  }
  std::cout << "|V_" << o.n << "| = " << pottstree_tree_vertex_count(tree.get()) << '\n'
            << "edges = " << pottstree_tree_edge_count(tree.get()) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gibbs measures of the Potts model on Cayley trees"};
  app.require_subcommand(1);

  RootsOptions roots;
  auto* roots_cmd = app.add_subcommand("roots", "Roots of h(x) = 0 and period-2 orbits (q = 3)");
  roots_cmd->add_option("--k", roots.k, "Tree order (>= 3)")->required();
  roots.activity.add_to(roots_cmd);
  roots_cmd->add_option("--grid", roots.grid, "Scan grid size")->check(CLI::Range(2, 10000000));
  roots_cmd->add_option("--format", roots.format)->check(CLI::IsMember({"text", "csv", "json"}));
  roots_cmd->add_option("--out", roots.out, "Output path (default stdout)");

  ScanOptions scan;
  auto* scan_cmd = app.add_subcommand("scan", "Root counts over a theta grid");
  scan_cmd->add_option("--k", scan.k, "Tree order (>= 3)")->required();
  scan_cmd->add_option("--theta", scan.range, "Grid lo:hi:steps, endpoints inclusive")->required();
  scan_cmd->add_option("--format", scan.format)->check(CLI::IsMember({"text", "csv", "json"}));
  scan_cmd->add_option("--out", scan.out, "Output path (default stdout)");

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Exhaustive consistency check of the recursion");
  verify_cmd->add_option("--k", verify.k, "Tree order");
  verify_cmd->add_option("--q", verify.q, "Number of spin states");
  verify_cmd->add_option("--n", verify.n, "Tree depth");
  verify.activity.add_to(verify_cmd);
  verify_cmd->add_option("--seed", verify.seed);
  verify_cmd->add_option("--trials", verify.trials);
  verify_cmd->add_option("--perturb", verify.perturb, "Offset added to one W_{n-1} field");
  verify_cmd->add_option("--format", verify.format)->check(CLI::IsMember({"text", "json"}));
  verify_cmd->add_option("--out", verify.out, "Output path (default stdout)");

  OrbitOptions orbit;
  auto* orbit_cmd = app.add_subcommand("orbit", "Iterate the period-2 system from a start point");
  orbit_cmd->add_option("--k", orbit.k, "Tree order")->required();
  orbit.activity.add_to(orbit_cmd);
  orbit_cmd->add_option("--z", orbit.z, "Start point z1,z2,z3,z4");
  orbit_cmd->add_option("--tol", orbit.tol, "Convergence tolerance (max norm)");
  orbit_cmd->add_option("--max-iter", orbit.max_iter, "Maximum even steps");
  orbit_cmd->add_flag("--quiet", orbit.quiet, "Omit the per-step trace");
  orbit_cmd->add_option("--out", orbit.out, "Output path (default stdout)");

  TreeOptions tree;
  auto* tree_cmd = app.add_subcommand("tree-check", "Print sphere sizes of a finite tree");
  tree_cmd->add_option("--k", tree.k, "Tree order");
  tree_cmd->add_option("--n", tree.n, "Depth");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*roots_cmd) return run_roots(roots);
    if (*scan_cmd) return run_scan(scan);
    if (*verify_cmd) return run_verify(verify);
    if (*orbit_cmd) return run_orbit(orbit);
    if (*tree_cmd) return run_tree_check(tree);
  } catch (const CliFailure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  }
  return kExitValidation;
}
