// Copyright 2026 The dyncap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dyncap/region.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "dyncap/entropy.hpp"
#include "dyncap/error.hpp"

namespace dyncap {
namespace {

constexpr double kRadicandClamp = 1e-12;
constexpr double kDualConeTolerance = 1e-12;
constexpr int kGoldenIterations = 100;

void require_range(double v, double lo, double hi, const char* what) {
  if (!(v >= lo && v <= hi)) {
    std::ostringstream os;
    os << what << " = " << v << " outside [" << lo << "," << hi << "]";
    throw_invalid(os.str());
  }
}

double dot(const WeightVector& w, const RateTriple& r) {
  return w.c * r.c + w.q * r.q + w.e * r.e;
}

double grid_point(std::size_t i, std::size_t n) {
  return 0.5 * static_cast<double>(i) / static_cast<double>(n - 1);
}

// Golden-section maximisation of f on [lo, hi].
std::pair<double, double> golden_max(const std::function<double(double)>& f,
                                     double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < kGoldenIterations && b - a > 1e-13; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  return f1 >= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

// Maximises f over the grid, then refines once between the neighbours of the
// best grid point. Returns (argmax, max).
std::pair<double, double> grid_then_refine(const std::function<double(double)>& f,
                                           std::size_t n) {
  if (n < 2) throw_invalid("region grid needs at least 2 points");
  std::size_t best = 0;
  double best_value = f(grid_point(0, n));
  for (std::size_t i = 1; i < n; ++i) {
    const double v = f(grid_point(i, n));
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  const double lo = grid_point(best == 0 ? 0 : best - 1, n);
  const double hi = grid_point(std::min(best + 1, n - 1), n);
  const auto [x, v] = golden_max(f, lo, hi);
  if (v > best_value) return {x, v};
  return {grid_point(best, n), best_value};
}

double min_slack(const RateTriple& r, const EntropicTriple& b) {
  return std::min({b.cq_bound - (r.c + 2.0 * r.q), b.qe_bound - (r.q + r.e),
                   b.cqe_bound - (r.c + r.q + r.e)});
}

}  // namespace

Matrix3 unit_resource_matrix() {
  return {{{0.0, 2.0, -2.0}, {-1.0, -1.0, 1.0}, {1.0, -1.0, -1.0}}};
}

Matrix3 unit_resource_inverse() {
  return {{{-0.5, -1.0, 0.0}, {0.0, -0.5, -0.5}, {-0.5, -0.5, -0.5}}};
}

RateTriple combine_generators(const ConeCoefficients& k) {
  const Matrix3 m = unit_resource_matrix();
  const double v[3] = {k.ed, k.sd, k.tp};
  RateTriple r;
  r.c = m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2];
  r.q = m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2];
  r.e = m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2];
  return r;
}

ConeCoefficients cone_coefficients(const RateTriple& r) {
  const Matrix3 inv = unit_resource_inverse();
  const double v[3] = {r.c, r.q, r.e};
  return {inv[0][0] * v[0] + inv[0][1] * v[1] + inv[0][2] * v[2],
          inv[1][0] * v[0] + inv[1][1] * v[1] + inv[1][2] * v[2],
          inv[2][0] * v[0] + inv[2][1] * v[1] + inv[2][2] * v[2]};
}

bool in_unit_cone(const RateTriple& r, double tolerance) {
  return r.c + 2.0 * r.q <= tolerance && r.q + r.e <= tolerance &&
         r.c + r.q + r.e <= tolerance;
}

double dephasing_gamma(double nu, double p) {
  require_range(nu, 0.0, 1.0, "dephasing_gamma: nu");
  require_range(p, 0.0, 1.0, "dephasing_gamma: p");
  double radicand = 1.0 - 16.0 * (p / 2.0) * (1.0 - p / 2.0) * nu * (1.0 - nu);
  if (radicand < 0.0) {
    if (radicand < -kRadicandClamp)
      throw_invariant("dephasing_gamma: negative radicand");
    radicand = 0.0;
  }
  return 0.5 + 0.5 * std::sqrt(radicand);
}

EntropicTriple dephasing_bounds(double nu, double p) {
  require_range(nu, 0.0, 0.5, "dephasing_bounds: nu");
  const double h_nu = binary_entropy(nu);
  const double h_g = binary_entropy(dephasing_gamma(nu, p));
  return {1.0 + h_nu - h_g, h_nu - h_g, 1.0 - h_g};
}

EntropicTriple erasure_bounds(double p, double eps) {
  require_range(p, 0.0, 0.5, "erasure_bounds: p");
  require_range(eps, 0.0, 1.0, "erasure_bounds: eps");
  const double h = binary_entropy(p);
  return {(1.0 - eps) * (1.0 + h), (1.0 - 2.0 * eps) * h, 1.0 - eps - eps * h};
}

Surface Surface::dephasing(double p) {
  require_range(p, 0.0, 1.0, "dephasing surface: p");
  return Surface(SurfaceFamily::kDephasing, p);
}

Surface Surface::erasure(double eps) {
  require_range(eps, 0.0, 1.0, "erasure surface: eps");
  return Surface(SurfaceFamily::kErasure, eps);
}

EntropicTriple Surface::bounds(double param) const {
  return family_ == SurfaceFamily::kDephasing ? dephasing_bounds(param, channel_param_)
                                              : erasure_bounds(param, channel_param_);
}

KrausChannel Surface::channel() const {
  return family_ == SurfaceFamily::kDephasing ? dyncap::dephasing(channel_param_)
                                              : dyncap::erasure(channel_param_);
}

CqEnsemble Surface::canonical_ensemble(double param) const {
  require_range(param, 0.0, 0.5, "canonical_ensemble: parameter");
  const double a[] = {param, 1.0 - param};
  const double b[] = {1.0 - param, param};
  return CqEnsemble({{0.5, DensityOperator(ComplexMatrix::diagonal(a))},
                     {0.5, DensityOperator(ComplexMatrix::diagonal(b))}});
}

RateTriple cef_from_bounds(const EntropicTriple& b) {
  const double c = b.cqe_bound - b.qe_bound;
  const double q = 0.5 * (b.cq_bound - c);
  return {c, q, b.qe_bound - q};
}

Membership in_region(const RateTriple& r, const Surface& surface, std::size_t grid) {
  if (grid < 2) throw_invalid("in_region: grid needs at least 2 points");
  auto slack = [&](double t) { return min_slack(r, surface.bounds(t)); };
  for (std::size_t i = 0; i < grid; ++i) {
    const double t = grid_point(i, grid);
    const double s = slack(t);
    if (s >= -kMembershipSlack) return {true, t, s};
  }
  const auto [t, s] = grid_then_refine(slack, grid);
  return {s >= -kMembershipSlack, t, s};
}

Hyperplane supporting_hyperplane(const WeightVector& w, const Surface& surface,
                                 std::size_t grid) {
  for (const RateTriple& g : {kEntanglementDistribution, kSuperdenseCoding, kTeleportation})
    if (dot(w, g) > kDualConeTolerance) return {false, 0.0, 0.0};
  const auto [t, v] = grid_then_refine(
      [&](double x) { return dot(w, cef_from_bounds(surface.bounds(x))); }, grid);
  return {true, v, t};
}

SurfaceMax maximize_over_surface(
    const Surface& surface, const std::function<double(const EntropicTriple&)>& f,
    std::size_t grid) {
  const auto [t, v] =
      grid_then_refine([&](double x) { return f(surface.bounds(x)); }, grid);
  return {t, v};
}

std::vector<BoundarySample> sample_boundary(const Surface& surface, std::size_t n) {
  if (n < 2) throw_invalid("sample_boundary: need at least 2 samples");
  std::vector<BoundarySample> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    BoundarySample s;
    s.param = grid_point(i, n);
    s.bounds = surface.bounds(s.param);
    s.cef = cef_from_bounds(s.bounds);
    out.push_back(s);
  }
  return out;
}

}  // namespace dyncap
