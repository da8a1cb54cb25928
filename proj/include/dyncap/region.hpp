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

#ifndef DYNCAP_REGION_HPP_
#define DYNCAP_REGION_HPP_

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "dyncap/channel.hpp"
#include "dyncap/cqstate.hpp"

namespace dyncap {

// ---------------------------------------------------------------------------
// Unit resource cone spanned by entanglement distribution, super-dense coding
// and teleportation.
// ---------------------------------------------------------------------------

inline constexpr RateTriple kEntanglementDistribution{0.0, -1.0, 1.0};
inline constexpr RateTriple kSuperdenseCoding{2.0, -1.0, -1.0};
inline constexpr RateTriple kTeleportation{-2.0, 1.0, -1.0};

using Matrix3 = std::array<std::array<double, 3>, 3>;

// Columns are the ED, SD and TP generators: (C,Q,E)^T = M (a,b,g)^T.
Matrix3 unit_resource_matrix();
// Closed-form inverse of unit_resource_matrix().
Matrix3 unit_resource_inverse();

struct ConeCoefficients {
  double ed = 0.0;
  double sd = 0.0;
  double tp = 0.0;
};

RateTriple combine_generators(const ConeCoefficients& k);
ConeCoefficients cone_coefficients(const RateTriple& r);
// C+2Q <= 0, Q+E <= 0, C+Q+E <= 0, each within `tolerance`.
bool in_unit_cone(const RateTriple& r, double tolerance = 1e-12);

// ---------------------------------------------------------------------------
// Closed-form boundary surfaces
// ---------------------------------------------------------------------------

// 1/2 + 1/2 sqrt(1 - 16 (p/2)(1-p/2) nu (1-nu)), nu and p in [0,1].
double dephasing_gamma(double nu, double p);

// (1 + H2(nu) - H2(g), H2(nu) - H2(g), 1 - H2(g)) with g = dephasing_gamma,
// nu in [0, 1/2].
EntropicTriple dephasing_bounds(double nu, double p);

// ((1-eps)(1+H2(p)), (1-2eps) H2(p), 1 - eps - eps H2(p)), p in [0, 1/2].
EntropicTriple erasure_bounds(double p, double eps);

enum class SurfaceFamily { kDephasing, kErasure };

// One-parameter family of region inequalities for a channel whose boundary
// is known in closed form. The surface parameter (nu or p) ranges over
// [0, 1/2]; values above 1/2 are rejected rather than folded.
class Surface {
 public:
  static Surface dephasing(double p);
  static Surface erasure(double eps);

  SurfaceFamily family() const { return family_; }
  double channel_parameter() const { return channel_param_; }

  EntropicTriple bounds(double param) const;
  KrausChannel channel() const;
  // Equal mixture of diag(t, 1-t) and its bit flip diag(1-t, t); attains the
  // bounds at parameter t for both families.
  CqEnsemble canonical_ensemble(double param) const;

 private:
  Surface(SurfaceFamily family, double channel_param)
      : family_(family), channel_param_(channel_param) {}

  SurfaceFamily family_;
  double channel_param_;
};

inline constexpr std::size_t kDefaultRegionGrid = 2049;
inline constexpr double kMembershipSlack = 1e-9;

// CEF corner (C,Q,E) implied by a bound triple:
// C = cqe - qe, Q = (cq - C)/2, E = qe - Q.
RateTriple cef_from_bounds(const EntropicTriple& b);

struct Membership {
  bool inside = false;
  double witness = 0.0;    // surface parameter achieving the best slack
  double min_slack = 0.0;  // min over the three inequalities at the witness
};

// Scans the parameter grid in increasing order and returns the first
// parameter whose three inequalities all hold with slack >= -1e-9. If none
// does, refines once around the best grid point before giving up.
Membership in_region(const RateTriple& r, const Surface& surface,
                     std::size_t grid = kDefaultRegionGrid);

struct WeightVector {
  double c = 0.0;
  double q = 0.0;
  double e = 0.0;
};

struct Hyperplane {
  bool bounded = false;
  double value = 0.0;
  double param = 0.0;
};

// max w.r over the region. Unbounded unless w lies in the dual of the unit
// cone; otherwise the maximum sits on a CEF corner.
Hyperplane supporting_hyperplane(const WeightVector& w, const Surface& surface,
                                 std::size_t grid = kDefaultRegionGrid);

struct BoundarySample {
  double param = 0.0;
  EntropicTriple bounds;
  RateTriple cef;
};

struct SurfaceMax {
  double param = 0.0;
  double value = 0.0;
};

// Maximises f(bounds(t)) over the parameter grid with one golden-section
// refinement around the best grid point.
SurfaceMax maximize_over_surface(
    const Surface& surface, const std::function<double(const EntropicTriple&)>& f,
    std::size_t grid = kDefaultRegionGrid);

// n >= 2 evenly spaced parameters over [0, 1/2], increasing.
std::vector<BoundarySample> sample_boundary(const Surface& surface, std::size_t n);

}  // namespace dyncap

#endif  // DYNCAP_REGION_HPP_
