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

#ifndef DYNCAP_ORACLE_HPP_
#define DYNCAP_ORACLE_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dyncap/channel.hpp"
#include "dyncap/cqstate.hpp"
#include "dyncap/dcap.hpp"

namespace dyncap {

// Brute-force grid scans over small ensembles. These share only the entropy
// and channel primitives with the optimizer in dcap.hpp; nothing here refines
// or reuses its search.

inline constexpr double kOracleTolerance = 5e-3;
inline constexpr double kMaxOracleEvaluations = 1e7;

struct OracleReport {
  double best_value = 0.0;
  std::optional<CqEnsemble> best_ensemble;
  std::string grid_spec;  // JSON object describing the scanned grid
  // gap = comparison_target - best_value; NaN when there is no target.
  double comparison_target = 0.0;
  double gap = 0.0;
  std::size_t evaluations = 0;
  // Additional named values (two-copy results, product checks, ...).
  std::vector<std::pair<std::string, double>> extras;
  std::string note;

  void set_target(double target) {
    comparison_target = target;
    gap = target - best_value;
  }
  double extra(const std::string& key) const;
};

// Single-qubit ensemble grid. Ensembles with up to `full_size` entries use the
// full Bloch grid and probability step 1/prob_steps; larger ones (up to
// max_ensemble) use the coarse grid.
struct OracleGrid {
  std::size_t prob_steps = 8;
  std::size_t polar_steps = 12;    // polar spacing pi/polar_steps
  std::size_t azimuth_steps = 24;  // azimuthal spacing 2pi/azimuth_steps
  std::vector<double> radii = {0.0, 0.5, 1.0};
  std::size_t max_ensemble = 4;
  std::size_t full_size = 2;
  std::size_t coarse_prob_steps = 6;
  std::size_t coarse_polar_steps = 4;
  std::size_t coarse_azimuth_steps = 8;

  std::string to_json() const;
};

// Two-qubit ensemble family for additivity probes: products of Bloch states
// taken from the six axis directions at the given radii (plus the centre),
// and cos t|00> + sin t|11> under local rotations sending |0> to +z, +x, +y.
struct TwoCopyGrid {
  std::size_t prob_steps = 4;
  std::vector<double> radii = {0.5, 1.0};
  std::vector<double> entangled_angles = {0.39269908169872414, 0.7853981633974483};
  std::size_t max_ensemble = 3;

  std::string to_json() const;
};

// D_{lambda,mu} grid maxima for several weight pairs in one scan; input
// dimension must be 2. Targets are left as NaN.
std::vector<OracleReport> oracle_dcap_sweep(const KrausChannel& ch,
                                            std::span<const TradeoffWeights> weights,
                                            const OracleGrid& grid = {});

OracleReport oracle_dcap(const KrausChannel& ch, const TradeoffWeights& w,
                         const OracleGrid& grid = {},
                         std::optional<double> target = std::nullopt);

// Full-grid oracle value (target) against the best equal mixture of
// diag(nu, 1-nu) and diag(1-nu, nu) over `restricted_points` values of nu in
// [0, 1/2] (best_value); gap = full - restricted.
OracleReport oracle_dephasing_diagonal_sufficiency(double p, const TradeoffWeights& w,
                                                   const OracleGrid& grid = {},
                                                   std::size_t restricted_points = 1025);

// One-sided additivity probe: best two-copy objective over the TwoCopyGrid
// family against target 2 x single-copy value (closed form if given,
// otherwise the single-copy oracle). Also checks that the product of the
// single-copy oracle ensemble scores exactly twice its single-copy value
// (extras "product_value", "product_residual").
std::vector<OracleReport> oracle_additivity_sweep(
    const KrausChannel& ch, std::span<const TradeoffWeights> weights,
    std::span<const std::optional<double>> single_copy_values,
    const TwoCopyGrid& two_copy_grid = {}, const OracleGrid& single_grid = {});

OracleReport oracle_additivity(const KrausChannel& ch, const TradeoffWeights& w,
                               std::optional<double> single_copy_value = std::nullopt,
                               const TwoCopyGrid& two_copy_grid = {},
                               const OracleGrid& single_grid = {});

// Holevo information of the erasure channel: pure single-copy grid against
// 1 - eps, plus a two-copy product-state family (|X| <= 4) against
// 2(1 - eps) (extras "two_copy_best", "two_copy_target", "two_copy_gap").
OracleReport oracle_holevo_erasure(double eps, const OracleGrid& grid = {});

}  // namespace dyncap

#endif  // DYNCAP_ORACLE_HPP_
