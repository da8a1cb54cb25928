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

#ifndef DYNCAP_DCAP_HPP_
#define DYNCAP_DCAP_HPP_

#include <cstddef>
#include <cstdint>
#include <span>

#include "dyncap/channel.hpp"
#include "dyncap/cqstate.hpp"

namespace dyncap {

struct TradeoffWeights {
  double lambda = 0.0;
  double mu = 0.0;
};

void require_valid_weights(const TradeoffWeights& w);

inline constexpr std::uint64_t kDefaultSeed = 0x5eedc0de;
// Absolute agreement, in bits, expected between the optimizer and closed
// forms.
inline constexpr double kSearchTolerance = 1e-3;

struct OptimizerSettings {
  std::uint64_t seed = kDefaultSeed;
  // Total objective evaluations across seeding and refinement.
  std::size_t max_evaluations = 60000;
  // |X| cap; 0 selects 4 for qubit inputs and 6 otherwise.
  std::size_t max_ensemble_size = 0;
  // Number of best seeds handed to pattern search.
  std::size_t refine_seeds = 4;
  std::size_t random_seeds = 24;
  double initial_step = 0.25;
  double min_step = 1e-6;
};

struct OptimizationResult {
  double value = 0.0;
  CqEnsemble argmax;
  std::size_t evaluations = 0;
  bool converged = false;
  std::size_t ensemble_cap = 0;
};

// I(AX;B) + lambda I(A>BX) + mu (I(X;B) + I(A>BX)).
double objective(const CqEnsemble& ens, const KrausChannel& ch,
                 const TradeoffWeights& w);

// Best value of objective() over ensembles of at most ensemble_cap inputs:
// deterministic grid seeding followed by compass pattern search from the
// best seeds. `extra_seeds` are evaluated alongside the built-in grid.
// The reported value is always achieved by the returned ensemble.
OptimizationResult dcap_optimize(const KrausChannel& ch, const TradeoffWeights& w,
                                 const OptimizerSettings& settings = {},
                                 std::span<const CqEnsemble> extra_seeds = {});

// Exact maximum for the erasure channel: p = 1/2 when
// (1-eps) + lambda(1-2eps) >= mu eps, p = 0 otherwise.
double dcap_closed_form_erasure(double eps, const TradeoffWeights& w);
// max over nu of the weighted dephasing bounds (1-D grid + refinement).
double dcap_closed_form_dephasing(double p, const TradeoffWeights& w);

// max_rho I(A;B) over single inputs.
OptimizationResult ea_capacity(const KrausChannel& ch,
                               const OptimizerSettings& settings = {});
// max_rho H(N(rho)) - H(N^c(rho)).
OptimizationResult coherent_information_capacity(
    const KrausChannel& ch, const OptimizerSettings& settings = {});
// max I(X;B) over pure-state ensembles.
OptimizationResult holevo_one_shot(const KrausChannel& ch,
                                   const OptimizerSettings& settings = {});

struct AdditivityProbe {
  double two_copy_value;
  double single_doubled;
  OptimizationResult single;
  OptimizationResult two_copy;
};

// Compares D on N (x) N against 2 D(N). The two-copy search is seeded with
// the product of the single-copy argmax, so two_copy_value can only fall
// below single_doubled by rounding.
AdditivityProbe additivity_gap(const KrausChannel& ch, const TradeoffWeights& w,
                               const OptimizerSettings& settings = {});

}  // namespace dyncap

#endif  // DYNCAP_DCAP_HPP_
