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

#ifndef DYNCAP_CHANNEL_HPP_
#define DYNCAP_CHANNEL_HPP_

#include <cstddef>
#include <vector>

#include "dyncap/qmat.hpp"

namespace dyncap {

inline constexpr double kCompletenessTolerance = 1e-10;

// CPTP map rho -> sum_k A_k rho A_k^dagger with out_dim x in_dim Kraus
// operators. The constructor checks sum_k A_k^dagger A_k = I.
class KrausChannel {
 public:
  KrausChannel(std::size_t in_dim, std::size_t out_dim,
               std::vector<ComplexMatrix> kraus);

  std::size_t in_dim() const { return in_dim_; }
  std::size_t out_dim() const { return out_dim_; }
  // Environment dimension of the canonical dilation.
  std::size_t env_dim() const { return kraus_.size(); }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

 private:
  std::size_t in_dim_;
  std::size_t out_dim_;
  std::vector<ComplexMatrix> kraus_;
};

// V : input -> output (x) environment, stored as an (out*env) x in matrix
// with the output system first.
struct IsometricExtension {
  std::size_t in_dim;
  std::size_t out_dim;
  std::size_t env_dim;
  ComplexMatrix isometry;
};

// Unchecked channel action on a raw matrix; used on hot paths.
ComplexMatrix apply_kraus(const KrausChannel& ch, const ComplexMatrix& rho);
DensityOperator apply(const KrausChannel& ch, const DensityOperator& rho);

KrausChannel identity_channel(std::size_t dim);
// (1-p) rho + p diag(rho), Kraus {sqrt(1-p/2) I, sqrt(p/2) Z}.
KrausChannel dephasing(double p);
// Qubit -> qutrit, (1-eps) rho + eps |e><e| with |e> = basis index 2.
KrausChannel erasure(double eps);

// V = sum_k A_k (x) |k>_E.
IsometricExtension isometric_extension(const KrausChannel& ch);
// rho -> [Tr(A_k rho A_l^dagger)]_{k,l}; basis of E follows Kraus order.
KrausChannel complementary(const KrausChannel& ch);
// Kraus set {A_i (x) B_j}.
KrausChannel tensor_channel(const KrausChannel& a, const KrausChannel& b);

}  // namespace dyncap

#endif  // DYNCAP_CHANNEL_HPP_
