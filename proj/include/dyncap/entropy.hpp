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

#ifndef DYNCAP_ENTROPY_HPP_
#define DYNCAP_ENTROPY_HPP_

#include <span>

#include "dyncap/qmat.hpp"

namespace dyncap {

// All entropic quantities are in bits.

// -sum l log2 l over a spectrum, after clamping rounding noise to zero.
// Throws kInvariantViolation for eigenvalues below -kEigenClampTolerance.
double spectrum_entropy(std::span<const double> eigenvalues);

// Entropy of a Hermitian PSD matrix without building a DensityOperator.
double matrix_entropy(const ComplexMatrix& m);

double vn_entropy(const DensityOperator& rho);

// H2(q); q must lie in [0, 1].
double binary_entropy(double q);

// I(A;B) = H(A) + H(B) - H(AB) for a state labelled with two subsystems.
double mutual_information(const DensityOperator& rho);

// I(A>B) = H(B) - H(AB); may be negative.
double coherent_information(const DensityOperator& rho);

// I(A;B|C) = H(AC) + H(BC) - H(C) - H(ABC) for a tripartite state ordered
// (A, B, C). Rounding noise may leave it slightly negative; it is not clamped.
double conditional_mutual_information(const DensityOperator& rho);

}  // namespace dyncap

#endif  // DYNCAP_ENTROPY_HPP_
