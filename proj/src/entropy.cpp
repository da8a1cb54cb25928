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

#include "dyncap/entropy.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "dyncap/error.hpp"

namespace dyncap {
namespace {

constexpr double kInvLn2 = 1.0 / std::numbers::ln2;

double plogp(double x) { return x > 0.0 ? x * std::log(x) * kInvLn2 : 0.0; }

void require_subsystems(const DensityOperator& rho, std::size_t count,
                        const char* what) {
  if (rho.dims().size() != count) {
    std::ostringstream os;
    os << what << ": expected " << count << " subsystems, got "
       << rho.dims().size();
    throw_invalid(os.str());
  }
}

}  // namespace

double spectrum_entropy(std::span<const double> eigenvalues) {
  double h = 0.0;
  for (double l : eigenvalues) {
    if (l < -kEigenClampTolerance) {
      std::ostringstream os;
      os << "entropy: eigenvalue " << l << " is below the clamp tolerance";
      throw_invariant(os.str());
    }
    h -= plogp(l);
  }
  return h;
}

double matrix_entropy(const ComplexMatrix& m) {
  return spectrum_entropy(hermitian_eigenvalues(m));
}

double vn_entropy(const DensityOperator& rho) { return matrix_entropy(rho.matrix()); }

double binary_entropy(double q) {
  if (!(q >= 0.0 && q <= 1.0)) {
    std::ostringstream os;
    os << "binary_entropy: probability " << q << " outside [0,1]";
    throw_invalid(os.str());
  }
  return -plogp(q) - plogp(1.0 - q);
}

double mutual_information(const DensityOperator& rho) {
  require_subsystems(rho, 2, "mutual_information");
  const auto& dims = rho.dims();
  const std::size_t a[] = {0}, b[] = {1};
  return matrix_entropy(partial_trace(rho.matrix(), dims, a)) +
         matrix_entropy(partial_trace(rho.matrix(), dims, b)) -
         matrix_entropy(rho.matrix());
}

double coherent_information(const DensityOperator& rho) {
  require_subsystems(rho, 2, "coherent_information");
  const std::size_t b[] = {1};
  return matrix_entropy(partial_trace(rho.matrix(), rho.dims(), b)) -
         matrix_entropy(rho.matrix());
}

double conditional_mutual_information(const DensityOperator& rho) {
  require_subsystems(rho, 3, "conditional_mutual_information");
  const auto& m = rho.matrix();
  const auto& dims = rho.dims();
  const std::size_t ac[] = {0, 2}, bc[] = {1, 2}, c[] = {2};
  return matrix_entropy(partial_trace(m, dims, ac)) +
         matrix_entropy(partial_trace(m, dims, bc)) -
         matrix_entropy(partial_trace(m, dims, c)) - matrix_entropy(m);
}

}  // namespace dyncap
