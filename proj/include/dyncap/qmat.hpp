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

#ifndef DYNCAP_QMAT_HPP_
#define DYNCAP_QMAT_HPP_

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace dyncap {

using Complex = std::complex<double>;

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-10;
// Eigenvalues in [-kEigenClampTolerance, 0) are rounding noise and get
// clamped to zero; anything more negative is an invariant violation.
inline constexpr double kEigenClampTolerance = 1e-10;

// Upper bound on any matrix dimension the library will build. Defaults to
// 256 and can be overridden through the DYNCAP_MAX_DIM environment variable
// or set_max_dim().
std::size_t max_dim();
void set_max_dim(std::size_t dim);

// Dense row-major complex matrix. Square matrices hold states and operators;
// rectangular ones hold Kraus operators and isometries.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  explicit ComplexMatrix(std::size_t dim) : ComplexMatrix(dim, dim) {}
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> diag);
  static ComplexMatrix outer(std::span<const Complex> ket);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  // Dimension of a square matrix.
  std::size_t dim() const { return rows_; }

  Complex& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<const Complex> data() const { return data_; }
  std::span<Complex> data() { return data_; }

  ComplexMatrix adjoint() const;
  Complex trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex scale, ComplexMatrix m);

// Largest entrywise modulus of a - b. Shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// Kronecker product; result entry (i*b.rows()+k, j*b.cols()+l) is
// a(i,j)*b(k,l). Rejects results larger than max_dim().
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

// Throws kInvalidArgument naming the worst entry if m is not Hermitian
// within `tolerance`.
void require_hermitian(const ComplexMatrix& m,
                       double tolerance = kHermitianTolerance);

struct EigenSystem {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column k belongs to values[k]
};

// Cyclic Jacobi eigensolver for Hermitian matrices.
EigenSystem hermitian_eigen(const ComplexMatrix& m);
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

// A validated density operator together with the subsystem dimensions used
// to address it in partial traces.
class DensityOperator {
 public:
  explicit DensityOperator(ComplexMatrix m);
  DensityOperator(ComplexMatrix m, std::vector<std::size_t> dims);

  const ComplexMatrix& matrix() const { return matrix_; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t dim() const { return matrix_.dim(); }

 private:
  ComplexMatrix matrix_;
  std::vector<std::size_t> dims_;
};

// Raw partial trace over a matrix with subsystem layout `dims`; `keep` lists
// the subsystems retained, in their original order.
ComplexMatrix partial_trace(const ComplexMatrix& m,
                            std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);
DensityOperator partial_trace(const DensityOperator& rho,
                              std::span<const std::size_t> keep);
DensityOperator partial_trace(const DensityOperator& rho,
                              std::initializer_list<std::size_t> keep);

// Product state with concatenated subsystem labels.
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);

// Phi^{AB}: projector onto (1/sqrt D) sum_i |i>|i>.
DensityOperator max_entangled(std::size_t d);
// Classically correlated (1/D) sum_i |i><i| (x) |i><i|.
DensityOperator max_correlated(std::size_t d);
DensityOperator maximally_mixed(std::size_t d);
// Qubit state (I + x X + y Y + z Z) / 2; requires x^2+y^2+z^2 <= 1.
DensityOperator bloch_state(double x, double y, double z);

// Purification sum_i sqrt(l_i) |i>_R |v_i> of a Hermitian PSD matrix, as a
// ket on R (x) input with the reference system first.
std::vector<Complex> purification_vector(const ComplexMatrix& rho);
DensityOperator purify(const DensityOperator& rho);

}  // namespace dyncap

#endif  // DYNCAP_QMAT_HPP_
