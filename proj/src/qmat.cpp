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

#include "dyncap/qmat.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <string>

#include "dyncap/error.hpp"

namespace dyncap {
namespace {

constexpr std::size_t kDefaultMaxDim = 256;
constexpr double kJacobiOffDiagonalTolerance = 1e-12;
constexpr int kJacobiMaxSweeps = 100;

std::size_t initial_max_dim() {
  if (const char* env = std::getenv("DYNCAP_MAX_DIM")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultMaxDim;
}

std::atomic<std::size_t>& max_dim_storage() {
  static std::atomic<std::size_t> value{initial_max_dim()};
  return value;
}

void require_dim_within_cap(std::size_t dim, const char* what) {
  if (dim > max_dim()) {
    std::ostringstream os;
    os << what << ": dimension " << dim << " exceeds the configured maximum "
       << max_dim();
    throw_invalid(os.str());
  }
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

}  // namespace

std::size_t max_dim() { return max_dim_storage().load(); }

void set_max_dim(std::size_t dim) {
  if (dim == 0) throw_invalid("set_max_dim: dimension cap must be positive");
  max_dim_storage().store(dim);
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_)
      throw_invalid("ComplexMatrix: ragged initializer list");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
  ComplexMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> ket) {
  ComplexMatrix m(ket.size());
  for (std::size_t i = 0; i < ket.size(); ++i)
    for (std::size_t j = 0; j < ket.size(); ++j)
      m(i, j) = ket[i] * std::conj(ket[j]);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw_invalid("ComplexMatrix::operator+=: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw_invalid("ComplexMatrix::operator-=: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& v : data_) v *= scale;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
  a += b;
  return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
  a -= b;
  return a;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows())
    throw_invalid("ComplexMatrix product: inner dimensions differ");
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

ComplexMatrix operator*(Complex scale, ComplexMatrix m) {
  m *= scale;
  return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw_invalid("max_abs_diff: shape mismatch");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    worst = std::max(worst, std::abs(a.data()[k] - b.data()[k]));
  return worst;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_dim_within_cap(a.rows() * b.rows(), "tensor");
  require_dim_within_cap(a.cols() * b.cols(), "tensor");
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

void require_hermitian(const ComplexMatrix& m, double tolerance) {
  if (!m.is_square()) throw_invalid("expected a square matrix");
  double worst = 0.0;
  std::size_t wi = 0, wj = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j) {
      const double d = std::abs(m(i, j) - std::conj(m(j, i)));
      if (d > worst) {
        worst = d;
        wi = i;
        wj = j;
      }
    }
  if (worst > tolerance) {
    std::ostringstream os;
    os << "matrix is not Hermitian: |M(" << wi << "," << wj << ") - conj(M("
       << wj << "," << wi << "))| = " << worst;
    throw_invalid(os.str());
  }
}

EigenSystem hermitian_eigen(const ComplexMatrix& m) {
  require_hermitian(m);
  const std::size_t n = m.dim();
  ComplexMatrix a = m;
  ComplexMatrix v = ComplexMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();

  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) < kJacobiOffDiagonalTolerance) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        // Phase the (p,q) entry real, then do a real Jacobi rotation. The
        // combined unitary U acts on columns p and q only.
        const Complex phase = std::conj(apq) / mag;  // e^{-i arg a_pq}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex upp = c;
        const Complex upq = s;
        const Complex uqp = -s * phase;
        const Complex uqq = c * phase;

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * upp + akq * uqp;
          a(k, q) = akp * upq + akq * uqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
          a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * upp + vkq * uqp;
          v(k, q) = vkp * upq + vkq * uqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });
  EigenSystem out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  if (m.is_square() && n == 1) {
    require_hermitian(m);
    return {m(0, 0).real()};
  }
  if (m.is_square() && n == 2) {
    require_hermitian(m);
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const double mean = 0.5 * (a + d);
    const double r = std::hypot(0.5 * (a - d), std::abs(m(0, 1)));
    return {mean - r, mean + r};
  }
  return hermitian_eigen(m).values;
}

DensityOperator::DensityOperator(ComplexMatrix m)
    : DensityOperator(std::move(m), {}) {}

DensityOperator::DensityOperator(ComplexMatrix m, std::vector<std::size_t> dims)
    : matrix_(std::move(m)), dims_(std::move(dims)) {
  if (!matrix_.is_square() || matrix_.dim() == 0)
    throw_invalid("DensityOperator: matrix must be square and non-empty");
  if (dims_.empty()) dims_ = {matrix_.dim()};
  std::size_t product = 1;
  for (std::size_t d : dims_) {
    if (d == 0) throw_invalid("DensityOperator: zero subsystem dimension");
    product *= d;
  }
  if (product != matrix_.dim())
    throw_invalid("DensityOperator: subsystem dimensions do not multiply to "
                  "the matrix dimension");
  require_hermitian(matrix_);
  const double tr = matrix_.trace().real();
  if (std::abs(tr - 1.0) > kTraceTolerance) {
    std::ostringstream os;
    os << "DensityOperator: trace " << tr << " differs from 1";
    throw_invalid(os.str());
  }
  const auto eig = hermitian_eigenvalues(matrix_);
  if (eig.front() < -kEigenClampTolerance) {
    std::ostringstream os;
    os << "DensityOperator: negative eigenvalue " << eig.front();
    throw_invalid(os.str());
  }
}

ComplexMatrix partial_trace(const ComplexMatrix& m,
                            std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  if (keep.empty()) throw_invalid("partial_trace: empty keep set");
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= dims.size()) throw_invalid("partial_trace: subsystem index out of range");
    if (kept[k]) throw_invalid("partial_trace: duplicate subsystem index");
    kept[k] = true;
  }
  std::size_t total = 1;
  for (std::size_t d : dims) total *= d;
  if (!m.is_square() || m.dim() != total)
    throw_invalid("partial_trace: matrix does not match subsystem dimensions");

  // Split each full basis index into (kept index, traced index).
  std::vector<std::size_t> kept_index(total), traced_index(total);
  std::size_t kept_dim = 1;
  for (std::size_t s = 0; s < dims.size(); ++s)
    if (kept[s]) kept_dim *= dims[s];
  for (std::size_t full = 0; full < total; ++full) {
    std::size_t rem = full;
    std::size_t ki = 0, ti = 0, kstride = 1, tstride = 1;
    for (std::size_t s = dims.size(); s-- > 0;) {
      const std::size_t digit = rem % dims[s];
      rem /= dims[s];
      if (kept[s]) {
        ki += digit * kstride;
        kstride *= dims[s];
      } else {
        ti += digit * tstride;
        tstride *= dims[s];
      }
    }
    kept_index[full] = ki;
    traced_index[full] = ti;
  }
  ComplexMatrix out(kept_dim);
  for (std::size_t a = 0; a < total; ++a)
    for (std::size_t b = 0; b < total; ++b)
      if (traced_index[a] == traced_index[b])
        out(kept_index[a], kept_index[b]) += m(a, b);
  return out;
}

DensityOperator partial_trace(const DensityOperator& rho,
                              std::span<const std::size_t> keep) {
  ComplexMatrix reduced = partial_trace(rho.matrix(), rho.dims(), keep);
  std::vector<std::size_t> dims;
  for (std::size_t s = 0; s < rho.dims().size(); ++s)
    if (std::find(keep.begin(), keep.end(), s) != keep.end())
      dims.push_back(rho.dims()[s]);
  return DensityOperator(std::move(reduced), std::move(dims));
}

DensityOperator partial_trace(const DensityOperator& rho,
                              std::initializer_list<std::size_t> keep) {
  return partial_trace(rho, std::span<const std::size_t>(keep.begin(), keep.size()));
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  std::vector<std::size_t> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return DensityOperator(tensor(a.matrix(), b.matrix()), std::move(dims));
}

DensityOperator max_entangled(std::size_t d) {
  if (d == 0) throw_invalid("max_entangled: dimension must be positive");
  require_dim_within_cap(d * d, "max_entangled");
  std::vector<Complex> ket(d * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t i = 0; i < d; ++i) ket[i * d + i] = amp;
  return DensityOperator(ComplexMatrix::outer(ket), {d, d});
}

DensityOperator max_correlated(std::size_t d) {
  if (d == 0) throw_invalid("max_correlated: dimension must be positive");
  require_dim_within_cap(d * d, "max_correlated");
  ComplexMatrix m(d * d);
  for (std::size_t i = 0; i < d; ++i) m(i * d + i, i * d + i) = 1.0 / static_cast<double>(d);
  return DensityOperator(std::move(m), {d, d});
}

DensityOperator maximally_mixed(std::size_t d) {
  if (d == 0) throw_invalid("maximally_mixed: dimension must be positive");
  return DensityOperator((1.0 / static_cast<double>(d)) * ComplexMatrix::identity(d));
}

DensityOperator bloch_state(double x, double y, double z) {
  if (x * x + y * y + z * z > 1.0 + 1e-12)
    throw_invalid("bloch_state: Bloch vector lies outside the unit ball");
  return DensityOperator(ComplexMatrix{{0.5 * (1.0 + z), 0.5 * Complex(x, -y)},
                                       {0.5 * Complex(x, y), 0.5 * (1.0 - z)}});
}

std::vector<Complex> purification_vector(const ComplexMatrix& rho) {
  const EigenSystem es = hermitian_eigen(rho);
  const std::size_t d = rho.dim();
  std::vector<Complex> ket(d * d);
  for (std::size_t k = 0; k < d; ++k) {
    double lambda = es.values[k];
    if (lambda < -kEigenClampTolerance)
      throw_invariant("purification_vector: negative eigenvalue");
    if (lambda <= 0.0) continue;
    const double amp = std::sqrt(lambda);
    for (std::size_t i = 0; i < d; ++i) ket[k * d + i] = amp * es.vectors(i, k);
  }
  return ket;
}

DensityOperator purify(const DensityOperator& rho) {
  const std::size_t d = rho.dim();
  require_dim_within_cap(d * d, "purify");
  return DensityOperator(ComplexMatrix::outer(purification_vector(rho.matrix())),
                         {d, d});
}

}  // namespace dyncap
