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

#include "dyncap/channel.hpp"

#include <cmath>
#include <sstream>

#include "dyncap/error.hpp"

namespace dyncap {
namespace {

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream os;
    os << what << ": parameter " << p << " outside [0,1]";
    throw_invalid(os.str());
  }
}

}  // namespace

KrausChannel::KrausChannel(std::size_t in_dim, std::size_t out_dim,
                           std::vector<ComplexMatrix> kraus)
    : in_dim_(in_dim), out_dim_(out_dim), kraus_(std::move(kraus)) {
  if (in_dim_ == 0 || out_dim_ == 0)
    throw_invalid("KrausChannel: dimensions must be positive");
  if (in_dim_ > max_dim() || out_dim_ > max_dim())
    throw_invalid("KrausChannel: dimension exceeds the configured maximum");
  if (kraus_.empty()) throw_invalid("KrausChannel: no Kraus operators");
  ComplexMatrix sum(in_dim_);
  for (std::size_t k = 0; k < kraus_.size(); ++k) {
    const auto& a = kraus_[k];
    if (a.rows() != out_dim_ || a.cols() != in_dim_) {
      std::ostringstream os;
      os << "KrausChannel: operator " << k << " is " << a.rows() << "x"
         << a.cols() << ", expected " << out_dim_ << "x" << in_dim_;
      throw_invalid(os.str());
    }
    sum += a.adjoint() * a;
  }
  const double defect = max_abs_diff(sum, ComplexMatrix::identity(in_dim_));
  if (defect > kCompletenessTolerance) {
    std::ostringstream os;
    os << "KrausChannel: sum A_k^dagger A_k deviates from identity by " << defect;
    throw_invalid(os.str());
  }
}

ComplexMatrix apply_kraus(const KrausChannel& ch, const ComplexMatrix& rho) {
  if (!rho.is_square() || rho.dim() != ch.in_dim()) {
    std::ostringstream os;
    os << "apply: input dimension " << rho.rows() << " does not match channel "
       << "input dimension " << ch.in_dim();
    throw_invalid(os.str());
  }
  const std::size_t n = ch.in_dim();
  const std::size_t m = ch.out_dim();
  ComplexMatrix out(m);
  ComplexMatrix tmp(m, n);
  for (const auto& a : ch.kraus()) {
    // tmp = A rho
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Complex s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += a(i, k) * rho(k, j);
        tmp(i, j) = s;
      }
    // out += tmp A^dagger
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        Complex s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += tmp(i, k) * std::conj(a(j, k));
        out(i, j) += s;
      }
  }
  return out;
}

DensityOperator apply(const KrausChannel& ch, const DensityOperator& rho) {
  return DensityOperator(apply_kraus(ch, rho.matrix()));
}

KrausChannel identity_channel(std::size_t dim) {
  return KrausChannel(dim, dim, {ComplexMatrix::identity(dim)});
}

KrausChannel dephasing(double p) {
  require_probability(p, "dephasing");
  const double keep = std::sqrt(1.0 - p / 2.0);
  const double flip = std::sqrt(p / 2.0);
  return KrausChannel(2, 2,
                      {ComplexMatrix{{keep, 0.0}, {0.0, keep}},
                       ComplexMatrix{{flip, 0.0}, {0.0, -flip}}});
}

KrausChannel erasure(double eps) {
  require_probability(eps, "erasure");
  const double pass = std::sqrt(1.0 - eps);
  const double lost = std::sqrt(eps);
  ComplexMatrix embed(3, 2), flag0(3, 2), flag1(3, 2);
  embed(0, 0) = pass;
  embed(1, 1) = pass;
  flag0(2, 0) = lost;
  flag1(2, 1) = lost;
  return KrausChannel(2, 3, {embed, flag0, flag1});
}

IsometricExtension isometric_extension(const KrausChannel& ch) {
  const std::size_t env = ch.env_dim();
  const std::size_t out = ch.out_dim();
  if (out * env > max_dim())
    throw_invalid("isometric_extension: output (x) environment exceeds the "
                  "configured maximum dimension");
  ComplexMatrix v(out * env, ch.in_dim());
  for (std::size_t k = 0; k < env; ++k) {
    const auto& a = ch.kraus()[k];
    for (std::size_t i = 0; i < out; ++i)
      for (std::size_t j = 0; j < ch.in_dim(); ++j) v(i * env + k, j) = a(i, j);
  }
  return {ch.in_dim(), out, env, std::move(v)};
}

KrausChannel complementary(const KrausChannel& ch) {
  const std::size_t env = ch.env_dim();
  std::vector<ComplexMatrix> ops;
  ops.reserve(ch.out_dim());
  for (std::size_t i = 0; i < ch.out_dim(); ++i) {
    ComplexMatrix b(env, ch.in_dim());
    for (std::size_t k = 0; k < env; ++k)
      for (std::size_t j = 0; j < ch.in_dim(); ++j) b(k, j) = ch.kraus()[k](i, j);
    ops.push_back(std::move(b));
  }
  return KrausChannel(ch.in_dim(), env, std::move(ops));
}

KrausChannel tensor_channel(const KrausChannel& a, const KrausChannel& b) {
  std::vector<ComplexMatrix> ops;
  ops.reserve(a.kraus().size() * b.kraus().size());
  for (const auto& ka : a.kraus())
    for (const auto& kb : b.kraus()) ops.push_back(tensor(ka, kb));
  return KrausChannel(a.in_dim() * b.in_dim(), a.out_dim() * b.out_dim(),
                      std::move(ops));
}

}  // namespace dyncap
