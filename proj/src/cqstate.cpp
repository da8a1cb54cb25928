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

#include "dyncap/cqstate.hpp"

#include <cmath>
#include <sstream>

#include "dyncap/entropy.hpp"
#include "dyncap/error.hpp"

namespace dyncap {
namespace {

void require_matching_input(const CqEnsemble& ens, const KrausChannel& ch) {
  if (ens.input_dim() != ch.in_dim()) {
    std::ostringstream os;
    os << "ensemble input dimension " << ens.input_dim()
       << " does not match channel input dimension " << ch.in_dim();
    throw_invalid(os.str());
  }
}

std::vector<double> probabilities_of(const CqEnsemble& ens) {
  std::vector<double> p;
  p.reserve(ens.size());
  for (const auto& e : ens.entries()) p.push_back(e.probability);
  return p;
}

std::vector<StateTerms> terms_of(const CqEnsemble& ens, const DilatedChannel& ch) {
  std::vector<StateTerms> terms;
  terms.reserve(ens.size());
  for (const auto& e : ens.entries())
    terms.push_back(state_terms(ch, e.state.matrix()));
  return terms;
}

// Entropy of the marginal of sigma^{XABE} on the listed subsystems.
double marginal_entropy(const DensityOperator& sigma,
                        std::initializer_list<std::size_t> keep) {
  return matrix_entropy(partial_trace(
      sigma.matrix(), sigma.dims(),
      std::span<const std::size_t>(keep.begin(), keep.size())));
}

}  // namespace

CqEnsemble::CqEnsemble(std::vector<Entry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw_invalid("CqEnsemble: at least one entry required");
  double total = 0.0;
  const std::size_t dim = entries_.front().state.dim();
  for (std::size_t x = 0; x < entries_.size(); ++x) {
    const auto& e = entries_[x];
    if (!(e.probability >= 0.0)) {
      std::ostringstream os;
      os << "CqEnsemble: entry " << x << " has negative probability";
      throw_invalid(os.str());
    }
    if (e.state.dim() != dim)
      throw_invalid("CqEnsemble: entries have different input dimensions");
    total += e.probability;
  }
  if (std::abs(total - 1.0) > kProbabilityTolerance) {
    std::ostringstream os;
    os << "CqEnsemble: probabilities sum to " << total;
    throw_invalid(os.str());
  }
}

ComplexMatrix CqEnsemble::average() const {
  ComplexMatrix avg(input_dim());
  for (const auto& e : entries_) avg += e.probability * e.state.matrix();
  return avg;
}

CqEnsemble product_ensemble(const CqEnsemble& a, const CqEnsemble& b) {
  std::vector<CqEnsemble::Entry> entries;
  entries.reserve(a.size() * b.size());
  for (const auto& ea : a.entries())
    for (const auto& eb : b.entries())
      entries.push_back({ea.probability * eb.probability, tensor(ea.state, eb.state)});
  return CqEnsemble(std::move(entries));
}

DilatedChannel::DilatedChannel(KrausChannel ch)
    : channel(std::move(ch)), complement(complementary(channel)) {}

StateTerms state_terms(const DilatedChannel& ch, const ComplexMatrix& rho) {
  StateTerms t;
  t.h_input = matrix_entropy(rho);
  t.output = apply_kraus(ch.channel, rho);
  t.h_output = matrix_entropy(t.output);
  t.h_env = matrix_entropy(apply_kraus(ch.complement, rho));
  return t;
}

TermSums sum_terms(std::span<const double> probabilities,
                   std::span<const StateTerms> terms) {
  if (probabilities.size() != terms.size() || terms.empty())
    throw_invalid("sum_terms: probabilities and terms differ in length");
  TermSums s;
  ComplexMatrix mixture(terms.front().output.dim());
  for (std::size_t x = 0; x < terms.size(); ++x) {
    const double p = probabilities[x];
    s.h_input += p * terms[x].h_input;
    s.h_output += p * terms[x].h_output;
    s.h_env += p * terms[x].h_env;
    mixture += p * terms[x].output;
  }
  s.h_mixture = matrix_entropy(mixture);
  return s;
}

EntropicTriple triple_from_sums(const TermSums& s) {
  EntropicTriple t;
  t.cq_bound = s.h_input + s.h_mixture - s.h_env;
  t.qe_bound = s.h_output - s.h_env;
  t.cqe_bound = (s.h_mixture - s.h_output) + t.qe_bound;
  return t;
}

EntropicTriple entropic_triple(const CqEnsemble& ens, const DilatedChannel& ch) {
  require_matching_input(ens, ch.channel);
  const auto p = probabilities_of(ens);
  const auto terms = terms_of(ens, ch);
  return triple_from_sums(sum_terms(p, terms));
}

EntropicTriple entropic_triple(const CqEnsemble& ens, const KrausChannel& ch) {
  return entropic_triple(ens, DilatedChannel(ch));
}

DensityOperator explicit_cq_state(const CqEnsemble& ens, const KrausChannel& ch) {
  require_matching_input(ens, ch);
  const IsometricExtension iso = isometric_extension(ch);
  const std::size_t nx = ens.size();
  const std::size_t da = ch.in_dim();
  const std::size_t dbe = iso.out_dim * iso.env_dim;
  const std::size_t block = da * dbe;
  if (nx * block > max_dim())
    throw_invalid("explicit_cq_state: X(x)A(x)B(x)E exceeds the configured "
                  "maximum dimension");
  ComplexMatrix sigma(nx * block);
  for (std::size_t x = 0; x < nx; ++x) {
    const auto& entry = ens.entries()[x];
    const auto psi = purification_vector(entry.state.matrix());
    // phi = (I_A (x) V) psi on A (x) B (x) E.
    std::vector<Complex> phi(block);
    for (std::size_t a = 0; a < da; ++a)
      for (std::size_t be = 0; be < dbe; ++be) {
        Complex s = 0.0;
        for (std::size_t j = 0; j < da; ++j) s += iso.isometry(be, j) * psi[a * da + j];
        phi[a * dbe + be] = s;
      }
    const std::size_t offset = x * block;
    for (std::size_t i = 0; i < block; ++i)
      for (std::size_t j = 0; j < block; ++j)
        sigma(offset + i, offset + j) = entry.probability * phi[i] * std::conj(phi[j]);
  }
  return DensityOperator(std::move(sigma), {nx, da, iso.out_dim, iso.env_dim});
}

EntropicTriple entropic_triple_explicit(const CqEnsemble& ens,
                                        const KrausChannel& ch) {
  const DensityOperator sigma = explicit_cq_state(ens, ch);
  constexpr std::size_t X = 0, A = 1, B = 2;
  const double h_b = marginal_entropy(sigma, {B});
  const double h_xa = marginal_entropy(sigma, {X, A});
  const double h_xab = marginal_entropy(sigma, {X, A, B});
  const double h_xb = marginal_entropy(sigma, {X, B});
  const double h_x = marginal_entropy(sigma, {X});
  EntropicTriple t;
  t.cq_bound = h_xa + h_b - h_xab;
  t.qe_bound = h_xb - h_xab;
  t.cqe_bound = (h_x + h_b - h_xb) + t.qe_bound;
  return t;
}

IdentityResiduals verify_identities(const CqEnsemble& ens, const KrausChannel& ch) {
  const DensityOperator sigma = explicit_cq_state(ens, ch);
  constexpr std::size_t X = 0, A = 1, B = 2, E = 3;
  const double h_x = marginal_entropy(sigma, {X});
  const double h_b = marginal_entropy(sigma, {B});
  const double h_xa = marginal_entropy(sigma, {X, A});
  const double h_xb = marginal_entropy(sigma, {X, B});
  const double h_xe = marginal_entropy(sigma, {X, E});
  const double h_xab = marginal_entropy(sigma, {X, A, B});
  const double h_xae = marginal_entropy(sigma, {X, A, E});

  const double i_ax_b = h_xa + h_b - h_xab;
  const double i_x_b = h_x + h_b - h_xb;
  const double i_a_b_given_x = h_xa + h_xb - h_x - h_xab;
  const double i_a_e_given_x = h_xa + h_xe - h_x - h_xae;
  const double coherent = h_xb - h_xab;
  return {std::abs(i_ax_b - i_x_b - i_a_b_given_x),
          std::abs(coherent - 0.5 * i_a_b_given_x + 0.5 * i_a_e_given_x)};
}

RateTriple cef_point(const CqEnsemble& ens, const KrausChannel& ch) {
  const DilatedChannel dilated(ch);
  require_matching_input(ens, ch);
  const auto p = probabilities_of(ens);
  const auto terms = terms_of(ens, dilated);
  const TermSums s = sum_terms(p, terms);
  // Given X=x the state on ABE is pure, so H(AB|x) = H(E|x), H(AE|x) = H(B|x).
  return {s.h_mixture - s.h_output, 0.5 * (s.h_input + s.h_output - s.h_env),
          -0.5 * (s.h_input + s.h_env - s.h_output)};
}

}  // namespace dyncap
