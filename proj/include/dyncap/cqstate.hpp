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

#ifndef DYNCAP_CQSTATE_HPP_
#define DYNCAP_CQSTATE_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "dyncap/channel.hpp"
#include "dyncap/qmat.hpp"

namespace dyncap {

inline constexpr double kProbabilityTolerance = 1e-10;

// Rate triple in bits per channel use; positive means generated, negative
// means consumed.
struct RateTriple {
  double c = 0.0;
  double q = 0.0;
  double e = 0.0;
};

// Right-hand sides of the three one-shot region inequalities
//   C + 2Q     <= cq_bound  = I(AX;B)
//   Q + E      <= qe_bound  = I(A>BX)
//   C + Q + E  <= cqe_bound = I(X;B) + I(A>BX)
struct EntropicTriple {
  double cq_bound = 0.0;
  double qe_bound = 0.0;
  double cqe_bound = 0.0;

  // I(X;B)
  double holevo() const { return cqe_bound - qe_bound; }
};

// Classical mixture {p_x, rho_x} of channel inputs. Each rho_x stands for the
// reduced state of a pure phi_x^{AA'}; the A system is implicit.
class CqEnsemble {
 public:
  struct Entry {
    double probability;
    DensityOperator state;
  };

  explicit CqEnsemble(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  std::size_t input_dim() const { return entries_.front().state.dim(); }
  ComplexMatrix average() const;

 private:
  std::vector<Entry> entries_;
};

// Product ensemble {p_x q_y, rho_x (x) sigma_y} for two-copy channels.
CqEnsemble product_ensemble(const CqEnsemble& a, const CqEnsemble& b);

// A channel together with its complementary channel.
struct DilatedChannel {
  explicit DilatedChannel(KrausChannel ch);

  KrausChannel channel;
  KrausChannel complement;
};

// Per-input entropies that the ensemble quantities decompose into.
struct StateTerms {
  double h_input = 0.0;   // H(rho_x) = H(A)
  double h_output = 0.0;  // H(N(rho_x)) = H(B|X=x) = H(AE|X=x)
  double h_env = 0.0;     // H(N^c(rho_x)) = H(E|X=x) = H(AB|X=x)
  ComplexMatrix output;   // N(rho_x)
};

StateTerms state_terms(const DilatedChannel& ch, const ComplexMatrix& rho);

// Probability-weighted sums of StateTerms plus the entropy of the averaged
// channel output H(B).
struct TermSums {
  double h_input = 0.0;
  double h_output = 0.0;
  double h_env = 0.0;
  double h_mixture = 0.0;
};

TermSums sum_terms(std::span<const double> probabilities,
                   std::span<const StateTerms> terms);
EntropicTriple triple_from_sums(const TermSums& sums);

// Reduced-path evaluation: because phi_x^{ABE} is pure for each x,
//   I(AX;B)  = sum p H(rho_x) + H(N(avg)) - sum p H(N^c(rho_x))
//   I(A>BX)  = sum p [H(N(rho_x)) - H(N^c(rho_x))]
//   I(X;B)   = H(N(avg)) - sum p H(N(rho_x))
EntropicTriple entropic_triple(const CqEnsemble& ens, const KrausChannel& ch);
EntropicTriple entropic_triple(const CqEnsemble& ens, const DilatedChannel& ch);

// sigma^{XABE} = sum_x p_x |x><x| (x) (I_A (x) V)|psi_x><psi_x|(I_A (x) V)^dagger
// with psi_x the purification of rho_x. Subsystem order is (X, A, B, E).
DensityOperator explicit_cq_state(const CqEnsemble& ens, const KrausChannel& ch);

// Same three quantities computed directly on explicit_cq_state().
EntropicTriple entropic_triple_explicit(const CqEnsemble& ens,
                                        const KrausChannel& ch);

struct IdentityResiduals {
  double mutual_chain;  // |I(AX;B) - I(X;B) - I(A;B|X)|
  double coherent;      // |I(A>BX) - I(A;B|X)/2 + I(A;E|X)/2|
};

IdentityResiduals verify_identities(const CqEnsemble& ens, const KrausChannel& ch);

// (I(X;B), I(A;B|X)/2, -I(A;E|X)/2).
RateTriple cef_point(const CqEnsemble& ens, const KrausChannel& ch);

}  // namespace dyncap

#endif  // DYNCAP_CQSTATE_HPP_
