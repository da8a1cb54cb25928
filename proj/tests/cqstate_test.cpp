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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dyncap/entropy.hpp"
#include "dyncap/error.hpp"
#include "reference_values.hpp"
#include "test_support.hpp"

namespace dyncap {
namespace {

using testing::flip_pair;
using testing::random_ensemble;
using testing::random_qubit_channel;
using testing::random_state;

// (id_A (x) N) applied to the purification of rho, as a state on (A, B).
DensityOperator channel_on_purification(const KrausChannel& ch, const DensityOperator& rho) {
  const auto psi = purify(rho);
  const KrausChannel both = tensor_channel(identity_channel(rho.dim()), ch);
  return DensityOperator(apply_kraus(both, psi.matrix()), {rho.dim(), ch.out_dim()});
}

TEST(CqEnsemble, Validation) {
  const auto half = maximally_mixed(2);
  EXPECT_THROW(CqEnsemble({}), Error);
  EXPECT_THROW(CqEnsemble({{0.5, half}, {0.4, half}}), Error);
  EXPECT_THROW(CqEnsemble({{1.2, half}, {-0.2, half}}), Error);
  EXPECT_THROW(CqEnsemble({{0.5, half}, {0.5, maximally_mixed(3)}}), Error);
  EXPECT_NO_THROW(CqEnsemble({{0.5 + 1e-12, half}, {0.5, half}}));
  const CqEnsemble ens({{0.25, bloch_state(0, 0, 1)}, {0.75, bloch_state(0, 0, -1)}});
  const double avg[] = {0.25, 0.75};
  EXPECT_LT(max_abs_diff(ens.average(), ComplexMatrix::diagonal(avg)), 1e-15);
}

TEST(CqEnsemble, ProductEnsemble) {
  std::mt19937_64 rng(31);
  const auto a = random_ensemble(2, 2, rng);
  const auto b = random_ensemble(3, 2, rng);
  const auto ab = product_ensemble(a, b);
  ASSERT_EQ(ab.size(), 6u);
  EXPECT_EQ(ab.input_dim(), 4u);
  EXPECT_NEAR(ab.entries()[4].probability,
              a.entries()[1].probability * b.entries()[1].probability, 1e-15);
  EXPECT_LT(max_abs_diff(ab.average(), tensor(a.average(), b.average())), 1e-14);
}

TEST(EntropicTriple, IdentityChannelMaximallyMixed) {
  const CqEnsemble ens({{1.0, maximally_mixed(2)}});
  const auto t = entropic_triple(ens, identity_channel(2));
  EXPECT_NEAR(t.cq_bound, 2.0, 1e-12);
  EXPECT_NEAR(t.qe_bound, 1.0, 1e-12);
  EXPECT_NEAR(t.cqe_bound, 1.0, 1e-12);
}

TEST(EntropicTriple, DephasingFlipPair) {
  const auto t = entropic_triple(flip_pair(0.5), dephasing(0.2));
  EXPECT_NEAR(t.cq_bound, reference::kDephasingCq, 1e-8);
  EXPECT_NEAR(t.qe_bound, reference::kDephasingQe, 1e-8);
  EXPECT_NEAR(t.cqe_bound, reference::kDephasingQe, 1e-8);
}

TEST(EntropicTriple, ErasureSingleState) {
  std::mt19937_64 rng(32);
  for (double eps : {0.0, 0.25, 0.5, 0.8}) {
    const auto rho = random_state(2, rng);
    const auto t = entropic_triple(CqEnsemble({{1.0, rho}}), erasure(eps));
    EXPECT_NEAR(t.holevo(), 0.0, 1e-12);
    EXPECT_NEAR(t.qe_bound, (1.0 - 2.0 * eps) * vn_entropy(rho), 1e-10);
  }
}

TEST(EntropicTriple, SingleEntryMatchesOutputMutualInformation) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    const auto ch = random_qubit_channel(2 + trial % 2, rng);
    const auto rho = random_state(2, rng);
    const auto t = entropic_triple(CqEnsemble({{1.0, rho}}), ch);
    EXPECT_NEAR(t.holevo(), 0.0, 1e-10);
    EXPECT_NEAR(t.cq_bound, mutual_information(channel_on_purification(ch, rho)), 1e-9);
  }
}

TEST(EntropicTriple, ReducedPathMatchesExplicitState) {
  std::mt19937_64 rng(34);
  const KrausChannel channels[] = {dephasing(0.2), erasure(0.25), random_qubit_channel(2, rng),
                                   random_qubit_channel(3, rng), identity_channel(2)};
  for (const auto& ch : channels) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto ens = random_ensemble(1 + trial % 3, 2, rng);
      const auto fast = entropic_triple(ens, ch);
      const auto slow = entropic_triple_explicit(ens, ch);
      EXPECT_NEAR(fast.cq_bound, slow.cq_bound, 1e-8);
      EXPECT_NEAR(fast.qe_bound, slow.qe_bound, 1e-8);
      EXPECT_NEAR(fast.cqe_bound, slow.cqe_bound, 1e-8);
    }
  }
}

TEST(EntropicTriple, ExplicitStateLayout) {
  std::mt19937_64 rng(35);
  const auto ens = random_ensemble(3, 2, rng);
  const auto ch = erasure(0.3);
  const auto sigma = explicit_cq_state(ens, ch);
  ASSERT_EQ(sigma.dims().size(), 4u);
  EXPECT_EQ(sigma.dims()[0], 3u);
  EXPECT_EQ(sigma.dims()[1], 2u);
  EXPECT_EQ(sigma.dims()[2], 3u);
  EXPECT_EQ(sigma.dims()[3], ch.env_dim());
  EXPECT_LT(max_abs_diff(partial_trace(sigma, {2}).matrix(), apply_kraus(ch, ens.average())),
            1e-12);
}

TEST(EntropicTriple, HolevoBoundedByLogAlphabet) {
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t size = 1 + trial % 4;
    const auto ens = random_ensemble(size, 2, rng);
    const auto t = entropic_triple(ens, random_qubit_channel(2, rng));
    EXPECT_EQ(t.cqe_bound, t.holevo() + t.qe_bound);
    EXPECT_LE(t.holevo(), std::log2(static_cast<double>(size)) + 1e-9);
    EXPECT_GE(t.holevo(), -1e-9);
  }
}

TEST(Identities, ResidualsVanishOnRandomEnsembles) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const auto r1 = verify_identities(random_ensemble(2, 2, rng), dephasing(0.2));
    const auto r2 = verify_identities(random_ensemble(3, 2, rng), erasure(0.25));
    for (const auto& r : {r1, r2}) {
      EXPECT_LE(r.mutual_chain, 1e-8);
      EXPECT_LE(r.coherent, 1e-8);
    }
  }
  const auto single = verify_identities(CqEnsemble({{1.0, random_state(2, rng)}}), dephasing(0.4));
  EXPECT_LE(single.mutual_chain, 1e-8);
  EXPECT_LE(single.coherent, 1e-8);
}

TEST(CefPoint, IdentityChannel) {
  const auto r = cef_point(CqEnsemble({{1.0, maximally_mixed(2)}}), identity_channel(2));
  EXPECT_NEAR(r.c, 0.0, 1e-12);
  EXPECT_NEAR(r.q, 1.0, 1e-12);
  EXPECT_NEAR(r.e, 0.0, 1e-12);
}

TEST(CefPoint, SingleInputIsFatherPoint) {
  std::mt19937_64 rng(38);
  const auto ch = random_qubit_channel(2, rng);
  const auto rho = random_state(2, rng);
  const auto r = cef_point(CqEnsemble({{1.0, rho}}), ch);
  const double i_ab = mutual_information(channel_on_purification(ch, rho));
  const double i_ae = mutual_information(channel_on_purification(complementary(ch), rho));
  EXPECT_NEAR(r.c, 0.0, 1e-10);
  EXPECT_NEAR(r.q, i_ab / 2.0, 1e-9);
  EXPECT_NEAR(r.e, -i_ae / 2.0, 1e-9);
}

TEST(CefPoint, ConsistentWithBounds) {
  std::mt19937_64 rng(39);
  for (int trial = 0; trial < 20; ++trial) {
    const auto ens = random_ensemble(2, 2, rng);
    const auto ch = random_qubit_channel(2, rng);
    const auto r = cef_point(ens, ch);
    const auto t = entropic_triple(ens, ch);
    EXPECT_NEAR(r.c + 2.0 * r.q, t.cq_bound, 1e-9);
    EXPECT_NEAR(r.q + r.e, t.qe_bound, 1e-9);
    EXPECT_NEAR(r.c + r.q + r.e, t.cqe_bound, 1e-9);
  }
  // At nu = 1/2 both inputs have the same output entropy as their mixture.
  const auto r = cef_point(flip_pair(0.5), dephasing(0.2));
  EXPECT_NEAR(r.c, 0.0, 1e-10);
  EXPECT_NEAR(r.q, reference::kDephasingCq / 2.0, 1e-9);
}

TEST(EntropicTriple, RejectsMismatchedChannel) {
  EXPECT_THROW(entropic_triple(CqEnsemble({{1.0, maximally_mixed(3)}}), dephasing(0.1)), Error);
}

}  // namespace
}  // namespace dyncap
