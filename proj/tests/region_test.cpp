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

#include "dyncap/region.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "dyncap/entropy.hpp"
#include "dyncap/error.hpp"
#include "reference_values.hpp"
#include "test_support.hpp"

namespace dyncap {
namespace {

double dot(const WeightVector& w, const RateTriple& r) { return w.c * r.c + w.q * r.q + w.e * r.e; }

TEST(UnitCone, MatrixTimesInverseIsIdentity) {
  const Matrix3 m = unit_resource_matrix();
  const Matrix3 inv = unit_resource_inverse();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += m[i][k] * inv[k][j];
      EXPECT_NEAR(s, i == j ? 1.0 : 0.0, 1e-12);
    }
}

TEST(UnitCone, GeneratorsAreColumns) {
  const auto ed = combine_generators({1, 0, 0});
  const auto sd = combine_generators({0, 1, 0});
  const auto tp = combine_generators({0, 0, 1});
  EXPECT_EQ(ed.c, kEntanglementDistribution.c);
  EXPECT_EQ(ed.e, kEntanglementDistribution.e);
  EXPECT_EQ(sd.c, kSuperdenseCoding.c);
  EXPECT_EQ(tp.q, kTeleportation.q);
}

TEST(UnitCone, NonNegativeCombinationsSatisfyInequalities) {
  std::mt19937_64 rng(41);
  std::exponential_distribution<double> coef(1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto r = combine_generators({coef(rng), coef(rng), coef(rng)});
    EXPECT_TRUE(in_unit_cone(r, 1e-12));
    EXPECT_LE(r.c + 2 * r.q, 1e-12);
    EXPECT_LE(r.q + r.e, 1e-12);
    EXPECT_LE(r.c + r.q + r.e, 1e-12);
  }
}

TEST(UnitCone, FeasibleTriplesDecomposeNonNegatively) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  int accepted = 0;
  while (accepted < 1000) {
    const RateTriple r{u(rng), u(rng), u(rng)};
    const bool feasible = r.c + 2 * r.q <= 0 && r.q + r.e <= 0 && r.c + r.q + r.e <= 0;
    const auto k = cone_coefficients(r);
    if (feasible) {
      ++accepted;
      EXPECT_GE(k.ed, -1e-9);
      EXPECT_GE(k.sd, -1e-9);
      EXPECT_GE(k.tp, -1e-9);
    } else {
      EXPECT_TRUE(k.ed < 0 || k.sd < 0 || k.tp < 0);
    }
    const auto back = combine_generators(k);
    EXPECT_NEAR(back.c, r.c, 1e-12);
    EXPECT_NEAR(back.q, r.q, 1e-12);
    EXPECT_NEAR(back.e, r.e, 1e-12);
  }
}

TEST(DephasingGamma, Examples) {
  EXPECT_DOUBLE_EQ(dephasing_gamma(0.0, 0.7), 1.0);
  EXPECT_NEAR(dephasing_gamma(0.5, 0.2), 0.9, 1e-15);
  EXPECT_DOUBLE_EQ(dephasing_gamma(0.3, 0.0), 1.0);
  EXPECT_NEAR(dephasing_gamma(0.5, 1.0), 0.5, 1e-15);
  EXPECT_THROW(dephasing_gamma(1.1, 0.2), Error);
  EXPECT_THROW(dephasing_gamma(0.5, -0.1), Error);
}

TEST(DephasingBounds, Examples) {
  const auto t = dephasing_bounds(0.5, 0.2);
  EXPECT_NEAR(t.cq_bound, reference::kDephasingCq, 1e-12);
  EXPECT_NEAR(t.qe_bound, reference::kDephasingQe, 1e-12);
  EXPECT_NEAR(t.cqe_bound, reference::kDephasingQe, 1e-12);
  const auto zero = dephasing_bounds(0.0, 0.2);
  EXPECT_NEAR(zero.cq_bound, 1.0, 1e-15);
  EXPECT_NEAR(zero.qe_bound, 0.0, 1e-15);
  EXPECT_NEAR(zero.cqe_bound, 1.0, 1e-15);
  const auto noiseless = dephasing_bounds(0.5, 0.0);
  EXPECT_NEAR(noiseless.cq_bound, 2.0, 1e-15);
  EXPECT_NEAR(noiseless.qe_bound, 1.0, 1e-15);
  EXPECT_NEAR(noiseless.cqe_bound, 1.0, 1e-15);
  EXPECT_THROW(dephasing_bounds(0.6, 0.2), Error);
  EXPECT_THROW(dephasing_bounds(0.3, 1.2), Error);
}

TEST(ErasureBounds, Examples) {
  const auto t = erasure_bounds(0.5, 0.25);
  EXPECT_NEAR(t.cq_bound, 1.5, 1e-12);
  EXPECT_NEAR(t.qe_bound, 0.5, 1e-12);
  EXPECT_NEAR(t.cqe_bound, 0.5, 1e-12);
  const auto half = erasure_bounds(0.5, 0.5);
  EXPECT_NEAR(half.cq_bound, 1.0, 1e-15);
  EXPECT_NEAR(half.qe_bound, 0.0, 1e-15);
  EXPECT_NEAR(half.cqe_bound, 0.0, 1e-15);
  for (double eps : {0.0, 0.3, 1.0}) {
    const auto z = erasure_bounds(0.0, eps);
    EXPECT_NEAR(z.cq_bound, 1.0 - eps, 1e-15);
    EXPECT_NEAR(z.qe_bound, 0.0, 1e-15);
    EXPECT_NEAR(z.cqe_bound, 1.0 - eps, 1e-15);
  }
  EXPECT_THROW(erasure_bounds(0.7, 0.25), Error);
  EXPECT_THROW(erasure_bounds(0.2, 1.5), Error);
}

TEST(ErasureBounds, NoQuantumTransmissionBeyondHalf) {
  for (double eps : {0.5, 0.6, 0.75, 1.0})
    for (int i = 0; i <= 50; ++i) EXPECT_LE(erasure_bounds(i / 100.0, eps).qe_bound, 1e-15);
}

TEST(Surface, CanonicalEnsembleReproducesBounds) {
  for (double p : {0.0, 0.2, 0.5, 1.0}) {
    const auto s = Surface::dephasing(p);
    for (int i = 0; i <= 10; ++i) {
      const double nu = i / 20.0;
      const auto closed = s.bounds(nu);
      const auto path = entropic_triple(s.canonical_ensemble(nu), s.channel());
      EXPECT_NEAR(path.cq_bound, closed.cq_bound, 1e-8);
      EXPECT_NEAR(path.qe_bound, closed.qe_bound, 1e-8);
      EXPECT_NEAR(path.cqe_bound, closed.cqe_bound, 1e-8);
    }
  }
  for (double eps : {0.0, 0.25, 0.5, 1.0}) {
    const auto s = Surface::erasure(eps);
    for (int i = 0; i <= 10; ++i) {
      const double p = i / 20.0;
      const auto closed = s.bounds(p);
      const auto path = entropic_triple(s.canonical_ensemble(p), s.channel());
      EXPECT_NEAR(path.cq_bound, closed.cq_bound, 1e-8);
      EXPECT_NEAR(path.qe_bound, closed.qe_bound, 1e-8);
      EXPECT_NEAR(path.cqe_bound, closed.cqe_bound, 1e-8);
    }
  }
}

TEST(Surface, CefCornerMatchesCanonicalEnsemble) {
  for (const auto& s : {Surface::dephasing(0.2), Surface::erasure(0.25), Surface::erasure(0.7)}) {
    for (const auto& sample : sample_boundary(s, 21)) {
      const auto direct = cef_point(s.canonical_ensemble(sample.param), s.channel());
      EXPECT_NEAR(direct.c, sample.cef.c, 1e-8);
      EXPECT_NEAR(direct.q, sample.cef.q, 1e-8);
      EXPECT_NEAR(direct.e, sample.cef.e, 1e-8);
    }
  }
}

TEST(Surface, RejectsBadParameters) {
  EXPECT_THROW(Surface::dephasing(1.5), Error);
  EXPECT_THROW(Surface::erasure(-0.5), Error);
  EXPECT_THROW(Surface::erasure(0.25).bounds(0.75), Error);
}

TEST(SampleBoundary, Grid) {
  const auto s = Surface::dephasing(0.2);
  const auto three = sample_boundary(s, 3);
  ASSERT_EQ(three.size(), 3u);
  EXPECT_EQ(three[0].param, 0.0);
  EXPECT_EQ(three[1].param, 0.25);
  EXPECT_EQ(three[2].param, 0.5);
  EXPECT_NEAR(three[1].bounds.cq_bound, dephasing_bounds(0.25, 0.2).cq_bound, 1e-15);
  const auto two = sample_boundary(s, 2);
  EXPECT_EQ(two.front().param, 0.0);
  EXPECT_EQ(two.back().param, 0.5);
  EXPECT_THROW(sample_boundary(s, 1), Error);
}

TEST(Membership, Examples) {
  const auto m0 = in_region({0, 0, 0}, Surface::dephasing(0.2));
  EXPECT_TRUE(m0.inside);
  EXPECT_EQ(m0.witness, 0.0);
  EXPECT_FALSE(in_region({0, 0.531, 0.001}, Surface::dephasing(0.2)).inside);
  EXPECT_FALSE(in_region({1.5, 0, 0}, Surface::erasure(0.25)).inside);
  const auto e0 = in_region({0, 0, 0}, Surface::erasure(0.25));
  EXPECT_TRUE(e0.inside);
  EXPECT_EQ(e0.witness, 0.0);
}

TEST(Membership, CornerPlusConeIsInside) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> t(0.0, 0.5);
  std::exponential_distribution<double> coef(2.0);
  for (const auto& s : {Surface::dephasing(0.2), Surface::erasure(0.25)}) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto corner = cef_from_bounds(s.bounds(t(rng)));
      const auto shift = combine_generators({coef(rng), coef(rng), coef(rng)});
      const RateTriple r{corner.c + shift.c, corner.q + shift.q, corner.e + shift.e};
      EXPECT_TRUE(in_region(r, s).inside);
    }
    // Pushing the best quantum corner further out leaves the region.
    const auto top = cef_from_bounds(s.bounds(0.5));
    EXPECT_FALSE(in_region({top.c, top.q + 0.01, top.e}, s).inside);
  }
}

TEST(Hyperplane, Examples) {
  const auto h = supporting_hyperplane({1, 2, 0}, Surface::erasure(0.25));
  ASSERT_TRUE(h.bounded);
  EXPECT_NEAR(h.value, 1.5, 1e-6);
  const auto q = supporting_hyperplane({0, 1, 1}, Surface::dephasing(0.2));
  ASSERT_TRUE(q.bounded);
  EXPECT_NEAR(q.value, reference::kDephasingQe, 1e-6);
  for (const auto& s : {Surface::dephasing(0.0), Surface::dephasing(0.2), Surface::dephasing(1.0),
                        Surface::erasure(0.0), Surface::erasure(0.25), Surface::erasure(1.0)})
    EXPECT_FALSE(supporting_hyperplane({0, 0, 1}, s).bounded);
}

TEST(Hyperplane, DominatesEveryCorner) {
  // Bounded weights are non-negative mixtures of the three inequality normals
  // (1,2,0), (0,1,1), (1,1,1).
  std::mt19937_64 rng(44);
  std::exponential_distribution<double> coef(1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double a = coef(rng), b = coef(rng), c = coef(rng);
    const WeightVector w{a + c, 2 * a + b + c, b + c};
    const auto s = trial % 2 ? Surface::dephasing(0.2) : Surface::erasure(0.25);
    const auto h = supporting_hyperplane(w, s);
    ASSERT_TRUE(h.bounded);
    double best = -1e300;
    for (const auto& sample : sample_boundary(s, 101)) {
      EXPECT_LE(dot(w, sample.cef), h.value + 1e-9);
      best = std::max(best, dot(w, sample.cef));
    }
    EXPECT_LE(h.value - best, 1e-3);
  }
  // Outside the dual cone some generator has positive inner product.
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    const WeightVector w{u(rng), u(rng), u(rng)};
    const bool dual = dot(w, kEntanglementDistribution) <= 0 &&
                      dot(w, kSuperdenseCoding) <= 0 && dot(w, kTeleportation) <= 0;
    EXPECT_EQ(supporting_hyperplane(w, Surface::erasure(0.25)).bounded, dual);
  }
}

TEST(MaximizeOverSurface, FindsInteriorOptimum) {
  const auto s = Surface::dephasing(0.2);
  const auto best = maximize_over_surface(s, [](const EntropicTriple& t) {
    return t.cq_bound + 0.5 * t.qe_bound + 2.0 * t.cqe_bound;
  });
  EXPECT_NEAR(best.value, reference::kDephasingDHalf2, 1e-12);
  EXPECT_NEAR(best.param, reference::kDephasingDHalf2Argmax, 1e-6);
}

}  // namespace
}  // namespace dyncap
