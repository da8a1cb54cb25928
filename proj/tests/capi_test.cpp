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

// Exercises the shared library through its C header only.

#include "dyncap/dyncap.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "json.hpp"

namespace {

constexpr const char* kMixedPair =
    R"({"entries":[{"p":0.5,"rho":[[[0.5,0],[0,0]],[[0,0],[0.5,0]]]},)"
    R"({"p":0.5,"rho":[[[1,0],[0,0]],[[0,0],[0,0]]]}]})";

class CApi : public ::testing::Test {
 protected:
  void TearDown() override {
    for (auto* c : channels_) dyncap_channel_free(c);
    for (auto* e : ensembles_) dyncap_ensemble_free(e);
    for (auto* s : surfaces_) dyncap_surface_free(s);
  }
  dyncap_channel* channel(const char* spec) {
    dyncap_channel* c = nullptr;
    EXPECT_EQ(dyncap_channel_parse(spec, &c), DYNCAP_OK) << dyncap_last_error();
    channels_.push_back(c);
    return c;
  }
  dyncap_surface* surface(const char* spec) {
    dyncap_surface* s = nullptr;
    EXPECT_EQ(dyncap_surface_from_spec(spec, &s), DYNCAP_OK) << dyncap_last_error();
    surfaces_.push_back(s);
    return s;
  }
  dyncap_ensemble* keep(dyncap_ensemble* e) {
    ensembles_.push_back(e);
    return e;
  }
  static std::string take(char* s) {
    std::string out = s ? s : "";
    dyncap_string_free(s);
    return out;
  }

 private:
  std::vector<dyncap_channel*> channels_;
  std::vector<dyncap_ensemble*> ensembles_;
  std::vector<dyncap_surface*> surfaces_;
};

TEST_F(CApi, ChannelParsingAndErrors) {
  size_t in = 0, out = 0, env = 0;
  ASSERT_EQ(dyncap_channel_dims(channel("erasure:eps=0.25"), &in, &out, &env), DYNCAP_OK);
  EXPECT_EQ(in, 2u);
  EXPECT_EQ(out, 3u);
  EXPECT_EQ(env, 3u);

  dyncap_channel* bad = nullptr;
  EXPECT_EQ(dyncap_channel_parse("warp:speed=9", &bad), DYNCAP_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(bad, nullptr);
  EXPECT_NE(std::strstr(dyncap_last_error(), "warp"), nullptr);
  EXPECT_EQ(dyncap_channel_parse("kraus:@/nonexistent/k.json", &bad), DYNCAP_ERR_IO);
  EXPECT_EQ(dyncap_channel_parse(nullptr, &bad), DYNCAP_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(dyncap_channel_parse("identity", nullptr), DYNCAP_ERR_INVALID_ARGUMENT);
  dyncap_channel_free(nullptr);
}

TEST_F(CApi, EntropiesAndTriples) {
  double h = 0.0;
  ASSERT_EQ(dyncap_binary_entropy(0.5, &h), DYNCAP_OK);
  EXPECT_DOUBLE_EQ(h, 1.0);
  EXPECT_EQ(dyncap_binary_entropy(2.0, &h), DYNCAP_ERR_INVALID_ARGUMENT);
  ASSERT_EQ(dyncap_vn_entropy_json("[[0.5,0],[0,0.5]]", &h), DYNCAP_OK);
  EXPECT_NEAR(h, 1.0, 1e-14);
  EXPECT_EQ(dyncap_vn_entropy_json("[[1,0],[0,1]]", &h), DYNCAP_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(dyncap_vn_entropy_json("{", &h), DYNCAP_ERR_INVALID_ARGUMENT);

  dyncap_ensemble* ens = nullptr;
  ASSERT_EQ(dyncap_ensemble_from_json(kMixedPair, &ens), DYNCAP_OK) << dyncap_last_error();
  keep(ens);
  EXPECT_EQ(dyncap_ensemble_size(ens), 2u);
  dyncap_triple t;
  ASSERT_EQ(dyncap_entropic_triple(ens, channel("identity"), &t), DYNCAP_OK);
  dyncap_rates r;
  ASSERT_EQ(dyncap_cef_point(ens, channel("identity"), &r), DYNCAP_OK);
  EXPECT_NEAR(r.c + 2 * r.q, t.cq_bound, 1e-12);
  double chain = 1, coherent = 1;
  ASSERT_EQ(dyncap_identity_residuals(ens, channel("dephasing:p=0.3"), &chain, &coherent),
            DYNCAP_OK);
  EXPECT_LE(chain, 1e-8);
  EXPECT_LE(coherent, 1e-8);
  EXPECT_EQ(dyncap_entropic_triple(ens, channel("identity:d=3"), &t),
            DYNCAP_ERR_INVALID_ARGUMENT);

  dyncap_ensemble* missing = nullptr;
  EXPECT_EQ(dyncap_ensemble_load("/nonexistent/e.json", &missing), DYNCAP_ERR_IO);
}

TEST_F(CApi, Optimization) {
  dyncap_optimizer_settings s;
  dyncap_optimizer_defaults(&s);
  EXPECT_NE(s.seed, 0u);
  dyncap_optimization r;
  dyncap_ensemble* argmax = nullptr;
  ASSERT_EQ(dyncap_dcap_optimize(channel("erasure:eps=0.25"), 0, 0, &s, &r, &argmax),
            DYNCAP_OK);
  keep(argmax);
  EXPECT_NEAR(r.value, 1.5, 1e-6);
  char* text = nullptr;
  ASSERT_EQ(dyncap_ensemble_to_json(argmax, &text), DYNCAP_OK);
  const auto j = nlohmann::json::parse(take(text));
  EXPECT_GE(j["entries"].size(), 1u);

  double v = 0;
  ASSERT_EQ(dyncap_dcap_closed_form_erasure(0.25, 0, 4, &v), DYNCAP_OK);
  EXPECT_DOUBLE_EQ(v, 3.75);
  ASSERT_EQ(dyncap_dcap_closed_form_dephasing(0.2, 0, 0, &v), DYNCAP_OK);
  EXPECT_NEAR(v, 1.5310044064, 1e-9);
  EXPECT_EQ(dyncap_dcap_optimize(channel("identity"), -1, 0, nullptr, &r, nullptr),
            DYNCAP_ERR_INVALID_ARGUMENT);

  ASSERT_EQ(dyncap_ea_capacity(channel("identity"), nullptr, &r, nullptr), DYNCAP_OK);
  EXPECT_NEAR(r.value, 2.0, 1e-6);
  ASSERT_EQ(dyncap_coherent_information_capacity(channel("erasure:eps=0.25"), nullptr, &r,
                                                 nullptr),
            DYNCAP_OK);
  EXPECT_NEAR(r.value, 0.5, 1e-6);
  ASSERT_EQ(dyncap_holevo_one_shot(channel("erasure:eps=0.25"), nullptr, &r, nullptr),
            DYNCAP_OK);
  EXPECT_NEAR(r.value, 0.75, 1e-6);
}

TEST_F(CApi, DimensionCap) {
  const size_t saved = dyncap_max_dim();
  ASSERT_EQ(dyncap_set_max_dim(2), DYNCAP_OK);
  double two = 0, doubled = 0;
  EXPECT_EQ(dyncap_additivity_gap(channel("identity"), 0, 0, nullptr, &two, &doubled),
            DYNCAP_ERR_INVALID_ARGUMENT);
  ASSERT_EQ(dyncap_set_max_dim(saved), DYNCAP_OK);
  EXPECT_EQ(dyncap_set_max_dim(0), DYNCAP_ERR_INVALID_ARGUMENT);
}

TEST_F(CApi, Regions) {
  dyncap_surface* erasure = surface("erasure:eps=0.25");
  dyncap_surface_family family;
  double param = 0;
  ASSERT_EQ(dyncap_surface_info(erasure, &family, &param), DYNCAP_OK);
  EXPECT_EQ(family, DYNCAP_SURFACE_ERASURE);
  EXPECT_EQ(param, 0.25);

  int inside = 0;
  double witness = -1, slack = 0;
  ASSERT_EQ(dyncap_surface_member(erasure, {0, 0, 0}, &inside, &witness, &slack), DYNCAP_OK);
  EXPECT_EQ(inside, 1);
  EXPECT_EQ(witness, 0.0);
  ASSERT_EQ(dyncap_surface_member(erasure, {1.5, 0, 0}, &inside, nullptr, nullptr), DYNCAP_OK);
  EXPECT_EQ(inside, 0);

  int bounded = 0;
  double value = 0;
  ASSERT_EQ(dyncap_surface_hyperplane(erasure, {1, 2, 0}, &bounded, &value, nullptr),
            DYNCAP_OK);
  EXPECT_EQ(bounded, 1);
  EXPECT_NEAR(value, 1.5, 1e-6);
  ASSERT_EQ(dyncap_surface_hyperplane(erasure, {0, 0, 1}, &bounded, nullptr, nullptr),
            DYNCAP_OK);
  EXPECT_EQ(bounded, 0);

  std::vector<double> params(5);
  std::vector<dyncap_triple> bounds(5);
  ASSERT_EQ(dyncap_surface_boundary(erasure, 5, params.data(), bounds.data(), nullptr),
            DYNCAP_OK);
  EXPECT_EQ(params.back(), 0.5);
  EXPECT_NEAR(bounds.back().cq_bound, 1.5, 1e-12);
  char* csv = nullptr;
  ASSERT_EQ(dyncap_surface_boundary_csv(erasure, 3, &csv), DYNCAP_OK);
  const std::string text = take(csv);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
  EXPECT_EQ(dyncap_surface_boundary_csv(erasure, 1, &csv), DYNCAP_ERR_INVALID_ARGUMENT);

  dyncap_surface* none = nullptr;
  EXPECT_EQ(dyncap_surface_from_spec("identity", &none), DYNCAP_ERR_INVALID_ARGUMENT);
  dyncap_surface* made = nullptr;
  ASSERT_EQ(dyncap_surface_create(DYNCAP_SURFACE_DEPHASING, 0.2, &made), DYNCAP_OK);
  dyncap_triple t;
  ASSERT_EQ(dyncap_surface_bounds(made, 0.5, &t), DYNCAP_OK);
  EXPECT_NEAR(t.qe_bound, 0.5310044064, 1e-9);
  EXPECT_EQ(dyncap_surface_bounds(made, 0.75, &t), DYNCAP_ERR_INVALID_ARGUMENT);
  dyncap_surface_free(made);
}

TEST_F(CApi, OracleReportsAreJson) {
  char* out = nullptr;
  ASSERT_EQ(dyncap_oracle_holevo_erasure(0.25, &out), DYNCAP_OK);
  const auto j = nlohmann::json::parse(take(out));
  for (const char* key : {"best_value", "target", "gap", "grid", "ensemble"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_NEAR(j["target"].get<double>(), 0.75, 1e-15);
  EXPECT_LE(std::abs(j["gap"].get<double>()), 5e-3);
  EXPECT_EQ(dyncap_oracle_dcap(channel("identity:d=3"), 0, 0, nullptr, &out),
            DYNCAP_ERR_INVALID_ARGUMENT);
}

}  // namespace
