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

#include "dyncap/serialize.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "dyncap/error.hpp"
#include "json.hpp"
#include "test_support.hpp"

namespace dyncap {
namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kInvariantViolation;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

TEST(ChannelSpec, BuiltIns) {
  EXPECT_EQ(parse_channel_spec("dephasing:p=0.2").kraus().size(), 2u);
  EXPECT_EQ(parse_channel_spec("erasure:eps=0.25").out_dim(), 3u);
  EXPECT_EQ(parse_channel_spec("identity").in_dim(), 2u);
  EXPECT_EQ(parse_channel_spec("identity:d=3").in_dim(), 3u);
}

TEST(ChannelSpec, Rejections) {
  for (const char* bad : {"foo", "dephasing", "dephasing:p=abc", "dephasing:p=0.2,q=1",
                          "dephasing:p=2", "erasure:p=0.1", "identity:d=1.5", "dephasing:p",
                          "kraus:path.json", ""})
    EXPECT_EQ(code_of([&] { parse_channel_spec(bad); }), ErrorCode::kInvalidArgument) << bad;
  EXPECT_EQ(code_of([] { parse_channel_spec("kraus:@/nonexistent/dir/k.json"); }),
            ErrorCode::kIo);
}

TEST(ChannelSpec, KrausFileLayouts) {
  // Full dephasing, each operator as four row-major [re,im] pairs.
  const double s = std::sqrt(0.5);
  nlohmann::json j = {{"in_dim", 2}, {"out_dim", 2}, {"kraus", nlohmann::json::array()}};
  j["kraus"].push_back({{s, 0}, {0, 0}, {0, 0}, {s, 0}});
  j["kraus"].push_back({{s, 0}, {0, 0}, {0, 0}, {-s, 0}});
  const auto flat_path = write_temp("dyncap_flat_kraus.json", j.dump());
  const auto ch = parse_channel_spec("kraus:@" + flat_path);
  const auto rho = bloch_state(1, 0, 0);
  EXPECT_LT(max_abs_diff(apply(ch, rho).matrix(), apply(dephasing(1.0), rho).matrix()), 1e-12);

  nlohmann::json nested = {{"in_dim", 2}, {"out_dim", 2}, {"kraus", nlohmann::json::array()}};
  nested["kraus"].push_back({{{1, 0}, {0, 0}}, {{0, 0}, {1, 0}}});
  const auto nested_path = write_temp("dyncap_nested_kraus.json", nested.dump());
  EXPECT_EQ(parse_channel_spec("kraus:@" + nested_path).kraus().size(), 1u);

  EXPECT_EQ(code_of([] { kraus_channel_from_json("{\"in_dim\":2}"); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { kraus_channel_from_json("not json"); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] {
              kraus_channel_from_json(R"({"in_dim":2,"out_dim":2,"kraus":[[[0.5,0],[0,0],[0,0],[0.5,0]]]})");
            }),
            ErrorCode::kInvalidArgument);
  std::remove(flat_path.c_str());
  std::remove(nested_path.c_str());
}

TEST(SurfaceSpec, ClosedFormsOnly) {
  const auto s = surface_from_channel_spec("erasure:eps=0.25");
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->family(), SurfaceFamily::kErasure);
  EXPECT_EQ(s->channel_parameter(), 0.25);
  EXPECT_FALSE(surface_from_channel_spec("identity").has_value());
  EXPECT_THROW(surface_from_channel_spec("dephasing:q=1"), Error);
}

TEST(EnsembleJson, RoundTrip) {
  std::mt19937_64 rng(71);
  const auto ens = testing::random_ensemble(3, 2, rng);
  const auto back = ensemble_from_json(ensemble_to_json(ens));
  ASSERT_EQ(back.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(back.entries()[i].probability, ens.entries()[i].probability);
    EXPECT_EQ(max_abs_diff(back.entries()[i].state.matrix(), ens.entries()[i].state.matrix()),
              0.0);
  }
}

TEST(EnsembleJson, AcceptsRealEntriesAndRejectsGarbage) {
  const auto ens = ensemble_from_json(R"({"entries":[{"p":1,"rho":[[0.5,0],[0,0.5]]}]})");
  EXPECT_LT(max_abs_diff(ens.average(), maximally_mixed(2).matrix()), 1e-15);
  EXPECT_EQ(code_of([] { ensemble_from_json("{}"); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { ensemble_from_json(R"({"entries":[{"p":1}]})"); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] {
              ensemble_from_json(R"({"entries":[{"p":1,"rho":[[1,0],[0,1]]}]})");
            }),
            ErrorCode::kInvalidArgument);
}

TEST(MatrixJson, RoundTrip) {
  const ComplexMatrix m{{Complex(0.5, 0), Complex(0.1, -0.2)}, {Complex(0.1, 0.2), 0.5}};
  EXPECT_EQ(max_abs_diff(matrix_from_json(matrix_to_json(m)), m), 0.0);
  EXPECT_THROW(matrix_from_json("[[1,2],[3]]"), Error);
}

TEST(FormatNumber, NineSignificantDigits) {
  EXPECT_EQ(format_number(1.5), "1.5");
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(0.1 + 0.2), "0.3");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333");
  EXPECT_EQ(format_number(-2.0 / 3.0), "-0.666666667");
  EXPECT_EQ(format_number(1.5310044064107189), "1.53100441");
  EXPECT_EQ(format_number(1e-20), "1e-20");
}

TEST(BoundaryCsv, RoundTripReproducesBounds) {
  for (const auto& s : {Surface::dephasing(0.2), Surface::erasure(0.25)}) {
    const auto samples = sample_boundary(s, 101);
    const std::string csv = boundary_csv(samples);
    EXPECT_EQ(csv.substr(0, csv.find('\n')),
              "param,cq_bound,qe_bound,cqe_bound,cef_c,cef_q,cef_e");
    const auto rows = parse_boundary_csv(csv);
    ASSERT_EQ(rows.size(), 101u);
    for (const auto& row : rows) {
      const auto again = s.bounds(row.param);
      const auto corner = cef_from_bounds(again);
      // 9 significant digits: relative 5e-9, plus an absolute floor near 0.
      auto close = [](double printed, double exact) {
        return std::abs(printed - exact) <= 5e-9 * std::max(1.0, std::abs(exact));
      };
      EXPECT_TRUE(close(row.bounds.cq_bound, again.cq_bound));
      EXPECT_TRUE(close(row.bounds.qe_bound, again.qe_bound));
      EXPECT_TRUE(close(row.bounds.cqe_bound, again.cqe_bound));
      EXPECT_TRUE(close(row.cef.c, corner.c));
      EXPECT_TRUE(close(row.cef.q, corner.q));
      EXPECT_TRUE(close(row.cef.e, corner.e));
    }
  }
}

TEST(BoundaryCsv, RejectsMalformedInput) {
  EXPECT_THROW(parse_boundary_csv("a,b\n"), Error);
  EXPECT_THROW(parse_boundary_csv("param,cq_bound,qe_bound,cqe_bound,cef_c,cef_q,cef_e\n1,2\n"),
               Error);
  EXPECT_THROW(
      parse_boundary_csv("param,cq_bound,qe_bound,cqe_bound,cef_c,cef_q,cef_e\n1,2,3,4,5,6,x\n"),
      Error);
}

TEST(ReportJson, Keys) {
  OracleReport r;
  r.best_value = 1.0;
  r.best_ensemble = CqEnsemble({{1.0, maximally_mixed(2)}});
  r.grid_spec = R"({"prob_steps":8})";
  r.set_target(1.25);
  r.extras = {{"product_value", 2.0}};
  r.note = "n";
  const auto j = nlohmann::json::parse(report_to_json(r));
  EXPECT_EQ(j["best_value"], 1.0);
  EXPECT_EQ(j["target"], 1.25);
  EXPECT_EQ(j["gap"], 0.25);
  EXPECT_EQ(j["grid"]["prob_steps"], 8);
  EXPECT_EQ(j["ensemble"]["entries"].size(), 1u);
  EXPECT_EQ(j["product_value"], 2.0);
  OracleReport untargeted;
  untargeted.set_target(NAN);
  EXPECT_TRUE(nlohmann::json::parse(report_to_json(untargeted))["target"].is_null());
}

TEST(ReadFile, MissingFileIsIoError) {
  EXPECT_EQ(code_of([] { read_file("/nonexistent/dyncap"); }), ErrorCode::kIo);
}

}  // namespace
}  // namespace dyncap
