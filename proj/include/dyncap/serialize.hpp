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

#ifndef DYNCAP_SERIALIZE_HPP_
#define DYNCAP_SERIALIZE_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dyncap/channel.hpp"
#include "dyncap/cqstate.hpp"
#include "dyncap/oracle.hpp"
#include "dyncap/region.hpp"

namespace dyncap {

// Channel specs: `dephasing:p=0.2`, `erasure:eps=0.25`, `identity[:d=2]`,
// `kraus:@path.json`. The Kraus file holds
//   {"in_dim":2,"out_dim":2,"kraus":[[[re,im],...],...]}
// with each operator given row-major as out_dim*in_dim [re,im] pairs (a list
// of rows of pairs is accepted too).
KrausChannel parse_channel_spec(const std::string& spec);
KrausChannel kraus_channel_from_json(const std::string& text);

// Closed-form region surface for dephasing/erasure specs, nullopt otherwise.
std::optional<Surface> surface_from_channel_spec(const std::string& spec);

// Matrices are nested rows of [re,im] pairs; bare reals are accepted.
ComplexMatrix matrix_from_json(const std::string& text);
std::string matrix_to_json(const ComplexMatrix& m);

// {"entries":[{"p":0.5,"rho":[[[re,im],...],...]},...]}
CqEnsemble ensemble_from_json(const std::string& text);
std::string ensemble_to_json(const CqEnsemble& ens);

// {"best_value":..,"target":..,"gap":..,"grid":{..},"ensemble":{..},...}
std::string report_to_json(const OracleReport& report);

// Shortest round-trip-stable rendering with 9 significant digits, '.' as the
// decimal separator regardless of locale.
std::string format_number(double v);

// Header param,cq_bound,qe_bound,cqe_bound,cef_c,cef_q,cef_e then one row per
// sample.
std::string boundary_csv(std::span<const BoundarySample> samples);
std::vector<BoundarySample> parse_boundary_csv(const std::string& text);

std::string read_file(const std::string& path);

}  // namespace dyncap

#endif  // DYNCAP_SERIALIZE_HPP_
