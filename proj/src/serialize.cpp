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

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "dyncap/error.hpp"
#include "json.hpp"

namespace dyncap {
namespace {

using nlohmann::json;

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw_invalid(std::string(what) + ": malformed JSON: " + e.what());
  }
}

double parse_double(std::string_view s, const std::string& context) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v))
    throw_invalid(context + ": cannot parse number '" + std::string(s) + "'");
  return v;
}

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw_invalid("expected a number or an [re,im] pair, got " + j.dump());
}

json complex_to_json(const Complex& c) { return json::array({c.real(), c.imag()}); }

ComplexMatrix matrix_from_rows(const json& rows) {
  if (!rows.is_array() || rows.empty()) throw_invalid("matrix must be a non-empty list of rows");
  const std::size_t r = rows.size();
  if (!rows[0].is_array()) throw_invalid("matrix rows must be lists");
  const std::size_t c = rows[0].size();
  ComplexMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (!rows[i].is_array() || rows[i].size() != c) throw_invalid("matrix rows are ragged");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = complex_from_json(rows[i][j]);
  }
  return m;
}

json matrix_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json ensemble_json(const CqEnsemble& ens) {
  json entries = json::array();
  for (const auto& e : ens.entries())
    entries.push_back({{"p", e.probability}, {"rho", matrix_json(e.state.matrix())}});
  return {{"entries", std::move(entries)}};
}

std::map<std::string, std::string> parse_options(std::string_view opts,
                                                 const std::string& spec) {
  std::map<std::string, std::string> out;
  while (!opts.empty()) {
    const auto comma = opts.find(',');
    const std::string_view item = opts.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0)
      throw_invalid("channel spec '" + spec + "': expected key=value, got '" +
                    std::string(item) + "'");
    out[std::string(item.substr(0, eq))] = std::string(item.substr(eq + 1));
    if (comma == std::string_view::npos) break;
    opts.remove_prefix(comma + 1);
  }
  return out;
}

double take_option(std::map<std::string, std::string>& opts, const std::string& key,
                   const std::string& spec) {
  const auto it = opts.find(key);
  if (it == opts.end())
    throw_invalid("channel spec '" + spec + "': missing option '" + key + "'");
  const double v = parse_double(it->second, "channel spec '" + spec + "'");
  opts.erase(it);
  return v;
}

void require_no_options(const std::map<std::string, std::string>& opts,
                        const std::string& spec) {
  if (!opts.empty())
    throw_invalid("channel spec '" + spec + "': unknown option '" + opts.begin()->first + "'");
}

struct SpecParts {
  std::string name;
  std::string rest;
};

SpecParts split_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) return {spec, ""};
  return {spec.substr(0, colon), spec.substr(colon + 1)};
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_io("cannot open '" + path + "' for reading");
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw_io("error while reading '" + path + "'");
  return os.str();
}

KrausChannel kraus_channel_from_json(const std::string& text) {
  const json j = parse_json(text, "Kraus channel");
  if (!j.is_object() || !j.contains("in_dim") || !j.contains("out_dim") ||
      !j.contains("kraus"))
    throw_invalid("Kraus channel JSON needs in_dim, out_dim and kraus");
  const auto in_dim = j["in_dim"].get<std::size_t>();
  const auto out_dim = j["out_dim"].get<std::size_t>();
  const json& list = j["kraus"];
  if (!list.is_array() || list.empty()) throw_invalid("kraus must be a non-empty list");
  std::vector<ComplexMatrix> ops;
  for (const json& op : list) {
    if (!op.is_array()) throw_invalid("each Kraus operator must be a list");
    const bool nested_rows = !op.empty() && op[0].is_array() && !op[0].empty() &&
                             op[0][0].is_array();
    if (nested_rows) {
      ops.push_back(matrix_from_rows(op));
      continue;
    }
    if (op.size() != in_dim * out_dim)
      throw_invalid("Kraus operator has the wrong number of entries");
    ComplexMatrix m(out_dim, in_dim);
    for (std::size_t k = 0; k < op.size(); ++k) m.data()[k] = complex_from_json(op[k]);
    ops.push_back(std::move(m));
  }
  return KrausChannel(in_dim, out_dim, std::move(ops));
}

KrausChannel parse_channel_spec(const std::string& spec) {
  const auto [name, rest] = split_spec(spec);
  if (name == "kraus") {
    if (rest.size() < 2 || rest[0] != '@')
      throw_invalid("channel spec '" + spec + "': expected kraus:@path.json");
    return kraus_channel_from_json(read_file(rest.substr(1)));
  }
  auto opts = parse_options(rest, spec);
  if (name == "dephasing") {
    const double p = take_option(opts, "p", spec);
    require_no_options(opts, spec);
    return dephasing(p);
  }
  if (name == "erasure") {
    const double eps = take_option(opts, "eps", spec);
    require_no_options(opts, spec);
    return erasure(eps);
  }
  if (name == "identity") {
    double d = 2.0;
    if (opts.count("d")) d = take_option(opts, "d", spec);
    require_no_options(opts, spec);
    if (d < 1.0 || d != std::floor(d))
      throw_invalid("channel spec '" + spec + "': d must be a positive integer");
    return identity_channel(static_cast<std::size_t>(d));
  }
  throw_invalid("unknown channel '" + name + "' in spec '" + spec + "'");
}

std::optional<Surface> surface_from_channel_spec(const std::string& spec) {
  const auto [name, rest] = split_spec(spec);
  if (name != "dephasing" && name != "erasure") {
    parse_channel_spec(spec);  // still reject malformed specs
    return std::nullopt;
  }
  auto opts = parse_options(rest, spec);
  if (name == "dephasing") {
    const double p = take_option(opts, "p", spec);
    require_no_options(opts, spec);
    return Surface::dephasing(p);
  }
  const double eps = take_option(opts, "eps", spec);
  require_no_options(opts, spec);
  return Surface::erasure(eps);
}

ComplexMatrix matrix_from_json(const std::string& text) {
  const json j = parse_json(text, "matrix");
  if (j.is_object() && j.contains("rho")) return matrix_from_rows(j["rho"]);
  return matrix_from_rows(j);
}

std::string matrix_to_json(const ComplexMatrix& m) { return matrix_json(m).dump(); }

CqEnsemble ensemble_from_json(const std::string& text) {
  const json j = parse_json(text, "ensemble");
  if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array())
    throw_invalid("ensemble JSON needs an 'entries' list");
  std::vector<CqEnsemble::Entry> entries;
  for (const json& e : j["entries"]) {
    if (!e.is_object() || !e.contains("p") || !e.contains("rho"))
      throw_invalid("each ensemble entry needs 'p' and 'rho'");
    entries.push_back({e["p"].get<double>(), DensityOperator(matrix_from_rows(e["rho"]))});
  }
  return CqEnsemble(std::move(entries));
}

std::string ensemble_to_json(const CqEnsemble& ens) { return ensemble_json(ens).dump(); }

std::string report_to_json(const OracleReport& r) {
  auto number = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  json j = {{"best_value", number(r.best_value)},
            {"target", number(r.comparison_target)},
            {"gap", number(r.gap)},
            {"grid", r.grid_spec.empty() ? json::object() : json::parse(r.grid_spec)},
            {"evaluations", r.evaluations}};
  j["ensemble"] = r.best_ensemble ? ensemble_json(*r.best_ensemble) : json(nullptr);
  for (const auto& [k, v] : r.extras) j[k] = number(v);
  if (!r.note.empty()) j["note"] = r.note;
  return j.dump();
}

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 9);
  if (ec != std::errc()) throw_invariant("format_number: conversion failed");
  return std::string(buf, ptr);
}

std::string boundary_csv(std::span<const BoundarySample> samples) {
  std::string out = "param,cq_bound,qe_bound,cqe_bound,cef_c,cef_q,cef_e\n";
  for (const auto& s : samples) {
    const double row[] = {s.param,     s.bounds.cq_bound, s.bounds.qe_bound,
                          s.bounds.cqe_bound, s.cef.c,   s.cef.q,
                          s.cef.e};
    for (std::size_t i = 0; i < 7; ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::vector<BoundarySample> parse_boundary_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "param,cq_bound,qe_bound,cqe_bound,cef_c,cef_q,cef_e")
    throw_invalid("boundary CSV: unexpected header");
  std::vector<BoundarySample> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double v[7];
    std::size_t field = 0, start = 0;
    while (field < 7) {
      const auto comma = line.find(',', start);
      const std::string_view cell =
          std::string_view(line).substr(start, comma == std::string::npos ? std::string::npos
                                                                            : comma - start);
      v[field++] = parse_double(cell, "boundary CSV");
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (field != 7) throw_invalid("boundary CSV: expected 7 columns");
    out.push_back({v[0], {v[1], v[2], v[3]}, {v[4], v[5], v[6]}});
  }
  return out;
}

}  // namespace dyncap
