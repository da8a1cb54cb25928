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

// Command-line front end over the C API. Results go to stdout (or --output),
// diagnostics to stderr. Exit status: 0 ok, 1 bad input, 2 invariant
// violation, 3 I/O failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dyncap/dyncap.h"
#include "json.hpp"

namespace {

using nlohmann::json;

struct Failure {
  int status;
  std::string message;
};

void check(dyncap_status status) {
  if (status != DYNCAP_OK) throw Failure{static_cast<int>(status), dyncap_last_error()};
}

struct ChannelDeleter {
  void operator()(dyncap_channel* p) const { dyncap_channel_free(p); }
};
struct EnsembleDeleter {
  void operator()(dyncap_ensemble* p) const { dyncap_ensemble_free(p); }
};
struct SurfaceDeleter {
  void operator()(dyncap_surface* p) const { dyncap_surface_free(p); }
};
struct StringDeleter {
  void operator()(char* p) const { dyncap_string_free(p); }
};
using ChannelPtr = std::unique_ptr<dyncap_channel, ChannelDeleter>;
using EnsemblePtr = std::unique_ptr<dyncap_ensemble, EnsembleDeleter>;
using SurfacePtr = std::unique_ptr<dyncap_surface, SurfaceDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

ChannelPtr load_channel(const std::string& spec) {
  dyncap_channel* ch = nullptr;
  check(dyncap_channel_parse(spec.c_str(), &ch));
  return ChannelPtr(ch);
}

SurfacePtr load_surface(const std::string& spec) {
  dyncap_surface* s = nullptr;
  check(dyncap_surface_from_spec(spec.c_str(), &s));
  return SurfacePtr(s);
}

std::optional<SurfacePtr> try_surface(const std::string& spec) {
  dyncap_surface* s = nullptr;
  if (dyncap_surface_from_spec(spec.c_str(), &s) != DYNCAP_OK) return std::nullopt;
  return SurfacePtr(s);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{DYNCAP_ERR_IO, "cannot open '" + path + "' for reading"};
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json ensemble_json(const dyncap_ensemble* ens) {
  char* raw = nullptr;
  check(dyncap_ensemble_to_json(ens, &raw));
  StringPtr owned(raw);
  return json::parse(owned.get());
}

json report_json(dyncap_status status, char* raw) {
  StringPtr owned(raw);
  check(status);
  return json::parse(owned.get());
}

// Parses "a,b,c" into three doubles.
dyncap_rates parse_triple(const std::string& text, const char* what) {
  std::vector<double> v;
  std::stringstream ss(text);
  ss.imbue(std::locale::classic());
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Failure{DYNCAP_ERR_INVALID_ARGUMENT,
                    std::string(what) + ": cannot parse '" + item + "'"};
    }
  }
  if (v.size() != 3)
    throw Failure{DYNCAP_ERR_INVALID_ARGUMENT,
                  std::string(what) + " must have exactly three components"};
  return {v[0], v[1], v[2]};
}

json triple_json(const dyncap_triple& t) {
  return {{"cq_bound", t.cq_bound}, {"qe_bound", t.qe_bound}, {"cqe_bound", t.cqe_bound}};
}

json rates_json(const dyncap_rates& r) { return {{"c", r.c}, {"q", r.q}, {"e", r.e}}; }

class Output {
 public:
  explicit Output(std::string path) : path_(std::move(path)) {}

  void write(const std::string& text) const {
    if (path_.empty()) {
      std::cout << text;
      std::cout.flush();
      if (!std::cout) throw Failure{DYNCAP_ERR_IO, "failed writing to stdout"};
      return;
    }
    std::ofstream out(path_, std::ios::binary);
    if (!out) throw Failure{DYNCAP_ERR_IO, "cannot open '" + path_ + "' for writing"};
    out << text;
    out.close();
    if (!out) throw Failure{DYNCAP_ERR_IO, "failed writing '" + path_ + "'"};
  }

  void write(const json& j) const { write(j.dump(2) + "\n"); }

 private:
  std::string path_;
};

struct Options {
  std::string channel;
  std::string state;
  std::string ensemble;
  std::string output;
  std::string format = "json";
  std::string point;
  std::string weights;
  std::string kind = "dcap";
  std::optional<double> binary;
  std::optional<double> target;
  double lambda = 0.0;
  double mu = 0.0;
  std::size_t samples = 101;
  std::uint64_t seed = 0;
  std::size_t max_evaluations = 0;
  std::size_t max_ensemble = 0;
  bool use_oracle = false;
};

dyncap_optimizer_settings settings_from(const Options& o) {
  dyncap_optimizer_settings s;
  dyncap_optimizer_defaults(&s);
  s.seed = o.seed;
  if (o.max_evaluations > 0) s.max_evaluations = o.max_evaluations;
  s.max_ensemble_size = o.max_ensemble;
  return s;
}

std::optional<double> closed_form(const std::string& spec, double lambda, double mu) {
  auto surface = try_surface(spec);
  if (!surface) return std::nullopt;
  dyncap_surface_family family;
  double param = 0.0;
  check(dyncap_surface_info(surface->get(), &family, &param));
  double value = 0.0;
  check(family == DYNCAP_SURFACE_ERASURE
            ? dyncap_dcap_closed_form_erasure(param, lambda, mu, &value)
            : dyncap_dcap_closed_form_dephasing(param, lambda, mu, &value));
  return value;
}

void run_entropy(const Options& o, const Output& out) {
  json j;
  if (o.binary) {
    double h = 0.0;
    check(dyncap_binary_entropy(*o.binary, &h));
    j = {{"binary", *o.binary}, {"entropy", h}};
  } else {
    if (o.state.empty())
      throw Failure{DYNCAP_ERR_INVALID_ARGUMENT, "entropy needs --state or --binary"};
    const std::string text = read_text(o.state);
    double h = 0.0;
    check(dyncap_vn_entropy_json(text.c_str(), &h));
    j = {{"state", o.state}, {"entropy", h}};
  }
  out.write(j);
}

void run_triple(const Options& o, const Output& out) {
  const auto ch = load_channel(o.channel);
  dyncap_ensemble* raw = nullptr;
  const std::string text = read_text(o.ensemble);
  check(dyncap_ensemble_from_json(text.c_str(), &raw));
  const EnsemblePtr ens(raw);
  dyncap_triple t;
  dyncap_rates cef;
  double chain = 0.0, coherent = 0.0;
  check(dyncap_entropic_triple(ens.get(), ch.get(), &t));
  check(dyncap_cef_point(ens.get(), ch.get(), &cef));
  check(dyncap_identity_residuals(ens.get(), ch.get(), &chain, &coherent));
  json j = triple_json(t);
  j["channel"] = o.channel;
  j["holevo"] = t.cqe_bound - t.qe_bound;
  j["cef"] = rates_json(cef);
  j["identity_residuals"] = {{"mutual_chain", chain}, {"coherent", coherent}};
  out.write(j);
}

void run_dcap(const Options& o, const Output& out) {
  const auto ch = load_channel(o.channel);
  const auto settings = settings_from(o);
  dyncap_optimization r;
  dyncap_ensemble* raw = nullptr;
  check(dyncap_dcap_optimize(ch.get(), o.lambda, o.mu, &settings, &r, &raw));
  const EnsemblePtr argmax(raw);
  json j = {{"channel", o.channel},
            {"seed", settings.seed},
            {"lambda", o.lambda},
            {"mu", o.mu},
            {"value", r.value},
            {"evaluations", r.evaluations},
            {"converged", r.converged != 0},
            {"ensemble_cap", r.ensemble_cap},
            {"argmax", ensemble_json(argmax.get())}};
  if (const auto cf = closed_form(o.channel, o.lambda, o.mu)) j["closed_form"] = *cf;
  out.write(j);
}

void run_region(const Options& o, const Output& out) {
  const auto surface = load_surface(o.channel);
  if (o.format == "csv") {
    char* raw = nullptr;
    const dyncap_status st = dyncap_surface_boundary_csv(surface.get(), o.samples, &raw);
    StringPtr csv(raw);
    check(st);
    out.write(std::string(csv.get()));
    return;
  }
  std::vector<double> params(o.samples);
  std::vector<dyncap_triple> bounds(o.samples);
  std::vector<dyncap_rates> cef(o.samples);
  check(dyncap_surface_boundary(surface.get(), o.samples, params.data(), bounds.data(),
                                cef.data()));
  json samples = json::array();
  for (std::size_t i = 0; i < o.samples; ++i) {
    json s = triple_json(bounds[i]);
    s["param"] = params[i];
    s["cef"] = rates_json(cef[i]);
    samples.push_back(std::move(s));
  }
  out.write(json{{"channel", o.channel}, {"samples", std::move(samples)}});
}

void run_hyperplane(const Options& o, const Output& out) {
  const auto surface = load_surface(o.channel);
  const dyncap_rates w = parse_triple(o.weights, "--weights");
  int bounded = 0;
  double value = 0.0, param = 0.0;
  check(dyncap_surface_hyperplane(surface.get(), w, &bounded, &value, &param));
  json j = {{"channel", o.channel},
            {"weights", {w.c, w.q, w.e}},
            {"bounded", bounded != 0}};
  if (bounded) {
    j["value"] = value;
    j["param"] = param;
  } else {
    j["value"] = "unbounded";
  }
  out.write(j);
}

void run_member(const Options& o, const Output& out) {
  const auto surface = load_surface(o.channel);
  const dyncap_rates r = parse_triple(o.point, "--point");
  int inside = 0;
  double witness = 0.0, slack = 0.0;
  check(dyncap_surface_member(surface.get(), r, &inside, &witness, &slack));
  out.write(json{{"channel", o.channel},
                 {"point", {r.c, r.q, r.e}},
                 {"inside", inside != 0},
                 {"witness", witness},
                 {"min_slack", slack}});
}

void run_oracle(const Options& o, const Output& out) {
  char* raw = nullptr;
  json j;
  if (o.kind == "dcap") {
    const auto ch = load_channel(o.channel);
    std::optional<double> target = o.target;
    if (!target) target = closed_form(o.channel, o.lambda, o.mu);
    const dyncap_status st =
        dyncap_oracle_dcap(ch.get(), o.lambda, o.mu, target ? &*target : nullptr, &raw);
    j = report_json(st, raw);
  } else if (o.kind == "holevo" || o.kind == "diagonal") {
    const auto surface = load_surface(o.channel);
    dyncap_surface_family family;
    double param = 0.0;
    check(dyncap_surface_info(surface.get(), &family, &param));
    const auto wanted = o.kind == "holevo" ? DYNCAP_SURFACE_ERASURE : DYNCAP_SURFACE_DEPHASING;
    if (family != wanted)
      throw Failure{DYNCAP_ERR_INVALID_ARGUMENT,
                    "--kind " + o.kind + " needs an " +
                        (o.kind == "holevo" ? "erasure" : "dephasing") + " channel"};
    const dyncap_status st =
        o.kind == "holevo" ? dyncap_oracle_holevo_erasure(param, &raw)
                           : dyncap_oracle_dephasing_diagonal(param, o.lambda, o.mu, &raw);
    j = report_json(st, raw);
  } else {
    throw Failure{DYNCAP_ERR_INVALID_ARGUMENT, "unknown oracle kind '" + o.kind + "'"};
  }
  j["channel"] = o.channel;
  j["kind"] = o.kind;
  out.write(j);
}

void run_additivity(const Options& o, const Output& out) {
  const auto ch = load_channel(o.channel);
  const auto cf = closed_form(o.channel, o.lambda, o.mu);
  json j;
  if (o.use_oracle) {
    char* raw = nullptr;
    const dyncap_status st =
        dyncap_oracle_additivity(ch.get(), o.lambda, o.mu, cf ? &*cf : nullptr, &raw);
    j = report_json(st, raw);
  } else {
    const auto settings = settings_from(o);
    double two_copy = 0.0, doubled = 0.0;
    check(dyncap_additivity_gap(ch.get(), o.lambda, o.mu, &settings, &two_copy, &doubled));
    j = {{"seed", settings.seed},
         {"two_copy_value", two_copy},
         {"single_doubled", doubled},
         {"gap", two_copy - doubled}};
  }
  j["channel"] = o.channel;
  j["lambda"] = o.lambda;
  j["mu"] = o.mu;
  if (cf) j["closed_form"] = *cf;
  out.write(j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dyncap: dynamic capacity regions of quantum channels"};
  app.require_subcommand(1);
  Options o;
  o.seed = [] {
    dyncap_optimizer_settings s;
    dyncap_optimizer_defaults(&s);
    return s.seed;
  }();

  auto channel_opt = [&](CLI::App* sub) {
    sub->add_option("--channel", o.channel, "channel spec, e.g. dephasing:p=0.2")->required();
  };
  auto weight_opts = [&](CLI::App* sub) {
    sub->add_option("--lambda", o.lambda, "quantum-rate weight")->capture_default_str();
    sub->add_option("--mu", o.mu, "entanglement-rate weight")->capture_default_str();
  };
  auto search_opts = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "optimizer seed")->capture_default_str();
    sub->add_option("--max-evals", o.max_evaluations, "objective evaluation budget");
    sub->add_option("--max-ensemble", o.max_ensemble, "ensemble size cap (0 = automatic)");
  };
  auto output_opt = [&](CLI::App* sub) {
    sub->add_option("--output,-o", o.output, "write result to this file instead of stdout");
  };

  auto* entropy = app.add_subcommand("entropy", "von Neumann or binary entropy");
  auto* state_opt = entropy->add_option("--state", o.state, "JSON density matrix file");
  entropy->add_option("--binary", o.binary, "binary entropy of q")->excludes(state_opt);
  output_opt(entropy);

  auto* triple = app.add_subcommand("triple", "entropic bounds of an ensemble");
  channel_opt(triple);
  triple->add_option("--ensemble", o.ensemble, "ensemble JSON file")->required();
  output_opt(triple);

  auto* dcap = app.add_subcommand("dcap", "maximise the weighted capacity objective");
  channel_opt(dcap);
  weight_opts(dcap);
  search_opts(dcap);
  output_opt(dcap);

  auto* region = app.add_subcommand("region", "boundary samples of the capacity region");
  channel_opt(region);
  region->add_option("--samples", o.samples, "number of boundary samples")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{2}, std::size_t{1000000}));
  region->add_option("--format", o.format, "csv or json")
      ->capture_default_str()
      ->check(CLI::IsMember({"csv", "json"}));
  output_opt(region);

  auto* hyperplane = app.add_subcommand("hyperplane", "max of w.(C,Q,E) over the region");
  channel_opt(hyperplane);
  hyperplane->add_option("--weights", o.weights, "c,q,e")->required();
  output_opt(hyperplane);

  auto* member = app.add_subcommand("member", "region membership of a rate triple");
  channel_opt(member);
  member->add_option("--point", o.point, "c,q,e")->required();
  output_opt(member);

  auto* oracle = app.add_subcommand("oracle", "brute-force grid oracle");
  channel_opt(oracle);
  oracle->add_option("--kind", o.kind, "dcap, holevo or diagonal")
      ->capture_default_str()
      ->check(CLI::IsMember({"dcap", "holevo", "diagonal"}));
  weight_opts(oracle);
  oracle->add_option("--target", o.target, "comparison value (defaults to the closed form)");
  output_opt(oracle);

  auto* additivity = app.add_subcommand("additivity", "two-copy additivity probe");
  channel_opt(additivity);
  weight_opts(additivity);
  search_opts(additivity);
  additivity->add_flag("--oracle", o.use_oracle, "use the grid oracle instead of the optimizer");
  output_opt(additivity);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : DYNCAP_ERR_INVALID_ARGUMENT;
  }

  const Output out(o.output);
  try {
    if (*entropy) run_entropy(o, out);
    else if (*triple) run_triple(o, out);
    else if (*dcap) run_dcap(o, out);
    else if (*region) run_region(o, out);
    else if (*hyperplane) run_hyperplane(o, out);
    else if (*member) run_member(o, out);
    else if (*oracle) run_oracle(o, out);
    else if (*additivity) run_additivity(o, out);
  } catch (const Failure& f) {
    std::cerr << "dyncap: " << f.message << "\n";
    return f.status;
  } catch (const json::exception& e) {
    std::cerr << "dyncap: " << e.what() << "\n";
    return DYNCAP_ERR_INVARIANT;
  }
  return 0;
}
