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

#include "dyncap/dyncap.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>
#include <utility>

#include "dyncap/channel.hpp"
#include "dyncap/cqstate.hpp"
#include "dyncap/dcap.hpp"
#include "dyncap/entropy.hpp"
#include "dyncap/error.hpp"
#include "dyncap/oracle.hpp"
#include "dyncap/qmat.hpp"
#include "dyncap/region.hpp"
#include "dyncap/serialize.hpp"
#include "json.hpp"

struct dyncap_channel {
  dyncap::KrausChannel channel;
};

struct dyncap_ensemble {
  dyncap::CqEnsemble ensemble;
};

struct dyncap_surface {
  dyncap::Surface surface;
};

namespace {

thread_local std::string last_error;

dyncap_status fail(dyncap_status status, const char* message) {
  last_error = message;
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
dyncap_status guarded(F&& body) {
  try {
    body();
    return DYNCAP_OK;
  } catch (const dyncap::Error& e) {
    return fail(static_cast<dyncap_status>(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(DYNCAP_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(DYNCAP_ERR_INVARIANT, "out of memory");
  } catch (const std::exception& e) {
    return fail(DYNCAP_ERR_INVARIANT, e.what());
  }
}

void require(const void* p, const char* name) {
  if (p == nullptr) dyncap::throw_invalid(std::string(name) + " must not be NULL");
}

char* to_c_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

dyncap::OptimizerSettings to_settings(const dyncap_optimizer_settings* s) {
  dyncap::OptimizerSettings out;
  if (s != nullptr) {
    out.seed = s->seed;
    out.max_evaluations = s->max_evaluations;
    out.max_ensemble_size = s->max_ensemble_size;
  }
  return out;
}

void export_result(const dyncap::OptimizationResult& r, dyncap_optimization* out,
                   dyncap_ensemble** argmax) {
  out->value = r.value;
  out->evaluations = r.evaluations;
  out->converged = r.converged ? 1 : 0;
  out->ensemble_cap = r.ensemble_cap;
  if (argmax != nullptr) *argmax = new dyncap_ensemble{r.argmax};
}

dyncap_triple to_c(const dyncap::EntropicTriple& t) {
  return {t.cq_bound, t.qe_bound, t.cqe_bound};
}

dyncap_rates to_c(const dyncap::RateTriple& r) { return {r.c, r.q, r.e}; }

template <typename Capacity>
dyncap_status run_capacity(Capacity capacity, const dyncap_channel* ch,
                           const dyncap_optimizer_settings* settings,
                           dyncap_optimization* out, dyncap_ensemble** argmax) {
  return guarded([&] {
    require(ch, "channel");
    require(out, "out");
    export_result(capacity(ch->channel, to_settings(settings)), out, argmax);
  });
}

}  // namespace

extern "C" {

const char* dyncap_last_error(void) { return last_error.c_str(); }

void dyncap_string_free(char* s) { std::free(s); }

size_t dyncap_max_dim(void) { return dyncap::max_dim(); }

dyncap_status dyncap_set_max_dim(size_t dim) {
  return guarded([&] { dyncap::set_max_dim(dim); });
}

dyncap_status dyncap_channel_parse(const char* spec, dyncap_channel** out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    *out = new dyncap_channel{dyncap::parse_channel_spec(spec)};
  });
}

void dyncap_channel_free(dyncap_channel* ch) { delete ch; }

dyncap_status dyncap_channel_dims(const dyncap_channel* ch, size_t* in_dim, size_t* out_dim,
                                  size_t* env_dim) {
  return guarded([&] {
    require(ch, "channel");
    if (in_dim) *in_dim = ch->channel.in_dim();
    if (out_dim) *out_dim = ch->channel.out_dim();
    if (env_dim) *env_dim = ch->channel.env_dim();
  });
}

dyncap_status dyncap_ensemble_from_json(const char* json, dyncap_ensemble** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = new dyncap_ensemble{dyncap::ensemble_from_json(json)};
  });
}

dyncap_status dyncap_ensemble_load(const char* path, dyncap_ensemble** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new dyncap_ensemble{dyncap::ensemble_from_json(dyncap::read_file(path))};
  });
}

dyncap_status dyncap_ensemble_to_json(const dyncap_ensemble* ens, char** out) {
  return guarded([&] {
    require(ens, "ensemble");
    require(out, "out");
    *out = to_c_string(dyncap::ensemble_to_json(ens->ensemble));
  });
}

size_t dyncap_ensemble_size(const dyncap_ensemble* ens) {
  return ens == nullptr ? 0 : ens->ensemble.size();
}

void dyncap_ensemble_free(dyncap_ensemble* ens) { delete ens; }

dyncap_status dyncap_vn_entropy_json(const char* matrix_json, double* out) {
  return guarded([&] {
    require(matrix_json, "matrix_json");
    require(out, "out");
    *out = dyncap::vn_entropy(dyncap::DensityOperator(dyncap::matrix_from_json(matrix_json)));
  });
}

dyncap_status dyncap_binary_entropy(double q, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = dyncap::binary_entropy(q);
  });
}

dyncap_status dyncap_entropic_triple(const dyncap_ensemble* ens, const dyncap_channel* ch,
                                     dyncap_triple* out) {
  return guarded([&] {
    require(ens, "ensemble");
    require(ch, "channel");
    require(out, "out");
    *out = to_c(dyncap::entropic_triple(ens->ensemble, ch->channel));
  });
}

dyncap_status dyncap_cef_point(const dyncap_ensemble* ens, const dyncap_channel* ch,
                               dyncap_rates* out) {
  return guarded([&] {
    require(ens, "ensemble");
    require(ch, "channel");
    require(out, "out");
    *out = to_c(dyncap::cef_point(ens->ensemble, ch->channel));
  });
}

dyncap_status dyncap_identity_residuals(const dyncap_ensemble* ens, const dyncap_channel* ch,
                                        double* mutual_chain, double* coherent) {
  return guarded([&] {
    require(ens, "ensemble");
    require(ch, "channel");
    const auto r = dyncap::verify_identities(ens->ensemble, ch->channel);
    if (mutual_chain) *mutual_chain = r.mutual_chain;
    if (coherent) *coherent = r.coherent;
  });
}

void dyncap_optimizer_defaults(dyncap_optimizer_settings* settings) {
  if (settings == nullptr) return;
  const dyncap::OptimizerSettings d;
  settings->seed = d.seed;
  settings->max_evaluations = d.max_evaluations;
  settings->max_ensemble_size = d.max_ensemble_size;
}

dyncap_status dyncap_dcap_optimize(const dyncap_channel* ch, double lambda, double mu,
                                   const dyncap_optimizer_settings* settings,
                                   dyncap_optimization* out, dyncap_ensemble** argmax) {
  return guarded([&] {
    require(ch, "channel");
    require(out, "out");
    export_result(dyncap::dcap_optimize(ch->channel, {lambda, mu}, to_settings(settings)),
                  out, argmax);
  });
}

dyncap_status dyncap_dcap_closed_form_erasure(double eps, double lambda, double mu,
                                              double* out) {
  return guarded([&] {
    require(out, "out");
    *out = dyncap::dcap_closed_form_erasure(eps, {lambda, mu});
  });
}

dyncap_status dyncap_dcap_closed_form_dephasing(double p, double lambda, double mu,
                                                double* out) {
  return guarded([&] {
    require(out, "out");
    *out = dyncap::dcap_closed_form_dephasing(p, {lambda, mu});
  });
}

dyncap_status dyncap_ea_capacity(const dyncap_channel* ch,
                                 const dyncap_optimizer_settings* settings,
                                 dyncap_optimization* out, dyncap_ensemble** argmax) {
  return run_capacity(
      [](const auto& c, const auto& s) { return dyncap::ea_capacity(c, s); }, ch, settings,
      out, argmax);
}

dyncap_status dyncap_coherent_information_capacity(const dyncap_channel* ch,
                                                   const dyncap_optimizer_settings* settings,
                                                   dyncap_optimization* out,
                                                   dyncap_ensemble** argmax) {
  return run_capacity(
      [](const auto& c, const auto& s) { return dyncap::coherent_information_capacity(c, s); },
      ch, settings, out, argmax);
}

dyncap_status dyncap_holevo_one_shot(const dyncap_channel* ch,
                                     const dyncap_optimizer_settings* settings,
                                     dyncap_optimization* out, dyncap_ensemble** argmax) {
  return run_capacity(
      [](const auto& c, const auto& s) { return dyncap::holevo_one_shot(c, s); }, ch,
      settings, out, argmax);
}

dyncap_status dyncap_additivity_gap(const dyncap_channel* ch, double lambda, double mu,
                                    const dyncap_optimizer_settings* settings,
                                    double* two_copy_value, double* single_doubled) {
  return guarded([&] {
    require(ch, "channel");
    const auto probe = dyncap::additivity_gap(ch->channel, {lambda, mu}, to_settings(settings));
    if (two_copy_value) *two_copy_value = probe.two_copy_value;
    if (single_doubled) *single_doubled = probe.single_doubled;
  });
}

dyncap_status dyncap_surface_create(dyncap_surface_family family, double channel_param,
                                    dyncap_surface** out) {
  return guarded([&] {
    require(out, "out");
    switch (family) {
      case DYNCAP_SURFACE_DEPHASING:
        *out = new dyncap_surface{dyncap::Surface::dephasing(channel_param)};
        return;
      case DYNCAP_SURFACE_ERASURE:
        *out = new dyncap_surface{dyncap::Surface::erasure(channel_param)};
        return;
    }
    dyncap::throw_invalid("unknown surface family");
  });
}

dyncap_status dyncap_surface_from_spec(const char* spec, dyncap_surface** out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    auto surface = dyncap::surface_from_channel_spec(spec);
    if (!surface)
      dyncap::throw_invalid(std::string("no closed-form region for channel '") + spec + "'");
    *out = new dyncap_surface{*surface};
  });
}

void dyncap_surface_free(dyncap_surface* s) { delete s; }

dyncap_status dyncap_surface_info(const dyncap_surface* s, dyncap_surface_family* family,
                                  double* channel_param) {
  return guarded([&] {
    require(s, "surface");
    if (family)
      *family = s->surface.family() == dyncap::SurfaceFamily::kDephasing
                    ? DYNCAP_SURFACE_DEPHASING
                    : DYNCAP_SURFACE_ERASURE;
    if (channel_param) *channel_param = s->surface.channel_parameter();
  });
}

dyncap_status dyncap_surface_bounds(const dyncap_surface* s, double param, dyncap_triple* out) {
  return guarded([&] {
    require(s, "surface");
    require(out, "out");
    *out = to_c(s->surface.bounds(param));
  });
}

dyncap_status dyncap_surface_boundary(const dyncap_surface* s, size_t n, double* params,
                                      dyncap_triple* bounds, dyncap_rates* cef) {
  return guarded([&] {
    require(s, "surface");
    const auto samples = dyncap::sample_boundary(s->surface, n);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (params) params[i] = samples[i].param;
      if (bounds) bounds[i] = to_c(samples[i].bounds);
      if (cef) cef[i] = to_c(samples[i].cef);
    }
  });
}

dyncap_status dyncap_surface_boundary_csv(const dyncap_surface* s, size_t n, char** out) {
  return guarded([&] {
    require(s, "surface");
    require(out, "out");
    *out = to_c_string(dyncap::boundary_csv(dyncap::sample_boundary(s->surface, n)));
  });
}

dyncap_status dyncap_surface_member(const dyncap_surface* s, dyncap_rates point, int* inside,
                                    double* witness, double* min_slack) {
  return guarded([&] {
    require(s, "surface");
    const auto m = dyncap::in_region({point.c, point.q, point.e}, s->surface);
    if (inside) *inside = m.inside ? 1 : 0;
    if (witness) *witness = m.witness;
    if (min_slack) *min_slack = m.min_slack;
  });
}

dyncap_status dyncap_surface_hyperplane(const dyncap_surface* s, dyncap_rates weights,
                                        int* bounded, double* value, double* param) {
  return guarded([&] {
    require(s, "surface");
    const auto h =
        dyncap::supporting_hyperplane({weights.c, weights.q, weights.e}, s->surface);
    if (bounded) *bounded = h.bounded ? 1 : 0;
    if (value) *value = h.value;
    if (param) *param = h.param;
  });
}

dyncap_status dyncap_oracle_dcap(const dyncap_channel* ch, double lambda, double mu,
                                 const double* target, char** out) {
  return guarded([&] {
    require(ch, "channel");
    require(out, "out");
    const std::optional<double> t = target ? std::optional<double>(*target) : std::nullopt;
    *out = to_c_string(
        dyncap::report_to_json(dyncap::oracle_dcap(ch->channel, {lambda, mu}, {}, t)));
  });
}

dyncap_status dyncap_oracle_holevo_erasure(double eps, char** out) {
  return guarded([&] {
    require(out, "out");
    *out = to_c_string(dyncap::report_to_json(dyncap::oracle_holevo_erasure(eps)));
  });
}

dyncap_status dyncap_oracle_dephasing_diagonal(double p, double lambda, double mu,
                                               char** out) {
  return guarded([&] {
    require(out, "out");
    *out = to_c_string(dyncap::report_to_json(
        dyncap::oracle_dephasing_diagonal_sufficiency(p, {lambda, mu})));
  });
}

dyncap_status dyncap_oracle_additivity(const dyncap_channel* ch, double lambda, double mu,
                                       const double* single_copy_value, char** out) {
  return guarded([&] {
    require(ch, "channel");
    require(out, "out");
    const std::optional<double> single =
        single_copy_value ? std::optional<double>(*single_copy_value) : std::nullopt;
    *out = to_c_string(dyncap::report_to_json(
        dyncap::oracle_additivity(ch->channel, {lambda, mu}, single)));
  });
}

}  // extern "C"
