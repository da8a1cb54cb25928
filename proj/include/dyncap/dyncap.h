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

/*
 * C interface to the dyncap library. Objects are opaque handles owned by the
 * caller and released with the matching *_free function. Every call that can
 * fail returns a dyncap_status; on failure dyncap_last_error() describes the
 * problem (thread-local, valid until the next failing call on that thread).
 */
#ifndef DYNCAP_DYNCAP_H_
#define DYNCAP_DYNCAP_H_

#include <stddef.h>
#include <stdint.h>

#if defined(DYNCAP_BUILDING_LIBRARY)
#define DYNCAP_API __attribute__((visibility("default")))
#else
#define DYNCAP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dyncap_status {
  DYNCAP_OK = 0,
  DYNCAP_ERR_INVALID_ARGUMENT = 1,
  DYNCAP_ERR_INVARIANT = 2,
  DYNCAP_ERR_IO = 3
} dyncap_status;

typedef struct dyncap_channel dyncap_channel;
typedef struct dyncap_ensemble dyncap_ensemble;
typedef struct dyncap_surface dyncap_surface;

typedef struct dyncap_triple {
  double cq_bound;
  double qe_bound;
  double cqe_bound;
} dyncap_triple;

typedef struct dyncap_rates {
  double c;
  double q;
  double e;
} dyncap_rates;

typedef struct dyncap_optimizer_settings {
  uint64_t seed;
  size_t max_evaluations;
  size_t max_ensemble_size; /* 0 = automatic */
} dyncap_optimizer_settings;

typedef struct dyncap_optimization {
  double value;
  size_t evaluations;
  int converged;
  size_t ensemble_cap;
} dyncap_optimization;

typedef enum dyncap_surface_family {
  DYNCAP_SURFACE_DEPHASING = 0,
  DYNCAP_SURFACE_ERASURE = 1
} dyncap_surface_family;

DYNCAP_API const char* dyncap_last_error(void);
/* Releases strings returned through char** out-parameters. */
DYNCAP_API void dyncap_string_free(char* s);

DYNCAP_API size_t dyncap_max_dim(void);
DYNCAP_API dyncap_status dyncap_set_max_dim(size_t dim);

/* Channels: "dephasing:p=0.2", "erasure:eps=0.25", "identity:d=2",
 * "kraus:@path.json". */
DYNCAP_API dyncap_status dyncap_channel_parse(const char* spec, dyncap_channel** out);
DYNCAP_API void dyncap_channel_free(dyncap_channel* ch);
DYNCAP_API dyncap_status dyncap_channel_dims(const dyncap_channel* ch, size_t* in_dim,
                                             size_t* out_dim, size_t* env_dim);

/* Ensembles use {"entries":[{"p":..,"rho":[[[re,im],..],..]},..]}. */
DYNCAP_API dyncap_status dyncap_ensemble_from_json(const char* json, dyncap_ensemble** out);
DYNCAP_API dyncap_status dyncap_ensemble_load(const char* path, dyncap_ensemble** out);
DYNCAP_API dyncap_status dyncap_ensemble_to_json(const dyncap_ensemble* ens, char** out);
DYNCAP_API size_t dyncap_ensemble_size(const dyncap_ensemble* ens);
DYNCAP_API void dyncap_ensemble_free(dyncap_ensemble* ens);

/* Entropies in bits. The state is a JSON matrix of [re,im] rows. */
DYNCAP_API dyncap_status dyncap_vn_entropy_json(const char* matrix_json, double* out);
DYNCAP_API dyncap_status dyncap_binary_entropy(double q, double* out);

DYNCAP_API dyncap_status dyncap_entropic_triple(const dyncap_ensemble* ens,
                                                const dyncap_channel* ch,
                                                dyncap_triple* out);
DYNCAP_API dyncap_status dyncap_cef_point(const dyncap_ensemble* ens,
                                          const dyncap_channel* ch, dyncap_rates* out);
DYNCAP_API dyncap_status dyncap_identity_residuals(const dyncap_ensemble* ens,
                                                   const dyncap_channel* ch,
                                                   double* mutual_chain, double* coherent);

DYNCAP_API void dyncap_optimizer_defaults(dyncap_optimizer_settings* settings);

/* settings may be NULL for defaults; argmax may be NULL. */
DYNCAP_API dyncap_status dyncap_dcap_optimize(const dyncap_channel* ch, double lambda,
                                              double mu,
                                              const dyncap_optimizer_settings* settings,
                                              dyncap_optimization* out,
                                              dyncap_ensemble** argmax);
DYNCAP_API dyncap_status dyncap_dcap_closed_form_erasure(double eps, double lambda,
                                                         double mu, double* out);
DYNCAP_API dyncap_status dyncap_dcap_closed_form_dephasing(double p, double lambda,
                                                           double mu, double* out);
DYNCAP_API dyncap_status dyncap_ea_capacity(const dyncap_channel* ch,
                                            const dyncap_optimizer_settings* settings,
                                            dyncap_optimization* out,
                                            dyncap_ensemble** argmax);
DYNCAP_API dyncap_status dyncap_coherent_information_capacity(
    const dyncap_channel* ch, const dyncap_optimizer_settings* settings,
    dyncap_optimization* out, dyncap_ensemble** argmax);
DYNCAP_API dyncap_status dyncap_holevo_one_shot(const dyncap_channel* ch,
                                                const dyncap_optimizer_settings* settings,
                                                dyncap_optimization* out,
                                                dyncap_ensemble** argmax);
DYNCAP_API dyncap_status dyncap_additivity_gap(const dyncap_channel* ch, double lambda,
                                               double mu,
                                               const dyncap_optimizer_settings* settings,
                                               double* two_copy_value,
                                               double* single_doubled);

/* Closed-form region surfaces. */
DYNCAP_API dyncap_status dyncap_surface_create(dyncap_surface_family family,
                                               double channel_param, dyncap_surface** out);
/* Fails with DYNCAP_ERR_INVALID_ARGUMENT for channels without a closed form. */
DYNCAP_API dyncap_status dyncap_surface_from_spec(const char* spec, dyncap_surface** out);
DYNCAP_API void dyncap_surface_free(dyncap_surface* s);
DYNCAP_API dyncap_status dyncap_surface_info(const dyncap_surface* s,
                                             dyncap_surface_family* family,
                                             double* channel_param);
DYNCAP_API dyncap_status dyncap_surface_bounds(const dyncap_surface* s, double param,
                                               dyncap_triple* out);
/* Writes n samples into caller arrays (any may be NULL). */
DYNCAP_API dyncap_status dyncap_surface_boundary(const dyncap_surface* s, size_t n,
                                                 double* params, dyncap_triple* bounds,
                                                 dyncap_rates* cef);
DYNCAP_API dyncap_status dyncap_surface_boundary_csv(const dyncap_surface* s, size_t n,
                                                     char** out);
DYNCAP_API dyncap_status dyncap_surface_member(const dyncap_surface* s, dyncap_rates point,
                                               int* inside, double* witness,
                                               double* min_slack);
DYNCAP_API dyncap_status dyncap_surface_hyperplane(const dyncap_surface* s,
                                                   dyncap_rates weights, int* bounded,
                                                   double* value, double* param);

/* Brute-force grid oracles; results are JSON reports
 * {"best_value","target","gap","grid","ensemble",...}. target may be NULL. */
DYNCAP_API dyncap_status dyncap_oracle_dcap(const dyncap_channel* ch, double lambda,
                                            double mu, const double* target, char** out);
DYNCAP_API dyncap_status dyncap_oracle_holevo_erasure(double eps, char** out);
DYNCAP_API dyncap_status dyncap_oracle_dephasing_diagonal(double p, double lambda, double mu,
                                                          char** out);
DYNCAP_API dyncap_status dyncap_oracle_additivity(const dyncap_channel* ch, double lambda,
                                                  double mu, const double* single_copy_value,
                                                  char** out);

#ifdef __cplusplus
}
#endif

#endif  /* DYNCAP_DYNCAP_H_ */
