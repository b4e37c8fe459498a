/*
 * Copyright 2026 The Influmax Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to libinflumax.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns an influmax_status;
 * on failure, influmax_last_error() describes the most recent error on the
 * calling thread. Node ids are dense indices 0..n-1; labels map them back to
 * the ids used in the input file.
 */

#ifndef INFLUMAX_INFLUMAX_H_
#define INFLUMAX_INFLUMAX_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(INFLUMAX_BUILDING_LIBRARY)
#    define INFLUMAX_API __declspec(dllexport)
#  else
#    define INFLUMAX_API __declspec(dllimport)
#  endif
#else
#  define INFLUMAX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define INFLUMAX_ABI_VERSION 1u

typedef enum influmax_status {
  INFLUMAX_OK = 0,
  INFLUMAX_ERR_INVALID_ARGUMENT = 1,
  INFLUMAX_ERR_PARSE = 2,
  INFLUMAX_ERR_VALIDATION = 3,
  INFLUMAX_ERR_OUT_OF_RANGE = 4,
  INFLUMAX_ERR_TOO_LARGE = 5,
  INFLUMAX_ERR_IO = 6,
  INFLUMAX_ERR_UNSUPPORTED = 7,
  INFLUMAX_ERR_INTERNAL = 8
} influmax_status;

typedef enum influmax_model_kind {
  INFLUMAX_MODEL_IC = 0,      /* explicit probabilities from the input */
  INFLUMAX_MODEL_WC = 1,      /* p = 1 / in-degree of the head */
  INFLUMAX_MODEL_LT = 2,      /* random normalized weights, seeded */
  INFLUMAX_MODEL_TRIGGER = 3  /* independent triggering from input probabilities */
} influmax_model_kind;

typedef enum influmax_algorithm {
  INFLUMAX_ALGO_TIM = 0,
  INFLUMAX_ALGO_TIM_PLUS = 1
} influmax_algorithm;

typedef struct influmax_graph influmax_graph;
typedef struct influmax_model influmax_model;
typedef struct influmax_result influmax_result;

INFLUMAX_API uint32_t influmax_abi_version(void);
INFLUMAX_API const char* influmax_version(void);
INFLUMAX_API const char* influmax_last_error(void);
INFLUMAX_API const char* influmax_status_name(influmax_status status);

/* Graphs. */

INFLUMAX_API influmax_status influmax_graph_load_file(const char* path, int undirected,
                                                      influmax_graph** out);
INFLUMAX_API influmax_status influmax_graph_load_string(const char* text, int undirected,
                                                        influmax_graph** out);
/* `probabilities` may be NULL. */
INFLUMAX_API influmax_status influmax_graph_from_edges(size_t node_count, const uint32_t* sources,
                                                       const uint32_t* targets,
                                                       const double* probabilities,
                                                       size_t edge_count, influmax_graph** out);
INFLUMAX_API void influmax_graph_free(influmax_graph* graph);

INFLUMAX_API size_t influmax_graph_node_count(const influmax_graph* graph);
INFLUMAX_API size_t influmax_graph_edge_count(const influmax_graph* graph);
INFLUMAX_API int influmax_graph_has_probabilities(const influmax_graph* graph);
INFLUMAX_API influmax_status influmax_graph_in_degree(const influmax_graph* graph, uint32_t node,
                                                      size_t* out);
/* The returned string lives as long as the graph. */
INFLUMAX_API influmax_status influmax_graph_node_label(const influmax_graph* graph, uint32_t node,
                                                       const char** out);
INFLUMAX_API influmax_status influmax_graph_find_node(const influmax_graph* graph, const char* label,
                                                      uint32_t* out);

/* Diffusion models. `seed` only matters for INFLUMAX_MODEL_LT. The model
 * keeps a reference to the graph, which must outlive it. */

INFLUMAX_API influmax_status influmax_model_create(const influmax_graph* graph,
                                                   influmax_model_kind kind, uint64_t seed,
                                                   influmax_model** out);

/* Custom triggering model. The sampler writes up to `in_degree` distinct slot
 * indices (positions within the node's in-neighbor list, see
 * influmax_graph_in_neighbors) into `out_slots` and returns how many it
 * wrote. `uniform` yields doubles in [0, 1) from the caller's stream. */
typedef size_t (*influmax_trigger_sampler)(void* user_data, uint32_t node, size_t in_degree,
                                           double (*uniform)(void* rng), void* rng,
                                           uint32_t* out_slots);

INFLUMAX_API influmax_status influmax_model_create_triggering(const influmax_graph* graph,
                                                              influmax_trigger_sampler sampler,
                                                              void* user_data,
                                                              influmax_model** out);
INFLUMAX_API void influmax_model_free(influmax_model* model);

/* Writes the in-neighbors of `node` (in slot order) into `out`, which must
 * hold in_degree entries. */
INFLUMAX_API influmax_status influmax_graph_in_neighbors(const influmax_graph* graph, uint32_t node,
                                                         uint32_t* out);

/* Seed selection. */

typedef struct influmax_tim_params {
  uint32_t k;
  double epsilon;
  double ell;
  double epsilon_prime; /* <= 0 selects the default */
  influmax_algorithm algorithm;
  uint64_t seed;
  uint32_t threads; /* 0 means 1 */
} influmax_tim_params;

typedef struct influmax_greedy_params {
  uint32_t k;
  uint64_t r;
  int lazy;
  uint64_t seed;
  uint32_t threads;
  double time_budget_seconds; /* <= 0 means unlimited */
} influmax_greedy_params;

INFLUMAX_API void influmax_tim_params_init(influmax_tim_params* params);
INFLUMAX_API void influmax_greedy_params_init(influmax_greedy_params* params);

INFLUMAX_API influmax_status influmax_run_tim(const influmax_graph* graph, const influmax_model* model,
                                              const influmax_tim_params* params,
                                              influmax_result** out);
INFLUMAX_API influmax_status influmax_run_greedy(const influmax_graph* graph,
                                                 const influmax_model* model,
                                                 const influmax_greedy_params* params,
                                                 influmax_result** out);
INFLUMAX_API void influmax_result_free(influmax_result* result);

typedef struct influmax_result_stats {
  double estimated_spread;
  double covered_fraction;
  double kpt_star;        /* TIM/TIM+ */
  double kpt_plus;        /* TIM+; equals kpt_star otherwise */
  double lambda;
  double lambda_prime;
  double epsilon_prime;
  double ell_used;
  uint64_t theta;
  uint64_t theta_prime;
  uint32_t kpt_iterations;
  uint64_t rr_sets_generated;
  double seconds_kpt_estimation;
  double seconds_refinement;
  double seconds_node_selection;
  double seconds_total;
  int completed;          /* greedy: 0 when stopped by the time budget */
  uint64_t evaluations;   /* greedy: spread estimates computed */
} influmax_result_stats;

INFLUMAX_API size_t influmax_result_seed_count(const influmax_result* result);
/* Pointer valid for the lifetime of the result. */
INFLUMAX_API const uint32_t* influmax_result_seeds(const influmax_result* result);
INFLUMAX_API void influmax_result_get_stats(const influmax_result* result,
                                            influmax_result_stats* out);

/* Evaluation and formulas. */

INFLUMAX_API influmax_status influmax_simulate_spread(const influmax_graph* graph,
                                                      const influmax_model* model,
                                                      const uint32_t* seeds, size_t seed_count,
                                                      uint64_t trials, uint64_t seed,
                                                      uint32_t threads, double* mean,
                                                      double* std_error);
INFLUMAX_API influmax_status influmax_exact_spread(const influmax_graph* graph,
                                                   const influmax_model* model,
                                                   const uint32_t* seeds, size_t seed_count,
                                                   double* out);
INFLUMAX_API influmax_status influmax_compute_lambda(uint64_t n, uint32_t k, double epsilon,
                                                     double ell, double* out);
INFLUMAX_API influmax_status influmax_required_r(uint64_t n, uint32_t k, double ell,
                                                 double epsilon, double opt, double* out);

/* Peak resident set size of the process in bytes, or 0 if unknown. */
INFLUMAX_API uint64_t influmax_peak_rss_bytes(void);

#ifdef __cplusplus
}
#endif

#endif /* INFLUMAX_INFLUMAX_H_ */
