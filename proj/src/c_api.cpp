// Copyright 2026 The Influmax Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "influmax/influmax.h"

#include <sys/resource.h>

#include <cstring>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "influmax/evaluator.hpp"
#include "influmax/graph.hpp"
#include "influmax/greedy.hpp"
#include "influmax/models.hpp"
#include "influmax/tim.hpp"
#include "influmax/version.hpp"

struct influmax_graph {
  influmax::Graph graph;
};

struct influmax_model {
  const influmax_graph* owner;
  influmax::DiffusionModel model;
};

struct influmax_result {
  std::vector<uint32_t> seeds;
  influmax_result_stats stats{};
};

namespace {

thread_local std::string g_last_error;

influmax_status to_status(influmax::ErrorCode code) {
  using influmax::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument: return INFLUMAX_ERR_INVALID_ARGUMENT;
    case ErrorCode::kParse: return INFLUMAX_ERR_PARSE;
    case ErrorCode::kValidation: return INFLUMAX_ERR_VALIDATION;
    case ErrorCode::kOutOfRange: return INFLUMAX_ERR_OUT_OF_RANGE;
    case ErrorCode::kTooLarge: return INFLUMAX_ERR_TOO_LARGE;
    case ErrorCode::kIo: return INFLUMAX_ERR_IO;
    case ErrorCode::kUnsupported: return INFLUMAX_ERR_UNSUPPORTED;
  }
  return INFLUMAX_ERR_INTERNAL;
}

influmax_status fail(influmax_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <class Fn>
influmax_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return INFLUMAX_OK;
  } catch (const influmax::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(INFLUMAX_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(INFLUMAX_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(INFLUMAX_ERR_INTERNAL, "unknown error");
  }
}

void require(bool condition, const char* what) {
  if (!condition) throw influmax::Error(influmax::ErrorCode::kInvalidArgument, what);
}

double uniform_callback(void* rng) { return influmax::uniform01(*static_cast<influmax::Rng*>(rng)); }

class CallbackTrigger : public influmax::TriggerDistribution {
 public:
  CallbackTrigger(influmax_trigger_sampler sampler, void* user_data)
      : sampler_(sampler), user_data_(user_data) {}

  void sample(const influmax::Graph& graph, influmax::NodeId v, influmax::Rng& rng,
              std::vector<std::uint32_t>& slots) const override {
    const std::size_t degree = graph.in_edge_end(v) - graph.in_edge_begin(v);
    if (degree == 0) return;
    const std::size_t base = slots.size();
    slots.resize(base + degree);
    const std::size_t written = sampler_(user_data_, v, degree, &uniform_callback, &rng, slots.data() + base);
    if (written > degree) {
      throw influmax::Error(influmax::ErrorCode::kValidation, "trigger sampler wrote too many slots");
    }
    slots.resize(base + written);
    for (std::size_t i = base; i < slots.size(); ++i) {
      if (slots[i] >= degree) {
        throw influmax::Error(influmax::ErrorCode::kValidation, "trigger sampler returned an invalid slot");
      }
    }
  }

 private:
  influmax_trigger_sampler sampler_;
  void* user_data_;
};

void check_model(const influmax_graph* graph, const influmax_model* model) {
  require(graph != nullptr && model != nullptr, "graph and model must not be null");
  require(model->owner == graph, "model was created for a different graph");
}

std::vector<influmax::NodeId> seed_vector(const influmax_graph* graph, const uint32_t* seeds,
                                          size_t count) {
  require(count == 0 || seeds != nullptr, "seeds must not be null");
  std::vector<influmax::NodeId> out(seeds, seeds + count);
  for (auto s : out) {
    if (s >= graph->graph.node_count()) {
      throw influmax::Error(influmax::ErrorCode::kOutOfRange, "seed " + std::to_string(s) + " out of range");
    }
  }
  return out;
}

}  // namespace

extern "C" {

uint32_t influmax_abi_version(void) { return INFLUMAX_ABI_VERSION; }

const char* influmax_version(void) { return influmax::kVersion; }

const char* influmax_last_error(void) { return g_last_error.c_str(); }

const char* influmax_status_name(influmax_status status) {
  switch (status) {
    case INFLUMAX_OK: return "ok";
    case INFLUMAX_ERR_INVALID_ARGUMENT: return "invalid argument";
    case INFLUMAX_ERR_PARSE: return "parse error";
    case INFLUMAX_ERR_VALIDATION: return "validation error";
    case INFLUMAX_ERR_OUT_OF_RANGE: return "out of range";
    case INFLUMAX_ERR_TOO_LARGE: return "too large";
    case INFLUMAX_ERR_IO: return "i/o error";
    case INFLUMAX_ERR_UNSUPPORTED: return "unsupported";
    case INFLUMAX_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

influmax_status influmax_graph_load_file(const char* path, int undirected, influmax_graph** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "path and out must not be null");
    auto g = influmax::load_edge_list_file(
        path, undirected ? influmax::Directedness::kUndirected : influmax::Directedness::kDirected);
    *out = new influmax_graph{std::move(g)};
  });
}

influmax_status influmax_graph_load_string(const char* text, int undirected, influmax_graph** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "text and out must not be null");
    std::istringstream in(text);
    auto g = influmax::load_edge_list(
        in, undirected ? influmax::Directedness::kUndirected : influmax::Directedness::kDirected);
    *out = new influmax_graph{std::move(g)};
  });
}

influmax_status influmax_graph_from_edges(size_t node_count, const uint32_t* sources,
                                          const uint32_t* targets, const double* probabilities,
                                          size_t edge_count, influmax_graph** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    require(edge_count == 0 || (sources != nullptr && targets != nullptr), "edge arrays must not be null");
    std::span<const influmax::NodeId> src(sources, edge_count);
    std::span<const influmax::NodeId> dst(targets, edge_count);
    std::span<const double> prob;
    if (probabilities != nullptr) prob = std::span<const double>(probabilities, edge_count);
    *out = new influmax_graph{influmax::Graph::from_edges(node_count, src, dst, prob)};
  });
}

void influmax_graph_free(influmax_graph* graph) { delete graph; }

size_t influmax_graph_node_count(const influmax_graph* graph) {
  return graph ? graph->graph.node_count() : 0;
}

size_t influmax_graph_edge_count(const influmax_graph* graph) {
  return graph ? graph->graph.edge_count() : 0;
}

int influmax_graph_has_probabilities(const influmax_graph* graph) {
  return graph && graph->graph.has_probabilities() ? 1 : 0;
}

influmax_status influmax_graph_in_degree(const influmax_graph* graph, uint32_t node, size_t* out) {
  return guarded([&] {
    require(graph != nullptr && out != nullptr, "graph and out must not be null");
    *out = graph->graph.in_degree(node);
  });
}

influmax_status influmax_graph_node_label(const influmax_graph* graph, uint32_t node, const char** out) {
  return guarded([&] {
    require(graph != nullptr && out != nullptr, "graph and out must not be null");
    *out = graph->graph.label(node).c_str();
  });
}

influmax_status influmax_graph_find_node(const influmax_graph* graph, const char* label, uint32_t* out) {
  return guarded([&] {
    require(graph != nullptr && label != nullptr && out != nullptr, "arguments must not be null");
    auto id = graph->graph.find(label);
    if (!id) throw influmax::Error(influmax::ErrorCode::kOutOfRange, std::string("unknown node '") + label + "'");
    *out = *id;
  });
}

influmax_status influmax_graph_in_neighbors(const influmax_graph* graph, uint32_t node, uint32_t* out) {
  return guarded([&] {
    require(graph != nullptr && out != nullptr, "graph and out must not be null");
    graph->graph.in_degree(node);  // range check
    auto sources = graph->graph.in_neighbors(node);
    std::copy(sources.begin(), sources.end(), out);
  });
}

influmax_status influmax_model_create(const influmax_graph* graph, influmax_model_kind kind,
                                      uint64_t seed, influmax_model** out) {
  return guarded([&] {
    require(graph != nullptr && out != nullptr, "graph and out must not be null");
    const influmax::Graph& g = graph->graph;
    switch (kind) {
      case INFLUMAX_MODEL_IC:
        *out = new influmax_model{graph, influmax::explicit_cascade(g)};
        return;
      case INFLUMAX_MODEL_WC:
        if (g.has_probabilities()) {
          throw influmax::Error(influmax::ErrorCode::kValidation,
                                "weighted cascade derives probabilities; input must not carry them");
        }
        *out = new influmax_model{graph, influmax::assign_weighted_cascade(g)};
        return;
      case INFLUMAX_MODEL_LT: {
        if (g.has_probabilities()) {
          throw influmax::Error(influmax::ErrorCode::kValidation,
                                "linear threshold draws its own weights; input must not carry probabilities");
        }
        influmax::Rng rng = influmax::derive_stream(seed, 0x4c54, 0);
        *out = new influmax_model{graph, influmax::assign_lt_uniform(g, rng)};
        return;
      }
      case INFLUMAX_MODEL_TRIGGER: {
        if (!g.has_probabilities()) {
          throw influmax::Error(influmax::ErrorCode::kValidation,
                                "triggering model requires explicit per-edge probabilities");
        }
        auto dist = std::make_shared<influmax::IndependentTrigger>(
            std::vector<double>(g.in_probabilities().begin(), g.in_probabilities().end()));
        *out = new influmax_model{graph, influmax::custom_triggering(g, std::move(dist))};
        return;
      }
    }
    throw influmax::Error(influmax::ErrorCode::kInvalidArgument, "unknown model kind");
  });
}

influmax_status influmax_model_create_triggering(const influmax_graph* graph,
                                                 influmax_trigger_sampler sampler, void* user_data,
                                                 influmax_model** out) {
  return guarded([&] {
    require(graph != nullptr && sampler != nullptr && out != nullptr, "arguments must not be null");
    auto dist = std::make_shared<CallbackTrigger>(sampler, user_data);
    *out = new influmax_model{graph, influmax::custom_triggering(graph->graph, std::move(dist))};
  });
}

void influmax_model_free(influmax_model* model) { delete model; }

void influmax_tim_params_init(influmax_tim_params* params) {
  if (!params) return;
  *params = influmax_tim_params{};
  params->k = 1;
  params->epsilon = 0.1;
  params->ell = 1.0;
  params->epsilon_prime = 0.0;
  params->algorithm = INFLUMAX_ALGO_TIM_PLUS;
  params->seed = 0;
  params->threads = 1;
}

void influmax_greedy_params_init(influmax_greedy_params* params) {
  if (!params) return;
  *params = influmax_greedy_params{};
  params->k = 1;
  params->r = 10000;
  params->lazy = 0;
  params->threads = 1;
  params->time_budget_seconds = 0.0;
}

influmax_status influmax_run_tim(const influmax_graph* graph, const influmax_model* model,
                                 const influmax_tim_params* params, influmax_result** out) {
  return guarded([&] {
    check_model(graph, model);
    require(params != nullptr && out != nullptr, "params and out must not be null");
    influmax::TimParams p;
    p.k = params->k;
    p.epsilon = params->epsilon;
    p.ell = params->ell;
    if (params->epsilon_prime > 0.0) p.epsilon_prime = params->epsilon_prime;
    p.variant = params->algorithm == INFLUMAX_ALGO_TIM ? influmax::TimVariant::kTim
                                                       : influmax::TimVariant::kTimPlus;
    p.master_seed = params->seed;
    p.threads = params->threads == 0 ? 1 : params->threads;
    influmax::SeedResult r = influmax::run_tim(graph->graph, model->model, p);

    auto result = std::make_unique<influmax_result>();
    result->seeds.assign(r.seeds.begin(), r.seeds.end());
    auto& s = result->stats;
    s.estimated_spread = r.estimated_spread;
    s.covered_fraction = r.covered_fraction;
    s.kpt_star = r.trace.kpt_star;
    s.kpt_plus = r.trace.kpt_plus.value_or(r.trace.kpt_star);
    s.lambda = r.trace.lambda;
    s.lambda_prime = r.trace.lambda_prime;
    s.epsilon_prime = r.trace.epsilon_prime;
    s.ell_used = r.trace.ell_used;
    s.theta = r.trace.theta;
    s.theta_prime = r.trace.theta_prime;
    s.kpt_iterations = r.trace.iteration_reached;
    s.rr_sets_generated = r.rr_sets_generated;
    s.seconds_kpt_estimation = r.timings.kpt_estimation;
    s.seconds_refinement = r.timings.refinement;
    s.seconds_node_selection = r.timings.node_selection;
    s.seconds_total = r.timings.total;
    s.completed = 1;
    *out = result.release();
  });
}

influmax_status influmax_run_greedy(const influmax_graph* graph, const influmax_model* model,
                                    const influmax_greedy_params* params, influmax_result** out) {
  return guarded([&] {
    check_model(graph, model);
    require(params != nullptr && out != nullptr, "params and out must not be null");
    influmax::GreedyConfig config;
    config.r = params->r;
    config.lazy = params->lazy != 0;
    config.seed = params->seed;
    config.threads = params->threads == 0 ? 1 : params->threads;
    if (params->time_budget_seconds > 0.0) config.time_budget_seconds = params->time_budget_seconds;
    influmax::GreedyResult r = influmax::greedy_select(graph->graph, model->model, params->k, config);

    auto result = std::make_unique<influmax_result>();
    result->seeds.assign(r.seeds.begin(), r.seeds.end());
    auto& s = result->stats;
    s.estimated_spread = r.estimated_spread;
    s.seconds_total = r.seconds;
    s.seconds_node_selection = r.seconds;
    s.completed = r.completed ? 1 : 0;
    s.evaluations = r.evaluations;
    *out = result.release();
  });
}

void influmax_result_free(influmax_result* result) { delete result; }

size_t influmax_result_seed_count(const influmax_result* result) {
  return result ? result->seeds.size() : 0;
}

const uint32_t* influmax_result_seeds(const influmax_result* result) {
  return result ? result->seeds.data() : nullptr;
}

void influmax_result_get_stats(const influmax_result* result, influmax_result_stats* out) {
  if (result && out) *out = result->stats;
}

influmax_status influmax_simulate_spread(const influmax_graph* graph, const influmax_model* model,
                                         const uint32_t* seeds, size_t seed_count, uint64_t trials,
                                         uint64_t seed, uint32_t threads, double* mean,
                                         double* std_error) {
  return guarded([&] {
    check_model(graph, model);
    require(mean != nullptr && std_error != nullptr, "outputs must not be null");
    auto s = seed_vector(graph, seeds, seed_count);
    influmax::SamplingContext ctx{seed, threads == 0 ? 1u : threads};
    auto est = influmax::simulate_spread(graph->graph, model->model, s, trials, ctx);
    *mean = est.mean;
    *std_error = est.std_error;
  });
}

influmax_status influmax_exact_spread(const influmax_graph* graph, const influmax_model* model,
                                      const uint32_t* seeds, size_t seed_count, double* out) {
  return guarded([&] {
    check_model(graph, model);
    require(out != nullptr, "out must not be null");
    auto s = seed_vector(graph, seeds, seed_count);
    *out = influmax::exact_spread(graph->graph, model->model, s);
  });
}

influmax_status influmax_compute_lambda(uint64_t n, uint32_t k, double epsilon, double ell, double* out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    *out = influmax::compute_lambda(n, k, epsilon, ell);
  });
}

influmax_status influmax_required_r(uint64_t n, uint32_t k, double ell, double epsilon, double opt,
                                    double* out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    *out = influmax::required_r(n, k, ell, epsilon, opt);
  });
}

uint64_t influmax_peak_rss_bytes(void) {
  struct rusage usage;
  if (getrusage(RUSAGE_SELF, &usage) != 0) return 0;
  return static_cast<uint64_t>(usage.ru_maxrss) * 1024u;  // KiB on Linux
}

}  // extern "C"
