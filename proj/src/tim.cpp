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

#include "influmax/tim.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>

namespace influmax {

namespace {

// Stream families; KPT iteration i uses kPhaseKpt + i.
constexpr std::uint64_t kPhaseKpt = 0x100;
constexpr std::uint64_t kPhaseRefine = 0x200;
constexpr std::uint64_t kPhaseSelection = 0x300;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::uint64_t ceil_count(double x) {
  if (!(x < 1.8e19)) throw Error(ErrorCode::kTooLarge, "required sample count overflows");
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(x)));
}

}  // namespace

double log_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) throw Error(ErrorCode::kInvalidArgument, "k exceeds n in binomial coefficient");
  if (k == 0 || k == n) return 0.0;
  const auto nd = static_cast<double>(n);
  const auto kd = static_cast<double>(k);
  return std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0);
}

double compute_lambda(std::uint64_t n, std::uint32_t k, double epsilon, double ell) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "lambda requires n >= 2");
  if (k < 1 || k > n) throw Error(ErrorCode::kInvalidArgument, "lambda requires 1 <= k <= n");
  if (!(epsilon > 0.0)) throw Error(ErrorCode::kInvalidArgument, "epsilon must be positive");
  if (!(ell > 0.0)) throw Error(ErrorCode::kInvalidArgument, "ell must be positive");
  const double log_n = std::log(static_cast<double>(n));
  return (8.0 + 2.0 * epsilon) * static_cast<double>(n) *
         (ell * log_n + log_binomial(n, k) + std::log(2.0)) / (epsilon * epsilon);
}

double compute_lambda_prime(std::uint64_t n, double ell, double epsilon_prime) {
  if (!(epsilon_prime > 0.0)) throw Error(ErrorCode::kInvalidArgument, "epsilon' must be positive");
  const auto nd = static_cast<double>(n);
  return (2.0 + epsilon_prime) * ell * nd * std::log(nd) / (epsilon_prime * epsilon_prime);
}

std::uint32_t kpt_iteration_count(std::uint64_t n) {
  if (n < 4) return 0;
  return static_cast<std::uint32_t>(std::bit_width(n) - 1) - 1;
}

std::uint64_t kpt_iteration_sets(std::uint64_t n, double ell, std::uint32_t i) {
  const auto nd = static_cast<double>(n);
  const double base = 6.0 * ell * std::log(nd) + 6.0 * std::log(std::log2(nd));
  return ceil_count(std::ldexp(base, static_cast<int>(i)));
}

double default_epsilon_prime(std::uint32_t k, double epsilon, double ell) {
  const double heuristic = 5.0 * std::cbrt(ell * epsilon * epsilon / (static_cast<double>(k) + ell));
  return std::max(heuristic, epsilon / std::sqrt(static_cast<double>(k)));
}

double inflate_ell(double ell, std::uint64_t n, TimVariant variant) {
  if (n < 2) return ell;
  const double failure_terms = variant == TimVariant::kTim ? 2.0 : 3.0;
  return ell * (1.0 + std::log(failure_terms) / std::log(static_cast<double>(n)));
}

KptEstimate kpt_estimation(const Graph& graph, const DiffusionModel& model, std::uint32_t k,
                           double ell, const SamplingContext& ctx) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be at least 1");
  const std::uint64_t n = graph.node_count();
  const std::uint64_t m = graph.edge_count();
  KptEstimate est{1.0, RRCollection(n), {}, false, 0};
  const std::uint32_t rounds = kpt_iteration_count(n);
  for (std::uint32_t i = 1; i <= rounds; ++i) {
    const std::uint64_t c_i = kpt_iteration_sets(n, ell, i);
    RRBatch batch = generate_rr_batch(graph, model, c_i, ctx, kPhaseKpt + i);
    est.rr_sets_generated += c_i;
    double sum = 0.0;
    for (std::uint64_t w : batch.widths) sum += kappa(w, m, k);
    est.iterations.push_back({i, c_i, sum});
    est.last_iteration = RRCollection(n, std::move(batch));
    if (sum / static_cast<double>(c_i) > std::ldexp(1.0, -static_cast<int>(i))) {
      est.kpt_star = std::max(1.0, static_cast<double>(n) * sum / (2.0 * static_cast<double>(c_i)));
      est.stopped_early = true;
      break;
    }
  }
  return est;
}

RefineResult refine_kpt(const Graph& graph, const DiffusionModel& model, std::uint32_t k,
                        double ell, double kpt_star, const RRCollection& last_iteration,
                        double epsilon_prime, const SamplingContext& ctx) {
  if (!(kpt_star >= 1.0)) throw Error(ErrorCode::kInvalidArgument, "KPT* must be at least 1");
  RefineResult out;
  out.kpt_plus = kpt_star;
  if (last_iteration.empty()) return out;

  const std::uint64_t n = graph.node_count();
  out.probe_seeds = greedy_max_coverage(last_iteration, k).seeds;
  out.lambda_prime = compute_lambda_prime(n, ell, epsilon_prime);
  out.theta_prime = ceil_count(out.lambda_prime / kpt_star);

  std::vector<std::uint8_t> in_probe(n, 0);
  for (NodeId u : out.probe_seeds) in_probe[u] = 1;
  const std::size_t chunks = (out.theta_prime + kSamplingChunk - 1) / kSamplingChunk;
  std::vector<std::uint64_t> hits(chunks, 0);
  for_each_chunk(out.theta_prime, ctx.threads, [&](std::size_t c, std::uint64_t first, std::uint64_t last) {
    Rng rng = derive_stream(ctx.master_seed, kPhaseRefine, c);
    RRSampler sampler(graph, model);
    std::vector<NodeId> members;
    std::uint64_t local = 0;
    for (std::uint64_t i = first; i < last; ++i) {
      sampler.generate_into(sampler.draw_root(rng), rng, members);
      for (NodeId u : members) {
        if (in_probe[u]) {
          ++local;
          break;
        }
      }
    }
    hits[c] = local;
  });
  std::uint64_t total_hits = 0;
  for (std::uint64_t h : hits) total_hits += h;

  out.covered_fraction = static_cast<double>(total_hits) / static_cast<double>(out.theta_prime);
  out.kpt_prime = out.covered_fraction * static_cast<double>(n) / (1.0 + epsilon_prime);
  out.kpt_plus = std::max(out.kpt_prime, kpt_star);
  return out;
}

SeedResult select_from_collection(const RRCollection& collection, std::uint32_t k) {
  if (collection.empty()) throw Error(ErrorCode::kInvalidArgument, "cannot select from an empty collection");
  CoverageResult cover = greedy_max_coverage(collection, k);
  SeedResult result;
  result.seeds = std::move(cover.seeds);
  result.covered_fraction = static_cast<double>(cover.covered) / static_cast<double>(collection.size());
  result.estimated_spread = result.covered_fraction * static_cast<double>(collection.node_count());
  result.trace.theta = collection.size();
  return result;
}

SeedResult node_selection(const Graph& graph, const DiffusionModel& model, std::uint32_t k,
                          std::uint64_t theta, const SamplingContext& ctx) {
  if (theta < 1) throw Error(ErrorCode::kInvalidArgument, "theta must be at least 1");
  const auto start = Clock::now();
  RRCollection collection(graph.node_count(),
                          generate_rr_batch(graph, model, theta, ctx, kPhaseSelection));
  SeedResult result = select_from_collection(collection, k);
  result.rr_sets_generated = theta;
  result.timings.node_selection = seconds_since(start);
  return result;
}

SeedResult run_tim(const Graph& graph, const DiffusionModel& model, const TimParams& params) {
  const std::uint64_t n = graph.node_count();
  if (params.k < 1 || params.k > n) throw Error(ErrorCode::kInvalidArgument, "k must satisfy 1 <= k <= n");
  if (!(params.epsilon > 0.0 && params.epsilon <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must lie in (0, 1]");
  }
  if (!(params.ell >= 0.5)) throw Error(ErrorCode::kInvalidArgument, "ell must be at least 0.5");
  if (params.epsilon_prime && !(*params.epsilon_prime > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon' must be positive");
  }

  const auto start = Clock::now();
  const SamplingContext ctx{params.master_seed, std::max(1u, params.threads)};

  if (n == 1) {
    // A single node is its own optimum; one RR set keeps the result shape.
    SeedResult result = node_selection(graph, model, params.k, 1, ctx);
    result.trace.ell_used = params.ell;
    result.trace.theta = 1;
    result.timings.total = seconds_since(start);
    return result;
  }

  const double ell = inflate_ell(params.ell, n, params.variant);
  EstimationTrace trace;
  trace.ell_used = ell;
  trace.lambda = compute_lambda(n, params.k, params.epsilon, ell);

  PhaseTimings timings;
  auto phase_start = Clock::now();
  KptEstimate est = kpt_estimation(graph, model, params.k, ell, ctx);
  timings.kpt_estimation = seconds_since(phase_start);
  trace.kpt_star = est.kpt_star;
  trace.iterations = est.iterations;
  trace.iteration_reached = est.iterations.empty() ? 0 : est.iterations.back().index;
  std::uint64_t generated = est.rr_sets_generated;

  double bound = est.kpt_star;
  if (params.variant == TimVariant::kTimPlus) {
    trace.epsilon_prime = params.epsilon_prime.value_or(default_epsilon_prime(params.k, params.epsilon, ell));
    phase_start = Clock::now();
    RefineResult refined = refine_kpt(graph, model, params.k, ell, est.kpt_star, est.last_iteration,
                                      trace.epsilon_prime, ctx);
    timings.refinement = seconds_since(phase_start);
    trace.kpt_plus = refined.kpt_plus;
    trace.kpt_prime = refined.kpt_prime;
    trace.lambda_prime = refined.lambda_prime;
    trace.theta_prime = refined.theta_prime;
    generated += refined.theta_prime;
    bound = refined.kpt_plus;
  }
  est.last_iteration = RRCollection(n);

  trace.theta = ceil_count(trace.lambda / bound);
  SeedResult result = node_selection(graph, model, params.k, trace.theta, ctx);
  timings.node_selection = result.timings.node_selection;
  result.rr_sets_generated = generated + trace.theta;
  result.trace = std::move(trace);
  timings.total = seconds_since(start);
  result.timings = timings;
  return result;
}

}  // namespace influmax
