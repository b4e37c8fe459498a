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

// Two-phase influence maximization (TIM and TIM+).
//
// Phase one estimates a lower bound on the optimum spread from RR-set widths
// (kpt_estimation), optionally tightened by a greedy probe (refine_kpt).
// Phase two draws theta = ceil(lambda / bound) fresh RR sets and runs greedy
// maximum coverage on them (node_selection). All counts are rounded up.
//
// Each sampling phase uses its own stream family derived from the master
// seed, so no RR set is shared between phases except the final estimation
// round that refine_kpt reuses.

#ifndef INFLUMAX_TIM_HPP_
#define INFLUMAX_TIM_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "influmax/coverage.hpp"
#include "influmax/graph.hpp"
#include "influmax/models.hpp"
#include "influmax/sampler.hpp"

namespace influmax {

enum class TimVariant { kTim, kTimPlus };

struct TimParams {
  std::uint32_t k = 1;
  double epsilon = 0.1;
  double ell = 1.0;
  // TIM+ only. Defaults to default_epsilon_prime(); an explicit value is used
  // verbatim.
  std::optional<double> epsilon_prime;
  TimVariant variant = TimVariant::kTimPlus;
  std::uint64_t master_seed = 0;
  unsigned threads = 1;
};

struct KptIteration {
  std::uint32_t index = 0;       // i, starting at 1
  std::uint64_t sets = 0;        // c_i
  double kappa_sum = 0.0;
};

struct KptEstimate {
  double kpt_star = 1.0;
  // RR sets of the final iteration that ran (empty when none ran).
  RRCollection last_iteration;
  std::vector<KptIteration> iterations;
  bool stopped_early = false;  // false means the KPT* = 1 fallback
  std::uint64_t rr_sets_generated = 0;
};

struct RefineResult {
  double kpt_plus = 1.0;
  double kpt_prime = 0.0;
  double covered_fraction = 0.0;
  std::uint64_t theta_prime = 0;
  double lambda_prime = 0.0;
  std::vector<NodeId> probe_seeds;
};

struct EstimationTrace {
  double kpt_star = 1.0;
  std::optional<double> kpt_plus;
  double kpt_prime = 0.0;
  double lambda = 0.0;
  double lambda_prime = 0.0;
  double epsilon_prime = 0.0;
  double ell_used = 0.0;
  std::uint64_t theta = 0;
  std::uint64_t theta_prime = 0;
  std::uint32_t iteration_reached = 0;
  std::vector<KptIteration> iterations;
};

struct PhaseTimings {
  double kpt_estimation = 0.0;
  double refinement = 0.0;
  double node_selection = 0.0;
  double total = 0.0;
};

struct SeedResult {
  std::vector<NodeId> seeds;
  double covered_fraction = 0.0;
  double estimated_spread = 0.0;  // n * covered_fraction
  EstimationTrace trace;
  PhaseTimings timings;
  std::uint64_t rr_sets_generated = 0;
};

// ln C(n, k) via log-gamma.
double log_binomial(std::uint64_t n, std::uint64_t k);

// (8 + 2 eps) n (ell ln n + ln C(n,k) + ln 2) / eps^2. Requires n >= 2,
// 1 <= k <= n.
double compute_lambda(std::uint64_t n, std::uint32_t k, double epsilon, double ell);

// (2 + eps') ell n ln n / eps'^2.
double compute_lambda_prime(std::uint64_t n, double ell, double epsilon_prime);

// floor(log2 n) - 1, or 0 when that is negative.
std::uint32_t kpt_iteration_count(std::uint64_t n);

// ceil((6 ell ln n + 6 ln(log2 n)) * 2^i).
std::uint64_t kpt_iteration_sets(std::uint64_t n, double ell, std::uint32_t i);

// 5 * cbrt(ell eps^2 / (k + ell)), raised to at least eps / sqrt(k).
double default_epsilon_prime(std::uint32_t k, double epsilon, double ell);

// ell * (1 + ln 2 / ln n) for TIM, ell * (1 + ln 3 / ln n) for TIM+.
double inflate_ell(double ell, std::uint64_t n, TimVariant variant);

KptEstimate kpt_estimation(const Graph& graph, const DiffusionModel& model, std::uint32_t k,
                           double ell, const SamplingContext& ctx);

// Returns kpt_star unchanged when `last_iteration` is empty.
RefineResult refine_kpt(const Graph& graph, const DiffusionModel& model, std::uint32_t k,
                        double ell, double kpt_star, const RRCollection& last_iteration,
                        double epsilon_prime, const SamplingContext& ctx);

SeedResult node_selection(const Graph& graph, const DiffusionModel& model, std::uint32_t k,
                          std::uint64_t theta, const SamplingContext& ctx);

// Greedy selection over an already-built collection.
SeedResult select_from_collection(const RRCollection& collection, std::uint32_t k);

SeedResult run_tim(const Graph& graph, const DiffusionModel& model, const TimParams& params);

}  // namespace influmax

#endif  // INFLUMAX_TIM_HPP_
