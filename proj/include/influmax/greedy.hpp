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

// Monte-Carlo greedy baseline, with optional CELF-style lazy evaluation.

#ifndef INFLUMAX_GREEDY_HPP_
#define INFLUMAX_GREEDY_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "influmax/graph.hpp"
#include "influmax/models.hpp"

namespace influmax {

struct GreedyConfig {
  std::uint64_t r = 10000;  // simulations per spread estimate
  bool lazy = false;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  // Stop early once this much wall time has elapsed; the result is then
  // marked incomplete.
  std::optional<double> time_budget_seconds;
};

struct GreedyResult {
  std::vector<NodeId> seeds;
  double estimated_spread = 0.0;  // estimate of the final seed set
  bool completed = true;
  std::uint64_t evaluations = 0;  // spread estimates computed
  double seconds = 0.0;
};

// k rounds of marginal-gain maximization. The estimate for candidate v in
// round t always uses the stream derive_stream(seed, t, v), so eager and lazy
// modes see the same numbers for the same (round, candidate) pair. Ties go to
// the smaller id.
GreedyResult greedy_select(const Graph& graph, const DiffusionModel& model, std::uint32_t k,
                           const GreedyConfig& config);

// Simulations per estimate sufficient for a (1 - 1/e - eps) guarantee with
// probability 1 - n^-ell:
//   (8k^2 + 2k eps) n ((ell + 1) ln n + ln k) / (eps^2 OPT).
double required_r(std::uint64_t n, std::uint32_t k, double ell, double epsilon, double opt);

}  // namespace influmax

#endif  // INFLUMAX_GREEDY_HPP_
