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

// Ground truth for spreads: forward Monte-Carlo simulation, and exact
// enumeration over every live-edge realization for tiny graphs.

#ifndef INFLUMAX_EVALUATOR_HPP_
#define INFLUMAX_EVALUATOR_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "influmax/graph.hpp"
#include "influmax/models.hpp"
#include "influmax/sampler.hpp"

namespace influmax {

struct SpreadEstimate {
  double mean = 0.0;
  std::uint64_t trials = 0;
  double std_error = 0.0;
};

// One forward diffusion at a time. Trigger sets are realized lazily: a node's
// trigger set is drawn the first time an active in-neighbor exposes it, and
// cascade edges are flipped when their source activates.
class ForwardSimulator {
 public:
  ForwardSimulator(const Graph& graph, const DiffusionModel& model);

  // Number of activated nodes in one diffusion from `seeds`.
  std::size_t run_once(std::span<const NodeId> seeds, Rng& rng);

 private:
  const Graph& graph_;
  const DiffusionModel& model_;
  ForwardAdjacency forward_;
  std::vector<std::uint32_t> active_stamp_;
  std::vector<std::uint32_t> sampled_stamp_;
  std::vector<std::uint32_t> live_stamp_;
  std::uint32_t stamp_ = 0;
  std::vector<NodeId> queue_;
  std::vector<std::uint32_t> slots_;
};

// Trials are split into chunks drawn from derive_stream(seed, phase, chunk).
SpreadEstimate simulate_spread(const Graph& graph, const DiffusionModel& model,
                               std::span<const NodeId> seeds, std::uint64_t trials,
                               const SamplingContext& ctx, std::uint64_t phase = 0);

// Enumerates every joint trigger realization (product of per-node trigger
// distributions) and records reachability per realization. Realizations with
// identical reachability are merged. Limits: n <= 64 and at most 2^20 raw
// realizations.
class ExactOracle {
 public:
  static constexpr std::size_t kMaxNodes = 64;
  static constexpr std::uint64_t kMaxRealizations = std::uint64_t{1} << 20;

  ExactOracle(const Graph& graph, const DiffusionModel& model);

  std::size_t node_count() const { return n_; }
  std::uint64_t realization_count() const { return raw_realizations_; }

  // E[I(S)].
  double spread(std::span<const NodeId> seeds) const;

  // Pr[S activates v] (equivalently, Pr[S meets the RR set of root v]).
  double activation_probability(std::span<const NodeId> seeds, NodeId v) const;

  // Expected width of a random RR set.
  double expected_width() const;

  // E[kappa(R)] over random RR sets for seed-set size k.
  double expected_kappa(std::uint32_t k) const;

  // Mean spread of k in-degree-proportional node samples (duplicates
  // dropped), computed by enumerating all k-tuples. Requires m >= 1 and
  // n^k <= 10^6.
  double kpt_by_sampling(std::uint32_t k) const;

  // Distribution of |R| for RR sets rooted at `root`: size -> probability.
  std::map<std::size_t, double> rr_size_distribution(NodeId root) const;

 private:
  struct Outcome {
    double probability;
    std::vector<std::uint64_t> reach;  // reach[u]: nodes reachable from u
  };

  std::uint64_t mask_of(std::span<const NodeId> seeds) const;

  std::size_t n_;
  std::uint64_t m_;
  std::vector<std::uint64_t> in_degree_;
  std::uint64_t raw_realizations_ = 0;
  std::vector<Outcome> outcomes_;
};

struct ExactOracleResult {
  double opt_value = 0.0;
  std::vector<NodeId> opt_set;
  std::map<std::vector<NodeId>, double> exact_spread;  // every size-k set
  double kpt_exact = 0.0;  // n * E[kappa(R)]; 0 when m == 0
  double ept_exact = 0.0;
};

double exact_spread(const Graph& graph, const DiffusionModel& model, std::span<const NodeId> seeds);

// Exhaustive search over all size-k sets; C(n, k) <= 10^4. Ties keep the
// lexicographically first set.
ExactOracleResult exhaustive_opt(const Graph& graph, const DiffusionModel& model, std::uint32_t k);
ExactOracleResult exhaustive_opt(const ExactOracle& oracle, std::uint32_t k);

}  // namespace influmax

#endif  // INFLUMAX_EVALUATOR_HPP_
