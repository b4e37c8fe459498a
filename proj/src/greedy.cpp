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

#include "influmax/greedy.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <queue>

#include "influmax/evaluator.hpp"
#include "influmax/sampler.hpp"

namespace influmax {

namespace {

using Clock = std::chrono::steady_clock;

struct LazyEntry {
  double gain;
  NodeId node;
  std::uint32_t round;  // round in which `gain` was computed
};

struct LazyOrder {
  bool operator()(const LazyEntry& a, const LazyEntry& b) const {
    return a.gain < b.gain || (a.gain == b.gain && a.node > b.node);
  }
};

class SpreadEstimator {
 public:
  SpreadEstimator(const Graph& graph, const DiffusionModel& model, const GreedyConfig& config)
      : graph_(graph), model_(model), config_(config) {}

  // Mean spread of seeds + {candidate}.
  double estimate(const std::vector<NodeId>& seeds, NodeId candidate, std::uint32_t round,
                  ForwardSimulator& sim) const {
    std::vector<NodeId> trial_set(seeds);
    trial_set.push_back(candidate);
    Rng rng = derive_stream(config_.seed, round, candidate);
    std::uint64_t total = 0;
    for (std::uint64_t i = 0; i < config_.r; ++i) total += sim.run_once(trial_set, rng);
    return static_cast<double>(total) / static_cast<double>(config_.r);
  }

 private:
  const Graph& graph_;
  const DiffusionModel& model_;
  const GreedyConfig& config_;
};

}  // namespace

GreedyResult greedy_select(const Graph& graph, const DiffusionModel& model, std::uint32_t k,
                           const GreedyConfig& config) {
  const std::size_t n = graph.node_count();
  if (k > n) throw Error(ErrorCode::kInvalidArgument, "k exceeds n");
  if (config.r < 1) throw Error(ErrorCode::kInvalidArgument, "r must be at least 1");

  const auto start = Clock::now();
  auto out_of_time = [&] {
    return config.time_budget_seconds &&
           std::chrono::duration<double>(Clock::now() - start).count() > *config.time_budget_seconds;
  };

  GreedyResult result;
  SpreadEstimator estimator(graph, model, config);
  std::vector<std::uint8_t> chosen(n, 0);
  double current = 0.0;
  std::atomic<bool> timed_out{false};
  std::atomic<std::uint64_t> evaluations{0};

  // Evaluates every unchosen candidate in `round`; returns per-node estimates.
  auto evaluate_all = [&](std::uint32_t round) {
    std::vector<double> values(n, -1.0);
    for_each_chunk(n, config.threads, [&](std::size_t, std::uint64_t first, std::uint64_t last) {
      ForwardSimulator sim(graph, model);
      for (std::uint64_t v = first; v < last; ++v) {
        if (chosen[v] || timed_out) continue;
        if (out_of_time()) {
          timed_out = true;
          continue;
        }
        values[v] = estimator.estimate(result.seeds, static_cast<NodeId>(v), round, sim);
        ++evaluations;
      }
    });
    return values;
  };

  auto finish = [&](bool completed) {
    result.completed = completed;
    result.estimated_spread = current;
    result.evaluations = evaluations;
    result.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return result;
  };

  if (k == 0) return finish(true);

  if (!config.lazy) {
    for (std::uint32_t round = 1; round <= k; ++round) {
      const std::vector<double> values = evaluate_all(round);
      if (timed_out) return finish(false);
      NodeId best = 0;
      double best_value = -1.0;
      for (std::size_t v = 0; v < n; ++v) {
        if (!chosen[v] && values[v] > best_value) {
          best_value = values[v];
          best = static_cast<NodeId>(v);
        }
      }
      chosen[best] = 1;
      result.seeds.push_back(best);
      current = best_value;
    }
    return finish(true);
  }

  std::priority_queue<LazyEntry, std::vector<LazyEntry>, LazyOrder> queue;
  {
    const std::vector<double> values = evaluate_all(1);
    if (timed_out) return finish(false);
    for (std::size_t v = 0; v < n; ++v) queue.push({values[v], static_cast<NodeId>(v), 1});
  }
  ForwardSimulator sim(graph, model);
  for (std::uint32_t round = 1; round <= k; ++round) {
    while (true) {
      LazyEntry top = queue.top();
      queue.pop();
      if (top.round == round) {
        chosen[top.node] = 1;
        result.seeds.push_back(top.node);
        current += top.gain;
        break;
      }
      if (out_of_time()) return finish(false);
      const double value = estimator.estimate(result.seeds, top.node, round, sim);
      ++evaluations;
      queue.push({value - current, top.node, round});
    }
  }
  return finish(true);
}

double required_r(std::uint64_t n, std::uint32_t k, double ell, double epsilon, double opt) {
  if (!(opt > 0.0)) throw Error(ErrorCode::kInvalidArgument, "OPT must be positive");
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be at least 1");
  if (!(epsilon > 0.0)) throw Error(ErrorCode::kInvalidArgument, "epsilon must be positive");
  const double kd = static_cast<double>(k);
  const double log_n = std::log(static_cast<double>(n));
  return (8.0 * kd * kd + 2.0 * kd * epsilon) * static_cast<double>(n) *
         ((ell + 1.0) * log_n + std::log(kd)) / (epsilon * epsilon * opt);
}

}  // namespace influmax
