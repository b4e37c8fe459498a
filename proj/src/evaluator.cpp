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

#include "influmax/evaluator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>

namespace influmax {

ForwardSimulator::ForwardSimulator(const Graph& graph, const DiffusionModel& model)
    : graph_(graph),
      model_(model),
      forward_(graph.build_forward()),
      active_stamp_(graph.node_count(), 0),
      sampled_stamp_(model.is_cascade() ? 0 : graph.node_count(), 0),
      live_stamp_(model.is_cascade() ? 0 : graph.edge_count(), 0) {}

std::size_t ForwardSimulator::run_once(std::span<const NodeId> seeds, Rng& rng) {
  if (++stamp_ == 0) {
    std::fill(active_stamp_.begin(), active_stamp_.end(), 0);
    std::fill(sampled_stamp_.begin(), sampled_stamp_.end(), 0);
    std::fill(live_stamp_.begin(), live_stamp_.end(), 0);
    stamp_ = 1;
  }
  queue_.clear();
  for (NodeId s : seeds) {
    if (s >= graph_.node_count()) throw Error(ErrorCode::kOutOfRange, "seed " + std::to_string(s) + " out of range");
    if (active_stamp_[s] != stamp_) {
      active_stamp_[s] = stamp_;
      queue_.push_back(s);
    }
  }
  const bool cascade = model_.is_cascade();
  const auto p = model_.edge_probabilities();
  for (std::size_t head = 0; head < queue_.size(); ++head) {
    const NodeId u = queue_[head];
    for (std::size_t o = forward_.offsets[u]; o < forward_.offsets[u + 1]; ++o) {
      const NodeId v = forward_.targets[o];
      if (active_stamp_[v] == stamp_) continue;
      const std::size_t e = forward_.in_edge_of[o];
      bool fires;
      if (cascade) {
        fires = uniform01(rng) < p[e];
      } else {
        if (sampled_stamp_[v] != stamp_) {
          sampled_stamp_[v] = stamp_;
          slots_.clear();
          model_.sample_trigger_slots(graph_, v, rng, slots_);
          for (std::uint32_t s : slots_) live_stamp_[graph_.in_edge_begin(v) + s] = stamp_;
        }
        fires = live_stamp_[e] == stamp_;
      }
      if (fires) {
        active_stamp_[v] = stamp_;
        queue_.push_back(v);
      }
    }
  }
  return queue_.size();
}

SpreadEstimate simulate_spread(const Graph& graph, const DiffusionModel& model,
                               std::span<const NodeId> seeds, std::uint64_t trials,
                               const SamplingContext& ctx, std::uint64_t phase) {
  if (trials < 1) throw Error(ErrorCode::kInvalidArgument, "trials must be at least 1");
  for (NodeId s : seeds) {
    if (s >= graph.node_count()) throw Error(ErrorCode::kOutOfRange, "seed " + std::to_string(s) + " out of range");
  }
  const std::size_t chunks = (trials + kSamplingChunk - 1) / kSamplingChunk;
  // Integer sums keep the reduction exact and order-insensitive.
  std::vector<std::uint64_t> sums(chunks, 0);
  std::vector<std::uint64_t> squares(chunks, 0);
  for_each_chunk(trials, ctx.threads, [&](std::size_t c, std::uint64_t first, std::uint64_t last) {
    Rng rng = derive_stream(ctx.master_seed, phase, c);
    ForwardSimulator sim(graph, model);
    std::uint64_t s = 0;
    std::uint64_t sq = 0;
    for (std::uint64_t i = first; i < last; ++i) {
      const std::uint64_t x = sim.run_once(seeds, rng);
      s += x;
      sq += x * x;
    }
    sums[c] = s;
    squares[c] = sq;
  });
  std::uint64_t sum = 0;
  std::uint64_t sum_sq = 0;
  for (std::size_t c = 0; c < chunks; ++c) {
    sum += sums[c];
    sum_sq += squares[c];
  }
  SpreadEstimate est;
  est.trials = trials;
  const auto t = static_cast<double>(trials);
  est.mean = static_cast<double>(sum) / t;
  if (trials > 1) {
    const double var = std::max(0.0, (static_cast<double>(sum_sq) - static_cast<double>(sum) * est.mean) / (t - 1.0));
    est.std_error = std::sqrt(var / t);
  }
  return est;
}

ExactOracle::ExactOracle(const Graph& graph, const DiffusionModel& model)
    : n_(graph.node_count()), m_(graph.edge_count()) {
  if (n_ > kMaxNodes) throw Error(ErrorCode::kTooLarge, "exact oracle supports at most 64 nodes");
  in_degree_.resize(n_);
  std::vector<std::vector<TriggerOutcome>> per_node(n_);
  std::uint64_t total = 1;
  for (NodeId v = 0; v < n_; ++v) {
    in_degree_[v] = graph.in_degree(v);
    per_node[v] = model.trigger_outcomes(graph, v);
    if (per_node[v].empty()) throw Error(ErrorCode::kValidation, "trigger distribution has empty support");
    total *= per_node[v].size();
    if (total > kMaxRealizations) {
      throw Error(ErrorCode::kTooLarge, "instance has more than 2^20 trigger realizations");
    }
  }
  raw_realizations_ = total;

  std::map<std::vector<std::uint64_t>, double> merged;
  std::vector<std::size_t> choice(n_, 0);
  std::vector<std::uint64_t> out_mask(n_);
  std::vector<std::uint64_t> reach(n_);
  for (std::uint64_t r = 0; r < total; ++r) {
    double prob = 1.0;
    std::fill(out_mask.begin(), out_mask.end(), 0);
    for (NodeId v = 0; v < n_; ++v) {
      const TriggerOutcome& o = per_node[v][choice[v]];
      prob *= o.probability;
      const auto sources = graph.in_neighbors(v);
      for (std::uint32_t s : o.slots) out_mask[sources[s]] |= std::uint64_t{1} << v;
    }
    for (NodeId u = 0; u < n_; ++u) {
      std::uint64_t seen = std::uint64_t{1} << u;
      std::uint64_t frontier = seen;
      while (frontier) {
        std::uint64_t next = 0;
        for (std::uint64_t f = frontier; f; f &= f - 1) next |= out_mask[std::countr_zero(f)];
        frontier = next & ~seen;
        seen |= next;
      }
      reach[u] = seen;
    }
    merged[reach] += prob;

    // Mixed-radix increment.
    for (NodeId v = 0; v < n_; ++v) {
      if (++choice[v] < per_node[v].size()) break;
      choice[v] = 0;
    }
  }
  outcomes_.reserve(merged.size());
  for (auto& [r, p] : merged) outcomes_.push_back({p, r});
}

std::uint64_t ExactOracle::mask_of(std::span<const NodeId> seeds) const {
  std::uint64_t mask = 0;
  for (NodeId s : seeds) {
    if (s >= n_) throw Error(ErrorCode::kOutOfRange, "node " + std::to_string(s) + " out of range");
    mask |= std::uint64_t{1} << s;
  }
  return mask;
}

namespace {

std::uint64_t reach_of(const std::vector<std::uint64_t>& reach, std::uint64_t seed_mask) {
  std::uint64_t out = 0;
  for (std::uint64_t f = seed_mask; f; f &= f - 1) out |= reach[std::countr_zero(f)];
  return out;
}

}  // namespace

double ExactOracle::spread(std::span<const NodeId> seeds) const {
  const std::uint64_t mask = mask_of(seeds);
  double total = 0.0;
  for (const auto& o : outcomes_) total += o.probability * std::popcount(reach_of(o.reach, mask));
  return total;
}

double ExactOracle::activation_probability(std::span<const NodeId> seeds, NodeId v) const {
  if (v >= n_) throw Error(ErrorCode::kOutOfRange, "node " + std::to_string(v) + " out of range");
  const std::uint64_t mask = mask_of(seeds);
  double total = 0.0;
  for (const auto& o : outcomes_) {
    if ((reach_of(o.reach, mask) >> v) & 1u) total += o.probability;
  }
  return total;
}

double ExactOracle::expected_width() const {
  double total = 0.0;
  for (const auto& o : outcomes_) {
    double width_sum = 0.0;  // summed over all roots
    for (std::size_t u = 0; u < n_; ++u) {
      width_sum += static_cast<double>(in_degree_[u]) * std::popcount(o.reach[u]);
    }
    total += o.probability * width_sum;
  }
  return total / static_cast<double>(n_);
}

double ExactOracle::expected_kappa(std::uint32_t k) const {
  double total = 0.0;
  for (const auto& o : outcomes_) {
    double per_root = 0.0;
    for (std::size_t v = 0; v < n_; ++v) {
      std::uint64_t width = 0;
      for (std::size_t u = 0; u < n_; ++u) {
        if ((o.reach[u] >> v) & 1u) width += in_degree_[u];
      }
      per_root += kappa(width, m_, k);
    }
    total += o.probability * per_root;
  }
  return total / static_cast<double>(n_);
}

double ExactOracle::kpt_by_sampling(std::uint32_t k) const {
  if (m_ == 0) throw Error(ErrorCode::kInvalidArgument, "in-degree distribution undefined when m = 0");
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be at least 1");
  double tuples = std::pow(static_cast<double>(n_), static_cast<double>(k));
  if (tuples > 1e6) throw Error(ErrorCode::kTooLarge, "too many k-tuples to enumerate");

  std::map<std::uint64_t, double> spread_cache;
  auto spread_of_mask = [&](std::uint64_t mask) {
    auto it = spread_cache.find(mask);
    if (it != spread_cache.end()) return it->second;
    double total = 0.0;
    for (const auto& o : outcomes_) total += o.probability * std::popcount(reach_of(o.reach, mask));
    spread_cache.emplace(mask, total);
    return total;
  };

  double kpt = 0.0;
  std::function<void(std::uint32_t, double, std::uint64_t)> recurse =
      [&](std::uint32_t depth, double prob, std::uint64_t mask) {
        if (depth == k) {
          kpt += prob * spread_of_mask(mask);
          return;
        }
        for (std::size_t v = 0; v < n_; ++v) {
          if (in_degree_[v] == 0) continue;
          recurse(depth + 1, prob * static_cast<double>(in_degree_[v]) / static_cast<double>(m_),
                  mask | (std::uint64_t{1} << v));
        }
      };
  recurse(0, 1.0, 0);
  return kpt;
}

std::map<std::size_t, double> ExactOracle::rr_size_distribution(NodeId root) const {
  if (root >= n_) throw Error(ErrorCode::kOutOfRange, "node " + std::to_string(root) + " out of range");
  std::map<std::size_t, double> dist;
  for (const auto& o : outcomes_) {
    std::size_t size = 0;
    for (std::size_t u = 0; u < n_; ++u) size += (o.reach[u] >> root) & 1u;
    dist[size] += o.probability;
  }
  return dist;
}

double exact_spread(const Graph& graph, const DiffusionModel& model, std::span<const NodeId> seeds) {
  return ExactOracle(graph, model).spread(seeds);
}

ExactOracleResult exhaustive_opt(const Graph& graph, const DiffusionModel& model, std::uint32_t k) {
  return exhaustive_opt(ExactOracle(graph, model), k);
}

ExactOracleResult exhaustive_opt(const ExactOracle& oracle, std::uint32_t k) {
  const std::size_t n = oracle.node_count();
  if (k > n) throw Error(ErrorCode::kInvalidArgument, "k exceeds n");
  double combos = 1.0;
  for (std::uint32_t i = 0; i < k; ++i) combos = combos * static_cast<double>(n - i) / static_cast<double>(i + 1);
  if (combos > 1e4 + 0.5) throw Error(ErrorCode::kTooLarge, "more than 10^4 candidate seed sets");

  ExactOracleResult result;
  result.opt_value = -1.0;
  std::vector<NodeId> current(k);
  for (std::uint32_t i = 0; i < k; ++i) current[i] = i;
  while (true) {
    const double value = oracle.spread(current);
    result.exact_spread.emplace(current, value);
    if (value > result.opt_value) {
      result.opt_value = value;
      result.opt_set = current;
    }
    // Next combination in lexicographic order.
    std::int64_t i = static_cast<std::int64_t>(k) - 1;
    while (i >= 0 && current[i] == n - k + static_cast<std::size_t>(i)) --i;
    if (i < 0) break;
    ++current[i];
    for (std::size_t j = static_cast<std::size_t>(i) + 1; j < k; ++j) current[j] = current[j - 1] + 1;
  }
  result.ept_exact = oracle.expected_width();
  result.kpt_exact = static_cast<double>(n) * oracle.expected_kappa(k);
  return result;
}

}  // namespace influmax
