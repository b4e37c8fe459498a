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

#include "influmax/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace influmax {

std::uint64_t rr_width(const Graph& graph, std::span<const NodeId> members) {
  std::uint64_t width = 0;
  for (NodeId v : members) width += graph.in_degree(v);
  return width;
}

double kappa(std::uint64_t width, std::uint64_t m, std::uint32_t k) {
  if (m == 0 || width == 0) return 0.0;
  if (width >= m) return 1.0;
  const double x = static_cast<double>(width) / static_cast<double>(m);
  // 1 - (1 - x)^k without cancellation for tiny x.
  return -std::expm1(static_cast<double>(k) * std::log1p(-x));
}

RRSampler::RRSampler(const Graph& graph, const DiffusionModel& model)
    : graph_(graph), model_(model), visit_stamp_(graph.node_count(), 0) {}

NodeId RRSampler::draw_root(Rng& rng) const {
  return static_cast<NodeId>(uniform01(rng) * static_cast<double>(graph_.node_count()));
}

RRSet RRSampler::generate(Rng& rng) { return generate_from(draw_root(rng), rng); }

RRSet RRSampler::generate_from(NodeId root, Rng& rng) {
  if (root >= graph_.node_count()) {
    throw Error(ErrorCode::kOutOfRange, "root " + std::to_string(root) + " out of range");
  }
  RRSet set;
  set.root = root;
  set.width = generate_into(root, rng, set.members);
  return set;
}

std::uint64_t RRSampler::generate_into(NodeId root, Rng& rng, std::vector<NodeId>& members) {
  if (++stamp_ == 0) {
    std::fill(visit_stamp_.begin(), visit_stamp_.end(), 0);
    stamp_ = 1;
  }
  const auto offsets = graph_.in_offsets();
  const auto sources = graph_.in_sources();
  const auto degrees = graph_.in_degrees_unchecked();

  members.clear();
  members.push_back(root);
  visit_stamp_[root] = stamp_;
  std::uint64_t width = 0;

  // `members` doubles as the FIFO queue: everything before `head` is done.
  if (model_.is_cascade()) {
    const auto p = model_.edge_probabilities();
    for (std::size_t head = 0; head < members.size(); ++head) {
      const NodeId v = members[head];
      width += degrees[v];
      for (std::size_t e = offsets[v]; e < offsets[v + 1]; ++e) {
        const NodeId u = sources[e];
        if (visit_stamp_[u] == stamp_) continue;
        if (uniform01(rng) < p[e]) {
          visit_stamp_[u] = stamp_;
          members.push_back(u);
        }
      }
    }
  } else if (model_.kind() == ModelKind::kLinearThreshold) {
    for (std::size_t head = 0; head < members.size(); ++head) {
      const NodeId v = members[head];
      width += degrees[v];
      if (offsets[v] == offsets[v + 1]) continue;
      const NodeId u = sources[offsets[v] + model_.pick_lt_slot(graph_, v, uniform01(rng))];
      if (visit_stamp_[u] != stamp_) {
        visit_stamp_[u] = stamp_;
        members.push_back(u);
      }
    }
  } else {
    for (std::size_t head = 0; head < members.size(); ++head) {
      const NodeId v = members[head];
      width += degrees[v];
      slots_.clear();
      model_.sample_trigger_slots(graph_, v, rng, slots_);
      for (std::uint32_t s : slots_) {
        const NodeId u = sources[offsets[v] + s];
        if (visit_stamp_[u] != stamp_) {
          visit_stamp_[u] = stamp_;
          members.push_back(u);
        }
      }
    }
  }
  return width;
}

void for_each_chunk(std::uint64_t count, unsigned threads,
                    const std::function<void(std::size_t, std::uint64_t, std::uint64_t)>& work) {
  const std::size_t chunks = static_cast<std::size_t>((count + kSamplingChunk - 1) / kSamplingChunk);
  auto run_chunk = [&](std::size_t c) {
    const std::uint64_t first = static_cast<std::uint64_t>(c) * kSamplingChunk;
    work(c, first, std::min<std::uint64_t>(count, first + kSamplingChunk));
  };
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), chunks));
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        for (std::size_t c = next++; c < chunks; c = next++) run_chunk(c);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = chunks;
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

void RRBatch::append(const RRBatch& other) {
  const std::uint64_t base = members.size();
  members.insert(members.end(), other.members.begin(), other.members.end());
  for (std::size_t j = 1; j < other.offsets.size(); ++j) offsets.push_back(base + other.offsets[j]);
  roots.insert(roots.end(), other.roots.begin(), other.roots.end());
  widths.insert(widths.end(), other.widths.begin(), other.widths.end());
}

RRBatch generate_rr_batch(const Graph& graph, const DiffusionModel& model, std::uint64_t count,
                          const SamplingContext& ctx, std::uint64_t phase) {
  const std::size_t chunks = static_cast<std::size_t>((count + kSamplingChunk - 1) / kSamplingChunk);
  std::vector<RRBatch> parts(chunks);
  for_each_chunk(count, ctx.threads, [&](std::size_t c, std::uint64_t first, std::uint64_t last) {
    Rng rng = derive_stream(ctx.master_seed, phase, c);
    RRSampler sampler(graph, model);
    RRBatch& part = parts[c];
    std::vector<NodeId> scratch;
    for (std::uint64_t i = first; i < last; ++i) {
      const NodeId root = sampler.draw_root(rng);
      const std::uint64_t width = sampler.generate_into(root, rng, scratch);
      part.members.insert(part.members.end(), scratch.begin(), scratch.end());
      part.offsets.push_back(part.members.size());
      part.roots.push_back(root);
      part.widths.push_back(width);
    }
  });
  if (chunks == 1) return std::move(parts.front());
  RRBatch out;
  std::size_t total = 0;
  for (const auto& p : parts) total += p.members.size();
  out.members.reserve(total);
  out.offsets.reserve(count + 1);
  for (const auto& p : parts) out.append(p);
  return out;
}

}  // namespace influmax
