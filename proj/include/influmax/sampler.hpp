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

// Reverse-reachable set sampling.

#ifndef INFLUMAX_SAMPLER_HPP_
#define INFLUMAX_SAMPLER_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "influmax/common.hpp"
#include "influmax/graph.hpp"
#include "influmax/models.hpp"

namespace influmax {

struct RRSet {
  NodeId root = 0;
  std::vector<NodeId> members;  // BFS order, root first
  std::uint64_t width = 0;      // sum of in-degrees of members
};

// Sum of in-degrees of `members`.
std::uint64_t rr_width(const Graph& graph, std::span<const NodeId> members);

// 1 - (1 - width/m)^k, exact at the boundaries; 0 when m == 0.
double kappa(std::uint64_t width, std::uint64_t m, std::uint32_t k);

// Randomized reverse BFS. Holds scratch buffers, so one instance per thread.
class RRSampler {
 public:
  RRSampler(const Graph& graph, const DiffusionModel& model);

  // Root drawn uniformly from [0, n).
  RRSet generate(Rng& rng);
  RRSet generate_from(NodeId root, Rng& rng);

  // Allocation-free variant: overwrites `members`, returns the width.
  std::uint64_t generate_into(NodeId root, Rng& rng, std::vector<NodeId>& members);

  NodeId draw_root(Rng& rng) const;

 private:
  const Graph& graph_;
  const DiffusionModel& model_;
  std::vector<std::uint32_t> visit_stamp_;
  std::uint32_t stamp_ = 0;
  std::vector<std::uint32_t> slots_;
};

// Identifies an independent sampling phase and how widely to fan it out.
struct SamplingContext {
  std::uint64_t master_seed = 0;
  unsigned threads = 1;
};

inline constexpr std::size_t kSamplingChunk = 1024;

// Runs `work(chunk_index, first, last)` over [0, count) split into chunks of
// kSamplingChunk items, on up to `threads` workers. Chunk i always covers the
// same items, so per-chunk results merged in chunk order are independent of
// the thread count.
void for_each_chunk(std::uint64_t count, unsigned threads,
                    const std::function<void(std::size_t, std::uint64_t, std::uint64_t)>& work);

// Flat storage for many RR sets.
struct RRBatch {
  std::vector<std::uint64_t> offsets{0};
  std::vector<NodeId> members;
  std::vector<NodeId> roots;
  std::vector<std::uint64_t> widths;

  std::size_t size() const { return roots.size(); }
  std::span<const NodeId> set(std::size_t j) const {
    return {members.data() + offsets[j], offsets[j + 1] - offsets[j]};
  }
  void append(const RRBatch& other);
};

// Generates `count` RR sets; chunk c draws from derive_stream(seed, phase, c).
RRBatch generate_rr_batch(const Graph& graph, const DiffusionModel& model, std::uint64_t count,
                          const SamplingContext& ctx, std::uint64_t phase);

}  // namespace influmax

#endif  // INFLUMAX_SAMPLER_HPP_
