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

// RR-set collections and greedy maximum coverage over them.

#ifndef INFLUMAX_COVERAGE_HPP_
#define INFLUMAX_COVERAGE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "influmax/common.hpp"
#include "influmax/sampler.hpp"

namespace influmax {

// A bag of node sets over [0, node_count) with an inverted node -> set index.
// The index is rebuilt lazily after mutation.
class RRCollection {
 public:
  explicit RRCollection(std::size_t node_count);
  RRCollection(std::size_t node_count, RRBatch batch);

  void add(std::span<const NodeId> members);
  void add(const RRSet& set) { add(set.members); }

  std::size_t node_count() const { return node_count_; }
  std::size_t size() const { return offsets_.size() - 1; }
  bool empty() const { return size() == 0; }
  std::uint64_t total_members() const { return members_.size(); }

  std::span<const NodeId> set(std::size_t j) const {
    return {members_.data() + offsets_[j], offsets_[j + 1] - offsets_[j]};
  }

  // Indices of the sets containing u, ascending.
  std::span<const std::uint32_t> sets_containing(NodeId u) const;

  // Number of sets that intersect `nodes`.
  std::uint64_t count_covered(std::span<const NodeId> nodes) const;

  // count_covered / size. Throws kInvalidArgument on an empty collection.
  double fraction_covered(std::span<const NodeId> nodes) const;

 private:
  void ensure_index() const;

  std::size_t node_count_;
  std::vector<std::uint64_t> offsets_{0};
  std::vector<NodeId> members_;
  mutable bool index_ready_ = false;
  mutable std::vector<std::uint64_t> index_offsets_;
  mutable std::vector<std::uint32_t> index_sets_;
};

// Incremental greedy max-coverage state. Each pick takes the node with the
// largest number of still-uncovered sets, smallest id on ties, then marks
// those sets covered. Counts only decrease, so a lazily refreshed max-heap
// returns exactly the eager argmax.
class GreedyCoverage {
 public:
  explicit GreedyCoverage(const RRCollection& collection);

  // Throws kInvalidArgument once every node has been picked.
  NodeId pick_next();

  std::uint64_t cover_count(NodeId u) const { return cover_count_[u]; }
  bool covered(std::size_t j) const { return covered_[j] != 0; }
  std::uint64_t covered_sets() const { return covered_total_; }
  std::size_t picked() const { return picked_count_; }

  // Number of (node, set) incidences visited so far, including the initial
  // counting pass.
  std::uint64_t incidence_touches() const { return touches_; }

 private:
  const RRCollection& collection_;
  std::vector<std::uint64_t> cover_count_;
  std::vector<std::uint8_t> covered_;
  std::vector<std::uint8_t> taken_;
  std::vector<std::pair<std::uint64_t, NodeId>> heap_;
  std::uint64_t covered_total_ = 0;
  std::size_t picked_count_ = 0;
  std::uint64_t touches_ = 0;
};

struct CoverageResult {
  std::vector<NodeId> seeds;  // pick order
  std::uint64_t covered = 0;
};

// Exactly min(k, node_count) picks.
CoverageResult greedy_max_coverage(const RRCollection& collection, std::uint32_t k);

}  // namespace influmax

#endif  // INFLUMAX_COVERAGE_HPP_
