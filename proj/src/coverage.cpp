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

#include "influmax/coverage.hpp"

#include <algorithm>
#include <limits>

namespace influmax {

RRCollection::RRCollection(std::size_t node_count) : node_count_(node_count) {}

RRCollection::RRCollection(std::size_t node_count, RRBatch batch)
    : node_count_(node_count), offsets_(std::move(batch.offsets)), members_(std::move(batch.members)) {
  for (NodeId u : members_) {
    if (u >= node_count_) throw Error(ErrorCode::kOutOfRange, "set member outside [0, n)");
  }
}

void RRCollection::add(std::span<const NodeId> members) {
  for (NodeId u : members) {
    if (u >= node_count_) throw Error(ErrorCode::kOutOfRange, "set member " + std::to_string(u) + " outside [0, n)");
  }
  std::vector<NodeId> unique(members.begin(), members.end());
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  members_.insert(members_.end(), unique.begin(), unique.end());
  offsets_.push_back(members_.size());
  index_ready_ = false;
}

void RRCollection::ensure_index() const {
  if (index_ready_) return;
  if (size() > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCode::kTooLarge, "collection holds more than 2^32 sets");
  }
  index_offsets_.assign(node_count_ + 1, 0);
  for (NodeId u : members_) ++index_offsets_[u + 1];
  for (std::size_t u = 0; u < node_count_; ++u) index_offsets_[u + 1] += index_offsets_[u];
  index_sets_.resize(members_.size());
  std::vector<std::uint64_t> cursor(index_offsets_.begin(), index_offsets_.end() - 1);
  for (std::size_t j = 0; j < size(); ++j) {
    for (std::uint64_t i = offsets_[j]; i < offsets_[j + 1]; ++i) {
      index_sets_[cursor[members_[i]]++] = static_cast<std::uint32_t>(j);
    }
  }
  index_ready_ = true;
}

std::span<const std::uint32_t> RRCollection::sets_containing(NodeId u) const {
  if (u >= node_count_) throw Error(ErrorCode::kOutOfRange, "node " + std::to_string(u) + " out of range");
  ensure_index();
  return {index_sets_.data() + index_offsets_[u], index_offsets_[u + 1] - index_offsets_[u]};
}

std::uint64_t RRCollection::count_covered(std::span<const NodeId> nodes) const {
  std::vector<std::uint8_t> in_query(node_count_, 0);
  for (NodeId u : nodes) {
    if (u >= node_count_) throw Error(ErrorCode::kOutOfRange, "node " + std::to_string(u) + " out of range");
    in_query[u] = 1;
  }
  std::uint64_t hits = 0;
  for (std::size_t j = 0; j < size(); ++j) {
    for (NodeId u : set(j)) {
      if (in_query[u]) {
        ++hits;
        break;
      }
    }
  }
  return hits;
}

double RRCollection::fraction_covered(std::span<const NodeId> nodes) const {
  if (empty()) throw Error(ErrorCode::kInvalidArgument, "fraction of an empty collection is undefined");
  return static_cast<double>(count_covered(nodes)) / static_cast<double>(size());
}

namespace {

// Max-heap order: larger count first, then smaller id.
bool heap_less(const std::pair<std::uint64_t, NodeId>& a, const std::pair<std::uint64_t, NodeId>& b) {
  return a.first < b.first || (a.first == b.first && a.second > b.second);
}

}  // namespace

GreedyCoverage::GreedyCoverage(const RRCollection& collection)
    : collection_(collection),
      cover_count_(collection.node_count(), 0),
      covered_(collection.size(), 0),
      taken_(collection.node_count(), 0) {
  for (std::size_t j = 0; j < collection.size(); ++j) {
    for (NodeId u : collection.set(j)) {
      ++cover_count_[u];
      ++touches_;
    }
  }
  heap_.reserve(collection.node_count());
  for (std::size_t u = 0; u < collection.node_count(); ++u) {
    heap_.emplace_back(cover_count_[u], static_cast<NodeId>(u));
  }
  std::make_heap(heap_.begin(), heap_.end(), heap_less);
}

NodeId GreedyCoverage::pick_next() {
  while (!heap_.empty()) {
    std::pop_heap(heap_.begin(), heap_.end(), heap_less);
    auto [count, u] = heap_.back();
    heap_.pop_back();
    if (taken_[u]) continue;
    if (count != cover_count_[u]) {
      heap_.emplace_back(cover_count_[u], u);
      std::push_heap(heap_.begin(), heap_.end(), heap_less);
      continue;
    }
    taken_[u] = 1;
    ++picked_count_;
    for (std::uint32_t j : collection_.sets_containing(u)) {
      ++touches_;
      if (covered_[j]) continue;
      covered_[j] = 1;
      ++covered_total_;
      for (NodeId w : collection_.set(j)) {
        --cover_count_[w];
        ++touches_;
      }
    }
    return u;
  }
  throw Error(ErrorCode::kInvalidArgument, "every node has already been picked");
}

CoverageResult greedy_max_coverage(const RRCollection& collection, std::uint32_t k) {
  GreedyCoverage state(collection);
  CoverageResult result;
  const std::size_t picks = std::min<std::size_t>(k, collection.node_count());
  result.seeds.reserve(picks);
  for (std::size_t i = 0; i < picks; ++i) result.seeds.push_back(state.pick_next());
  result.covered = state.covered_sets();
  return result;
}

}  // namespace influmax
