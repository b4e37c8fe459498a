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

// Immutable directed graph stored in reverse (in-neighbor) CSR order.
//
// Edges are addressed by their position in the in-CSR arrays ("in-edge
// index"). The in-edges of v occupy [in_edge_begin(v), in_edge_end(v)), and
// per-edge model data everywhere in the library is laid out in that order.
// Parallel edges and self-loops are retained.

#ifndef INFLUMAX_GRAPH_HPP_
#define INFLUMAX_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "influmax/common.hpp"

namespace influmax {

enum class Directedness { kDirected, kUndirected };

enum class IdPolicy {
  // Arbitrary tokens, densely re-indexed in order of first appearance.
  kFirstAppearance,
  // Non-negative integer tokens used verbatim; n = max id + 1.
  kNumeric,
};

// Out-edge view built on demand for forward simulation.
struct ForwardAdjacency {
  std::vector<std::size_t> offsets;     // n + 1
  std::vector<NodeId> targets;          // m
  std::vector<std::size_t> in_edge_of;  // m, in-edge index of each out-edge

  std::span<const NodeId> out_neighbors(NodeId u) const {
    return {targets.data() + offsets[u], offsets[u + 1] - offsets[u]};
  }
};

class Graph {
 public:
  // Builds a graph from parallel edge arrays. `probabilities` is either empty
  // or has one entry in [0, 1] per edge. Labels default to decimal ids.
  static Graph from_edges(std::size_t node_count, std::span<const NodeId> sources,
                          std::span<const NodeId> targets,
                          std::span<const double> probabilities = {},
                          std::vector<std::string> labels = {});

  std::size_t node_count() const { return in_offsets_.size() - 1; }
  std::size_t edge_count() const { return in_sources_.size(); }

  // Checked; throws kOutOfRange.
  std::size_t in_degree(NodeId v) const;
  std::size_t out_degree(NodeId v) const;

  std::size_t in_edge_begin(NodeId v) const { return in_offsets_[v]; }
  std::size_t in_edge_end(NodeId v) const { return in_offsets_[v + 1]; }

  // Sources of the edges pointing to v, in in-edge order.
  std::span<const NodeId> in_neighbors(NodeId v) const {
    return {in_sources_.data() + in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]};
  }

  std::span<const std::size_t> in_offsets() const { return in_offsets_; }
  std::span<const NodeId> in_sources() const { return in_sources_; }
  std::span<const std::size_t> in_degrees_unchecked() const { return in_degree_; }

  bool has_probabilities() const { return !in_probabilities_.empty(); }
  // Per in-edge probabilities as read from the input; empty when absent.
  std::span<const double> in_probabilities() const { return in_probabilities_; }

  // Target of in-edge e (the node whose slice contains e).
  NodeId in_edge_target(std::size_t e) const;

  ForwardAdjacency build_forward() const;

  const std::string& label(NodeId v) const;
  std::optional<NodeId> find(std::string_view label) const;

  // In-edge index of the i-th edge as originally supplied.
  std::span<const std::size_t> input_order() const { return input_order_; }

 private:
  Graph() = default;

  std::vector<std::size_t> in_offsets_{0};
  std::vector<NodeId> in_sources_;
  std::vector<double> in_probabilities_;
  std::vector<std::size_t> in_degree_;
  std::vector<std::size_t> out_degree_;
  std::vector<std::size_t> input_order_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> label_index_;
};

// Reads "u v" or "u v p" lines; '#' starts a comment line. Throws kParse
// (with the line number) or kValidation.
Graph load_edge_list(std::istream& in, Directedness directedness = Directedness::kDirected,
                     IdPolicy id_policy = IdPolicy::kFirstAppearance);
Graph load_edge_list_file(const std::string& path,
                          Directedness directedness = Directedness::kDirected,
                          IdPolicy id_policy = IdPolicy::kFirstAppearance);

// Writes the edges in their original order with labels, so re-loading the
// output as a directed graph reproduces the same structure.
void write_edge_list(const Graph& graph, std::ostream& out);

}  // namespace influmax

#endif  // INFLUMAX_GRAPH_HPP_
