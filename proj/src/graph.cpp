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

#include "influmax/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

namespace influmax {

namespace {

std::string at_line(std::size_t line) { return "line " + std::to_string(line) + ": "; }

// Splits on blanks; returns false if there are more than `max_tokens`.
bool split_tokens(std::string_view line, std::vector<std::string_view>& tokens,
                  std::size_t max_tokens) {
  tokens.clear();
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    if (pos >= line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t' && line[end] != '\r') ++end;
    if (tokens.size() == max_tokens) return false;
    tokens.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return true;
}

}  // namespace

Graph Graph::from_edges(std::size_t node_count, std::span<const NodeId> sources,
                        std::span<const NodeId> targets,
                        std::span<const double> probabilities,
                        std::vector<std::string> labels) {
  if (node_count == 0) throw Error(ErrorCode::kValidation, "graph must have at least one node");
  if (node_count > std::numeric_limits<NodeId>::max()) {
    throw Error(ErrorCode::kTooLarge, "node count exceeds 32-bit id space");
  }
  if (sources.size() != targets.size()) {
    throw Error(ErrorCode::kInvalidArgument, "source and target arrays differ in length");
  }
  if (!probabilities.empty() && probabilities.size() != sources.size()) {
    throw Error(ErrorCode::kInvalidArgument, "probability array length does not match edge count");
  }
  if (!labels.empty() && labels.size() != node_count) {
    throw Error(ErrorCode::kInvalidArgument, "label count does not match node count");
  }
  const std::size_t m = sources.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (sources[i] >= node_count || targets[i] >= node_count) {
      throw Error(ErrorCode::kOutOfRange, "edge " + std::to_string(i) + " has an endpoint outside [0, n)");
    }
    if (!probabilities.empty() && !(probabilities[i] >= 0.0 && probabilities[i] <= 1.0)) {
      throw Error(ErrorCode::kValidation, "edge " + std::to_string(i) + " has probability outside [0, 1]");
    }
  }

  Graph g;
  g.in_degree_.assign(node_count, 0);
  g.out_degree_.assign(node_count, 0);
  for (std::size_t i = 0; i < m; ++i) {
    ++g.in_degree_[targets[i]];
    ++g.out_degree_[sources[i]];
  }
  g.in_offsets_.assign(node_count + 1, 0);
  for (std::size_t v = 0; v < node_count; ++v) g.in_offsets_[v + 1] = g.in_offsets_[v] + g.in_degree_[v];

  // Stable fill keeps input order within each node's slice.
  std::vector<std::size_t> cursor(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
  g.in_sources_.resize(m);
  g.input_order_.resize(m);
  if (!probabilities.empty()) g.in_probabilities_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t slot = cursor[targets[i]]++;
    g.in_sources_[slot] = sources[i];
    g.input_order_[i] = slot;
    if (!probabilities.empty()) g.in_probabilities_[slot] = probabilities[i];
  }

  if (labels.empty()) {
    labels.reserve(node_count);
    for (std::size_t v = 0; v < node_count; ++v) labels.push_back(std::to_string(v));
  }
  g.labels_ = std::move(labels);
  g.label_index_.reserve(node_count);
  for (std::size_t v = 0; v < node_count; ++v) {
    if (!g.label_index_.emplace(g.labels_[v], static_cast<NodeId>(v)).second) {
      throw Error(ErrorCode::kValidation, "duplicate node label '" + g.labels_[v] + "'");
    }
  }
  return g;
}

std::size_t Graph::in_degree(NodeId v) const {
  if (v >= node_count()) throw Error(ErrorCode::kOutOfRange, "node " + std::to_string(v) + " out of range");
  return in_degree_[v];
}

std::size_t Graph::out_degree(NodeId v) const {
  if (v >= node_count()) throw Error(ErrorCode::kOutOfRange, "node " + std::to_string(v) + " out of range");
  return out_degree_[v];
}

NodeId Graph::in_edge_target(std::size_t e) const {
  auto it = std::upper_bound(in_offsets_.begin(), in_offsets_.end(), e);
  return static_cast<NodeId>(it - in_offsets_.begin() - 1);
}

ForwardAdjacency Graph::build_forward() const {
  const std::size_t n = node_count();
  ForwardAdjacency fwd;
  fwd.offsets.assign(n + 1, 0);
  for (std::size_t u = 0; u < n; ++u) fwd.offsets[u + 1] = fwd.offsets[u] + out_degree_[u];
  std::vector<std::size_t> cursor(fwd.offsets.begin(), fwd.offsets.end() - 1);
  fwd.targets.resize(edge_count());
  fwd.in_edge_of.resize(edge_count());
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t e = in_offsets_[v]; e < in_offsets_[v + 1]; ++e) {
      const std::size_t slot = cursor[in_sources_[e]]++;
      fwd.targets[slot] = static_cast<NodeId>(v);
      fwd.in_edge_of[slot] = e;
    }
  }
  return fwd;
}

const std::string& Graph::label(NodeId v) const {
  if (v >= node_count()) throw Error(ErrorCode::kOutOfRange, "node " + std::to_string(v) + " out of range");
  return labels_[v];
}

std::optional<NodeId> Graph::find(std::string_view label) const {
  auto it = label_index_.find(std::string(label));
  if (it == label_index_.end()) return std::nullopt;
  return it->second;
}

Graph load_edge_list(std::istream& in, Directedness directedness, IdPolicy id_policy) {
  std::vector<NodeId> sources;
  std::vector<NodeId> targets;
  std::vector<double> probabilities;
  std::vector<std::string> labels;
  std::unordered_map<std::string, NodeId> ids;
  std::size_t max_numeric = 0;
  bool any_probability = false;
  bool any_plain = false;

  auto intern = [&](std::string_view token, std::size_t line_no) -> NodeId {
    if (id_policy == IdPolicy::kNumeric) {
      std::uint64_t value = 0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc() || ptr != token.data() + token.size() ||
          value >= std::numeric_limits<NodeId>::max()) {
        throw Error(ErrorCode::kParse, at_line(line_no) + "expected a non-negative integer node id, got '" +
                                           std::string(token) + "'");
      }
      max_numeric = std::max<std::size_t>(max_numeric, value);
      return static_cast<NodeId>(value);
    }
    auto [it, inserted] = ids.try_emplace(std::string(token), static_cast<NodeId>(labels.size()));
    if (inserted) labels.emplace_back(token);
    return it->second;
  };

  std::string line;
  std::vector<std::string_view> tokens;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    const auto first = view.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    if (view[first] == '#') continue;
    if (!split_tokens(view, tokens, 3) || tokens.size() < 2) {
      throw Error(ErrorCode::kParse, at_line(line_no) + "expected 'u v' or 'u v p'");
    }
    double p = 0.0;
    if (tokens.size() == 3) {
      auto [ptr, ec] = std::from_chars(tokens[2].data(), tokens[2].data() + tokens[2].size(), p);
      if (ec != std::errc() || ptr != tokens[2].data() + tokens[2].size()) {
        throw Error(ErrorCode::kParse, at_line(line_no) + "malformed probability '" + std::string(tokens[2]) + "'");
      }
      if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorCode::kValidation, at_line(line_no) + "probability " + std::string(tokens[2]) +
                                                " outside [0, 1]");
      }
      any_probability = true;
    } else {
      any_plain = true;
    }
    if (any_probability && any_plain) {
      throw Error(ErrorCode::kParse, at_line(line_no) + "mixes lines with and without probabilities");
    }
    const NodeId u = intern(tokens[0], line_no);
    const NodeId v = intern(tokens[1], line_no);
    sources.push_back(u);
    targets.push_back(v);
    probabilities.push_back(p);
    if (directedness == Directedness::kUndirected) {
      sources.push_back(v);
      targets.push_back(u);
      probabilities.push_back(p);
    }
  }
  if (sources.empty()) throw Error(ErrorCode::kValidation, "edge list contains no edges");
  if (!any_probability) probabilities.clear();

  std::size_t n = labels.size();
  if (id_policy == IdPolicy::kNumeric) n = max_numeric + 1;
  return Graph::from_edges(n, sources, targets, probabilities, std::move(labels));
}

Graph load_edge_list_file(const std::string& path, Directedness directedness, IdPolicy id_policy) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  return load_edge_list(in, directedness, id_policy);
}

void write_edge_list(const Graph& graph, std::ostream& out) {
  const auto sources = graph.in_sources();
  const auto probabilities = graph.in_probabilities();
  char buf[64];
  for (std::size_t slot : graph.input_order()) {
    out << graph.label(sources[slot]) << ' ' << graph.label(graph.in_edge_target(slot));
    if (graph.has_probabilities()) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), probabilities[slot]);
      out << ' ' << std::string_view(buf, ptr - buf);
    }
    out << '\n';
  }
}

}  // namespace influmax
