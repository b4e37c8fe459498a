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

#include "influmax/models.hpp"

#include <algorithm>

namespace influmax {

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kIndependentCascade: return "ic";
    case ModelKind::kWeightedCascade: return "wc";
    case ModelKind::kLinearThreshold: return "lt";
    case ModelKind::kTriggering: return "trigger";
  }
  return "unknown";
}

std::vector<TriggerOutcome> TriggerDistribution::outcomes(const Graph&, NodeId) const {
  throw Error(ErrorCode::kUnsupported, "trigger distribution does not enumerate its outcomes");
}

namespace {

std::vector<TriggerOutcome> independent_outcomes(std::span<const double> p, std::size_t begin,
                                                 std::size_t end) {
  std::vector<TriggerOutcome> out{{{}, 1.0}};
  for (std::size_t e = begin; e < end; ++e) {
    const auto slot = static_cast<std::uint32_t>(e - begin);
    if (p[e] == 0.0) continue;
    if (p[e] == 1.0) {
      for (auto& o : out) o.slots.push_back(slot);
      continue;
    }
    const std::size_t existing = out.size();
    for (std::size_t i = 0; i < existing; ++i) {
      TriggerOutcome with = out[i];
      with.slots.push_back(slot);
      with.probability *= p[e];
      out[i].probability *= 1.0 - p[e];
      out.push_back(std::move(with));
    }
  }
  return out;
}

void check_node(const Graph& graph, NodeId v) {
  if (v >= graph.node_count()) throw Error(ErrorCode::kOutOfRange, "node " + std::to_string(v) + " out of range");
}

std::vector<double> build_cumulative(const Graph& graph, std::span<const double> weights) {
  std::vector<double> cumulative(weights.size());
  for (NodeId v = 0; v < graph.node_count(); ++v) {
    double running = 0.0;
    for (std::size_t e = graph.in_edge_begin(v); e < graph.in_edge_end(v); ++e) {
      running += weights[e];
      cumulative[e] = running;
    }
  }
  return cumulative;
}

}  // namespace

IndependentTrigger::IndependentTrigger(std::vector<double> probabilities)
    : probabilities_(std::move(probabilities)) {
  for (double p : probabilities_) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::kValidation, "trigger probability outside [0, 1]");
  }
}

void IndependentTrigger::sample(const Graph& graph, NodeId v, Rng& rng,
                                std::vector<std::uint32_t>& slots) const {
  const std::size_t begin = graph.in_edge_begin(v);
  for (std::size_t e = begin; e < graph.in_edge_end(v); ++e) {
    if (uniform01(rng) < probabilities_[e]) slots.push_back(static_cast<std::uint32_t>(e - begin));
  }
}

std::vector<TriggerOutcome> IndependentTrigger::outcomes(const Graph& graph, NodeId v) const {
  return independent_outcomes(probabilities_, graph.in_edge_begin(v), graph.in_edge_end(v));
}

DiffusionModel explicit_cascade(const Graph& graph) {
  if (!graph.has_probabilities()) {
    throw Error(ErrorCode::kValidation, "independent cascade requires explicit per-edge probabilities");
  }
  DiffusionModel model;
  model.kind_ = ModelKind::kIndependentCascade;
  model.edge_count_ = graph.edge_count();
  model.probabilities_.assign(graph.in_probabilities().begin(), graph.in_probabilities().end());
  return model;
}

DiffusionModel assign_weighted_cascade(const Graph& graph) {
  DiffusionModel model;
  model.kind_ = ModelKind::kWeightedCascade;
  model.edge_count_ = graph.edge_count();
  model.probabilities_.resize(graph.edge_count());
  for (NodeId v = 0; v < graph.node_count(); ++v) {
    const std::size_t d = graph.in_edge_end(v) - graph.in_edge_begin(v);
    for (std::size_t e = graph.in_edge_begin(v); e < graph.in_edge_end(v); ++e) {
      model.probabilities_[e] = 1.0 / static_cast<double>(d);
    }
  }
  return model;
}

DiffusionModel assign_lt_uniform(const Graph& graph, Rng& rng) {
  DiffusionModel model;
  model.kind_ = ModelKind::kLinearThreshold;
  model.edge_count_ = graph.edge_count();
  model.weights_.resize(graph.edge_count());
  for (NodeId v = 0; v < graph.node_count(); ++v) {
    const std::size_t begin = graph.in_edge_begin(v);
    const std::size_t end = graph.in_edge_end(v);
    if (begin == end) continue;
    double total = 0.0;
    while (total == 0.0) {
      total = 0.0;
      for (std::size_t e = begin; e < end; ++e) {
        model.weights_[e] = uniform01(rng);
        total += model.weights_[e];
      }
    }
    for (std::size_t e = begin; e < end; ++e) model.weights_[e] /= total;
  }
  model.cumulative_ = build_cumulative(graph, model.weights_);
  return model;
}

DiffusionModel custom_triggering(const Graph& graph,
                                 std::shared_ptr<const TriggerDistribution> distribution) {
  if (!distribution) throw Error(ErrorCode::kInvalidArgument, "trigger distribution is null");
  DiffusionModel model;
  model.kind_ = ModelKind::kTriggering;
  model.edge_count_ = graph.edge_count();
  model.custom_ = std::move(distribution);
  return model;
}

std::uint32_t DiffusionModel::pick_lt_slot(const Graph& graph, NodeId v, double u) const {
  const auto first = cumulative_.begin() + static_cast<std::ptrdiff_t>(graph.in_edge_begin(v));
  const auto last = cumulative_.begin() + static_cast<std::ptrdiff_t>(graph.in_edge_end(v));
  const double target = u * *(last - 1);
  auto it = std::upper_bound(first, last, target);
  if (it == last) {
    // Rounding at the top end: fall back to the last slot with positive weight.
    it = last - 1;
    while (it != first && *it == *(it - 1)) --it;
  }
  return static_cast<std::uint32_t>(it - first);
}

void DiffusionModel::sample_trigger_slots(const Graph& graph, NodeId v, Rng& rng,
                                          std::vector<std::uint32_t>& slots) const {
  const std::size_t begin = graph.in_edge_begin(v);
  const std::size_t end = graph.in_edge_end(v);
  switch (kind_) {
    case ModelKind::kIndependentCascade:
    case ModelKind::kWeightedCascade:
      for (std::size_t e = begin; e < end; ++e) {
        if (uniform01(rng) < probabilities_[e]) slots.push_back(static_cast<std::uint32_t>(e - begin));
      }
      break;
    case ModelKind::kLinearThreshold:
      if (begin != end) slots.push_back(pick_lt_slot(graph, v, uniform01(rng)));
      break;
    case ModelKind::kTriggering:
      custom_->sample(graph, v, rng, slots);
      break;
  }
}

std::vector<NodeId> DiffusionModel::sample_trigger_set(const Graph& graph, NodeId v, Rng& rng) const {
  check_node(graph, v);
  if (graph.edge_count() != edge_count_) {
    throw Error(ErrorCode::kInvalidArgument, "model was built for a different graph");
  }
  std::vector<std::uint32_t> slots;
  sample_trigger_slots(graph, v, rng, slots);
  const auto sources = graph.in_neighbors(v);
  std::vector<NodeId> nodes;
  nodes.reserve(slots.size());
  for (std::uint32_t s : slots) nodes.push_back(sources[s]);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

std::vector<TriggerOutcome> DiffusionModel::trigger_outcomes(const Graph& graph, NodeId v) const {
  check_node(graph, v);
  const std::size_t begin = graph.in_edge_begin(v);
  const std::size_t end = graph.in_edge_end(v);
  std::vector<TriggerOutcome> out;
  switch (kind_) {
    case ModelKind::kIndependentCascade:
    case ModelKind::kWeightedCascade:
      out = independent_outcomes(probabilities_, begin, end);
      break;
    case ModelKind::kLinearThreshold:
      if (begin == end) {
        out.push_back({{}, 1.0});
      } else {
        for (std::size_t e = begin; e < end; ++e) {
          if (weights_[e] > 0.0) out.push_back({{static_cast<std::uint32_t>(e - begin)}, weights_[e]});
        }
      }
      break;
    case ModelKind::kTriggering:
      out = custom_->outcomes(graph, v);
      break;
  }
  return out;
}

}  // namespace influmax
