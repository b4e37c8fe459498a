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

// Diffusion models expressed as per-node triggering distributions.
//
// A trigger set of v is a subset of v's in-edges, named by their local slot
// (0 .. in_degree(v) - 1) within v's in-edge slice. IC kinds include every
// slot independently with its edge probability; LT picks exactly one slot by
// weight; the custom kind delegates to a user-supplied TriggerDistribution.

#ifndef INFLUMAX_MODELS_HPP_
#define INFLUMAX_MODELS_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "influmax/common.hpp"
#include "influmax/graph.hpp"

namespace influmax {

enum class ModelKind {
  kIndependentCascade,  // explicit per-edge probabilities from the input
  kWeightedCascade,     // p(u->v) = 1 / in_degree(v)
  kLinearThreshold,     // uniform random weights normalized per node
  kTriggering,          // custom per-node sampler
};

std::string_view to_string(ModelKind kind);

struct TriggerOutcome {
  std::vector<std::uint32_t> slots;
  double probability = 0.0;
};

class TriggerDistribution {
 public:
  virtual ~TriggerDistribution() = default;

  // Appends the sampled slots of v's trigger set to `slots` (which is not
  // cleared). Slots must be distinct and < in_degree(v).
  virtual void sample(const Graph& graph, NodeId v, Rng& rng,
                      std::vector<std::uint32_t>& slots) const = 0;

  // Full support of T(v) with probabilities, for the exact oracles. The
  // default throws kUnsupported.
  virtual std::vector<TriggerOutcome> outcomes(const Graph& graph, NodeId v) const;
};

// Triggering distribution in which each in-edge joins the trigger set
// independently with its own probability. Behaves exactly like IC but runs
// through the generic triggering code paths.
class IndependentTrigger : public TriggerDistribution {
 public:
  // One probability per in-edge, in in-edge order.
  explicit IndependentTrigger(std::vector<double> probabilities);

  void sample(const Graph& graph, NodeId v, Rng& rng,
              std::vector<std::uint32_t>& slots) const override;
  std::vector<TriggerOutcome> outcomes(const Graph& graph, NodeId v) const override;

 private:
  std::vector<double> probabilities_;
};

class DiffusionModel {
 public:
  ModelKind kind() const { return kind_; }
  bool is_cascade() const {
    return kind_ == ModelKind::kIndependentCascade || kind_ == ModelKind::kWeightedCascade;
  }

  // Per in-edge propagation probabilities (cascade kinds).
  std::span<const double> edge_probabilities() const { return probabilities_; }
  // Per in-edge normalized weights (LT).
  std::span<const double> edge_weights() const { return weights_; }

  // Samples v's trigger set as slots (appended, not cleared).
  void sample_trigger_slots(const Graph& graph, NodeId v, Rng& rng,
                            std::vector<std::uint32_t>& slots) const;

  // Same draw, reported as the distinct in-neighbor nodes.
  std::vector<NodeId> sample_trigger_set(const Graph& graph, NodeId v, Rng& rng) const;

  std::vector<TriggerOutcome> trigger_outcomes(const Graph& graph, NodeId v) const;

  // LT slot pick from a uniform draw in [0, 1).
  std::uint32_t pick_lt_slot(const Graph& graph, NodeId v, double u) const;

  const TriggerDistribution* custom() const { return custom_.get(); }

 private:
  friend DiffusionModel explicit_cascade(const Graph& graph);
  friend DiffusionModel assign_weighted_cascade(const Graph& graph);
  friend DiffusionModel assign_lt_uniform(const Graph& graph, Rng& rng);
  friend DiffusionModel custom_triggering(const Graph& graph,
                                          std::shared_ptr<const TriggerDistribution> distribution);

  ModelKind kind_ = ModelKind::kIndependentCascade;
  std::size_t edge_count_ = 0;
  std::vector<double> probabilities_;
  std::vector<double> weights_;
  std::vector<double> cumulative_;  // running weight sum within each node's slice
  std::shared_ptr<const TriggerDistribution> custom_;
};

// IC with the probabilities read from the input. kValidation if absent.
DiffusionModel explicit_cascade(const Graph& graph);

DiffusionModel assign_weighted_cascade(const Graph& graph);

// Per node: in_degree draws from U[0,1], normalized to sum to one.
DiffusionModel assign_lt_uniform(const Graph& graph, Rng& rng);

DiffusionModel custom_triggering(const Graph& graph,
                                 std::shared_ptr<const TriggerDistribution> distribution);

}  // namespace influmax

#endif  // INFLUMAX_MODELS_HPP_
