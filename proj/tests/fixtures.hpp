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


// Small hand-checkable instances shared by the unit and acceptance tests.

#ifndef INFLUMAX_TESTS_FIXTURES_HPP_
#define INFLUMAX_TESTS_FIXTURES_HPP_

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "influmax/common.hpp"
#include "influmax/graph.hpp"
#include "influmax/models.hpp"

namespace influmax::testing {

// a -> b (0.5), b -> c (0.5). Ids: a = 0, b = 1, c = 2.
inline Graph chain() {
  std::istringstream in("a b 0.5\nb c 0.5\n");
  return load_edge_list(in);
}

// Complete directed graph on 4 nodes, every edge p = 1.
inline Graph complete4() {
  std::vector<NodeId> s, t;
  std::vector<double> p;
  for (NodeId u = 0; u < 4; ++u) {
    for (NodeId v = 0; v < 4; ++v) {
      if (u == v) continue;
      s.push_back(u);
      t.push_back(v);
      p.push_back(1.0);
    }
  }
  return Graph::from_edges(4, s, t, p);
}

// Replica of the four-node example: v2 -> v1, v2 -> v4 (0.01), v4 -> v1 (1),
// v3 isolated. Ids: v1 = 0, v2 = 1, v3 = 2, v4 = 3.
inline Graph example_replica() {
  const std::vector<NodeId> s{1, 1, 3};
  const std::vector<NodeId> t{0, 3, 0};
  const std::vector<double> p{0.01, 0.01, 1.0};
  return Graph::from_edges(4, s, t, p, {"v1", "v2", "v3", "v4"});
}

// Random directed graph with n nodes and exactly m distinct non-loop edges,
// probabilities drawn uniformly from [0.1, 0.9].
inline Graph random_graph(std::size_t n, std::size_t m, Rng& rng) {
  std::vector<NodeId> s, t;
  std::vector<double> p;
  std::vector<std::uint8_t> used(n * n, 0);
  while (s.size() < m) {
    const auto u = static_cast<NodeId>(rng() % n);
    const auto v = static_cast<NodeId>(rng() % n);
    if (u == v || used[u * n + v]) continue;
    used[u * n + v] = 1;
    s.push_back(u);
    t.push_back(v);
    p.push_back(0.1 + 0.8 * uniform01(rng));
  }
  return Graph::from_edges(n, s, t, p);
}

}  // namespace influmax::testing

#endif  // INFLUMAX_TESTS_FIXTURES_HPP_
