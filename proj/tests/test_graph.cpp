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


#include <numeric>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "influmax/graph.hpp"

using namespace influmax;

namespace {

Graph parse(const std::string& text, Directedness d = Directedness::kDirected) {
  std::istringstream in(text);
  return load_edge_list(in, d);
}

ErrorCode parse_error(const std::string& text) {
  try {
    parse(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST_CASE("two-edge chain") {
  const Graph g = parse("0 1\n1 2\n");
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.in_degree(0) == 0);
  CHECK(g.in_degree(1) == 1);
  CHECK(g.in_degree(2) == 1);
  CHECK_FALSE(g.has_probabilities());
}

TEST_CASE("undirected lines become two edges") {
  const Graph g = parse("0 1\n", Directedness::kUndirected);
  CHECK(g.node_count() == 2);
  CHECK(g.edge_count() == 2);
  CHECK(g.in_degree(0) == 1);
  CHECK(g.in_degree(1) == 1);
}

TEST_CASE("parallel edges and self-loops are kept") {
  const Graph g = parse("0 1 0.5\n0 1 0.5\n");
  CHECK(g.node_count() == 2);
  CHECK(g.edge_count() == 2);
  CHECK(g.in_degree(1) == 2);
  CHECK(parse("0 1\n0 1\n").in_degree(1) == 2);
  const Graph loop = parse("x x\n");
  CHECK(loop.node_count() == 1);
  CHECK(loop.in_degree(0) == 1);
  CHECK(loop.out_degree(0) == 1);
}

TEST_CASE("comments, blank lines and labels") {
  const Graph g = parse("# header\n\nalice bob 0.25\n  bob carol 1\n");
  CHECK(g.node_count() == 3);
  CHECK(g.label(0) == "alice");
  CHECK(g.find("carol") == NodeId{2});
  CHECK_FALSE(g.find("dave").has_value());
  CHECK(g.in_probabilities()[g.input_order()[0]] == 0.25);
}

TEST_CASE("numeric id policy keeps ids") {
  std::istringstream in("3 1\n");
  const Graph g = load_edge_list(in, Directedness::kDirected, IdPolicy::kNumeric);
  CHECK(g.node_count() == 4);
  CHECK(g.in_degree(1) == 1);
  CHECK(g.out_degree(3) == 1);
  CHECK(g.label(3) == "3");
}

TEST_CASE("input errors") {
  CHECK(parse_error("") == ErrorCode::kValidation);
  CHECK(parse_error("# only a comment\n") == ErrorCode::kValidation);
  CHECK(parse_error("0\n") == ErrorCode::kParse);
  CHECK(parse_error("0 1 2 3\n") == ErrorCode::kParse);
  CHECK(parse_error("0 1 abc\n") == ErrorCode::kParse);
  CHECK(parse_error("0 1 1.5\n") == ErrorCode::kValidation);
  CHECK(parse_error("0 1 -0.1\n") == ErrorCode::kValidation);
  CHECK(parse_error("0 1 0.5\n1 2\n") == ErrorCode::kParse);
  try {
    parse("0 1\n1 2\nbad\n");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("out-of-range node queries throw") {
  const Graph g = parse("0 1\n");
  CHECK_THROWS_AS(g.in_degree(2), Error);
  CHECK_THROWS_AS(g.out_degree(7), Error);
}

TEST_CASE("property: in-degrees sum to m and each edge is visited once") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng() % 20;
    const std::size_t m = rng() % (n * (n - 1) / 2 + 1);
    const Graph g = testing::random_graph(n, m, rng);
    const auto degrees = g.in_degrees_unchecked();
    CHECK(std::accumulate(degrees.begin(), degrees.end(), std::size_t{0}) == m);
    std::size_t visited = 0;
    for (NodeId v = 0; v < n; ++v) {
      for (std::size_t e = g.in_edge_begin(v); e < g.in_edge_end(v); ++e) {
        CHECK(g.in_edge_target(e) == v);
        ++visited;
      }
    }
    CHECK(visited == m);
    std::vector<std::size_t> order(g.input_order().begin(), g.input_order().end());
    std::sort(order.begin(), order.end());
    for (std::size_t i = 0; i < order.size(); ++i) CHECK(order[i] == i);
  }
}

TEST_CASE("property: write then reload gives the same structure") {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng() % 15;
    const Graph g = testing::random_graph(n, rng() % (n * (n - 1) / 2 + 1), rng);
    if (g.edge_count() == 0) continue;
    std::ostringstream out;
    write_edge_list(g, out);
    std::istringstream in(out.str());
    const Graph h = load_edge_list(in);
    // Isolated nodes are not representable in an edge list.
    REQUIRE(h.edge_count() == g.edge_count());
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
      const std::size_t eg = g.input_order()[i];
      const std::size_t eh = h.input_order()[i];
      CHECK(g.label(g.in_sources()[eg]) == h.label(h.in_sources()[eh]));
      CHECK(g.label(g.in_edge_target(eg)) == h.label(h.in_edge_target(eh)));
      CHECK(g.in_probabilities()[eg] == h.in_probabilities()[eh]);
    }
    std::ostringstream again;
    write_edge_list(h, again);
    CHECK(again.str() == out.str());
  }
}

TEST_CASE("forward adjacency mirrors the in-edges") {
  const Graph g = testing::example_replica();
  const ForwardAdjacency fwd = g.build_forward();
  CHECK(fwd.out_neighbors(1).size() == 2);
  CHECK(fwd.out_neighbors(2).empty());
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (std::size_t i = fwd.offsets[u]; i < fwd.offsets[u + 1]; ++i) {
      CHECK(g.in_sources()[fwd.in_edge_of[i]] == u);
      CHECK(g.in_edge_target(fwd.in_edge_of[i]) == fwd.targets[i]);
    }
  }
}
