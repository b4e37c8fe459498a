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


#include <cmath>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "influmax/evaluator.hpp"
#include "influmax/greedy.hpp"

using namespace influmax;

TEST_CASE("greedy boundaries") {
  const Graph chain = testing::chain();
  const DiffusionModel ic = explicit_cascade(chain);
  CHECK(greedy_select(chain, ic, 0, {}).seeds.empty());
  CHECK_THROWS_AS(greedy_select(chain, ic, 4, {}), Error);

  const Graph single = Graph::from_edges(1, {}, {});
  const GreedyResult one = greedy_select(single, assign_weighted_cascade(single), 1, {});
  CHECK(one.seeds == std::vector<NodeId>{0});
  CHECK(one.estimated_spread == 1.0);
}

TEST_CASE("greedy picks the chain head") {
  const Graph chain = testing::chain();
  const DiffusionModel ic = explicit_cascade(chain);
  GreedyConfig config;
  config.r = 100000;
  config.seed = 3;
  for (bool lazy : {false, true}) {
    config.lazy = lazy;
    const GreedyResult r = greedy_select(chain, ic, 1, config);
    CHECK(r.seeds == std::vector<NodeId>{0});
    CHECK(r.completed);
    CHECK(r.estimated_spread == doctest::Approx(1.75).epsilon(0.02));
  }
}

TEST_CASE("required r") {
  const double expected = 32.4 * 100 * (2 * std::log(100.0) + std::log(2.0)) / (0.01 * 10);
  CHECK(required_r(100, 2, 1.0, 0.1, 10.0) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(required_r(100, 2, 1.0, 0.1, 10.0) == doctest::Approx(320872.9967).epsilon(1e-9));
  CHECK(required_r(100, 1, 1.0, 0.01, 10.0) / required_r(100, 1, 1.0, 0.1, 10.0) ==
        doctest::Approx(100 * (8 + 0.02) / (8 + 0.2)).epsilon(1e-12));
  CHECK(required_r(100, 2, 1.0, 0.1, 100.0) < required_r(100, 2, 1.0, 0.1, 50.0));
  CHECK_THROWS_AS(required_r(100, 2, 1.0, 0.1, 0.0), Error);
}

TEST_CASE("time budget marks the result incomplete") {
  Rng rng(2);
  const Graph g = testing::random_graph(60, 300, rng);
  GreedyConfig config;
  config.r = 100000;
  config.time_budget_seconds = 0.01;
  const GreedyResult r = greedy_select(g, explicit_cascade(g), 5, config);
  CHECK_FALSE(r.completed);
  CHECK(r.seeds.size() < 5);
}

TEST_CASE("determinism and thread independence") {
  Rng rng(3);
  const Graph g = testing::random_graph(15, 40, rng);
  const DiffusionModel ic = explicit_cascade(g);
  GreedyConfig config;
  config.r = 500;
  config.seed = 9;
  const GreedyResult a = greedy_select(g, ic, 3, config);
  const GreedyResult b = greedy_select(g, ic, 3, config);
  config.threads = 3;
  const GreedyResult c = greedy_select(g, ic, 3, config);
  CHECK(a.seeds == b.seeds);
  CHECK(a.seeds == c.seeds);
  CHECK(a.estimated_spread == c.estimated_spread);
}

TEST_CASE("property: lazy and eager reach indistinguishable spread") {
  Rng rng(4);
  const Graph g = testing::random_graph(8, 14, rng);
  const DiffusionModel ic = explicit_cascade(g);
  const ExactOracle oracle(g, ic);
  const int runs = 30;
  std::vector<double> eager, lazy;
  for (int run = 0; run < runs; ++run) {
    GreedyConfig config;
    config.r = 300;
    config.seed = 100 + run;
    eager.push_back(oracle.spread(greedy_select(g, ic, 2, config).seeds));
    config.lazy = true;
    lazy.push_back(oracle.spread(greedy_select(g, ic, 2, config).seeds));
  }
  auto mean_var = [](const std::vector<double>& x) {
    double mean = 0, var = 0;
    for (double v : x) mean += v;
    mean /= x.size();
    for (double v : x) var += (v - mean) * (v - mean);
    return std::pair{mean, var / (x.size() - 1)};
  };
  const auto [m1, v1] = mean_var(eager);
  const auto [m2, v2] = mean_var(lazy);
  const double se = std::sqrt(v1 / runs + v2 / runs);
  if (se == 0.0) {
    CHECK(m1 == m2);
  } else {
    CHECK(std::abs(m1 - m2) / se < 2.576);
  }
}

TEST_CASE("property: greedy with required r reaches the guarantee") {
  Rng rng(5);
  const double eps = 0.5;
  for (int trial = 0; trial < 3; ++trial) {
    const Graph g = testing::random_graph(6, 8, rng);
    const DiffusionModel ic = explicit_cascade(g);
    const ExactOracleResult opt = exhaustive_opt(g, ic, 2);
    GreedyConfig config;
    config.r = static_cast<std::uint64_t>(std::ceil(required_r(6, 2, 1.0, eps, opt.opt_value)));
    config.lazy = true;
    config.seed = trial;
    const GreedyResult r = greedy_select(g, ic, 2, config);
    CHECK(exact_spread(g, ic, r.seeds) >= (1 - std::exp(-1.0) - eps) * opt.opt_value);
  }
}
