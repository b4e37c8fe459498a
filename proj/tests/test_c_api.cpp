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
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "influmax/influmax.h"

namespace {

const char* kChain = "a b 0.5\nb c 0.5\n";

// Picks the single in-neighbor slot 0 with probability 1/2 (LT-like).
size_t half_first_slot(void* user_data, uint32_t, size_t in_degree, double (*uniform)(void*), void* rng,
                       uint32_t* out_slots) {
  ++*static_cast<int*>(user_data);
  if (in_degree == 0 || uniform(rng) >= 0.5) return 0;
  out_slots[0] = 0;
  return 1;
}

size_t out_of_range(void*, uint32_t, size_t in_degree, double (*)(void*), void*, uint32_t* out_slots) {
  out_slots[0] = static_cast<uint32_t>(in_degree);
  return 1;
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(influmax_abi_version() == INFLUMAX_ABI_VERSION);
  CHECK(std::strlen(influmax_version()) > 0);
  CHECK(std::string(influmax_status_name(INFLUMAX_ERR_PARSE)).size() > 0);
}

TEST_CASE("graph handles") {
  influmax_graph* g = nullptr;
  REQUIRE(influmax_graph_load_string(kChain, 0, &g) == INFLUMAX_OK);
  CHECK(influmax_graph_node_count(g) == 3);
  CHECK(influmax_graph_edge_count(g) == 2);
  CHECK(influmax_graph_has_probabilities(g) == 1);
  size_t degree = 0;
  CHECK(influmax_graph_in_degree(g, 1, &degree) == INFLUMAX_OK);
  CHECK(degree == 1);
  CHECK(influmax_graph_in_degree(g, 9, &degree) == INFLUMAX_ERR_OUT_OF_RANGE);
  const char* label = nullptr;
  CHECK(influmax_graph_node_label(g, 2, &label) == INFLUMAX_OK);
  CHECK(std::string(label) == "c");
  uint32_t id = 0;
  CHECK(influmax_graph_find_node(g, "b", &id) == INFLUMAX_OK);
  CHECK(id == 1);
  CHECK(influmax_graph_find_node(g, "zzz", &id) == INFLUMAX_ERR_OUT_OF_RANGE);
  uint32_t neighbors[1] = {99};
  CHECK(influmax_graph_in_neighbors(g, 2, neighbors) == INFLUMAX_OK);
  CHECK(neighbors[0] == 1);
  influmax_graph_free(g);

  influmax_graph* bad = nullptr;
  CHECK(influmax_graph_load_string("0 1 2.0\n", 0, &bad) == INFLUMAX_ERR_VALIDATION);
  CHECK(std::string(influmax_last_error()).size() > 0);
  CHECK(influmax_graph_load_string("0\n", 0, &bad) == INFLUMAX_ERR_PARSE);
  CHECK(influmax_graph_load_file("/nonexistent/graph.txt", 0, &bad) == INFLUMAX_ERR_IO);
  CHECK(influmax_graph_load_string(kChain, 0, nullptr) == INFLUMAX_ERR_INVALID_ARGUMENT);
  CHECK(bad == nullptr);

  const uint32_t s[] = {0, 1}, t[] = {1, 0};
  CHECK(influmax_graph_from_edges(2, s, t, nullptr, 2, &g) == INFLUMAX_OK);
  CHECK(influmax_graph_has_probabilities(g) == 0);
  influmax_graph_free(g);
}

TEST_CASE("model constraints") {
  influmax_graph* with_p = nullptr;
  influmax_graph* without_p = nullptr;
  REQUIRE(influmax_graph_load_string(kChain, 0, &with_p) == INFLUMAX_OK);
  REQUIRE(influmax_graph_load_string("a b\nb c\n", 0, &without_p) == INFLUMAX_OK);
  influmax_model* m = nullptr;
  CHECK(influmax_model_create(with_p, INFLUMAX_MODEL_WC, 0, &m) == INFLUMAX_ERR_VALIDATION);
  CHECK(influmax_model_create(with_p, INFLUMAX_MODEL_LT, 0, &m) == INFLUMAX_ERR_VALIDATION);
  CHECK(influmax_model_create(without_p, INFLUMAX_MODEL_IC, 0, &m) == INFLUMAX_ERR_VALIDATION);
  CHECK(influmax_model_create(without_p, INFLUMAX_MODEL_TRIGGER, 0, &m) == INFLUMAX_ERR_VALIDATION);
  for (auto kind : {INFLUMAX_MODEL_IC, INFLUMAX_MODEL_TRIGGER}) {
    CHECK(influmax_model_create(with_p, kind, 0, &m) == INFLUMAX_OK);
    influmax_model_free(m);
  }
  for (auto kind : {INFLUMAX_MODEL_WC, INFLUMAX_MODEL_LT}) {
    CHECK(influmax_model_create(without_p, kind, 0, &m) == INFLUMAX_OK);
    influmax_model_free(m);
  }
  influmax_graph_free(with_p);
  influmax_graph_free(without_p);
}

TEST_CASE("selection, statistics and evaluation") {
  influmax_graph* g = nullptr;
  influmax_model* m = nullptr;
  REQUIRE(influmax_graph_load_string(kChain, 0, &g) == INFLUMAX_OK);
  REQUIRE(influmax_model_create(g, INFLUMAX_MODEL_IC, 0, &m) == INFLUMAX_OK);

  influmax_tim_params params;
  influmax_tim_params_init(&params);
  params.k = 1;
  params.epsilon = 0.5;
  params.seed = 7;
  influmax_result* r = nullptr;
  REQUIRE(influmax_run_tim(g, m, &params, &r) == INFLUMAX_OK);
  REQUIRE(influmax_result_seed_count(r) == 1);
  CHECK(influmax_result_seeds(r)[0] == 0);
  influmax_result_stats stats;
  influmax_result_get_stats(r, &stats);
  CHECK(stats.kpt_plus >= stats.kpt_star);
  CHECK(stats.theta == static_cast<uint64_t>(std::ceil(stats.lambda / stats.kpt_plus)));
  CHECK(stats.completed == 1);
  influmax_result_free(r);

  params.k = 5;
  CHECK(influmax_run_tim(g, m, &params, &r) == INFLUMAX_ERR_INVALID_ARGUMENT);

  influmax_greedy_params gp;
  influmax_greedy_params_init(&gp);
  gp.k = 1;
  gp.r = 20000;
  REQUIRE(influmax_run_greedy(g, m, &gp, &r) == INFLUMAX_OK);
  CHECK(influmax_result_seeds(r)[0] == 0);
  influmax_result_free(r);

  const uint32_t seeds[] = {0};
  double exact = 0, mean = 0, se = 0;
  CHECK(influmax_exact_spread(g, m, seeds, 1, &exact) == INFLUMAX_OK);
  CHECK(exact == 1.75);
  CHECK(influmax_simulate_spread(g, m, seeds, 1, 100000, 1, 1, &mean, &se) == INFLUMAX_OK);
  CHECK(std::abs(mean - 1.75) <= 4 * se);
  const uint32_t bad_seed[] = {3};
  CHECK(influmax_simulate_spread(g, m, bad_seed, 1, 10, 1, 1, &mean, &se) == INFLUMAX_ERR_OUT_OF_RANGE);

  double value = 0;
  CHECK(influmax_compute_lambda(2, 2, 1.0, 1.0, &value) == INFLUMAX_OK);
  CHECK(value == doctest::Approx(40 * std::log(2.0)));
  CHECK(influmax_required_r(100, 2, 1.0, 0.1, 0.0, &value) == INFLUMAX_ERR_INVALID_ARGUMENT);
  CHECK(influmax_peak_rss_bytes() > 0);

  influmax_model_free(m);
  influmax_graph_free(g);
}

TEST_CASE("callback triggering model") {
  influmax_graph* g = nullptr;
  REQUIRE(influmax_graph_load_string("a b\nb c\n", 0, &g) == INFLUMAX_OK);
  int calls = 0;
  influmax_model* m = nullptr;
  REQUIRE(influmax_model_create_triggering(g, half_first_slot, &calls, &m) == INFLUMAX_OK);
  const uint32_t seeds[] = {0};
  double mean = 0, se = 0;
  REQUIRE(influmax_simulate_spread(g, m, seeds, 1, 100000, 3, 1, &mean, &se) == INFLUMAX_OK);
  CHECK(std::abs(mean - 1.75) <= 4 * se);
  CHECK(calls > 0);
  double exact = 0;
  CHECK(influmax_exact_spread(g, m, seeds, 1, &exact) == INFLUMAX_ERR_UNSUPPORTED);

  influmax_tim_params params;
  influmax_tim_params_init(&params);
  params.k = 1;
  params.epsilon = 0.5;
  influmax_result* r = nullptr;
  REQUIRE(influmax_run_tim(g, m, &params, &r) == INFLUMAX_OK);
  CHECK(influmax_result_seeds(r)[0] == 0);
  influmax_result_free(r);
  influmax_model_free(m);
  influmax_graph_free(g);

  REQUIRE(influmax_graph_load_string("a c\nb c\n", 0, &g) == INFLUMAX_OK);
  REQUIRE(influmax_model_create_triggering(g, out_of_range, nullptr, &m) == INFLUMAX_OK);
  CHECK(influmax_simulate_spread(g, m, seeds, 1, 10, 3, 1, &mean, &se) == INFLUMAX_ERR_VALIDATION);
  influmax_model_free(m);
  influmax_graph_free(g);
}
