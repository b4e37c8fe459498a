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

// influmax: seed selection, spread evaluation and benchmark sweeps.
//
// Exit codes: 0 success, 1 runtime/input error, 2 usage error.

#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "influmax/influmax.h"
#include "json.hpp"

namespace {

using nlohmann::ordered_json;

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(influmax_status status) {
  if (status != INFLUMAX_OK) {
    throw CliError(std::string(influmax_status_name(status)) + ": " + influmax_last_error());
  }
}

struct GraphHandle {
  influmax_graph* ptr = nullptr;
  ~GraphHandle() { influmax_graph_free(ptr); }
};
struct ModelHandle {
  influmax_model* ptr = nullptr;
  ~ModelHandle() { influmax_model_free(ptr); }
};
struct ResultHandle {
  influmax_result* ptr = nullptr;
  ~ResultHandle() { influmax_result_free(ptr); }
};

const std::map<std::string, influmax_model_kind> kModels = {
    {"ic", INFLUMAX_MODEL_IC},
    {"wc", INFLUMAX_MODEL_WC},
    {"lt", INFLUMAX_MODEL_LT},
    {"trigger", INFLUMAX_MODEL_TRIGGER},
};

struct CommonOptions {
  std::string graph_path;
  std::string model = "wc";
  std::uint64_t seed = 0;
  unsigned threads = 0;
  bool undirected = false;
};

unsigned default_threads() {
  if (const char* env = std::getenv("INFLUMAX_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--graph", opts.graph_path, "Edge-list file")->required();
  cmd->add_option("--model", opts.model, "Diffusion model")
      ->required()
      ->check(CLI::IsMember({"ic", "wc", "lt", "trigger"}));
  cmd->add_option("--seed", opts.seed, "Master random seed");
  cmd->add_option("--threads", opts.threads, "Worker threads (default: INFLUMAX_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--undirected", opts.undirected, "Treat each line as two directed edges");
}

struct Loaded {
  GraphHandle graph;
  ModelHandle model;
};

std::unique_ptr<Loaded> load(const CommonOptions& opts) {
  auto out = std::make_unique<Loaded>();
  check(influmax_graph_load_file(opts.graph_path.c_str(), opts.undirected ? 1 : 0, &out->graph.ptr));
  check(influmax_model_create(out->graph.ptr, kModels.at(opts.model), opts.seed, &out->model.ptr));
  return out;
}

std::vector<std::string> labels_of(const influmax_graph* graph, const influmax_result* result) {
  std::vector<std::string> labels;
  const uint32_t* seeds = influmax_result_seeds(result);
  for (size_t i = 0; i < influmax_result_seed_count(result); ++i) {
    const char* label = nullptr;
    check(influmax_graph_node_label(graph, seeds[i], &label));
    labels.emplace_back(label);
  }
  return labels;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct SelectOptions {
  std::uint32_t k = 0;
  double epsilon = 0.1;
  double ell = 1.0;
  std::string algorithm = "tim+";
  std::optional<double> epsilon_prime;
  std::uint64_t r = 10000;
  bool lazy = false;
};

struct RunOutcome {
  ResultHandle result;
  influmax_result_stats stats{};
};

RunOutcome run_algorithm(const Loaded& loaded, const std::string& algorithm, const SelectOptions& o,
                         std::uint64_t seed, unsigned threads) {
  RunOutcome out;
  if (algorithm == "greedy") {
    influmax_greedy_params p;
    influmax_greedy_params_init(&p);
    p.k = o.k;
    p.r = o.r;
    p.lazy = o.lazy ? 1 : 0;
    p.seed = seed;
    p.threads = threads;
    check(influmax_run_greedy(loaded.graph.ptr, loaded.model.ptr, &p, &out.result.ptr));
  } else {
    influmax_tim_params p;
    influmax_tim_params_init(&p);
    p.k = o.k;
    p.epsilon = o.epsilon;
    p.ell = o.ell;
    p.epsilon_prime = o.epsilon_prime.value_or(0.0);
    p.algorithm = algorithm == "tim" ? INFLUMAX_ALGO_TIM : INFLUMAX_ALGO_TIM_PLUS;
    p.seed = seed;
    p.threads = threads;
    check(influmax_run_tim(loaded.graph.ptr, loaded.model.ptr, &p, &out.result.ptr));
  }
  influmax_result_get_stats(out.result.ptr, &out.stats);
  return out;
}

int cmd_select(const CommonOptions& common, const SelectOptions& o) {
  const unsigned threads = common.threads ? common.threads : default_threads();
  auto loaded = load(common);
  RunOutcome run = run_algorithm(*loaded, o.algorithm, o, common.seed, threads);
  const auto& s = run.stats;
  const bool tim = o.algorithm != "greedy";

  ordered_json rec;
  rec["command"] = "select";
  rec["tool_version"] = influmax_version();
  rec["graph"] = common.graph_path;
  rec["model"] = common.model;
  rec["algorithm"] = o.algorithm;
  ordered_json params;
  params["k"] = o.k;
  params["epsilon"] = o.epsilon;
  params["ell"] = o.ell;
  params["epsilon_prime"] = o.algorithm == "tim+" ? ordered_json(s.epsilon_prime) : ordered_json(nullptr);
  params["r"] = o.algorithm == "greedy" ? ordered_json(o.r) : ordered_json(nullptr);
  params["lazy"] = o.lazy;
  params["threads"] = threads;
  params["undirected"] = common.undirected;
  rec["params"] = params;
  rec["master_seed"] = common.seed;
  rec["seeds"] = labels_of(loaded->graph.ptr, run.result.ptr);
  rec["estimated_spread"] = s.estimated_spread;
  rec["mc_spread"] = nullptr;
  rec["covered_fraction"] = tim ? ordered_json(s.covered_fraction) : ordered_json(nullptr);
  rec["kpt_star"] = tim ? ordered_json(s.kpt_star) : ordered_json(nullptr);
  rec["kpt_plus"] = o.algorithm == "tim+" ? ordered_json(s.kpt_plus) : ordered_json(nullptr);
  rec["lambda"] = tim ? ordered_json(s.lambda) : ordered_json(nullptr);
  rec["theta"] = tim ? ordered_json(s.theta) : ordered_json(nullptr);
  rec["theta_prime"] = o.algorithm == "tim+" ? ordered_json(s.theta_prime) : ordered_json(nullptr);
  rec["rr_sets_generated"] = s.rr_sets_generated;
  rec["timings"] = {{"kpt_estimation", s.seconds_kpt_estimation},
                    {"refinement", s.seconds_refinement},
                    {"node_selection", s.seconds_node_selection},
                    {"total", s.seconds_total}};
  rec["peak_rss_bytes"] = influmax_peak_rss_bytes();
  std::cout << rec.dump() << '\n';
  return 0;
}

int cmd_evaluate(const CommonOptions& common, const std::string& seed_list, std::uint64_t trials) {
  const unsigned threads = common.threads ? common.threads : default_threads();
  const std::vector<std::string> labels = split_list(seed_list);
  if (labels.empty()) throw CliError("--seeds must name at least one node");
  auto loaded = load(common);
  std::vector<uint32_t> seeds;
  for (const auto& label : labels) {
    uint32_t id = 0;
    check(influmax_graph_find_node(loaded->graph.ptr, label.c_str(), &id));
    seeds.push_back(id);
  }
  double mean = 0.0;
  double std_error = 0.0;
  check(influmax_simulate_spread(loaded->graph.ptr, loaded->model.ptr, seeds.data(), seeds.size(), trials,
                                 common.seed, threads, &mean, &std_error));
  ordered_json rec;
  rec["command"] = "evaluate";
  rec["tool_version"] = influmax_version();
  rec["graph"] = common.graph_path;
  rec["model"] = common.model;
  rec["master_seed"] = common.seed;
  rec["seeds"] = labels;
  rec["trials"] = trials;
  rec["mean"] = mean;
  rec["std_error"] = std_error;
  rec["mc_spread"] = mean;
  rec["peak_rss_bytes"] = influmax_peak_rss_bytes();
  std::cout << rec.dump() << '\n';
  return 0;
}

std::string format_number(double value) {
  std::ostringstream os;
  os << std::setprecision(10) << value;
  return os.str();
}

int cmd_benchmark(const CommonOptions& common, SelectOptions o, const std::string& k_list,
                  const std::string& epsilon_list, const std::string& algorithm_list,
                  std::uint32_t repeats) {
  const unsigned threads = common.threads ? common.threads : default_threads();
  std::vector<std::uint32_t> ks;
  std::vector<double> epsilons;
  try {
    for (const auto& t : split_list(k_list)) ks.push_back(static_cast<std::uint32_t>(std::stoul(t)));
    for (const auto& t : split_list(epsilon_list)) epsilons.push_back(std::stod(t));
  } catch (const std::exception&) {
    throw CliError("malformed --k-list or --epsilon-list");
  }
  const std::vector<std::string> algorithms = split_list(algorithm_list);
  for (const auto& a : algorithms) {
    if (a != "tim" && a != "tim+" && a != "greedy") throw CliError("unknown algorithm '" + a + "'");
  }
  if (ks.empty() || epsilons.empty() || algorithms.empty()) throw CliError("empty sweep list");

  auto loaded = load(common);
  std::cout << "algorithm,k,epsilon,run,seconds,spread_estimate,theta,kpt_star,kpt_plus\n";
  for (const auto& algorithm : algorithms) {
    for (std::uint32_t k : ks) {
      for (double eps : epsilons) {
        o.k = k;
        o.epsilon = eps;
        double sum_seconds = 0.0, sum_spread = 0.0, sum_theta = 0.0, sum_star = 0.0, sum_plus = 0.0;
        for (std::uint32_t run = 0; run < repeats; ++run) {
          RunOutcome r = run_algorithm(*loaded, algorithm, o, common.seed + run, threads);
          const auto& s = r.stats;
          sum_seconds += s.seconds_total;
          sum_spread += s.estimated_spread;
          sum_theta += static_cast<double>(s.theta);
          sum_star += s.kpt_star;
          sum_plus += s.kpt_plus;
          std::cout << algorithm << ',' << k << ',' << format_number(eps) << ',' << run << ','
                    << format_number(s.seconds_total) << ',' << format_number(s.estimated_spread) << ',';
          if (algorithm != "greedy") std::cout << s.theta << ',' << format_number(s.kpt_star);
          else std::cout << ',';
          std::cout << ',';
          if (algorithm == "tim+") std::cout << format_number(s.kpt_plus);
          std::cout << '\n';
        }
        const double n = static_cast<double>(repeats);
        std::cout << algorithm << ',' << k << ',' << format_number(eps) << ",mean,"
                  << format_number(sum_seconds / n) << ',' << format_number(sum_spread / n) << ',';
        if (algorithm != "greedy") std::cout << format_number(sum_theta / n) << ',' << format_number(sum_star / n);
        else std::cout << ',';
        std::cout << ',';
        if (algorithm == "tim+") std::cout << format_number(sum_plus / n);
        std::cout << '\n';
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Influence maximization with reverse-reachable sampling"};
  app.set_version_flag("--version", std::string(influmax_version()));
  app.require_subcommand(1);

  CommonOptions select_common;
  SelectOptions select_opts;
  auto* select = app.add_subcommand("select", "Choose k seed nodes");
  add_common(select, select_common);
  select->add_option("--k", select_opts.k, "Seed-set size")->required()->check(CLI::PositiveNumber);
  select->add_option("--epsilon", select_opts.epsilon, "Approximation slack in (0, 1]")
      ->check(CLI::Range(0.0, 1.0));
  select->add_option("--ell", select_opts.ell, "Failure exponent: succeed with prob. 1 - n^-ell")
      ->check(CLI::Range(0.5, 1e6));
  select->add_option("--algorithm", select_opts.algorithm, "tim, tim+ or greedy")
      ->required()
      ->check(CLI::IsMember({"tim", "tim+", "greedy"}));
  select->add_option("--epsilon-prime", select_opts.epsilon_prime, "TIM+ refinement slack")
      ->check(CLI::PositiveNumber);
  select->add_option("--r", select_opts.r, "Greedy: simulations per estimate")->check(CLI::PositiveNumber);
  select->add_flag("--lazy", select_opts.lazy, "Greedy: lazy (CELF) evaluation");

  CommonOptions eval_common;
  std::string eval_seeds;
  std::uint64_t eval_trials = 10000;
  auto* evaluate = app.add_subcommand("evaluate", "Monte-Carlo spread of a seed set");
  add_common(evaluate, eval_common);
  evaluate->add_option("--seeds", eval_seeds, "Comma-separated node ids")->required();
  evaluate->add_option("--trials", eval_trials, "Number of simulations")->check(CLI::PositiveNumber);

  CommonOptions bench_common;
  SelectOptions bench_opts;
  std::string k_list;
  std::string epsilon_list = "0.1";
  std::string algorithm_list = "tim,tim+";
  std::uint32_t repeats = 3;
  auto* benchmark = app.add_subcommand("benchmark", "Timing sweep over k, epsilon and algorithms (CSV)");
  add_common(benchmark, bench_common);
  benchmark->add_option("--k-list", k_list, "Comma-separated k values")->required();
  benchmark->add_option("--epsilon-list", epsilon_list, "Comma-separated epsilon values");
  benchmark->add_option("--algorithms", algorithm_list, "Comma-separated: tim, tim+, greedy");
  benchmark->add_option("--repeats", repeats, "Runs per cell")->check(CLI::PositiveNumber);
  benchmark->add_option("--ell", bench_opts.ell, "Failure exponent")->check(CLI::Range(0.5, 1e6));
  benchmark->add_option("--epsilon-prime", bench_opts.epsilon_prime, "TIM+ refinement slack")
      ->check(CLI::PositiveNumber);
  benchmark->add_option("--r", bench_opts.r, "Greedy: simulations per estimate")->check(CLI::PositiveNumber);
  benchmark->add_flag("--lazy", bench_opts.lazy, "Greedy: lazy (CELF) evaluation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*select) return cmd_select(select_common, select_opts);
    if (*evaluate) return cmd_evaluate(eval_common, eval_seeds, eval_trials);
    if (*benchmark) return cmd_benchmark(bench_common, bench_opts, k_list, epsilon_list, algorithm_list, repeats);
  } catch (const std::exception& e) {
    std::cerr << "influmax: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
