// Copyright 2026 The tetris-adapt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Command-line front end: tetris-adapt run|compare|landscape [options]

#include <CLI11.hpp>

#include <iostream>
#include <thread>

#include "tetris/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"ADAPT-VQE and TETRIS-ADAPT-VQE on exact statevectors"};
  app.set_config("--config", "", "key = value file; command-line flags take precedence");

  tetris::RunConfig cfg;
  cfg.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::string command, pool = "qubit", init = "warm";
  std::vector<std::string> variants, fixtures;
  std::string out = ".";

  app.add_option("command", command, "run, compare or landscape")
      ->required()
      ->check(CLI::IsMember({"run", "compare", "landscape"}));
  app.add_option("--fixture", fixtures, "FCIDUMP or Hamiltonian JSON file (repeatable)")->required();
  app.add_option("--pool", pool, "operator pool")->check(CLI::IsMember({"qubit", "qe", "fermionic"}));
  app.add_option("--variant", variants, "adapt and/or tetris (default both)")
      ->check(CLI::IsMember({"adapt", "tetris"}));
  app.add_option("--max-layers", cfg.max_layers, "layer cap")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", cfg.seed, "seed for random initialization");
  app.add_option("--out", out, "output directory");
  app.add_option("--threshold", cfg.threshold, "pool gradient norm threshold");
  app.add_option("--floor", cfg.eligibility_floor, "smallest gradient eligible for a batch");
  app.add_option("--gtol", cfg.gradient_tolerance, "optimizer gradient norm tolerance");
  app.add_option("--stagnation", cfg.stagnation_tolerance, "smallest per-layer energy drop, 0 to disable");
  app.add_option("--init", init, "parameter initialization")
      ->check(CLI::IsMember({"warm", "cold", "random"}));
  app.add_option("--samples", cfg.samples, "random starts per layer (landscape)");
  app.add_option("--range-min", cfg.range_min, "lower bound of random parameters");
  app.add_option("--range-max", cfg.range_max, "upper bound of random parameters");
  app.add_option("--landscape-layers", cfg.landscape_layers, "last sampled layer, 0 for all");
  app.add_option("--threads", cfg.threads, "worker threads");

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.pool = tetris::parse_pool_kind(pool);
    cfg.init_mode = tetris::parse_init_mode(init);
    cfg.out = out;
    for (const auto& f : fixtures) cfg.fixtures.emplace_back(f);
    if (!variants.empty()) {
      cfg.variants.clear();
      for (const auto& v : variants) cfg.variants.push_back(tetris::parse_variant(v));
    }
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (command == "run") return tetris::cmd_run(cfg, std::cout);
    if (command == "compare") return tetris::cmd_compare(cfg, std::cout);
    return tetris::cmd_landscape(cfg, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
