// Copyright 2026 The rectlab Authors
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

// rectlab run <experiment> --config <path> [--seed N] [--out DIR] [--svg]

#include <cstdint>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "rectlab/rectlab.h"

int main(int argc, char** argv) {
  CLI::App app{"rectlab: rectifiability experiments on weighted point clouds"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(rl_version()));

  CLI::App* run = app.add_subcommand("run", "run one experiment and write its report");
  std::string experiment;
  std::string config;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  bool svg = false;
  run->add_option("experiment", experiment, "grid | shadow | ffmap | psi | rectify | semireg")
      ->required()
      ->check(CLI::IsMember({"grid", "shadow", "ffmap", "psi", "rectify", "semireg"}));
  run->add_option("--config", config, "JSON experiment config")->required();
  CLI::Option* seed_opt = run->add_option("--seed", seed, "overrides the config seed");
  run->add_option("--out", out_dir, "output directory");
  run->add_flag("--svg", svg, "also write SVG drawings");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  int exit_code = 2;
  char* message = nullptr;
  const rl_status status = rl_run_experiment(experiment.c_str(), config.c_str(),
                                             seed_opt->count() > 0 ? 1 : 0, seed,
                                             out_dir.c_str(), svg ? 1 : 0, &exit_code, &message);
  if (status != RL_OK) {
    std::fprintf(stderr, "rectlab: %s\n", rl_last_error_message());
    return 3;
  }
  std::FILE* stream = exit_code == 0 ? stdout : stderr;
  std::fprintf(stream, "rectlab %s: %s\n", experiment.c_str(), message != nullptr ? message : "");
  rl_string_free(message);
  return exit_code;
}
