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

// Experiment orchestration: config in, report and artifacts out.

#ifndef RECTLAB_RUNNER_HPP_
#define RECTLAB_RUNNER_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rectlab/json_io.hpp"

namespace rectlab {

inline constexpr int kReportSchema = 1;

enum ExitCode : int {
  kExitPass = 0,
  kExitCertificateFailed = 1,
  kExitBadConfig = 2,
  kExitRefused = 3,
};

struct Artifacts {
  Json report;
  bool pass = false;
  // File name and content, written only after the run has completed.
  std::vector<std::pair<std::string, std::string>> files;
};

const std::vector<std::string>& ExperimentNames();

// Pure part of a run: no filesystem access except cloud_csv inputs.
Artifacts Execute(const std::string& experiment, const ExperimentConfig& config, bool svg);

struct RunRequest {
  std::string experiment;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  bool svg = false;
};

struct RunOutcome {
  int exit_code = kExitBadConfig;
  std::string message;
  std::vector<std::string> written;
};

// Reads and validates the config, runs, then writes every file atomically.
// Nothing is written unless the run itself completes.
RunOutcome RunExperiment(const RunRequest& request);

}  // namespace rectlab

#endif  // RECTLAB_RUNNER_HPP_
