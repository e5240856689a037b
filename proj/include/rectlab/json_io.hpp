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

// JSON encodings of the core types and of experiment configs.

#ifndef RECTLAB_JSON_IO_HPP_
#define RECTLAB_JSON_IO_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "rectlab/cells.hpp"
#include "rectlab/lab.hpp"
#include "rectlab/measure.hpp"
#include "rectlab/piecewise_map.hpp"
#include "rectlab/sets.hpp"

namespace rectlab {

using Json = nlohmann::ordered_json;

Json ToJson(const Vec& v, int n);
Json ToJson(const DyadicCell& cell, int n);
Json ToJson(const MeasureEstimate& estimate);
Json ToJson(const Inequality& inequality);
Json ToJson(const BallSystem& system, int n);
Json ToJson(const PiecewiseMap& map);
Json ToJson(const LipschitzEstimate& estimate, int n);

PiecewiseMap MapFromJson(const Json& doc);

// Everything an experiment reads. Unset fields keep the defaults below, and
// the whole struct is echoed into the report.
struct ExperimentConfig {
  Json set;  // set model spec
  std::uint64_t seed = 1;
  int m = 1;
  std::vector<double> epsilons{0.2, 0.1, 0.05};

  // Grid.
  RootCube root;
  bool root_given = false;
  int level = 5;
  int max_level = 14;
  std::string support = "whole";  // whole | set

  // Federer-Fleming and the psi construction.
  double c_config = 20.0;
  double measure_scale = 0x1.0p-14;
  double min_clearance = 1e-3;
  double clearance_keep = 0.5;
  int center_candidates = 64;
  int bf_samples = 32;
  double collapse_gap = 0.125;
  double collapse_budget = 0.75;
  double w_ratio_target = 0.2;
  std::size_t ambient_samples = 10000;
  std::size_t lipschitz_pairs = 20000;
  double radius_factor = 9.0 / 8.0;

  // Shadows.
  int directions = 100;
  double delta = 0.0;  // 0 selects the cloud resolution

  // Perturbation sequences.
  std::string sequence = "isometries";  // isometries | ff | psi
  int count = 3;
  std::vector<int> levels{2, 3, 4};
  double declared_lip_bound = 10.0;
  double tolerance = -1.0;
  std::string expect;  // optional expected verdict

  // Semi-regularity.
  std::vector<std::pair<double, double>> scale_pairs;
  std::size_t sample_centers = 32;
  double semireg_bound = 0.0;  // 0: no bound asserted

  void Validate() const;
};

ExperimentConfig ParseConfig(const Json& doc);
Json ConfigToJson(const ExperimentConfig& config);

// Builds the cloud named by a set spec; polyline-like models also return
// their curve so callers can run curve diagnostics.
WeightedCloud BuildSet(const Json& spec, std::vector<CurveSpec>* curves = nullptr);

}  // namespace rectlab

#endif  // RECTLAB_JSON_IO_HPP_
