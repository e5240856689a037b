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

// Top-level experiments: the near-identity collapse of the unrectifiable
// part, the lower-semicontinuity verdict over a sequence of perturbations,
// the tangent-shadow inclusion check and semi-regularity constants.

#ifndef RECTLAB_LAB_HPP_
#define RECTLAB_LAB_HPP_

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "rectlab/federer_fleming.hpp"
#include "rectlab/measure.hpp"
#include "rectlab/piecewise_map.hpp"
#include "rectlab/sets.hpp"

namespace rectlab {

struct PsiOptions {
  int m = 1;
  double c_config = 20.0;
  double measure_scale = 0x1.0p-14;
  std::size_t ambient_samples = 10000;
  std::size_t lipschitz_pairs = 20000;
  std::uint64_t seed = 1;
  int max_level = 14;
  double radius_factor = 9.0 / 8.0;
  FedererFlemingOptions ff;  // m, seed, c_config and measure_scale are overridden

  void Validate() const;
};

struct PsiResult {
  double epsilon = 0.0;
  double delta = 0.0;
  BallSystem balls;
  RootCube root;
  int level = 0;
  FedererFlemingResult ff;
  PiecewiseMap map;
  WeightedCloud image;

  double h_e = 0.0;  // surrogates at the measure scale
  double h_u = 0.0;
  double h_r = 0.0;
  double h_image = 0.0;
  double h_image_u = 0.0;
  double h_image_r = 0.0;

  // sup-distance, identity off the U neighbourhood, R growth, U collapse.
  std::vector<Inequality> certificates;
  bool derived_applicable = false;  // epsilon < h_u / 4
  Inequality derived;               // h_image < h_e - h_u / 2
  LipschitzEstimate lipschitz;
  double sup_distance = 0.0;
  std::vector<std::string> log;

  bool AllPass() const;
};

PsiResult BuildPsiEpsilon(const WeightedCloud& cloud, double epsilon,
                          const PsiOptions& options = {});

struct PerturbationSequence {
  std::vector<PiecewiseMap> maps;
  std::vector<double> sup_distances;
  std::vector<double> lip_bounds;
  std::vector<double> measures;
  double declared_lip_bound = std::numeric_limits<double>::infinity();
};

struct Verdict {
  enum class Kind { kRectifiableConsistent, kUnrectifiableWitness, kInconclusive };
  Kind kind = Kind::kInconclusive;
  double h_e = 0.0;
  double eta = 0.0;       // h_e - max over the tail
  double tail_min = 0.0;
  double tolerance = 0.0;
  std::size_t tail_start = 0;
  bool lip_bounded = false;
  bool sup_decreasing = false;
  std::vector<std::string> evidence;
};

const char* VerdictName(Verdict::Kind kind);

// A negative tolerance selects 5% of the measure of E.
Verdict SemicontinuityTest(const WeightedCloud& cloud, const PerturbationSequence& seq,
                           int m, double scale, double tolerance = -1.0);

struct TangentShadow {
  bool covered = false;
  double largest_gap = 0.0;
  double step = 0.0;
  std::size_t points = 0;
};

// Refuses when x is too close to an end of the curve or the curve leaves
// the cone of aperture epsilon around the tangent line inside B(x, 2r).
TangentShadow TangentShadowCheck(const CurveSpec& curve, const PiecewiseMap& map,
                                 const Vec& x, double r, double epsilon);

struct SemiRegularity {
  double estimate = 0.0;
  std::vector<double> per_pair;  // max over centers, per (r, R)
};

SemiRegularity SemiRegularityEstimate(const WeightedCloud& cloud, int m,
                                      const std::vector<std::pair<double, double>>& pairs,
                                      std::size_t sample_centers, std::uint64_t seed);

// Size of the greedy r-net of the given points, taken in index order.
std::size_t GreedyNetSize(const std::vector<Vec>& points, int n, double r);

}  // namespace rectlab

#endif  // RECTLAB_LAB_HPP_
