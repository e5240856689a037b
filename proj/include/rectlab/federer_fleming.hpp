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

// Deformation of a weighted cloud onto the m-skeleton of a dyadic complex by
// radial projections from well-chosen centers, face by face in decreasing
// dimension, followed by an optional collapse of the U part along edges.

#ifndef RECTLAB_FEDERER_FLEMING_HPP_
#define RECTLAB_FEDERER_FLEMING_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "rectlab/cells.hpp"
#include "rectlab/measure.hpp"
#include "rectlab/piecewise_map.hpp"
#include "rectlab/sets.hpp"

namespace rectlab {

struct FedererFlemingOptions {
  int m = 1;
  int center_candidates = 64;
  std::uint64_t seed = 1;
  double min_clearance = 1e-3;  // in face-side units
  double clearance_keep = 0.5;  // candidates below this share of the best clearance are dropped
  double c_config = 20.0;
  double measure_scale = 0x1.0p-14;
  int bf_samples = 32;
  double collapse_gap = 0.125;    // cluster merge gap, in edge lengths
  double collapse_budget = 0.75;  // max collapsed share of an edge

  void Validate() const;
};

struct CenterChoice {
  DyadicCell face;
  Vec center{0.0, 0.0, 0.0};
  double clearance = 0.0;
  double r_ratio = 0.0;  // occupied cells of the R image / of the R input
  std::size_t w_image_cells = 0;
  bool from_bf = false;
  int candidates = 0;
};

// Picks c in the middle half of `face` with the points of the face at
// clearance >= min_clearance * side. Points flagged U steer the choice
// towards a center whose projection crushes them.
CenterChoice ChooseCenter(const RootCube& root, const DyadicCell& face,
                          std::span<const Vec> points, std::span<const Part> parts,
                          const FedererFlemingOptions& options, std::uint64_t seed);

// Exit points of the rays from `center`; refuses points closer than
// `clearance`.
std::vector<Vec> RadialProjectInCell(const RootCube& root, const DyadicCell& face,
                                     const Vec& center, std::span<const Vec> points,
                                     double clearance);

// Knots of a monotone piecewise-linear map of [0, length] onto itself that
// is flat on clusters of `params` and fixes both ends.
void CollapseKnots(double length, std::span<const double> params,
                   std::span<const double> weights, double gap, double budget,
                   std::vector<double>* knots_in, std::vector<double>* knots_out);

// True when every grid cube containing `face` belongs to the complex.
bool IsInteriorFace(const CellComplex& complex, const DyadicCell& face);

struct CubeRatio {
  DyadicCell cube;
  std::size_t input_cells = 0;
  std::size_t image_cells = 0;
  double ratio = 0.0;
};

struct FedererFlemingResult {
  PiecewiseMap map;
  CellComplex complex;
  WeightedCloud image;
  // Per input point: index of the closed support cube it starts in, or -1.
  std::vector<std::int64_t> origin_cube;
  std::vector<CenterChoice> centers;
  std::vector<CubeRatio> cube_ratios;
  Inequality c_certificate;  // max per-cube ratio <= c_config
  std::size_t active_faces = 0;
  std::size_t collapsed_edges = 0;
  MeasureEstimate w_input;
  MeasureEstimate w_image;
};

FedererFlemingResult FedererFlemingMap(const WeightedCloud& cloud,
                                       const CellComplex& complex,
                                       const FedererFlemingOptions& options);

FedererFlemingResult FedererFlemingMap(const WeightedCloud& cloud,
                                       const RootCube& root, int level,
                                       const CellOracle& s,
                                       const FedererFlemingOptions& options);

}  // namespace rectlab

#endif  // RECTLAB_FEDERER_FLEMING_HPP_
