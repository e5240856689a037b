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

// Orthogonal projections onto linear m-planes and their measure surrogates.

#ifndef RECTLAB_SHADOW_HPP_
#define RECTLAB_SHADOW_HPP_

#include <cstdint>
#include <vector>

#include "rectlab/measure.hpp"
#include "rectlab/sets.hpp"

namespace rectlab {

// Orthonormal m-frame spanning a linear m-plane of R^n.
struct Frame {
  int n = 2;
  int m = 1;
  std::array<Vec, kMaxDim> axes{};

  static Frame Axis(int n, int axis);        // span(e_axis)
  static Frame Coordinates(int n, std::uint32_t axis_mask);
  static Frame FromAngle(double theta);      // span((cos t, sin t)) in R^2
  bool IsOrthonormal(double tol = 1e-12) const;
  // Unit vector orthogonal to the frame (only when m = n - 1).
  Vec Normal() const;
};

// Pushforward on the m-plane, expressed in frame coordinates.
WeightedCloud OrthoProject(const WeightedCloud& cloud, const Frame& frame);

MeasureEstimate ShadowMeasure(const WeightedCloud& cloud, const Frame& frame,
                              double delta);

// Seeded frames, uniform on the Grassmannian (Gaussian + Gram-Schmidt).
std::vector<Frame> SampleFrames(int n, int m, int count, std::uint64_t seed);

// Median nearest-neighbour distance; the natural resolution of a cloud.
double CloudResolution(const WeightedCloud& cloud);

struct DirectionSearch {
  Frame best;
  double best_shadow = 0.0;
  std::vector<Frame> frames;
  std::vector<double> shadows;
  double scale = 0.0;
};

// Minimizes the shadow over the coordinate frames plus seeded samples.
// A non-positive delta selects the cloud's own resolution.
DirectionSearch BfDirectionSearch(const WeightedCloud& w, int m, int samples,
                                  std::uint64_t seed, double delta = 0.0);

}  // namespace rectlab

#endif  // RECTLAB_SHADOW_HPP_
