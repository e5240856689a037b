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

// Hausdorff premeasure surrogates on weighted clouds, densities, and the
// disjoint ball system that localizes the unrectifiable part.

#ifndef RECTLAB_MEASURE_HPP_
#define RECTLAB_MEASURE_HPP_

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "rectlab/sets.hpp"

namespace rectlab {

// Measure of the unit m-ball, used by the tangent-shadow diagnostic.
double UnitBallMeasure(int m);

struct MeasureEstimate {
  enum class Method { kDyadicCover, kWeightSum };

  double value = 0.0;
  double scale = 0.0;      // requested delta
  double cell_side = 0.0;  // 2^-level, the largest dyadic side <= delta
  int level = 0;
  std::size_t cells = 0;
  Method method = Method::kDyadicCover;
  double weight_sum = 0.0;  // cross-check
  double lower = 0.0;
  double upper = 0.0;
};

// Sum of (cell diameter)^m over the occupied half-open dyadic cells of side
// 2^-j <= delta, anchored at the origin.
MeasureEstimate MeasureAtScale(const WeightedCloud& cloud, int m, double delta);

// Number of distinct occupied cells only; shared by the shadow code.
std::size_t OccupiedCells(std::span<const Vec> points, int n, double cell_side);

// (sum of weights in the closed ball B(p, r)) / (2r)^s
double Density(const WeightedCloud& cloud, const Vec& p, double s, double r);

// Uniform bucket grid over a fixed point array for closed-ball queries.
class PointIndex {
 public:
  PointIndex(std::span<const Vec> points, int n, double bucket);
  void ForEachInBall(const Vec& center, double radius,
                     const std::function<void(std::size_t)>& visit) const;

 private:
  std::span<const Vec> points_;
  int n_;
  double bucket_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets_;
  std::uint64_t Key(const std::array<std::int64_t, kMaxDim>& idx) const;
};

struct Inequality {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool strict = true;  // lhs < rhs, otherwise lhs <= rhs
  bool holds() const { return strict ? lhs < rhs : lhs <= rhs; }
};

struct Ball {
  Vec center{0.0, 0.0, 0.0};
  double radius = 0.0;
  std::size_t center_index = 0;
  double u_weight = 0.0;  // weight of U inside the closed ball
  double r_weight = 0.0;  // weight of E \ U inside the closed ball
  Inequality remainder_small;  // (E\U)(B) < delta r^m
  Inequality u_large;          // r^m / 2 < U(B)
  bool u_upper_bound_ok = true;  // U(B) <= 2^{m+1} r^m, logged only
};

struct BallSystem {
  int m = 1;
  double delta = 0.0;
  double eta = 0.0;
  std::vector<Ball> balls;
  Inequality residual;        // U outside the balls < delta
  Inequality annulus;         // sum of E in the padded annuli < delta
  Inequality remainder_total; // sum of (E\U)(B_k) < 2 delta E-total
  std::vector<std::string> log;
};

struct BallSystemOptions {
  int m = 1;
  double radius_factor = 9.0 / 8.0;  // radii are radius_factor * 4^-t
  double max_radius = std::numeric_limits<double>::infinity();
  int max_eta_halvings = 40;
};

BallSystem FindBallSystem(const WeightedCloud& cloud, double delta,
                          const BallSystemOptions& options = {});

}  // namespace rectlab

#endif  // RECTLAB_MEASURE_HPP_
