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

#include "rectlab/shadow.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numbers>
#include <random>

namespace rectlab {
namespace {

constexpr char kModule[] = "projection-ops";

Vec Gaussian(std::mt19937_64& rng, int n) {
  Vec v{0.0, 0.0, 0.0};
  for (int a = 0; a < n; ++a) {
    const double u1 = std::max(Uniform01(rng), 0x1.0p-60);
    const double u2 = Uniform01(rng);
    v[a] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }
  return v;
}

// Gram-Schmidt against the first k axes; false when v is (nearly) dependent.
bool Orthonormalize(std::array<Vec, kMaxDim>& axes, int k, Vec v) {
  for (int i = 0; i < k; ++i) v = v - Dot(v, axes[i]) * axes[i];
  const double len = Norm(v);
  if (len < 1e-9) return false;
  axes[k] = (1.0 / len) * v;
  return true;
}

}  // namespace

Frame Frame::Axis(int n, int axis) { return Coordinates(n, 1u << axis); }

Frame Frame::Coordinates(int n, std::uint32_t axis_mask) {
  Frame f;
  f.n = n;
  f.m = std::popcount(axis_mask);
  int k = 0;
  for (int a = 0; a < n; ++a) {
    if ((axis_mask >> a) & 1u) {
      f.axes[k] = {0.0, 0.0, 0.0};
      f.axes[k][a] = 1.0;
      ++k;
    }
  }
  return f;
}

Frame Frame::FromAngle(double theta) {
  Frame f;
  f.n = 2;
  f.m = 1;
  f.axes[0] = {std::cos(theta), std::sin(theta), 0.0};
  return f;
}

bool Frame::IsOrthonormal(double tol) const {
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double expect = i == j ? 1.0 : 0.0;
      if (std::abs(Dot(axes[i], axes[j]) - expect) > tol) return false;
    }
  }
  return true;
}

Vec Frame::Normal() const {
  if (m != n - 1) throw Refusal(kModule, "normal requested for a frame of codimension != 1");
  std::array<Vec, kMaxDim> basis = axes;
  Vec best{0.0, 0.0, 0.0};
  double best_len = -1.0;
  for (int a = 0; a < n; ++a) {
    Vec e{0.0, 0.0, 0.0};
    e[a] = 1.0;
    for (int i = 0; i < m; ++i) e = e - Dot(e, basis[i]) * basis[i];
    if (Norm(e) > best_len) {
      best_len = Norm(e);
      best = e;
    }
  }
  return (1.0 / best_len) * best;
}

WeightedCloud OrthoProject(const WeightedCloud& cloud, const Frame& frame) {
  if (frame.n != cloud.n && !cloud.empty()) {
    throw Refusal(kModule, "frame and cloud live in different dimensions");
  }
  if (!frame.IsOrthonormal()) throw Refusal(kModule, "frame is not orthonormal");
  WeightedCloud out;
  out.n = std::max(frame.m, 1);
  out.weights = cloud.weights;
  out.parts = cloud.parts;
  out.points.reserve(cloud.size());
  for (const Vec& p : cloud.points) {
    Vec q{0.0, 0.0, 0.0};
    for (int i = 0; i < frame.m; ++i) q[i] = Dot(p, frame.axes[i]);
    out.points.push_back(q);
  }
  return out;
}

MeasureEstimate ShadowMeasure(const WeightedCloud& cloud, const Frame& frame,
                              double delta) {
  return MeasureAtScale(OrthoProject(cloud, frame), frame.m, delta);
}

std::vector<Frame> SampleFrames(int n, int m, int count, std::uint64_t seed) {
  if (m < 1 || m > n) throw Refusal(kModule, "frame dimension out of range");
  std::mt19937_64 rng(seed);
  std::vector<Frame> frames;
  frames.reserve(count);
  while (static_cast<int>(frames.size()) < count) {
    Frame f;
    f.n = n;
    f.m = m;
    bool ok = true;
    for (int k = 0; k < m && ok; ++k) ok = Orthonormalize(f.axes, k, Gaussian(rng, n));
    if (ok) frames.push_back(f);
  }
  return frames;
}

double CloudResolution(const WeightedCloud& cloud) {
  if (cloud.size() < 2) return 0.0;
  Vec lo = cloud.points.front();
  Vec hi = lo;
  for (const Vec& p : cloud.points) {
    for (int a = 0; a < cloud.n; ++a) {
      lo[a] = std::min(lo[a], p[a]);
      hi[a] = std::max(hi[a], p[a]);
    }
  }
  const double extent = std::max(Distance(lo, hi), 1e-300);
  double bucket = extent / std::pow(static_cast<double>(cloud.size()), 1.0 / cloud.n);
  std::vector<double> nearest(cloud.size(), std::numeric_limits<double>::infinity());
  // Grow the search radius until every point has found a neighbour.
  for (int round = 0; round < 60; ++round) {
    const PointIndex index(cloud.points, cloud.n, bucket);
    bool all = true;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      if (std::isfinite(nearest[i])) continue;
      index.ForEachInBall(cloud.points[i], bucket, [&](std::size_t k) {
        if (k != i) nearest[i] = std::min(nearest[i], Distance(cloud.points[i], cloud.points[k]));
      });
      if (!std::isfinite(nearest[i])) all = false;
    }
    if (all) break;
    bucket *= 2.0;
  }
  // Distances found at one radius may not be the true minimum for points
  // resolved late; refine each with a ball of its current estimate.
  const PointIndex index(cloud.points, cloud.n, bucket);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    index.ForEachInBall(cloud.points[i], nearest[i], [&](std::size_t k) {
      if (k != i) nearest[i] = std::min(nearest[i], Distance(cloud.points[i], cloud.points[k]));
    });
  }
  std::nth_element(nearest.begin(), nearest.begin() + nearest.size() / 2, nearest.end());
  return nearest[nearest.size() / 2];
}

DirectionSearch BfDirectionSearch(const WeightedCloud& w, int m, int samples,
                                  std::uint64_t seed, double delta) {
  if (samples < 1) throw Refusal(kModule, "direction search needs at least one sample");
  const int n = w.n;
  DirectionSearch out;
  out.scale = delta > 0.0 ? delta : CloudResolution(w);
  if (!(out.scale > 0.0)) out.scale = 1.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) == m) out.frames.push_back(Frame::Coordinates(n, mask));
  }
  const int extra = std::max(0, samples - static_cast<int>(out.frames.size()));
  for (const Frame& f : SampleFrames(n, m, extra, seed)) out.frames.push_back(f);
  out.best_shadow = std::numeric_limits<double>::infinity();
  for (const Frame& f : out.frames) {
    const double s = w.empty() ? 0.0 : ShadowMeasure(w, f, out.scale).value;
    out.shadows.push_back(s);
    if (s < out.best_shadow) {
      out.best_shadow = s;
      out.best = f;
    }
  }
  return out;
}

}  // namespace rectlab
