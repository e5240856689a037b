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

#include "rectlab/piecewise_map.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <random>

namespace rectlab {
namespace {

constexpr char kModule[] = "projection-ops";

}  // namespace

double FaceStage::Sigma(double u) const {
  if (knots_in.size() < 2) return u;
  const double length = knots_in.back();
  u = std::clamp(u, 0.0, length);
  auto it = std::upper_bound(knots_in.begin(), knots_in.end(), u);
  if (it == knots_in.end()) return knots_out.back();
  const std::size_t i = static_cast<std::size_t>(it - knots_in.begin());
  const double x0 = knots_in[i - 1];
  const double x1 = knots_in[i];
  if (x1 <= x0) return knots_out[i];
  const double y0 = knots_out[i - 1];
  const double y1 = knots_out[i];
  if (y0 == y1) return y0;
  return y0 + (u - x0) * (y1 - y0) / (x1 - x0);
}

FaceDeformation::FaceDeformation(RootCube root, int level, int m,
                                 std::vector<FaceStage> stages)
    : root_(root), level_(level), m_(m), stages_(std::move(stages)) {
  for (std::size_t i = 0; i < stages_.size(); ++i) {
    if (!index_.emplace(stages_[i].face, i).second) {
      throw Refusal(kModule, "duplicate face stage");
    }
  }
}

const FaceStage* FaceDeformation::StageFor(const DyadicCell& face) const {
  auto it = index_.find(face);
  return it == index_.end() ? nullptr : &stages_[it->second];
}

Vec RadialExit(const RootCube& root, const DyadicCell& face, const Vec& c,
               const Vec& p) {
  const Box box = face.Realize(root);
  const Vec v = p - c;
  double best = std::numeric_limits<double>::infinity();
  int hit = -1;
  double plane = 0.0;
  for (int a = 0; a < root.n; ++a) {
    if (!face.Spans(a)) continue;
    double t = std::numeric_limits<double>::infinity();
    double target = 0.0;
    if (v[a] > 0.0) {
      target = box.hi[a];
      t = (target - c[a]) / v[a];
    } else if (v[a] < 0.0) {
      target = box.lo[a];
      t = (target - c[a]) / v[a];
    }
    if (t < best) {
      best = t;
      hit = a;
      plane = target;
    }
  }
  if (hit < 0) throw Refusal(kModule, "radial projection from the center itself");
  const double s = root.CellSide(face.level);
  Vec e = c + best * v;
  for (int a = 0; a < root.n; ++a) {
    if (!face.Spans(a)) {
      e[a] = box.lo[a];
    } else if (a == hit) {
      e[a] = plane;
    } else {
      e[a] = std::clamp(e[a], box.lo[a], box.hi[a]);
      if (e[a] - box.lo[a] <= 1e-12 * s) e[a] = box.lo[a];
      if (box.hi[a] - e[a] <= 1e-12 * s) e[a] = box.hi[a];
    }
  }
  for (int a = root.n; a < kMaxDim; ++a) e[a] = 0.0;
  return e;
}

Vec FaceDeformation::ApplyOnFace(const DyadicCell& face, const Vec& p) const {
  const FaceStage* stage = StageFor(face);
  if (stage == nullptr) return p;
  if (stage->kind == FaceStage::Kind::kCollapse) {
    const Box box = face.Realize(root_);
    int axis = 0;
    while (axis < root_.n && !face.Spans(axis)) ++axis;
    Vec q = p;
    const double out = stage->Sigma(p[axis] - box.lo[axis]);
    if (out <= 0.0) {
      q[axis] = box.lo[axis];
    } else if (out >= stage->knots_out.back()) {
      q[axis] = box.hi[axis];
    } else {
      q[axis] = box.lo[axis] + out;
    }
    return q;
  }
  const Vec& c = stage->center;
  const double r = Distance(p, c);
  if (r == 0.0) return c;
  const Vec e = RadialExit(root_, face, c, p);
  DyadicCell sub;
  if (!LocateFace(root_, level_, e, kFaceSnap, &sub) || sub.dim >= face.dim) {
    throw Refusal(kModule, "radial exit did not land on the face boundary");
  }
  const Vec q = ApplyOnFace(sub, e);
  if (r >= stage->stretch_radius) return q;
  return c + (r / stage->stretch_radius) * (q - c);
}

Vec FaceDeformation::Apply(const Vec& p) const {
  DyadicCell face;
  if (!LocateFace(root_, level_, p, kFaceSnap, &face)) return p;
  return ApplyOnFace(face, p);
}

Vec AffineMap::Apply(const Vec& x, int n) const {
  Vec y{0.0, 0.0, 0.0};
  for (int i = 0; i < n; ++i) {
    double acc = b[i];
    for (int j = 0; j < n; ++j) acc += a[3 * i + j] * x[j];
    y[i] = acc;
  }
  return y;
}

PiecewiseMap PiecewiseMap::Compose(const PiecewiseMap& a, const PiecewiseMap& b) {
  if (a.n_ != b.n_) throw Refusal(kModule, "composing maps of different dimension");
  PiecewiseMap out(a.n_);
  out.chain_ = b.chain_;
  out.chain_.insert(out.chain_.end(), a.chain_.begin(), a.chain_.end());
  return out;
}

Vec PiecewiseMap::Apply(const Vec& p) const {
  Vec x = p;
  for (const MapComponent& c : chain_) {
    if (const auto* f = std::get_if<FaceDeformation>(&c)) {
      x = f->Apply(x);
    } else {
      x = std::get<AffineMap>(c).Apply(x, n_);
    }
  }
  return x;
}

WeightedCloud PiecewiseMap::Apply(const WeightedCloud& cloud) const {
  WeightedCloud out = cloud;
  for (Vec& p : out.points) p = Apply(p);
  return out;
}

LipschitzEstimate EstimateLipschitz(const PiecewiseMap& map,
                                    const WeightedCloud& cloud,
                                    std::size_t pairs, std::uint64_t seed,
                                    double base_scale, double depth) {
  LipschitzEstimate out;
  if (cloud.empty() || pairs == 0) return out;
  std::mt19937_64 rng(seed);
  const int n = map.n();
  for (std::size_t k = 0; k < pairs; ++k) {
    const Vec& x = cloud.points[static_cast<std::size_t>(Uniform01(rng) * cloud.size())];
    Vec u{0.0, 0.0, 0.0};
    double len = 0.0;
    while (len < 1e-6) {
      for (int a = 0; a < n; ++a) {
        const double u1 = std::max(Uniform01(rng), 0x1.0p-60);
        const double u2 = Uniform01(rng);
        u[a] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
      }
      len = Norm(u);
    }
    const double h = base_scale * std::exp2(-depth * Uniform01(rng));
    const Vec y = x + (h / len) * u;
    const double dx = Distance(x, y);
    if (dx == 0.0) continue;
    const double ratio = Distance(map.Apply(x), map.Apply(y)) / dx;
    ++out.pairs;
    if (ratio > out.value) {
      out.value = ratio;
      out.worst_x = x;
      out.worst_y = y;
    }
  }
  return out;
}

double SupDistance(const PiecewiseMap& map, const std::vector<Vec>& points) {
  double best = 0.0;
  for (const Vec& p : points) best = std::max(best, Distance(map.Apply(p), p));
  return best;
}

}  // namespace rectlab
