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

// Maps of R^n that act as the identity off a compact set, stored as a chain
// of explicit components so they can be evaluated anywhere, composed, and
// serialized.

#ifndef RECTLAB_PIECEWISE_MAP_HPP_
#define RECTLAB_PIECEWISE_MAP_HPP_

#include <cstdint>
#include <unordered_map>
#include <variant>
#include <vector>

#include "rectlab/cells.hpp"
#include "rectlab/sets.hpp"

namespace rectlab {

// Snap tolerance, in cell-side units, for locating points on grid faces.
inline constexpr double kFaceSnap = 1e-9;

// One step of a face-by-face deformation.
struct FaceStage {
  enum class Kind { kRadial, kCollapse };

  DyadicCell face;
  Kind kind = Kind::kRadial;
  // Radial: projection from `center` onto the relative boundary, stretched
  // linearly inside B(center, stretch_radius) so the map stays continuous.
  Vec center{0.0, 0.0, 0.0};
  double stretch_radius = 0.0;
  // Collapse (edges only): monotone piecewise-linear reparametrization of the
  // edge through the knots (offset from the low end, in edge length units).
  std::vector<double> knots_in;
  std::vector<double> knots_out;

  double Sigma(double u) const;
};

// Federer-Fleming style deformation of the level-j grid of a root cube onto
// the m-skeleton. Faces without a stage are left fixed.
class FaceDeformation {
 public:
  FaceDeformation() = default;
  FaceDeformation(RootCube root, int level, int m, std::vector<FaceStage> stages);

  Vec Apply(const Vec& p) const;
  // Same map restricted to the closed face `face`, for p in its relative
  // interior. Exposed so builders can reproduce their staged computation.
  Vec ApplyOnFace(const DyadicCell& face, const Vec& p) const;

  const RootCube& root() const { return root_; }
  int level() const { return level_; }
  int m() const { return m_; }
  const std::vector<FaceStage>& stages() const { return stages_; }
  const FaceStage* StageFor(const DyadicCell& face) const;

 private:
  RootCube root_;
  int level_ = 0;
  int m_ = 1;
  std::vector<FaceStage> stages_;
  std::unordered_map<DyadicCell, std::size_t, DyadicCellHash> index_;
};

// Exit point of the ray from c through p on the relative boundary of `face`.
// Coordinates on the hit face plane are written exactly.
Vec RadialExit(const RootCube& root, const DyadicCell& face, const Vec& c,
               const Vec& p);

// x -> A x + b with A stored row-major in a 3x3 block.
struct AffineMap {
  std::array<double, 9> a{1, 0, 0, 0, 1, 0, 0, 0, 1};
  Vec b{0.0, 0.0, 0.0};

  Vec Apply(const Vec& x, int n) const;
};

using MapComponent = std::variant<FaceDeformation, AffineMap>;

class PiecewiseMap {
 public:
  explicit PiecewiseMap(int n = 2) : n_(n) {}

  static PiecewiseMap Identity(int n) { return PiecewiseMap(n); }
  // compose(a, b)(x) = a(b(x))
  static PiecewiseMap Compose(const PiecewiseMap& a, const PiecewiseMap& b);

  void Append(MapComponent component) { chain_.push_back(std::move(component)); }

  int n() const { return n_; }
  const std::vector<MapComponent>& chain() const { return chain_; }
  bool IsIdentity() const { return chain_.empty(); }

  Vec Apply(const Vec& p) const;
  WeightedCloud Apply(const WeightedCloud& cloud) const;

 private:
  int n_;
  std::vector<MapComponent> chain_;  // applied front to back
};

struct LipschitzEstimate {
  double value = 0.0;
  std::size_t pairs = 0;
  Vec worst_x{0.0, 0.0, 0.0};
  Vec worst_y{0.0, 0.0, 0.0};
};

// Max of |f(x) - f(y)| / |x - y| over seeded pairs: x from the cloud, y at a
// random direction and log-uniform distance base_scale * 2^-t, t in
// [0, depth].
LipschitzEstimate EstimateLipschitz(const PiecewiseMap& map,
                                    const WeightedCloud& cloud,
                                    std::size_t pairs, std::uint64_t seed,
                                    double base_scale, double depth);

// sup over the given points of |f(x) - x|.
double SupDistance(const PiecewiseMap& map, const std::vector<Vec>& points);

}  // namespace rectlab

#endif  // RECTLAB_PIECEWISE_MAP_HPP_
