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

// Dyadic cube complexes over a root cube: closed level-j cubes, their faces,
// and skeleton membership. A cell is identified by integer coordinates; its
// geometry is derived on demand from the root cube.

#ifndef RECTLAB_CELLS_HPP_
#define RECTLAB_CELLS_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "rectlab/vec.hpp"

namespace rectlab {

struct RootCube {
  Vec corner{0.0, 0.0, 0.0};
  double side = 1.0;
  int n = 2;

  void Validate() const;
  double CellSide(int level) const { return std::ldexp(side, -level); }
  double Diameter() const { return side * std::sqrt(static_cast<double>(n)); }
};

// Axis-aligned closed box; degenerate along fixed axes of a face.
struct Box {
  Vec lo{0.0, 0.0, 0.0};
  Vec hi{0.0, 0.0, 0.0};

  bool Contains(const Vec& p, int n, double tol) const;
  double DistanceTo(const Vec& p, int n) const;
  Vec ClampPoint(const Vec& p, int n) const;
};

enum class Side : std::uint8_t { kLow = 0, kHigh = 1, kSpan = 2 };

// A closed d-face of a level-j cube. Constructed through Make(), which puts
// the selector in canonical form: kHigh only survives on the top boundary of
// the root cube, so shared faces compare equal.
struct DyadicCell {
  int level = 0;
  std::array<std::int64_t, kMaxDim> coords{0, 0, 0};
  int dim = 0;
  std::array<Side, kMaxDim> selector{Side::kSpan, Side::kSpan, Side::kSpan};

  static DyadicCell Make(int level, std::array<std::int64_t, kMaxDim> coords,
                         std::array<Side, kMaxDim> selector, int n);
  static DyadicCell Cube(int level, std::array<std::int64_t, kMaxDim> coords,
                         int n);

  // Lattice coordinate of the lower corner along an axis, in [0, 2^level].
  std::int64_t LatticeLow(int axis) const {
    return coords[axis] + (selector[axis] == Side::kHigh ? 1 : 0);
  }
  bool Spans(int axis) const { return selector[axis] == Side::kSpan; }

  Box Realize(const RootCube& root) const;
  Vec Center(const RootCube& root) const;

  friend bool operator==(const DyadicCell& a, const DyadicCell& b) = default;
  friend bool operator<(const DyadicCell& a, const DyadicCell& b);
};

struct DyadicCellHash {
  std::size_t operator()(const DyadicCell& c) const;
};

// Decides whether a closed box meets the set S. Over-inclusion by a small
// tolerance is allowed; under-inclusion is not.
class CellOracle {
 public:
  virtual ~CellOracle() = default;
  virtual bool Hits(const Box& box) const = 0;
};

class WholeOracle final : public CellOracle {
 public:
  bool Hits(const Box&) const override { return true; }
};

class BallUnionOracle final : public CellOracle {
 public:
  BallUnionOracle(std::vector<Vec> centers, std::vector<double> radii, int n,
                  double tol = 0.0);
  bool Hits(const Box& box) const override;

 private:
  std::vector<Vec> centers_;
  std::vector<double> radii_;
  int n_;
  double tol_;
};

// Finite point set, accelerated by a uniform bucket grid.
class PointSetOracle final : public CellOracle {
 public:
  PointSetOracle(std::span<const Vec> points, int n, double tol = 0.0);
  bool Hits(const Box& box) const override;

 private:
  std::vector<Vec> points_;
  int n_;
  double tol_;
  double bucket_ = 1.0;
  Vec origin_{0.0, 0.0, 0.0};
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets_;
};

// Union of closed segments (polylines).
class SegmentSetOracle final : public CellOracle {
 public:
  SegmentSetOracle(std::vector<std::pair<Vec, Vec>> segments, int n,
                   double tol = 0.0);
  bool Hits(const Box& box) const override;

 private:
  std::vector<std::pair<Vec, Vec>> segments_;
  int n_;
  double tol_;
};

struct CellComplex {
  RootCube root;
  int level = 0;
  std::vector<DyadicCell> cells;  // dim-n cubes, sorted

  bool HasCell(const DyadicCell& cube) const;
};

// Level-j cubes of `root` whose closed realization meets S.
CellComplex Subdivide(const RootCube& root, int level, const CellOracle& hits);

// Deduplicated d-faces of the complex, sorted.
std::vector<DyadicCell> Faces(const CellComplex& complex, int d);

// All d-faces of a single cell (dim >= d), canonical.
std::vector<DyadicCell> FacesOf(const DyadicCell& cell, int d, int n);

// Minimal face of the level-j grid of `root` containing p, with coordinates
// snapped within `snap_tol` (in cell-side units). Returns false when p lies
// outside the closed root cube.
bool LocateFace(const RootCube& root, int level, const Vec& p, double snap_tol,
                DyadicCell* face);

// Cached face set of one dimension for repeated skeleton queries.
class Skeleton {
 public:
  Skeleton(const CellComplex& complex, int d);

  int dim() const { return d_; }
  const std::vector<DyadicCell>& faces() const { return faces_; }

  // Exact distance from p to S_{j,d}: min over faces of the clamped
  // projection distance.
  double Distance(const Vec& p) const;
  bool Contains(const Vec& p, double tol) const;

 private:
  const CellComplex* complex_;
  int d_;
  std::vector<DyadicCell> faces_;
  std::vector<Box> boxes_;
  std::unordered_map<DyadicCell, std::vector<std::size_t>, DyadicCellHash>
      faces_by_cube_;
};

bool SkeletonContains(const CellComplex& complex, int d, const Vec& p,
                      double tol);

}  // namespace rectlab

#endif  // RECTLAB_CELLS_HPP_
