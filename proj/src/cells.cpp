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

#include "rectlab/cells.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <set>

namespace rectlab {
namespace {

constexpr char kModule[] = "geometry-core";
constexpr int kMaxLevel = 30;

std::int64_t GridSize(int level) { return std::int64_t{1} << level; }

void CheckLevel(const RootCube& root, int level) {
  if (level < 0) throw Refusal(kModule, "negative subdivision level");
  double scale = root.side;
  for (int a = 0; a < root.n; ++a) {
    scale = std::max(scale, std::abs(root.corner[a]));
  }
  if (level > kMaxLevel || root.CellSide(level) < 1e-13 * scale) {
    throw Refusal(kModule, "level " + std::to_string(level) +
                               " too large: cell side underflows precision");
  }
}

}  // namespace

void RootCube::Validate() const {
  if (n < 1 || n > kMaxDim) {
    throw Refusal(kModule, "ambient dimension must be in [1, 3]");
  }
  if (!(side > 0.0) || !std::isfinite(side)) {
    throw Refusal(kModule, "root cube side must be positive");
  }
  for (int a = n; a < kMaxDim; ++a) {
    if (corner[a] != 0.0) {
      throw Refusal(kModule, "unused corner coordinates must be zero");
    }
  }
}

bool Box::Contains(const Vec& p, int n, double tol) const {
  for (int a = 0; a < n; ++a) {
    if (p[a] < lo[a] - tol || p[a] > hi[a] + tol) return false;
  }
  return true;
}

Vec Box::ClampPoint(const Vec& p, int n) const {
  Vec q{0.0, 0.0, 0.0};
  for (int a = 0; a < n; ++a) q[a] = std::clamp(p[a], lo[a], hi[a]);
  return q;
}

double Box::DistanceTo(const Vec& p, int n) const {
  double sum = 0.0;
  for (int a = 0; a < n; ++a) {
    double excess = 0.0;
    if (p[a] < lo[a]) excess = lo[a] - p[a];
    if (p[a] > hi[a]) excess = p[a] - hi[a];
    sum += excess * excess;
  }
  return std::sqrt(sum);
}

DyadicCell DyadicCell::Make(int level, std::array<std::int64_t, kMaxDim> coords,
                            std::array<Side, kMaxDim> selector, int n) {
  DyadicCell cell;
  cell.level = level;
  const std::int64_t size = GridSize(level);
  for (int a = 0; a < kMaxDim; ++a) {
    if (a >= n) {
      cell.coords[a] = 0;
      cell.selector[a] = Side::kLow;
      continue;
    }
    std::int64_t c = coords[a];
    Side s = selector[a];
    if (s == Side::kHigh && c + 1 < size) {
      c += 1;
      s = Side::kLow;
    }
    cell.coords[a] = c;
    cell.selector[a] = s;
    if (s == Side::kSpan) ++cell.dim;
  }
  return cell;
}

DyadicCell DyadicCell::Cube(int level, std::array<std::int64_t, kMaxDim> coords,
                            int n) {
  return Make(level, coords, {Side::kSpan, Side::kSpan, Side::kSpan}, n);
}

Box DyadicCell::Realize(const RootCube& root) const {
  Box box;
  const double s = root.CellSide(level);
  for (int a = 0; a < root.n; ++a) {
    box.lo[a] = root.corner[a] + s * static_cast<double>(LatticeLow(a));
    box.hi[a] = Spans(a) ? root.corner[a] + s * static_cast<double>(coords[a] + 1)
                         : box.lo[a];
  }
  return box;
}

Vec DyadicCell::Center(const RootCube& root) const {
  const Box box = Realize(root);
  return 0.5 * (box.lo + box.hi);
}

bool operator<(const DyadicCell& a, const DyadicCell& b) {
  if (a.dim != b.dim) return a.dim < b.dim;
  if (a.level != b.level) return a.level < b.level;
  if (a.coords != b.coords) return a.coords < b.coords;
  return a.selector < b.selector;
}

std::size_t DyadicCellHash::operator()(const DyadicCell& c) const {
  std::uint64_t h = static_cast<std::uint64_t>(c.level) * 0x9E3779B97F4A7C15ULL;
  for (int a = 0; a < kMaxDim; ++a) {
    h ^= static_cast<std::uint64_t>(c.coords[a]) + 0x9E3779B97F4A7C15ULL +
         (h << 6) + (h >> 2);
    h ^= static_cast<std::uint64_t>(c.selector[a]) + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

BallUnionOracle::BallUnionOracle(std::vector<Vec> centers,
                                 std::vector<double> radii, int n, double tol)
    : centers_(std::move(centers)), radii_(std::move(radii)), n_(n), tol_(tol) {
  if (centers_.size() != radii_.size()) {
    throw Refusal(kModule, "ball centers and radii differ in length");
  }
}

bool BallUnionOracle::Hits(const Box& box) const {
  for (std::size_t k = 0; k < centers_.size(); ++k) {
    if (box.DistanceTo(centers_[k], n_) <= radii_[k] + tol_) return true;
  }
  return false;
}

PointSetOracle::PointSetOracle(std::span<const Vec> points, int n, double tol)
    : points_(points.begin(), points.end()), n_(n), tol_(tol) {
  if (points_.empty()) return;
  Vec lo = points_.front();
  Vec hi = points_.front();
  for (const Vec& p : points_) {
    for (int a = 0; a < n_; ++a) {
      lo[a] = std::min(lo[a], p[a]);
      hi[a] = std::max(hi[a], p[a]);
    }
  }
  double extent = 0.0;
  for (int a = 0; a < n_; ++a) extent = std::max(extent, hi[a] - lo[a]);
  const double per_axis =
      std::pow(static_cast<double>(points_.size()), 1.0 / n_);
  bucket_ = extent > 0.0 ? extent / std::max(1.0, per_axis) : 1.0;
  origin_ = lo;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    std::uint64_t key = 0;
    for (int a = 0; a < n_; ++a) {
      const auto idx = static_cast<std::uint64_t>(
          std::floor((points_[i][a] - origin_[a]) / bucket_));
      key |= idx << (21 * a);
    }
    buckets_[key].push_back(i);
  }
}

bool PointSetOracle::Hits(const Box& box) const {
  if (points_.empty()) return false;
  std::array<std::int64_t, kMaxDim> first{0, 0, 0};
  std::array<std::int64_t, kMaxDim> last{0, 0, 0};
  double visits = 1.0;
  for (int a = 0; a < n_; ++a) {
    first[a] = std::max<std::int64_t>(
        0, static_cast<std::int64_t>(
               std::floor((box.lo[a] - tol_ - origin_[a]) / bucket_)));
    last[a] = std::min<std::int64_t>(
        (1 << 20), static_cast<std::int64_t>(
                       std::floor((box.hi[a] + tol_ - origin_[a]) / bucket_)));
    if (last[a] < first[a]) return false;
    visits *= static_cast<double>(last[a] - first[a] + 1);
  }
  if (visits > static_cast<double>(points_.size())) {
    for (const Vec& p : points_) {
      if (box.DistanceTo(p, n_) <= tol_) return true;
    }
    return false;
  }
  std::array<std::int64_t, kMaxDim> idx = first;
  while (true) {
    std::uint64_t key = 0;
    for (int a = 0; a < n_; ++a) {
      key |= static_cast<std::uint64_t>(idx[a]) << (21 * a);
    }
    if (auto it = buckets_.find(key); it != buckets_.end()) {
      for (std::size_t i : it->second) {
        if (box.DistanceTo(points_[i], n_) <= tol_) return true;
      }
    }
    int a = 0;
    for (; a < n_; ++a) {
      if (++idx[a] <= last[a]) break;
      idx[a] = first[a];
    }
    if (a == n_) break;
  }
  return false;
}

SegmentSetOracle::SegmentSetOracle(std::vector<std::pair<Vec, Vec>> segments,
                                   int n, double tol)
    : segments_(std::move(segments)), n_(n), tol_(tol) {}

bool SegmentSetOracle::Hits(const Box& box) const {
  // Liang-Barsky clipping of each segment against the tolerance-expanded box.
  for (const auto& [a, b] : segments_) {
    double t0 = 0.0;
    double t1 = 1.0;
    bool inside = true;
    for (int ax = 0; ax < n_ && inside; ++ax) {
      const double d = b[ax] - a[ax];
      const double lo = box.lo[ax] - tol_;
      const double hi = box.hi[ax] + tol_;
      if (d == 0.0) {
        if (a[ax] < lo || a[ax] > hi) inside = false;
        continue;
      }
      double ta = (lo - a[ax]) / d;
      double tb = (hi - a[ax]) / d;
      if (ta > tb) std::swap(ta, tb);
      t0 = std::max(t0, ta);
      t1 = std::min(t1, tb);
      if (t0 > t1) inside = false;
    }
    if (inside) return true;
  }
  return false;
}

bool CellComplex::HasCell(const DyadicCell& cube) const {
  return std::binary_search(cells.begin(), cells.end(), cube);
}

CellComplex Subdivide(const RootCube& root, int level, const CellOracle& hits) {
  root.Validate();
  CheckLevel(root, level);
  CellComplex complex;
  complex.root = root;
  complex.level = level;

  // Closed cubes: a child meeting S implies its parent meets S, so pruning
  // the recursion at non-hitting parents is exact.
  std::function<void(int, std::array<std::int64_t, kMaxDim>)> descend =
      [&](int l, std::array<std::int64_t, kMaxDim> c) {
        const DyadicCell cube = DyadicCell::Cube(l, c, root.n);
        if (!hits.Hits(cube.Realize(root))) return;
        if (l == level) {
          complex.cells.push_back(cube);
          return;
        }
        const int children = 1 << root.n;
        for (int mask = 0; mask < children; ++mask) {
          std::array<std::int64_t, kMaxDim> child{0, 0, 0};
          for (int a = 0; a < root.n; ++a) {
            child[a] = 2 * c[a] + ((mask >> a) & 1);
          }
          descend(l + 1, child);
        }
      };
  descend(0, {0, 0, 0});
  std::sort(complex.cells.begin(), complex.cells.end());
  return complex;
}

std::vector<DyadicCell> FacesOf(const DyadicCell& cell, int d, int n) {
  std::vector<DyadicCell> out;
  if (d > cell.dim || d < 0) return out;
  std::array<int, kMaxDim> span_axes{};
  int k = 0;
  for (int a = 0; a < n; ++a) {
    if (cell.Spans(a)) span_axes[k++] = a;
  }
  // Choose which of the cell's spanning axes stay spanning; the rest are
  // pinned low or high.
  for (int keep = 0; keep < (1 << k); ++keep) {
    if (std::popcount(static_cast<unsigned>(keep)) != d) continue;
    const int pinned = k - d;
    for (int sides = 0; sides < (1 << pinned); ++sides) {
      auto selector = cell.selector;
      int p = 0;
      for (int i = 0; i < k; ++i) {
        const int a = span_axes[i];
        if ((keep >> i) & 1) continue;
        selector[a] = ((sides >> p) & 1) ? Side::kHigh : Side::kLow;
        ++p;
      }
      out.push_back(DyadicCell::Make(cell.level, cell.coords, selector, n));
    }
  }
  return out;
}

std::vector<DyadicCell> Faces(const CellComplex& complex, int d) {
  const int n = complex.root.n;
  if (d < 0 || d > n) throw Refusal(kModule, "face dimension out of range");
  if (d == n) return complex.cells;
  std::set<DyadicCell> faces;
  for (const DyadicCell& cube : complex.cells) {
    for (const DyadicCell& f : FacesOf(cube, d, n)) faces.insert(f);
  }
  return {faces.begin(), faces.end()};
}

bool LocateFace(const RootCube& root, int level, const Vec& p, double snap_tol,
                DyadicCell* face) {
  const double s = root.CellSide(level);
  const std::int64_t size = GridSize(level);
  std::array<std::int64_t, kMaxDim> coords{0, 0, 0};
  std::array<Side, kMaxDim> selector{Side::kLow, Side::kLow, Side::kLow};
  for (int a = 0; a < root.n; ++a) {
    const double u = (p[a] - root.corner[a]) / s;
    if (u < -snap_tol || u > static_cast<double>(size) + snap_tol) return false;
    const double r = std::nearbyint(u);
    if (std::abs(u - r) <= snap_tol) {
      const auto lattice = static_cast<std::int64_t>(r);
      if (lattice >= size) {
        coords[a] = size - 1;
        selector[a] = Side::kHigh;
      } else {
        coords[a] = lattice;
        selector[a] = Side::kLow;
      }
    } else {
      coords[a] = std::clamp<std::int64_t>(
          static_cast<std::int64_t>(std::floor(u)), 0, size - 1);
      selector[a] = Side::kSpan;
    }
  }
  *face = DyadicCell::Make(level, coords, selector, root.n);
  return true;
}

Skeleton::Skeleton(const CellComplex& complex, int d)
    : complex_(&complex), d_(d), faces_(Faces(complex, d)) {
  boxes_.reserve(faces_.size());
  for (const DyadicCell& f : faces_) boxes_.push_back(f.Realize(complex.root));
  for (const DyadicCell& cube : complex.cells) {
    auto& list = faces_by_cube_[cube];
    for (const DyadicCell& f : FacesOf(cube, d, complex.root.n)) {
      auto it = std::lower_bound(faces_.begin(), faces_.end(), f);
      list.push_back(static_cast<std::size_t>(it - faces_.begin()));
    }
  }
}

double Skeleton::Distance(const Vec& p) const {
  double best = std::numeric_limits<double>::infinity();
  for (const Box& b : boxes_) {
    best = std::min(best, b.DistanceTo(p, complex_->root.n));
  }
  return best;
}

bool Skeleton::Contains(const Vec& p, double tol) const {
  const RootCube& root = complex_->root;
  const double s = root.CellSide(complex_->level);
  if (tol >= s) return Distance(p) <= tol;
  const int n = root.n;
  std::array<std::int64_t, kMaxDim> first{0, 0, 0};
  std::array<std::int64_t, kMaxDim> last{0, 0, 0};
  for (int a = 0; a < n; ++a) {
    const double u = (p[a] - root.corner[a]) / s;
    if (!std::isfinite(u) || std::abs(u) > 1e15) return Distance(p) <= tol;
    first[a] = static_cast<std::int64_t>(std::floor(u - tol / s)) - 1;
    last[a] = static_cast<std::int64_t>(std::floor(u + tol / s));
  }
  std::array<std::int64_t, kMaxDim> idx = first;
  while (true) {
    const DyadicCell cube = DyadicCell::Cube(complex_->level, idx, n);
    if (auto it = faces_by_cube_.find(cube); it != faces_by_cube_.end()) {
      for (std::size_t f : it->second) {
        if (boxes_[f].DistanceTo(p, n) <= tol) return true;
      }
    }
    int a = 0;
    for (; a < n; ++a) {
      if (++idx[a] <= last[a]) break;
      idx[a] = first[a];
    }
    if (a == n) break;
  }
  return false;
}

bool SkeletonContains(const CellComplex& complex, int d, const Vec& p,
                      double tol) {
  if (tol < 0.0) throw Refusal(kModule, "negative tolerance");
  return Skeleton(complex, d).Contains(p, tol);
}

}  // namespace rectlab
