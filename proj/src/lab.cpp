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

#include "rectlab/lab.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <unordered_set>

namespace rectlab {
namespace {

constexpr char kModule[] = "rectifiability-lab";

std::string Fmt(const char* label, double value) {
  std::ostringstream os;
  os.precision(10);
  os << label << value;
  return os.str();
}

// Smallest cube of power-of-two side containing [lo, hi] whose corner sits
// on the dyadic lattice of spacing side / 2^a for the smallest such a, so its
// subdivisions are origin-anchored dyadic cells.
RootCube AlignedCube(const Vec& lo, const Vec& hi, int n) {
  double extent = 0.0;
  for (int a = 0; a < n; ++a) extent = std::max(extent, hi[a] - lo[a]);
  double side = std::exp2(std::ceil(std::log2(std::max(extent, 1e-300))));
  for (int guard = 0; guard < 200; ++guard, side *= 2.0) {
    for (int shift = 0; shift <= 4; ++shift) {
      const double grid = std::ldexp(side, -shift);
      RootCube q;
      q.n = n;
      q.side = side;
      bool fits = true;
      for (int a = 0; a < n; ++a) {
        q.corner[a] = std::floor(lo[a] / grid) * grid;
        if (hi[a] > q.corner[a] + side) fits = false;
      }
      if (fits) return q;
    }
  }
  throw Refusal(kModule, "no dyadic cube contains the ball system");
}

bool NearAny(const PointIndex& index, const std::vector<Vec>& pts, const Vec& x,
             double radius) {
  bool hit = false;
  index.ForEachInBall(x, radius, [&](std::size_t k) {
    if (Distance(pts[k], x) < radius) hit = true;
  });
  return hit;
}

// True when p lies in a closed cube of the complex.
bool InSupport(const CellComplex& complex, const Vec& p) {
  const int n = complex.root.n;
  DyadicCell f;
  if (!LocateFace(complex.root, complex.level, p, kFaceSnap, &f)) return false;
  const std::int64_t size = std::int64_t{1} << complex.level;
  std::array<std::int64_t, kMaxDim> first{0, 0, 0};
  std::array<std::int64_t, kMaxDim> count{1, 1, 1};
  for (int a = 0; a < n; ++a) {
    first[a] = f.Spans(a) ? f.coords[a] : f.LatticeLow(a) - 1;
    count[a] = f.Spans(a) ? 1 : 2;
  }
  for (std::int64_t x = 0; x < count[0]; ++x) {
    for (std::int64_t y = 0; y < count[1]; ++y) {
      for (std::int64_t z = 0; z < count[2]; ++z) {
        std::array<std::int64_t, kMaxDim> k{first[0] + x, first[1] + y, first[2] + z};
        bool inside = true;
        for (int a = 0; a < n; ++a) inside = inside && k[a] >= 0 && k[a] < size;
        if (inside && complex.HasCell(DyadicCell::Cube(complex.level, k, n))) return true;
      }
    }
  }
  return false;
}

}  // namespace

void PsiOptions::Validate() const {
  if (m < 1 || m > 2) throw Refusal(kModule, "m must be 1 or 2");
  if (!(c_config > 0.0 && measure_scale > 0.0)) {
    throw Refusal(kModule, "c_config and measure_scale must be positive");
  }
  if (max_level < 0 || max_level > 30) throw Refusal(kModule, "max_level out of range");
  if (!(radius_factor >= 1.0)) throw Refusal(kModule, "radius_factor must be >= 1");
}

bool PsiResult::AllPass() const {
  for (const Inequality& c : certificates) {
    if (!c.holds()) return false;
  }
  return !derived_applicable || derived.holds();
}

PsiResult BuildPsiEpsilon(const WeightedCloud& cloud, double epsilon,
                          const PsiOptions& options) {
  options.Validate();
  cloud.Validate();
  if (!(epsilon > 0.0)) throw Refusal(kModule, "epsilon must be positive");
  if (!(cloud.PartWeight(Part::kU) > 0.0)) {
    throw Refusal(kModule, "E has an empty U part: nothing to collapse");
  }
  const int n = cloud.n;
  const int m = options.m;
  const double scale = options.measure_scale;
  const double c = options.c_config;

  PsiResult out;
  out.epsilon = epsilon;
  const WeightedCloud u_part = cloud.Filter(Part::kU);
  const WeightedCloud r_part = cloud.Filter(Part::kR);
  out.h_e = MeasureAtScale(cloud, m, scale).value;
  out.h_u = MeasureAtScale(u_part, m, scale).value;
  out.h_r = MeasureAtScale(r_part, m, scale).value;
  out.delta = epsilon / (1.0 + 2.0 * c * out.h_e + c);

  BallSystemOptions bopt;
  bopt.m = m;
  bopt.radius_factor = options.radius_factor;
  bopt.max_radius = epsilon / 2.0;
  out.balls = FindBallSystem(cloud, out.delta, bopt);
  const BallSystem& bs = out.balls;

  Vec lo = bs.balls.front().center;
  Vec hi = lo;
  std::vector<Vec> centers;
  std::vector<double> support_radii;
  for (const Ball& b : bs.balls) {
    for (int a = 0; a < n; ++a) {
      lo[a] = std::min(lo[a], b.center[a] - b.radius - bs.eta);
      hi[a] = std::max(hi[a], b.center[a] + b.radius + bs.eta);
    }
    centers.push_back(b.center);
    support_radii.push_back(b.radius + bs.eta / 2.0);
  }
  out.root = AlignedCube(lo, hi, n);
  const BallUnionOracle s_oracle(centers, support_radii, n);

  const PointIndex u_index(u_part.points, n, epsilon);
  CellComplex complex;
  bool found = false;
  for (int j = 0; j <= options.max_level && !found; ++j) {
    if (!(std::ldexp(out.root.Diameter(), -j) < epsilon)) continue;
    complex = Subdivide(out.root, j, s_oracle);
    const double cell_diam = out.root.Diameter() * std::ldexp(1.0, -j);
    bool ok = true;
    for (const DyadicCell& cube : complex.cells) {
      if (!NearAny(u_index, u_part.points, cube.Center(out.root), epsilon - cell_diam / 2)) {
        ok = false;
        break;
      }
    }
    // Support points of the cloud must sit in the padded balls.
    for (std::size_t i = 0; ok && i < cloud.size(); ++i) {
      const Vec& p = cloud.points[i];
      if (!InSupport(complex, p)) continue;
      bool padded = false;
      for (const Ball& b : bs.balls) {
        if (Distance(p, b.center) <= b.radius + bs.eta) {
          padded = true;
          break;
        }
      }
      if (!padded) ok = false;
    }
    if (ok) {
      found = true;
      out.level = j;
    } else {
      out.log.push_back("level " + std::to_string(j) + " rejected");
    }
  }
  if (!found) throw Refusal(kModule, "no grid level up to max_level satisfies the support conditions");

  FedererFlemingOptions ffo = options.ff;
  ffo.m = m;
  ffo.seed = options.seed;
  ffo.c_config = c;
  ffo.measure_scale = scale;
  out.ff = FedererFlemingMap(cloud, complex, ffo);
  out.map = out.ff.map;
  out.image = out.ff.image;

  const WeightedCloud image_u = out.image.Filter(Part::kU);
  const WeightedCloud image_r = out.image.Filter(Part::kR);
  out.h_image = MeasureAtScale(out.image, m, scale).value;
  out.h_image_u = MeasureAtScale(image_u, m, scale).value;
  out.h_image_r = MeasureAtScale(image_r, m, scale).value;

  // Probe points: the cloud plus seeded samples over a slightly enlarged Q.
  std::vector<Vec> probes = cloud.points;
  std::mt19937_64 rng(options.seed);
  const double pad = out.root.side / 8;
  for (std::size_t k = 0; k < options.ambient_samples; ++k) {
    Vec x{0.0, 0.0, 0.0};
    for (int a = 0; a < n; ++a) {
      x[a] = out.root.corner[a] - pad + Uniform01(rng) * (out.root.side + 2 * pad);
    }
    probes.push_back(x);
  }
  double sup = 0.0;
  std::size_t moved_far = 0;
  for (const Vec& x : probes) {
    const Vec y = out.map.Apply(x);
    sup = std::max(sup, Distance(x, y));
    if (y != x && !NearAny(u_index, u_part.points, x, epsilon)) ++moved_far;
  }
  out.sup_distance = sup;
  out.certificates = {
      {"sup |psi - id| over probes < epsilon", sup, epsilon, true},
      {"points moved at distance >= epsilon from U", static_cast<double>(moved_far), 0.0, false},
      {"H(psi(E \\ U)) < H(E \\ U) + epsilon", out.h_image_r, out.h_r + epsilon, true},
      {"H(psi(U)) < epsilon", out.h_image_u, epsilon, true},
  };
  out.derived_applicable = epsilon < out.h_u / 4;
  out.derived = {"H(psi(E)) < H(E) - H(U)/2", out.h_image, out.h_e - out.h_u / 2, true};
  out.lipschitz = EstimateLipschitz(out.map, cloud, options.lipschitz_pairs, options.seed + 17,
                                    out.root.side, out.level + 8.0);
  out.log.push_back(Fmt("delta = ", out.delta));
  out.log.push_back(Fmt("balls = ", static_cast<double>(bs.balls.size())));
  out.log.push_back(Fmt("level = ", out.level));
  return out;
}

const char* VerdictName(Verdict::Kind kind) {
  switch (kind) {
    case Verdict::Kind::kRectifiableConsistent:
      return "rectifiable-consistent";
    case Verdict::Kind::kUnrectifiableWitness:
      return "unrectifiable-witness";
    case Verdict::Kind::kInconclusive:
      break;
  }
  return "inconclusive";
}

Verdict SemicontinuityTest(const WeightedCloud& cloud, const PerturbationSequence& seq,
                           int m, double scale, double tolerance) {
  Verdict v;
  v.h_e = MeasureAtScale(cloud, m, scale).value;
  v.tolerance = tolerance >= 0.0 ? tolerance : 0.05 * v.h_e;
  std::vector<double> measures = seq.measures;
  if (measures.size() != seq.maps.size()) {
    measures.clear();
    for (const PiecewiseMap& f : seq.maps) {
      measures.push_back(MeasureAtScale(f.Apply(cloud), m, scale).value);
    }
  }
  if (measures.empty()) {
    v.evidence.push_back("empty sequence");
    return v;
  }
  const std::size_t count = measures.size();
  v.tail_start = count - (count + 2) / 3;
  double tail_max = -std::numeric_limits<double>::infinity();
  v.tail_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = v.tail_start; i < count; ++i) {
    tail_max = std::max(tail_max, measures[i]);
    v.tail_min = std::min(v.tail_min, measures[i]);
  }
  v.eta = v.h_e - tail_max;
  v.lip_bounded = seq.lip_bounds.size() == count;
  for (double l : seq.lip_bounds) {
    v.lip_bounded = v.lip_bounded && std::isfinite(l) && l <= seq.declared_lip_bound;
  }
  v.sup_decreasing = seq.sup_distances.size() == count;
  for (std::size_t i = 1; v.sup_decreasing && i < count; ++i) {
    v.sup_decreasing = seq.sup_distances[i] < seq.sup_distances[i - 1];
  }
  v.evidence.push_back(Fmt("H(E) = ", v.h_e));
  v.evidence.push_back(Fmt("min over tail = ", v.tail_min));
  v.evidence.push_back(Fmt("eta = ", v.eta));
  v.evidence.push_back("liminf read as the min over the last third of the sequence");
  if (v.eta > v.tolerance && v.lip_bounded && v.sup_decreasing) {
    v.kind = Verdict::Kind::kUnrectifiableWitness;
  } else if (v.tail_min >= v.h_e - v.tolerance) {
    v.kind = Verdict::Kind::kRectifiableConsistent;
  }
  return v;
}

TangentShadow TangentShadowCheck(const CurveSpec& curve, const PiecewiseMap& map,
                                 const Vec& x, double r, double epsilon) {
  if (curve.kind != CurveSpec::Kind::kPolyline || curve.vertices.size() < 2) {
    throw Refusal(kModule, "tangent shadow needs a polyline");
  }
  if (!(r > 0.0 && epsilon > 0.0 && epsilon < 1.0)) {
    throw Refusal(kModule, "radius and aperture out of range");
  }
  std::vector<std::pair<Vec, Vec>> segments;
  const std::size_t nv = curve.vertices.size();
  for (std::size_t i = 0; i + 1 < nv; ++i) segments.emplace_back(curve.vertices[i], curve.vertices[i + 1]);
  if (curve.closed) segments.emplace_back(curve.vertices.back(), curve.vertices.front());

  auto project = [](const Vec& p, const Vec& a, const Vec& b) {
    const Vec d = b - a;
    const double t = std::clamp(Dot(p - a, d) / Dot(d, d), 0.0, 1.0);
    return a + t * d;
  };
  double best = std::numeric_limits<double>::infinity();
  Vec tangent{0.0, 0.0, 0.0};
  for (const auto& [a, b] : segments) {
    const double dist = Distance(project(x, a, b), x);
    if (dist < best) {
      best = dist;
      tangent = (1.0 / Distance(a, b)) * (b - a);
    }
  }
  if (best > 1e-9 * std::max(1.0, Norm(x))) throw Refusal(kModule, "x is not on the curve");
  if (!curve.closed &&
      (Distance(x, curve.vertices.front()) <= 2 * r || Distance(x, curve.vertices.back()) <= 2 * r)) {
    throw Refusal(kModule, "x is within 2r of an end of the curve");
  }

  TangentShadow out;
  out.step = r * 1e-3;
  const double sample = out.step / 4;
  std::vector<double> shadow;
  for (const auto& [a, b] : segments) {
    if (Distance(project(x, a, b), x) > 2 * r) continue;
    const double len = Distance(a, b);
    const auto pieces = static_cast<std::size_t>(std::ceil(len / sample));
    for (std::size_t k = 0; k <= pieces; ++k) {
      const Vec y = a + (static_cast<double>(k) / static_cast<double>(pieces)) * (b - a);
      const double dy = Distance(y, x);
      if (dy > 2 * r) continue;
      const Vec off = (y - x) - Dot(y - x, tangent) * tangent;
      if (Norm(off) > epsilon * dy) {
        throw Refusal(kModule, "cone condition fails: r is too large at this x");
      }
      const Vec z = map.Apply(y);
      if (Distance(z, x) <= r) shadow.push_back(Dot(z - x, tangent));
    }
  }
  out.points = shadow.size();
  std::sort(shadow.begin(), shadow.end());
  const double half = (1.0 - epsilon) * r;
  if (shadow.empty()) {
    out.largest_gap = 2 * half;
    return out;
  }
  double gap = shadow.front() - (-half);
  for (std::size_t i = 1; i < shadow.size(); ++i) {
    const double lo = std::max(shadow[i - 1], -half);
    const double hi = std::min(shadow[i], half);
    if (hi > lo) gap = std::max(gap, hi - lo);
  }
  gap = std::max(gap, half - shadow.back());
  out.largest_gap = std::max(gap, 0.0);
  out.covered = out.largest_gap <= out.step;
  return out;
}

std::size_t GreedyNetSize(const std::vector<Vec>& points, int n, double r) {
  if (!(r > 0.0)) return points.size();
  std::unordered_map<std::uint64_t, std::vector<Vec>> grid;
  auto key = [](const std::array<std::int64_t, kMaxDim>& k) {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::int64_t v : k) h = (h ^ static_cast<std::uint64_t>(v)) * 1099511628211ULL;
    return h;
  };
  std::size_t count = 0;
  for (const Vec& p : points) {
    std::array<std::int64_t, kMaxDim> base{0, 0, 0};
    for (int a = 0; a < n; ++a) base[a] = static_cast<std::int64_t>(std::floor(p[a] / r));
    bool covered = false;
    const int reach[3] = {n > 0 ? 1 : 0, n > 1 ? 1 : 0, n > 2 ? 1 : 0};
    for (int dx = -reach[0]; dx <= reach[0] && !covered; ++dx) {
      for (int dy = -reach[1]; dy <= reach[1] && !covered; ++dy) {
        for (int dz = -reach[2]; dz <= reach[2] && !covered; ++dz) {
          auto it = grid.find(key({base[0] + dx, base[1] + dy, base[2] + dz}));
          if (it == grid.end()) continue;
          for (const Vec& c : it->second) {
            if (Distance(c, p) <= r) {
              covered = true;
              break;
            }
          }
        }
      }
    }
    if (!covered) {
      grid[key(base)].push_back(p);
      ++count;
    }
  }
  return count;
}

SemiRegularity SemiRegularityEstimate(const WeightedCloud& cloud, int m,
                                      const std::vector<std::pair<double, double>>& pairs,
                                      std::size_t sample_centers, std::uint64_t seed) {
  SemiRegularity out;
  for (const auto& [r, big_r] : pairs) {
    if (!(r > 0.0 && r <= big_r)) throw Refusal(kModule, "scale pairs need 0 < r <= R");
  }
  out.per_pair.assign(pairs.size(), 0.0);
  if (cloud.empty()) return out;
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> centers;
  for (std::size_t k = 0; k < sample_centers; ++k) {
    centers.push_back(static_cast<std::size_t>(Uniform01(rng) * cloud.size()));
  }
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [r, big_r] = pairs[p];
    const PointIndex index(cloud.points, cloud.n, big_r / 2);
    for (std::size_t c : centers) {
      std::vector<std::size_t> ids;
      index.ForEachInBall(cloud.points[c], big_r, [&](std::size_t k) { ids.push_back(k); });
      std::sort(ids.begin(), ids.end());
      std::vector<Vec> local;
      local.reserve(ids.size());
      for (std::size_t k : ids) local.push_back(cloud.points[k]);
      const double value = static_cast<double>(GreedyNetSize(local, cloud.n, r)) *
                           std::pow(r / big_r, m);
      out.per_pair[p] = std::max(out.per_pair[p], value);
    }
    out.estimate = std::max(out.estimate, out.per_pair[p]);
  }
  return out;
}

}  // namespace rectlab
