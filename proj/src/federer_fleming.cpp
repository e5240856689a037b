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

#include "rectlab/federer_fleming.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <random>

#include "rectlab/shadow.hpp"

namespace rectlab {
namespace {

constexpr char kModule[] = "projection-ops";

std::uint64_t FaceSeed(std::uint64_t seed, const DyadicCell& face) {
  return seed ^ (0x9E3779B97F4A7C15ULL * (DyadicCellHash()(face) + 1));
}

// Grid cubes whose closure contains the face. `complete` is false when some
// of them would fall outside the root cube.
std::vector<DyadicCell> AdjacentCubes(const DyadicCell& face, int n, bool* complete) {
  const std::int64_t size = std::int64_t{1} << face.level;
  std::vector<std::array<std::int64_t, kMaxDim>> coords(1, {0, 0, 0});
  *complete = true;
  for (int a = 0; a < n; ++a) {
    std::vector<std::int64_t> options;
    if (face.Spans(a)) {
      options.push_back(face.coords[a]);
    } else {
      const std::int64_t lattice = face.LatticeLow(a);
      for (std::int64_t c : {lattice - 1, lattice}) {
        if (c >= 0 && c < size) {
          options.push_back(c);
        } else {
          *complete = false;
        }
      }
    }
    std::vector<std::array<std::int64_t, kMaxDim>> next;
    for (const auto& base : coords) {
      for (std::int64_t c : options) {
        auto k = base;
        k[a] = c;
        next.push_back(k);
      }
    }
    coords = std::move(next);
  }
  std::vector<DyadicCell> cubes;
  cubes.reserve(coords.size());
  for (const auto& k : coords) cubes.push_back(DyadicCell::Cube(face.level, k, n));
  std::sort(cubes.begin(), cubes.end());
  return cubes;
}

double Clearance(const Vec& c, std::span<const Vec> points) {
  double best = std::numeric_limits<double>::infinity();
  for (const Vec& p : points) best = std::min(best, Distance(p, c));
  return best;
}

}  // namespace

void FedererFlemingOptions::Validate() const {
  if (m < 0 || m > kMaxDim) throw Refusal(kModule, "target dimension out of range");
  if (center_candidates < 1) throw Refusal(kModule, "need at least one center candidate");
  if (!(min_clearance > 0.0 && min_clearance < 0.25)) {
    throw Refusal(kModule, "min_clearance must lie in (0, 1/4)");
  }
  if (!(c_config > 0.0)) throw Refusal(kModule, "c_config must be positive");
  if (!(measure_scale > 0.0)) throw Refusal(kModule, "measure_scale must be positive");
  if (!(collapse_gap >= 0.0 && collapse_budget >= 0.0 && collapse_budget < 1.0)) {
    throw Refusal(kModule, "collapse parameters out of range");
  }
}

bool IsInteriorFace(const CellComplex& complex, const DyadicCell& face) {
  bool complete = false;
  const auto cubes = AdjacentCubes(face, complex.root.n, &complete);
  if (!complete) return false;
  return std::all_of(cubes.begin(), cubes.end(),
                     [&](const DyadicCell& c) { return complex.HasCell(c); });
}

std::vector<Vec> RadialProjectInCell(const RootCube& root, const DyadicCell& face,
                                     const Vec& center, std::span<const Vec> points,
                                     double clearance) {
  std::vector<Vec> out;
  out.reserve(points.size());
  for (const Vec& p : points) {
    const double r = Distance(p, center);
    if (r < clearance || r == 0.0) {
      throw Refusal(kModule, "point within the clearance radius of the center");
    }
    out.push_back(RadialExit(root, face, center, p));
  }
  return out;
}

void CollapseKnots(double length, std::span<const double> params,
                   std::span<const double> weights, double gap, double budget,
                   std::vector<double>* knots_in, std::vector<double>* knots_out) {
  struct Cluster {
    double a, b, weight;
  };
  std::vector<std::size_t> order(params.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return params[i] < params[j]; });
  const double g = gap * length;
  std::vector<Cluster> clusters;
  for (std::size_t i : order) {
    const double u = std::clamp(params[i], 0.0, length);
    if (!clusters.empty() && u - clusters.back().b <= g) {
      clusters.back().b = u;
      clusters.back().weight += weights[i];
    } else {
      clusters.push_back({u, u, weights[i]});
    }
  }
  for (Cluster& c : clusters) {
    if (c.a <= g) c.a = 0.0;
    if (length - c.b <= g) c.b = length;
  }
  // Keep the heaviest clusters that fit the budget; a cluster covering the
  // whole edge never fits, so both ends stay fixed.
  std::vector<std::size_t> by_weight(clusters.size());
  std::iota(by_weight.begin(), by_weight.end(), std::size_t{0});
  std::stable_sort(by_weight.begin(), by_weight.end(), [&](std::size_t i, std::size_t j) {
    return clusters[i].weight > clusters[j].weight;
  });
  std::vector<bool> keep(clusters.size(), false);
  double used = 0.0;
  for (std::size_t i : by_weight) {
    const double len = clusters[i].b - clusters[i].a;
    if (len <= 0.0) continue;
    if (used + len <= budget * length) {
      keep[i] = true;
      used += len;
    }
  }
  const double stretch = length / (length - used);
  knots_in->assign(1, 0.0);
  knots_out->assign(1, 0.0);
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    if (!keep[i]) continue;
    const Cluster& c = clusters[i];
    double level = 0.0;
    if (c.b >= length) {
      level = length;
    } else if (c.a > 0.0) {
      level = knots_out->back() + (c.a - knots_in->back()) * stretch;
    }
    if (c.a > 0.0) {
      knots_in->push_back(c.a);
      knots_out->push_back(level);
    } else {
      knots_out->back() = 0.0;
    }
    knots_in->push_back(c.b);
    knots_out->push_back(level);
  }
  if (knots_in->back() < length) {
    knots_in->push_back(length);
    knots_out->push_back(length);
  }
}

CenterChoice ChooseCenter(const RootCube& root, const DyadicCell& face,
                          std::span<const Vec> points, std::span<const Part> parts,
                          const FedererFlemingOptions& options, std::uint64_t seed) {
  const int n = root.n;
  const Box box = face.Realize(root);
  const double side = root.CellSide(face.level);
  CenterChoice choice;
  choice.face = face;
  if (points.empty()) {
    choice.center = face.Center(root);
    choice.clearance = std::numeric_limits<double>::infinity();
    return choice;
  }

  std::vector<Vec> r_points;
  std::vector<Vec> w_points;
  for (std::size_t i = 0; i < points.size(); ++i) {
    (parts[i] == Part::kU ? w_points : r_points).push_back(points[i]);
  }

  struct Candidate {
    Vec c;
    bool from_bf;
  };
  std::vector<Candidate> candidates;
  auto in_middle = [&](const Vec& c) {
    for (int a = 0; a < n; ++a) {
      if (!face.Spans(a)) continue;
      if (c[a] < box.lo[a] + side / 4 || c[a] > box.hi[a] - side / 4) return false;
    }
    return true;
  };
  std::mt19937_64 rng(seed);
  auto add_uniform = [&](int count) {
    for (int k = 0; k < count; ++k) {
      Vec c = box.lo;
      for (int a = 0; a < n; ++a) {
        if (face.Spans(a)) c[a] = box.lo[a] + side / 4 + Uniform01(rng) * side / 2;
      }
      candidates.push_back({c, false});
    }
  };
  candidates.push_back({face.Center(root), false});
  add_uniform(options.center_candidates);

  // Centers on the line through the U mass along the direction the best
  // shadow frame ignores, so the projection pushes U into few boundary cells.
  if (!w_points.empty() && face.dim == options.m + 1 && options.m >= 1) {
    std::vector<int> span_axes;
    for (int a = 0; a < n; ++a) {
      if (face.Spans(a)) span_axes.push_back(a);
    }
    WeightedCloud local;
    local.n = face.dim;
    Vec centroid{0.0, 0.0, 0.0};
    for (const Vec& p : w_points) {
      Vec q{0.0, 0.0, 0.0};
      for (int k = 0; k < face.dim; ++k) q[k] = (p[span_axes[k]] - box.lo[span_axes[k]]) / side;
      local.Add(q, 1.0, Part::kU);
      centroid = centroid + p;
    }
    centroid = (1.0 / static_cast<double>(w_points.size())) * centroid;
    const DirectionSearch search =
        BfDirectionSearch(local, options.m, options.bf_samples, seed + 1);
    const Vec normal = search.best.Normal();
    Vec v{0.0, 0.0, 0.0};
    for (int k = 0; k < face.dim; ++k) v[span_axes[k]] = normal[k];
    for (int t = -8; t <= 8; ++t) {
      const Vec c = centroid + (side * t / 32.0) * v;
      if (in_middle(c)) candidates.push_back({c, true});
    }
  }

  const double min_clear = options.min_clearance * side;
  const double scale = options.measure_scale;
  const std::size_t r_input = OccupiedCells(r_points, n, scale);
  struct Scored {
    std::size_t index;
    double clearance;
    double ratio;
    std::size_t w_cells;
  };
  std::vector<Scored> scored;
  for (int attempt = 0; attempt < 4 && scored.empty(); ++attempt) {
    if (attempt > 0) add_uniform(options.center_candidates << attempt);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const Vec& c = candidates[i].c;
      const double clear = Clearance(c, points);
      if (clear < min_clear) continue;
      double ratio = 0.0;
      if (r_input > 0) {
        const auto image = RadialProjectInCell(root, face, c, r_points, 0.0);
        ratio = static_cast<double>(OccupiedCells(image, n, scale)) /
                static_cast<double>(r_input);
      }
      std::size_t w_cells = 0;
      if (!w_points.empty()) {
        w_cells = OccupiedCells(RadialProjectInCell(root, face, c, w_points, 0.0), n, scale);
      }
      scored.push_back({i, clear, ratio, w_cells});
    }
  }
  if (scored.empty()) throw Refusal(kModule, "no admissible center found");

  // Only well-separated centers compete: the radial stage is Lipschitz with
  // constant about diam / clearance, so this keeps it within 2x of the best
  // achievable on this face.
  double best_clear = 0.0;
  for (const Scored& s : scored) best_clear = std::max(best_clear, s.clearance);
  std::erase_if(scored, [&](const Scored& s) {
    return s.clearance < options.clearance_keep * best_clear;
  });
  double best_ratio = std::numeric_limits<double>::infinity();
  for (const Scored& s : scored) best_ratio = std::min(best_ratio, s.ratio);
  const bool has_w = !w_points.empty();
  const double threshold =
      has_w ? std::max(1.05 * best_ratio, options.c_config / 4) : 1.05 * best_ratio + 1e-12;
  const Scored* pick = nullptr;
  for (const Scored& s : scored) {
    if (s.ratio > threshold) continue;
    if (pick == nullptr) {
      pick = &s;
      continue;
    }
    if (has_w) {
      if (s.w_cells < pick->w_cells ||
          (s.w_cells == pick->w_cells && s.clearance > pick->clearance)) {
        pick = &s;
      }
    } else if (s.clearance > pick->clearance) {
      pick = &s;
    }
  }
  choice.center = candidates[pick->index].c;
  choice.clearance = pick->clearance;
  choice.r_ratio = pick->ratio;
  choice.w_image_cells = pick->w_cells;
  choice.from_bf = candidates[pick->index].from_bf;
  choice.candidates = static_cast<int>(candidates.size());
  return choice;
}

FedererFlemingResult FedererFlemingMap(const WeightedCloud& cloud,
                                       const CellComplex& complex,
                                       const FedererFlemingOptions& options) {
  options.Validate();
  cloud.Validate();
  const RootCube& root = complex.root;
  const int n = root.n;
  const int m = options.m;
  if (cloud.n != n && !cloud.empty()) throw Refusal(kModule, "cloud and root cube dimensions differ");
  if (m >= n) throw Refusal(kModule, "target dimension must be below the ambient dimension");
  const int level = complex.level;
  const double side = root.CellSide(level);

  FedererFlemingResult out;
  out.complex = complex;
  std::vector<Vec> positions = cloud.points;
  std::vector<FaceStage> stages;

  for (int d = n; d > m; --d) {
    std::map<DyadicCell, std::vector<std::size_t>> buckets;
    for (std::size_t i = 0; i < positions.size(); ++i) {
      DyadicCell f;
      if (LocateFace(root, level, positions[i], kFaceSnap, &f) && f.dim == d) {
        buckets[f].push_back(i);
      }
    }
    for (const DyadicCell& face : Faces(complex, d)) {
      if (!IsInteriorFace(complex, face)) continue;
      ++out.active_faces;
      std::vector<Vec> pts;
      std::vector<Part> parts;
      const auto it = buckets.find(face);
      if (it != buckets.end()) {
        for (std::size_t i : it->second) {
          pts.push_back(positions[i]);
          parts.push_back(cloud.parts[i]);
        }
      }
      CenterChoice choice = ChooseCenter(root, face, pts, parts, options,
                                         FaceSeed(options.seed, face));
      FaceStage stage;
      stage.face = face;
      stage.kind = FaceStage::Kind::kRadial;
      stage.center = choice.center;
      stage.stretch_radius = std::min(side / 4, choice.clearance / 2);
      if (it != buckets.end()) {
        const auto exits =
            RadialProjectInCell(root, face, choice.center, pts, stage.stretch_radius);
        for (std::size_t k = 0; k < it->second.size(); ++k) positions[it->second[k]] = exits[k];
      }
      stages.push_back(std::move(stage));
      out.centers.push_back(choice);
    }
  }

  // Collapse of U along the edges of the 1-skeleton. Higher target
  // dimensions keep sigma equal to the identity.
  if (m == 1) {
    std::map<DyadicCell, std::vector<std::size_t>> edges;
    for (std::size_t i = 0; i < positions.size(); ++i) {
      if (cloud.parts[i] != Part::kU) continue;
      DyadicCell f;
      if (LocateFace(root, level, positions[i], kFaceSnap, &f) && f.dim == 1) {
        edges[f].push_back(i);
      }
    }
    for (const auto& [edge, members] : edges) {
      if (!IsInteriorFace(complex, edge)) continue;
      const Box box = edge.Realize(root);
      int axis = 0;
      while (!edge.Spans(axis)) ++axis;
      const double length = box.hi[axis] - box.lo[axis];
      std::vector<double> params;
      std::vector<double> weights;
      for (std::size_t i : members) {
        params.push_back(positions[i][axis] - box.lo[axis]);
        weights.push_back(cloud.weights[i]);
      }
      FaceStage stage;
      stage.face = edge;
      stage.kind = FaceStage::Kind::kCollapse;
      CollapseKnots(length, params, weights, options.collapse_gap, options.collapse_budget,
                    &stage.knots_in, &stage.knots_out);
      if (stage.knots_in.size() <= 2) continue;
      stages.push_back(std::move(stage));
      ++out.collapsed_edges;
    }
  }

  out.map = PiecewiseMap(n);
  out.map.Append(FaceDeformation(root, level, m, std::move(stages)));
  out.image = out.map.Apply(cloud);

  // Per-cube certificate on the R part.
  out.origin_cube.assign(cloud.size(), -1);
  std::vector<std::vector<std::size_t>> members(complex.cells.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    DyadicCell f;
    if (!LocateFace(root, level, cloud.points[i], kFaceSnap, &f)) continue;
    bool complete = false;
    for (const DyadicCell& cube : AdjacentCubes(f, n, &complete)) {
      auto pos = std::lower_bound(complex.cells.begin(), complex.cells.end(), cube);
      if (pos != complex.cells.end() && *pos == cube) {
        const auto k = static_cast<std::size_t>(pos - complex.cells.begin());
        out.origin_cube[i] = static_cast<std::int64_t>(k);
        if (cloud.parts[i] == Part::kR) members[k].push_back(i);
        break;
      }
    }
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < complex.cells.size(); ++k) {
    if (members[k].empty()) continue;
    std::vector<Vec> in;
    std::vector<Vec> im;
    for (std::size_t i : members[k]) {
      in.push_back(cloud.points[i]);
      im.push_back(out.image.points[i]);
    }
    CubeRatio r;
    r.cube = complex.cells[k];
    r.input_cells = OccupiedCells(in, n, options.measure_scale);
    r.image_cells = OccupiedCells(im, n, options.measure_scale);
    r.ratio = static_cast<double>(r.image_cells) / static_cast<double>(r.input_cells);
    worst = std::max(worst, r.ratio);
    out.cube_ratios.push_back(r);
  }
  out.c_certificate = {"per-cube R image/input", worst, options.c_config, false};

  const WeightedCloud w_in = cloud.Filter(Part::kU);
  const WeightedCloud w_out = out.image.Filter(Part::kU);
  out.w_input = MeasureAtScale(w_in, std::max(m, 1), options.measure_scale);
  out.w_image = MeasureAtScale(w_out, std::max(m, 1), options.measure_scale);
  return out;
}

FedererFlemingResult FedererFlemingMap(const WeightedCloud& cloud,
                                       const RootCube& root, int level,
                                       const CellOracle& s,
                                       const FedererFlemingOptions& options) {
  return FedererFlemingMap(cloud, Subdivide(root, level, s), options);
}

}  // namespace rectlab
