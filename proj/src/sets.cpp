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

#include "rectlab/sets.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace rectlab {
namespace {

constexpr char kModule[] = "set-models";
constexpr double kPrefractalBudget = 1e6;

const char* kAxisNames[] = {"x", "y", "z"};

}  // namespace

void WeightedCloud::Add(const Vec& p, double w, Part part) {
  points.push_back(p);
  weights.push_back(w);
  parts.push_back(part);
}

double WeightedCloud::TotalWeight() const {
  double sum = 0.0;
  for (double w : weights) sum += w;
  return sum;
}

double WeightedCloud::PartWeight(Part part) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    if (parts[i] == part) sum += weights[i];
  }
  return sum;
}

WeightedCloud WeightedCloud::Filter(Part part) const {
  WeightedCloud out;
  out.n = n;
  for (std::size_t i = 0; i < size(); ++i) {
    if (parts[i] == part) out.Add(points[i], weights[i], parts[i]);
  }
  return out;
}

void WeightedCloud::Validate() const {
  if (n < 1 || n > kMaxDim) throw Refusal(kModule, "cloud dimension out of range");
  if (weights.size() != points.size() || parts.size() != points.size()) {
    throw Refusal(kModule, "cloud arrays differ in length");
  }
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Refusal(kModule, "cloud weights must be finite and nonnegative");
    }
  }
}

Vec Similarity::Apply(const Vec& x, int n) const {
  Vec y{0.0, 0.0, 0.0};
  for (int r = 0; r < n; ++r) {
    double acc = 0.0;
    for (int c = 0; c < n; ++c) acc += rotation[3 * r + c] * x[c];
    y[r] = ratio * acc + translation[r];
  }
  return y;
}

IfsSpec IfsSpec::FourCorner() {
  IfsSpec spec;
  spec.n = 2;
  spec.m = 1;
  for (const auto& t : {Vec{0.0, 0.0, 0.0}, Vec{0.75, 0.0, 0.0},
                        Vec{0.0, 0.75, 0.0}, Vec{0.75, 0.75, 0.0}}) {
    Similarity s;
    s.ratio = 0.25;
    s.translation = t;
    spec.maps.push_back(s);
  }
  spec.base = {0.5, 0.5, 0.0};
  return spec;
}

void IfsSpec::Validate() const {
  if (n < 1 || n > kMaxDim) throw Refusal(kModule, "IFS dimension out of range");
  if (m < 0 || m > n) throw Refusal(kModule, "IFS measure dimension out of range");
  if (maps.empty()) throw Refusal(kModule, "IFS has no maps");
  for (const Similarity& s : maps) {
    if (!(s.ratio > 0.0 && s.ratio < 1.0)) {
      throw Refusal(kModule, "IFS ratios must lie in (0, 1)");
    }
  }
}

double IfsSpec::RatioSum() const {
  double sum = 0.0;
  for (const Similarity& s : maps) sum += std::pow(s.ratio, m);
  return sum;
}

double GraphPatch::HeightAt(double x, double y) const {
  const double u = std::clamp((x - x0) / (x1 - x0) * nx, 0.0, double(nx));
  const double v = std::clamp((y - y0) / (y1 - y0) * ny, 0.0, double(ny));
  const int i = std::min(static_cast<int>(u), nx - 1);
  const int j = std::min(static_cast<int>(v), ny - 1);
  const double fu = u - i;
  const double fv = v - j;
  auto h = [&](int a, int b) { return heights[b * (nx + 1) + a]; };
  return (1 - fu) * (1 - fv) * h(i, j) + fu * (1 - fv) * h(i + 1, j) +
         (1 - fu) * fv * h(i, j + 1) + fu * fv * h(i + 1, j + 1);
}

CurveSpec CurveSpec::Segment(const Vec& a, const Vec& b, int n) {
  CurveSpec spec;
  spec.n = n;
  spec.vertices = {a, b};
  return spec;
}

CurveSpec CurveSpec::Circle(const Vec& center, double radius, int vertex_count) {
  CurveSpec spec;
  spec.n = 2;
  spec.closed = true;
  for (int i = 0; i < vertex_count; ++i) {
    const double t = 2.0 * std::numbers::pi * i / vertex_count;
    spec.vertices.push_back(
        {center[0] + radius * std::cos(t), center[1] + radius * std::sin(t), 0.0});
  }
  return spec;
}

double CurveSpec::Length() const {
  if (kind == Kind::kGraphPatch) {
    return DiscretizeCurve(*this, std::min(patch.x1 - patch.x0,
                                           patch.y1 - patch.y0) / 64.0)
        .TotalWeight();
  }
  double total = 0.0;
  const std::size_t k = vertices.size();
  for (std::size_t i = 0; i + 1 < k; ++i) {
    total += Distance(vertices[i], vertices[i + 1]);
  }
  if (closed && k > 2) total += Distance(vertices[k - 1], vertices[0]);
  return total;
}

WeightedCloud GeneratePrefractal(const IfsSpec& spec, int depth) {
  spec.Validate();
  if (depth < 0) throw Refusal(kModule, "negative prefractal depth");
  if (std::pow(static_cast<double>(spec.maps.size()), depth) > kPrefractalBudget) {
    throw Refusal(kModule, "prefractal budget exceeded: |maps|^depth > 1e6");
  }
  std::vector<Vec> points{spec.base};
  std::vector<double> weights{1.0};
  for (int level = 0; level < depth; ++level) {
    std::vector<Vec> next_points;
    std::vector<double> next_weights;
    next_points.reserve(points.size() * spec.maps.size());
    next_weights.reserve(points.size() * spec.maps.size());
    // The new letter is prepended to each word, so the outer loop over maps
    // keeps the words in lexicographic order.
    for (const Similarity& f : spec.maps) {
      const double scale = std::pow(f.ratio, spec.m);
      for (std::size_t i = 0; i < points.size(); ++i) {
        next_points.push_back(f.Apply(points[i], spec.n));
        next_weights.push_back(weights[i] * scale);
      }
    }
    points = std::move(next_points);
    weights = std::move(next_weights);
  }
  WeightedCloud cloud;
  cloud.n = spec.n;
  cloud.points = std::move(points);
  cloud.weights = std::move(weights);
  cloud.parts.assign(cloud.points.size(), Part::kU);
  return cloud;
}

namespace {

WeightedCloud DiscretizePolyline(const CurveSpec& spec, double step) {
  WeightedCloud cloud;
  cloud.n = spec.n;
  if (spec.Length() == 0.0) return cloud;
  std::vector<std::pair<Vec, Vec>> segments;
  const std::size_t k = spec.vertices.size();
  for (std::size_t i = 0; i + 1 < k; ++i) {
    segments.emplace_back(spec.vertices[i], spec.vertices[i + 1]);
  }
  if (spec.closed && k > 2) segments.emplace_back(spec.vertices[k - 1], spec.vertices[0]);
  for (const auto& [a, b] : segments) {
    if (Distance(a, b) == 0.0) {
      throw Refusal(kModule, "consecutive polyline vertices must be distinct");
    }
  }
  // Node weights: half of each adjacent sub-segment.
  std::vector<Vec> nodes;
  std::vector<double> weights;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    const auto& [a, b] = segments[s];
    const double len = Distance(a, b);
    const auto pieces = static_cast<std::size_t>(std::max(1.0, std::ceil(len / step)));
    const double piece = len / static_cast<double>(pieces);
    if (s == 0) {
      nodes.push_back(a);
      weights.push_back(0.0);
    }
    weights.back() += 0.5 * piece;
    for (std::size_t i = 1; i <= pieces; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(pieces);
      nodes.push_back(i == pieces ? b : a + t * (b - a));
      weights.push_back(i == pieces ? 0.5 * piece : piece);
    }
  }
  if (spec.closed && k > 2) {
    weights.front() += weights.back();
    nodes.pop_back();
    weights.pop_back();
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) cloud.Add(nodes[i], weights[i], Part::kR);
  return cloud;
}

WeightedCloud DiscretizePatch(const CurveSpec& spec, double step) {
  const GraphPatch& g = spec.patch;
  WeightedCloud cloud;
  cloud.n = 3;
  const double wx = g.x1 - g.x0;
  const double wy = g.y1 - g.y0;
  if (!(wx > 0.0 && wy > 0.0)) return cloud;
  const int nx = std::max(1, static_cast<int>(std::ceil(wx / step)));
  const int ny = std::max(1, static_cast<int>(std::ceil(wy / step)));
  auto node = [&](int i, int j) {
    const double x = g.x0 + wx * i / nx;
    const double y = g.y0 + wy * j / ny;
    return Vec{x, y, g.HeightAt(x, y)};
  };
  std::vector<double> weights((nx + 1) * (ny + 1), 0.0);
  auto tri_area = [](const Vec& a, const Vec& b, const Vec& c) {
    const Vec u = b - a;
    const Vec v = c - a;
    const Vec cross{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
                    u[0] * v[1] - u[1] * v[0]};
    return 0.5 * Norm(cross);
  };
  // Each quad is split into two triangles; a triangle's area is shared
  // equally by its three corners.
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const Vec a = node(i, j), b = node(i + 1, j), c = node(i + 1, j + 1),
                d = node(i, j + 1);
      const double t1 = tri_area(a, b, c) / 3.0;
      const double t2 = tri_area(a, c, d) / 3.0;
      weights[j * (nx + 1) + i] += t1 + t2;
      weights[j * (nx + 1) + i + 1] += t1;
      weights[(j + 1) * (nx + 1) + i + 1] += t1 + t2;
      weights[(j + 1) * (nx + 1) + i] += t2;
    }
  }
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) cloud.Add(node(i, j), weights[j * (nx + 1) + i], Part::kR);
  }
  return cloud;
}

}  // namespace

WeightedCloud DiscretizeCurve(const CurveSpec& spec, double step) {
  if (!(step > 0.0)) throw Refusal(kModule, "discretization step must be positive");
  if (spec.kind == CurveSpec::Kind::kGraphPatch) {
    if (spec.n != 3 || spec.m != 2) {
      throw Refusal(kModule, "graph patches live in R^3 with m = 2");
    }
    const GraphPatch& g = spec.patch;
    if (g.nx < 1 || g.ny < 1 ||
        g.heights.size() != static_cast<std::size_t>((g.nx + 1) * (g.ny + 1))) {
      throw Refusal(kModule, "graph patch height grid has the wrong size");
    }
    return DiscretizePatch(spec, step);
  }
  if (spec.m != 1) throw Refusal(kModule, "polylines have m = 1");
  return DiscretizePolyline(spec, step);
}

WeightedCloud Mix(const WeightedCloud& a, const WeightedCloud& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (a.n != b.n) throw Refusal(kModule, "cannot mix clouds of different dimension");
  WeightedCloud out = a;
  out.points.insert(out.points.end(), b.points.begin(), b.points.end());
  out.weights.insert(out.weights.end(), b.weights.begin(), b.weights.end());
  out.parts.insert(out.parts.end(), b.parts.begin(), b.parts.end());
  return out;
}

void WriteCloudCsv(const WeightedCloud& cloud, std::ostream& out) {
  for (int a = 0; a < cloud.n; ++a) out << kAxisNames[a] << ',';
  out << "weight,part\n";
  char buf[64];
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    for (int a = 0; a < cloud.n; ++a) {
      std::snprintf(buf, sizeof(buf), "%.17g,", cloud.points[i][a]);
      out << buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g,", cloud.weights[i]);
    out << buf << (cloud.parts[i] == Part::kU ? 'U' : 'R') << '\n';
  }
}

WeightedCloud ReadCloudCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Refusal(kModule, "empty cloud CSV");
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) header.push_back(field);
  }
  const int n = static_cast<int>(header.size()) - 2;
  if (n < 1 || n > kMaxDim || header[n] != "weight" || header[n + 1] != "part") {
    throw Refusal(kModule, "cloud CSV header must be x[,y[,z]],weight,part");
  }
  for (int a = 0; a < n; ++a) {
    if (header[a] != kAxisNames[a]) throw Refusal(kModule, "bad coordinate column name");
  }
  WeightedCloud cloud;
  cloud.n = n;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != header.size()) {
      throw Refusal(kModule, "cloud CSV line " + std::to_string(line_no) +
                                 " has the wrong number of fields");
    }
    Vec p{0.0, 0.0, 0.0};
    try {
      for (int a = 0; a < n; ++a) p[a] = std::stod(fields[a]);
      const double w = std::stod(fields[n]);
      const std::string& part = fields[n + 1];
      if (part != "U" && part != "R") throw std::invalid_argument("part");
      cloud.Add(p, w, part == "U" ? Part::kU : Part::kR);
    } catch (const std::exception&) {
      throw Refusal(kModule, "cloud CSV line " + std::to_string(line_no) + " is malformed");
    }
  }
  cloud.Validate();
  return cloud;
}

}  // namespace rectlab
