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

// Test sets: self-similar fractals, polylines and graph patches, and their
// discretization into weighted point clouds.

#ifndef RECTLAB_SETS_HPP_
#define RECTLAB_SETS_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rectlab/vec.hpp"

namespace rectlab {

// U: the purely unrectifiable part. R: the remainder.
enum class Part : std::uint8_t { kU = 0, kR = 1 };

struct WeightedCloud {
  int n = 2;
  std::vector<Vec> points;
  std::vector<double> weights;
  std::vector<Part> parts;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  void Add(const Vec& p, double w, Part part);
  double TotalWeight() const;
  double PartWeight(Part part) const;
  WeightedCloud Filter(Part part) const;
  void Validate() const;
};

// x -> ratio * rotation * x + translation. The rotation is stored row-major
// in a 3x3 block; only the leading n x n entries are used.
struct Similarity {
  double ratio = 0.5;
  std::array<double, 9> rotation{1, 0, 0, 0, 1, 0, 0, 0, 1};
  Vec translation{0.0, 0.0, 0.0};

  Vec Apply(const Vec& x, int n) const;
};

struct IfsSpec {
  int n = 2;
  int m = 1;
  std::vector<Similarity> maps;
  bool open_set_condition = true;  // declared by the caller, never verified
  Vec base{0.5, 0.5, 0.0};         // orbit base point

  // Four maps of ratio 1/4 onto the corners of the unit square.
  static IfsSpec FourCorner();
  void Validate() const;
  double RatioSum() const;  // sum of ratio^m
};

struct GraphPatch {
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
  int nx = 1, ny = 1;
  std::vector<double> heights;  // (nx + 1) * (ny + 1), row-major in y

  double HeightAt(double x, double y) const;  // bilinear
};

// A rectifiable test set: a polyline (m = 1) or the graph of a height
// field over a rectangle in R^3 (m = 2).
struct CurveSpec {
  enum class Kind { kPolyline, kGraphPatch };
  Kind kind = Kind::kPolyline;
  int n = 2;
  int m = 1;
  std::vector<Vec> vertices;
  bool closed = false;
  GraphPatch patch;

  static CurveSpec Segment(const Vec& a, const Vec& b, int n);
  static CurveSpec Circle(const Vec& center, double radius, int vertex_count);
  double Length() const;  // polyline length (or patch area)
};

// One point per length-k composition word, weight prod(ratio^m).
WeightedCloud GeneratePrefractal(const IfsSpec& spec, int depth);

// Points spaced <= step along the curve; weights are arc-length shares.
WeightedCloud DiscretizeCurve(const CurveSpec& spec, double step);

WeightedCloud Mix(const WeightedCloud& a, const WeightedCloud& b);

// CSV schema: x[,y[,z]],weight,part
void WriteCloudCsv(const WeightedCloud& cloud, std::ostream& out);
WeightedCloud ReadCloudCsv(std::istream& in);

}  // namespace rectlab

#endif  // RECTLAB_SETS_HPP_
