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

#include <random>

#include "doctest.h"
#include "rectlab/federer_fleming.hpp"
#include "rectlab/piecewise_map.hpp"

using namespace rectlab;

namespace {

PiecewiseMap SmallFf() {
  const WeightedCloud circle = DiscretizeCurve(CurveSpec::Circle({0.5, 0.5, 0}, 0.3, 90), 0.01);
  RootCube q;
  q.n = 2;
  FedererFlemingOptions o;
  return FedererFlemingMap(circle, q, 2, WholeOracle(), o).map;
}

AffineMap Translation(double dx, double dy) {
  AffineMap t;
  t.b = {dx, dy, 0.0};
  return t;
}

}  // namespace

TEST_CASE("identity map") {
  const WeightedCloud fc = GeneratePrefractal(IfsSpec::FourCorner(), 4);
  const PiecewiseMap id = PiecewiseMap::Identity(2);
  CHECK(id.Apply(fc).points == fc.points);
  const LipschitzEstimate l = EstimateLipschitz(id, fc, 2000, 1, 1.0, 10.0);
  CHECK(l.value == 1.0);
  CHECK(l.pairs == 2000);
}

TEST_CASE("compose with the identity") {
  const PiecewiseMap f = SmallFf();
  const PiecewiseMap g = PiecewiseMap::Compose(f, PiecewiseMap::Identity(2));
  const PiecewiseMap h = PiecewiseMap::Compose(PiecewiseMap::Identity(2), f);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 10000; ++i) {
    const Vec x{1.2 * Uniform01(rng) - 0.1, 1.2 * Uniform01(rng) - 0.1, 0.0};
    const Vec fx = f.Apply(x);
    CHECK(Distance(g.Apply(x), fx) <= 1e-12);
    CHECK(Distance(h.Apply(x), fx) <= 1e-12);
  }
}

TEST_CASE("composition order") {
  PiecewiseMap shift(2);
  shift.Append(Translation(1.0, 0.0));
  PiecewiseMap scale(2);
  AffineMap s;
  s.a = {2, 0, 0, 0, 2, 0, 0, 0, 1};
  scale.Append(s);
  const Vec x{1.0, 1.0, 0.0};
  CHECK(PiecewiseMap::Compose(shift, scale).Apply(x) == Vec{3.0, 2.0, 0.0});
  CHECK(PiecewiseMap::Compose(scale, shift).Apply(x) == Vec{4.0, 2.0, 0.0});
  CHECK_THROWS_AS(PiecewiseMap::Compose(shift, PiecewiseMap::Identity(3)), Refusal);
}

TEST_CASE("radial exit") {
  RootCube q;
  q.n = 2;
  const DyadicCell cell = DyadicCell::Cube(0, {0, 0, 0}, 2);
  const Vec c{0.5, 0.5, 0.0};
  CHECK(RadialExit(q, cell, c, {0.6, 0.5, 0.0}) == Vec{1.0, 0.5, 0.0});
  CHECK(RadialExit(q, cell, c, {0.0, 0.3, 0.0}) == Vec{0.0, 0.3, 0.0});
  const Vec corner = RadialExit(q, cell, c, {0.75, 0.75, 0.0});
  CHECK(corner == Vec{1.0, 1.0, 0.0});
}

TEST_CASE("sigma is monotone and fixes the ends") {
  FaceStage st;
  st.kind = FaceStage::Kind::kCollapse;
  st.knots_in = {0.0, 0.1, 0.4, 0.6, 1.0};
  st.knots_out = {0.0, 0.0, 0.5, 0.5, 1.0};
  CHECK(st.Sigma(0.0) == 0.0);
  CHECK(st.Sigma(0.05) == 0.0);
  CHECK(st.Sigma(0.5) == 0.5);
  CHECK(st.Sigma(1.0) == 1.0);
  double prev = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double y = st.Sigma(i / 100.0);
    CHECK(y >= prev);
    prev = y;
  }
}

TEST_CASE("apply preserves weights exactly") {
  const PiecewiseMap f = SmallFf();
  const WeightedCloud fc = GeneratePrefractal(IfsSpec::FourCorner(), 5);
  const WeightedCloud image = f.Apply(fc);
  CHECK(image.weights == fc.weights);
  CHECK(image.TotalWeight() == fc.TotalWeight());
}

TEST_CASE("sup distance") {
  PiecewiseMap shift(2);
  shift.Append(Translation(0.3, 0.4));
  CHECK(SupDistance(shift, {{0, 0, 0}, {1, 2, 0}}) == doctest::Approx(0.5));
}
