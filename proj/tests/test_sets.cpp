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

#include <algorithm>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "rectlab/sets.hpp"

using namespace rectlab;

TEST_CASE("four-corner level one") {
  const WeightedCloud c = GeneratePrefractal(IfsSpec::FourCorner(), 1);
  REQUIRE(c.size() == 4);
  std::vector<std::pair<double, double>> got;
  for (std::size_t i = 0; i < 4; ++i) {
    got.emplace_back(c.points[i][0], c.points[i][1]);
    CHECK(c.weights[i] == 0.25);
    CHECK(c.parts[i] == Part::kU);
  }
  std::sort(got.begin(), got.end());
  const std::vector<std::pair<double, double>> want{
      {0.125, 0.125}, {0.125, 0.875}, {0.875, 0.125}, {0.875, 0.875}};
  CHECK(got == want);
}

TEST_CASE("depth zero is the base point") {
  const WeightedCloud c = GeneratePrefractal(IfsSpec::FourCorner(), 0);
  REQUIRE(c.size() == 1);
  CHECK(c.weights[0] == 1.0);
}

TEST_CASE("depth three points are separated") {
  const WeightedCloud c = GeneratePrefractal(IfsSpec::FourCorner(), 3);
  REQUIRE(c.size() == 64);
  double min_dist = 1e300;
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t k = i + 1; k < c.size(); ++k) {
      min_dist = std::min(min_dist, Distance(c.points[i], c.points[k]));
    }
  }
  CHECK(min_dist >= 2.0 / 64.0);
  CHECK(c.TotalWeight() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("prefractal budget and validation") {
  CHECK_THROWS_AS(GeneratePrefractal(IfsSpec::FourCorner(), 11), Refusal);
  IfsSpec bad = IfsSpec::FourCorner();
  bad.maps[0].ratio = 1.5;
  CHECK_THROWS_AS(GeneratePrefractal(bad, 2), Refusal);
}

TEST_CASE("segment discretization") {
  const WeightedCloud c = DiscretizeCurve(CurveSpec::Segment({0, 0, 0}, {1, 0, 0}, 2), 0.25);
  CHECK(c.size() == 5);
  CHECK(c.TotalWeight() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(c.weights.front() == 0.125);
}

TEST_CASE("circle chord sum") {
  const WeightedCloud c = DiscretizeCurve(CurveSpec::Circle({0, 0, 0}, 1.0, 360), 0.01);
  const double chords = 2.0 * 360.0 * std::sin(std::numbers::pi / 360.0);
  CHECK(c.TotalWeight() == doctest::Approx(chords).epsilon(1e-12));
  CHECK(std::abs(c.TotalWeight() - 2.0 * std::numbers::pi) < 1e-3);
}

TEST_CASE("zero-length curve is empty") {
  const WeightedCloud c = DiscretizeCurve(CurveSpec::Segment({0.3, 0.3, 0}, {0.3, 0.3, 0}, 2), 0.1);
  CHECK(c.empty());
}

TEST_CASE("graph patch area") {
  CurveSpec flat;
  flat.kind = CurveSpec::Kind::kGraphPatch;
  flat.n = 3;
  flat.m = 2;
  flat.patch.nx = 2;
  flat.patch.ny = 2;
  flat.patch.heights.assign(9, 0.5);
  const WeightedCloud c = DiscretizeCurve(flat, 0.05);
  CHECK(c.TotalWeight() == doctest::Approx(1.0).epsilon(1e-12));
  for (const Vec& p : c.points) CHECK(std::abs(p[2] - 0.5) <= 1e-15);
}

TEST_CASE("mix") {
  const WeightedCloud fc = GeneratePrefractal(IfsSpec::FourCorner(), 5);
  const WeightedCloud circle = DiscretizeCurve(CurveSpec::Circle({0.5, 0.5, 0}, 1.0, 360), 1e-3);
  const WeightedCloud m = Mix(fc, circle);
  CHECK(std::abs(m.TotalWeight() - (1.0 + 2.0 * std::numbers::pi)) < 2.0 * std::numbers::pi * 1e-3);
  CHECK(m.PartWeight(Part::kU) == doctest::Approx(1.0));
  CHECK(Mix(WeightedCloud{}, fc).size() == fc.size());
  CHECK(Mix(fc, fc).TotalWeight() == doctest::Approx(2.0 * fc.TotalWeight()));
  WeightedCloud three;
  three.n = 3;
  three.Add({0, 0, 0}, 1.0, Part::kR);
  CHECK_THROWS_AS(Mix(fc, three), Refusal);
}

TEST_CASE("csv round trip is exact") {
  const WeightedCloud c = Mix(GeneratePrefractal(IfsSpec::FourCorner(), 3),
                              DiscretizeCurve(CurveSpec::Circle({0.5, 0.5, 0}, 0.3, 36), 0.05));
  std::stringstream ss;
  WriteCloudCsv(c, ss);
  const WeightedCloud back = ReadCloudCsv(ss);
  CHECK(back.n == c.n);
  CHECK(back.points == c.points);
  CHECK(back.weights == c.weights);
  CHECK(back.parts == c.parts);
}
