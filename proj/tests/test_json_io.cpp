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
#include "rectlab/json_io.hpp"
#include "rectlab/lab.hpp"
#include "rectlab/runner.hpp"

using namespace rectlab;

TEST_CASE("map round trip is bit-identical") {
  const WeightedCloud e = GeneratePrefractal(IfsSpec::FourCorner(), 5);
  const PsiResult psi = BuildPsiEpsilon(e, 0.1);
  AffineMap shear;
  shear.a = {1.0, 0.25, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0};
  shear.b = {0.1, -0.3, 0.0};
  PiecewiseMap extra(2);
  extra.Append(shear);
  const PiecewiseMap f = PiecewiseMap::Compose(extra, psi.map);

  const std::string text = ToJson(f).dump();
  const PiecewiseMap g = MapFromJson(Json::parse(text));
  CHECK(ToJson(g).dump() == text);

  std::mt19937_64 rng(8);
  for (int i = 0; i < 2000; ++i) {
    const Vec x{-0.2 + 1.4 * Uniform01(rng), -0.2 + 1.4 * Uniform01(rng), 0.0};
    const Vec a = f.Apply(x);
    const Vec b = g.Apply(x);
    CHECK(a[0] == b[0]);
    CHECK(a[1] == b[1]);
  }
  for (std::size_t i = 0; i < e.size(); i += 7) CHECK(g.Apply(e.points[i]) == shear.Apply(psi.image.points[i], 2));
}

TEST_CASE("malformed maps are refused") {
  CHECK_THROWS_AS(MapFromJson(Json::parse(R"({"n": 2})")), Refusal);
  CHECK_THROWS_AS(MapFromJson(Json::parse(R"({"n": 2, "chain": [{"type": "warp"}]})")), Refusal);
}

TEST_CASE("config parsing") {
  const Json doc = Json::parse(R"({
    "set": {"model": "four_corner", "depth": 4},
    "seed": 7,
    "epsilons": [0.3],
    "grid": {"root": {"corner": [0, 0], "side": 2}}
  })");
  const ExperimentConfig c = ParseConfig(doc);
  CHECK(c.seed == 7);
  CHECK(c.epsilons == std::vector<double>{0.3});
  CHECK(c.root_given);
  CHECK(c.root.side == 2.0);
  CHECK(c.level == 5);
  CHECK(c.radius_factor == 9.0 / 8.0);

  const Json echo = ConfigToJson(c);
  CHECK(echo["seed"] == 7);
  CHECK(echo.contains("c_config"));
  CHECK(ParseConfig(echo).seed == 7);

  CHECK_THROWS_AS(ParseConfig(Json::parse(R"({"set": {"model": "four_corner"}, "m": 0})")), Refusal);
  CHECK_THROWS_AS(ParseConfig(Json::parse(R"({"set": {"model": "four_corner"}, "seed": "x"})")), Refusal);
  CHECK_THROWS_AS(ParseConfig(Json::parse(R"([1, 2])")), Refusal);
}

TEST_CASE("set models") {
  const WeightedCloud fc = BuildSet(Json::parse(R"({"model": "four_corner", "depth": 3})"));
  CHECK(fc.size() == 64);
  CHECK(fc.TotalWeight() == doctest::Approx(1.0));

  std::vector<CurveSpec> curves;
  const WeightedCloud mix = BuildSet(Json::parse(R"({"model": "mix", "parts": [
      {"model": "four_corner", "depth": 2},
      {"model": "segment", "a": [0, 0.5], "b": [1, 0.5], "step": 0.01}]})"),
                                     &curves);
  CHECK(mix.size() == 16 + 101);
  CHECK(curves.size() == 1);
  CHECK(mix.PartWeight(Part::kR) == doctest::Approx(1.0));

  const WeightedCloud forced =
      BuildSet(Json::parse(R"({"model": "segment", "a": [0, 0], "b": [1, 0], "step": 0.1, "part": "U"})"));
  CHECK(forced.PartWeight(Part::kR) == 0.0);
  CHECK_THROWS_AS(BuildSet(Json::parse(R"({"model": "sphere"})")), Refusal);
}

TEST_CASE("experiments are deterministic") {
  ExperimentConfig c = ParseConfig(Json::parse(R"({
    "set": {"model": "four_corner", "depth": 5},
    "epsilons": [0.2],
    "lipschitz_pairs": 2000,
    "ambient_samples": 2000
  })"));
  const Artifacts a = Execute("psi", c, false);
  const Artifacts b = Execute("psi", c, false);
  CHECK(a.report.dump() == b.report.dump());
  REQUIRE(a.files.size() == b.files.size());
  for (std::size_t i = 0; i < a.files.size(); ++i) CHECK(a.files[i] == b.files[i]);
  CHECK(a.report["schema"] == kReportSchema);
  CHECK(a.report["experiment"] == "psi");
  CHECK(a.pass);
}
