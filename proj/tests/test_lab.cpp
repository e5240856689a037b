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

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "rectlab/lab.hpp"

using namespace rectlab;

namespace {

WeightedCloud Circle() {
  return DiscretizeCurve(CurveSpec::Circle({0.5, 0.5, 0.0}, 0.3, 360), 0.001);
}

PiecewiseMap Translation(const Vec& v) {
  AffineMap t;
  t.b = v;
  PiecewiseMap f(2);
  f.Append(t);
  return f;
}

// Greedy r-net in index order, quadratic on purpose.
std::size_t BruteNet(const std::vector<Vec>& pts, double r) {
  std::vector<Vec> net;
  for (const Vec& p : pts) {
    bool near = false;
    for (const Vec& c : net) near = near || Distance(c, p) <= r;
    if (!near) net.push_back(p);
  }
  return net.size();
}

}  // namespace

TEST_CASE("psi refuses a set with no U part") {
  CHECK_THROWS_AS(BuildPsiEpsilon(Circle(), 0.1), Refusal);
}

TEST_CASE("psi on the four-corner set") {
  const WeightedCloud e = GeneratePrefractal(IfsSpec::FourCorner(), 6);
  const PsiResult r = BuildPsiEpsilon(e, 0.1);
  for (const Inequality& c : r.certificates) {
    INFO(c.name, ": ", c.lhs, " vs ", c.rhs);
    CHECK(c.holds());
  }
  // Independent sup distance over the whole cloud.
  double sup = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) sup = std::max(sup, Distance(e.points[i], r.image.points[i]));
  CHECK(sup < 0.1);
  CHECK(r.image.TotalWeight() == e.TotalWeight());
}

TEST_CASE("psi is the identity far from U") {
  const WeightedCloud u = GeneratePrefractal(IfsSpec::FourCorner(), 6);
  const WeightedCloud e = Mix(u, Circle());
  const double eps = 0.1;
  const PsiResult r = BuildPsiEpsilon(e, eps);
  std::size_t far = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e.parts[i] != Part::kR) continue;
    double d = std::numeric_limits<double>::infinity();
    for (const Vec& q : u.points) d = std::min(d, Distance(q, e.points[i]));
    if (d < eps) continue;
    ++far;
    CHECK(r.image.points[i] == e.points[i]);
  }
  CHECK(far > 0);
}

TEST_CASE("semicontinuity verdicts") {
  // Cells coarser than the 1e-3 sample spacing.
  const WeightedCloud e = Circle();
  const double scale = 0x1.0p-9;
  SUBCASE("isometries keep the measure") {
    PerturbationSequence seq;
    seq.declared_lip_bound = 10;
    for (int i = 1; i <= 3; ++i) {
      const Vec v{std::cos(0.3) / i, std::sin(0.3) / i, 0.0};
      seq.maps.push_back(Translation(v));
      seq.sup_distances.push_back(Norm(v));
      seq.lip_bounds.push_back(1.0);
    }
    const Verdict v = SemicontinuityTest(e, seq, 1, scale);
    CHECK(v.kind == Verdict::Kind::kRectifiableConsistent);
    CHECK(v.h_e >= 0.6 * std::numbers::pi);
    CHECK(v.h_e <= 2 * 0.6 * std::numbers::pi);
  }
  SUBCASE("a measure drop with bounded maps is a witness") {
    PerturbationSequence seq;
    seq.declared_lip_bound = 10;
    const double h = MeasureAtScale(e, 1, scale).value;
    for (int i = 0; i < 3; ++i) {
      seq.maps.push_back(PiecewiseMap::Identity(2));
      seq.sup_distances.push_back(1.0 / (i + 1));
      seq.lip_bounds.push_back(2.0);
      seq.measures.push_back(h * (0.9 - 0.2 * i));
    }
    const Verdict v = SemicontinuityTest(e, seq, 1, scale);
    CHECK(v.kind == Verdict::Kind::kUnrectifiableWitness);
    CHECK(v.eta == doctest::Approx(0.5 * h));
    SUBCASE("but not when the Lipschitz bound is exceeded") {
      seq.lip_bounds[1] = 11.0;
      CHECK(SemicontinuityTest(e, seq, 1, scale).kind == Verdict::Kind::kInconclusive);
    }
  }
  SUBCASE("an empty sequence proves nothing") {
    CHECK(SemicontinuityTest(e, PerturbationSequence{}, 1, scale).kind ==
          Verdict::Kind::kInconclusive);
  }
}

TEST_CASE("tangent shadow") {
  SUBCASE("segment under the identity") {
    const CurveSpec seg = CurveSpec::Segment({0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, 2);
    const TangentShadow s = TangentShadowCheck(seg, PiecewiseMap::Identity(2), {0.5, 0.0, 0.0}, 0.1, 0.1);
    CHECK(s.covered);
    CHECK_THROWS_AS(TangentShadowCheck(seg, PiecewiseMap::Identity(2), {0.05, 0.0, 0.0}, 0.1, 0.1),
                    Refusal);
    CHECK_THROWS_AS(TangentShadowCheck(seg, PiecewiseMap::Identity(2), {0.5, 0.1, 0.0}, 0.1, 0.1),
                    Refusal);
  }
  const CurveSpec circle = CurveSpec::Circle({0.5, 0.5, 0.0}, 0.3, 360);
  const Vec x = circle.vertices[0];
  SUBCASE("circle under a small translation") {
    const double r = 0.02;
    CHECK(TangentShadowCheck(circle, Translation({0.0, r / 10, 0.0}), x, r, 0.1).covered);
  }
  SUBCASE("circle under psi with U elsewhere") {
    const WeightedCloud e =
        Mix(GeneratePrefractal(IfsSpec::FourCorner(), 6), DiscretizeCurve(circle, 0.001));
    const PsiResult psi = BuildPsiEpsilon(e, 0.05);
    CHECK(TangentShadowCheck(circle, psi.map, x, 0.02, 0.1).covered);
  }
  SUBCASE("a large translation leaves a gap") {
    CHECK_FALSE(TangentShadowCheck(circle, Translation({0.05, 0.0, 0.0}), x, 0.02, 0.1).covered);
  }
}

TEST_CASE("semi-regularity") {
  SUBCASE("segment") {
    const WeightedCloud seg =
        DiscretizeCurve(CurveSpec::Segment({0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, 2), 1e-4);
    std::vector<std::pair<double, double>> pairs;
    for (int t = 1; t <= 10; ++t) pairs.emplace_back(std::pow(4.0, -t), 1.0);
    CHECK(SemiRegularityEstimate(seg, 1, pairs, 16, 5).estimate <= 3.0);
  }
  SUBCASE("four-corner stays bounded") {
    const WeightedCloud fc = GeneratePrefractal(IfsSpec::FourCorner(), 8);
    std::vector<std::pair<double, double>> pairs;
    for (int t = 1; t <= 6; ++t) pairs.emplace_back(std::pow(4.0, -t), 1.0);
    const SemiRegularity s = SemiRegularityEstimate(fc, 1, pairs, 16, 5);
    for (double v : s.per_pair) CHECK(v <= 4.0);
  }
  SUBCASE("single point") {
    WeightedCloud one;
    one.Add({0.3, 0.3, 0.0}, 1.0, Part::kR);
    CHECK(SemiRegularityEstimate(one, 1, {{0.01, 1.0}}, 4, 1).estimate <= 1.0);
  }
  SUBCASE("agrees with a quadratic net") {
    const WeightedCloud c = DiscretizeCurve(CurveSpec::Circle({0.5, 0.5, 0.0}, 0.3, 24), 0.01);
    const double r = 0.03;
    const double big_r = 0.25;
    double brute = 0.0;
    for (const Vec& x : c.points) {
      std::vector<Vec> local;
      for (const Vec& p : c.points) {
        if (Distance(p, x) <= big_r) local.push_back(p);
      }
      brute = std::max(brute, BruteNet(local, r) * (r / big_r));
    }
    const SemiRegularity s = SemiRegularityEstimate(c, 1, {{r, big_r}}, c.size() * 4, 9);
    CHECK(s.estimate <= brute);
    CHECK(s.estimate >= 0.8 * brute);
  }
}
