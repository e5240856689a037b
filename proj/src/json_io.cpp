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

#include "rectlab/json_io.hpp"

#include <cmath>
#include <fstream>

namespace rectlab {
namespace {

constexpr char kModule[] = "cli-runner";

[[noreturn]] void Bad(const std::string& what) { throw Refusal(kModule, "config: " + what); }

double Number(const Json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) Bad(std::string(key) + " must be a number");
  return j.at(key).get<double>();
}

long long Integer(const Json& j, const char* key, long long fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) Bad(std::string(key) + " must be an integer");
  return j.at(key).get<long long>();
}

Vec ParseVec(const Json& j, int* dim) {
  if (!j.is_array() || j.empty() || j.size() > kMaxDim) Bad("points are arrays of 1 to 3 numbers");
  Vec v{0.0, 0.0, 0.0};
  for (std::size_t a = 0; a < j.size(); ++a) {
    if (!j[a].is_number()) Bad("point coordinates must be numbers");
    v[a] = j[a].get<double>();
  }
  if (*dim == 0) *dim = static_cast<int>(j.size());
  if (*dim != static_cast<int>(j.size())) Bad("points of mixed dimension");
  return v;
}

char SideChar(Side s) {
  switch (s) {
    case Side::kLow:
      return 'L';
    case Side::kHigh:
      return 'H';
    case Side::kSpan:
      break;
  }
  return 'S';
}

Side SideFromChar(char c) {
  if (c == 'L') return Side::kLow;
  if (c == 'H') return Side::kHigh;
  if (c == 'S') return Side::kSpan;
  throw Refusal(kModule, "map: bad face selector");
}

DyadicCell CellFromJson(const Json& j, int n) {
  std::array<std::int64_t, kMaxDim> coords{0, 0, 0};
  std::array<Side, kMaxDim> sel{Side::kLow, Side::kLow, Side::kLow};
  const std::string s = j.at("selector").get<std::string>();
  if (static_cast<int>(s.size()) != n || static_cast<int>(j.at("coords").size()) != n) {
    throw Refusal(kModule, "map: face of the wrong dimension");
  }
  for (int a = 0; a < n; ++a) {
    coords[a] = j.at("coords")[a].get<std::int64_t>();
    sel[a] = SideFromChar(s[a]);
  }
  return DyadicCell::Make(j.at("level").get<int>(), coords, sel, n);
}

Similarity ParseSimilarity(const Json& j, int n) {
  Similarity s;
  s.ratio = Number(j, "ratio", 0.5);
  if (j.contains("angle")) {
    if (n != 2) Bad("angle rotations are 2D only");
    const double t = Number(j, "angle", 0.0);
    s.rotation = {std::cos(t), -std::sin(t), 0, std::sin(t), std::cos(t), 0, 0, 0, 1};
  } else if (j.contains("rotation")) {
    const Json& r = j.at("rotation");
    if (!r.is_array() || static_cast<int>(r.size()) != n * n) Bad("rotation needs n*n entries");
    s.rotation = {1, 0, 0, 0, 1, 0, 0, 0, 1};
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) s.rotation[3 * a + b] = r[a * n + b].get<double>();
    }
  }
  int dim = n;
  if (j.contains("translation")) s.translation = ParseVec(j.at("translation"), &dim);
  return s;
}

}  // namespace

Json ToJson(const Vec& v, int n) {
  Json out = Json::array();
  for (int a = 0; a < n; ++a) out.push_back(v[a]);
  return out;
}

Json ToJson(const DyadicCell& cell, int n) {
  Json coords = Json::array();
  std::string sel;
  for (int a = 0; a < n; ++a) {
    coords.push_back(cell.coords[a]);
    sel.push_back(SideChar(cell.selector[a]));
  }
  return Json{{"level", cell.level}, {"coords", coords}, {"selector", sel}, {"dim", cell.dim}};
}

Json ToJson(const MeasureEstimate& e) {
  return Json{{"value", e.value},
              {"scale", e.scale},
              {"cell_side", e.cell_side},
              {"level", e.level},
              {"cells", e.cells},
              {"method", e.method == MeasureEstimate::Method::kDyadicCover ? "dyadic_cover"
                                                                           : "weight_sum"},
              {"weight_sum", e.weight_sum},
              {"lower", e.lower},
              {"upper", e.upper}};
}

Json ToJson(const Inequality& q) {
  return Json{{"name", q.name},
              {"lhs", q.lhs},
              {"rhs", q.rhs},
              {"relation", q.strict ? "<" : "<="},
              {"holds", q.holds()}};
}

Json ToJson(const BallSystem& s, int n) {
  Json balls = Json::array();
  for (const Ball& b : s.balls) {
    balls.push_back(Json{{"center", ToJson(b.center, n)},
                         {"radius", b.radius},
                         {"center_index", b.center_index},
                         {"u_weight", b.u_weight},
                         {"r_weight", b.r_weight},
                         {"remainder_small", ToJson(b.remainder_small)},
                         {"u_large", ToJson(b.u_large)},
                         {"u_upper_bound_ok", b.u_upper_bound_ok}});
  }
  return Json{{"m", s.m},
              {"delta", s.delta},
              {"eta", s.eta},
              {"balls", balls},
              {"residual", ToJson(s.residual)},
              {"annulus", ToJson(s.annulus)},
              {"remainder_total", ToJson(s.remainder_total)},
              {"log", s.log}};
}

Json ToJson(const LipschitzEstimate& e, int n) {
  return Json{{"value", e.value},
              {"pairs", e.pairs},
              {"worst_x", ToJson(e.worst_x, n)},
              {"worst_y", ToJson(e.worst_y, n)}};
}

Json ToJson(const PiecewiseMap& map) {
  const int n = map.n();
  Json chain = Json::array();
  for (const MapComponent& c : map.chain()) {
    if (const auto* f = std::get_if<FaceDeformation>(&c)) {
      Json stages = Json::array();
      for (const FaceStage& st : f->stages()) {
        Json js{{"face", ToJson(st.face, n)}};
        if (st.kind == FaceStage::Kind::kRadial) {
          js["kind"] = "radial";
          js["center"] = ToJson(st.center, n);
          js["stretch_radius"] = st.stretch_radius;
        } else {
          js["kind"] = "collapse";
          js["knots_in"] = st.knots_in;
          js["knots_out"] = st.knots_out;
        }
        stages.push_back(std::move(js));
      }
      chain.push_back(Json{{"type", "face_deformation"},
                           {"root", {{"corner", ToJson(f->root().corner, n)},
                                     {"side", f->root().side}}},
                           {"level", f->level()},
                           {"m", f->m()},
                           {"stages", stages}});
    } else {
      const AffineMap& a = std::get<AffineMap>(c);
      chain.push_back(Json{{"type", "affine"}, {"a", a.a}, {"b", ToJson(a.b, n)}});
    }
  }
  return Json{{"n", n}, {"chain", chain}};
}

namespace {

PiecewiseMap MapFromJsonUnchecked(const Json& doc) {
  const int n = doc.at("n").get<int>();
  if (n < 1 || n > kMaxDim) throw Refusal(kModule, "map: dimension out of range");
  PiecewiseMap map(n);
  for (const Json& c : doc.at("chain")) {
    const std::string type = c.at("type").get<std::string>();
    if (type == "affine") {
      AffineMap a;
      a.a = c.at("a").get<std::array<double, 9>>();
      int dim = n;
      a.b = ParseVec(c.at("b"), &dim);
      map.Append(a);
    } else if (type == "face_deformation") {
      RootCube root;
      root.n = n;
      int dim = n;
      root.corner = ParseVec(c.at("root").at("corner"), &dim);
      root.side = c.at("root").at("side").get<double>();
      std::vector<FaceStage> stages;
      for (const Json& js : c.at("stages")) {
        FaceStage st;
        st.face = CellFromJson(js.at("face"), n);
        if (js.at("kind").get<std::string>() == "radial") {
          st.kind = FaceStage::Kind::kRadial;
          st.center = ParseVec(js.at("center"), &dim);
          st.stretch_radius = js.at("stretch_radius").get<double>();
        } else {
          st.kind = FaceStage::Kind::kCollapse;
          st.knots_in = js.at("knots_in").get<std::vector<double>>();
          st.knots_out = js.at("knots_out").get<std::vector<double>>();
        }
        stages.push_back(std::move(st));
      }
      map.Append(FaceDeformation(root, c.at("level").get<int>(), c.at("m").get<int>(),
                                 std::move(stages)));
    } else {
      throw Refusal(kModule, "map: unknown component type " + type);
    }
  }
  return map;
}

}  // namespace

PiecewiseMap MapFromJson(const Json& doc) {
  try {
    return MapFromJsonUnchecked(doc);
  } catch (const nlohmann::json::exception& e) {
    throw Refusal(kModule, std::string("map: ") + e.what());
  }
}

WeightedCloud BuildSet(const Json& spec, std::vector<CurveSpec>* curves) {
  if (!spec.is_object() || !spec.contains("model")) Bad("set needs a model");
  const std::string model = spec.at("model").get<std::string>();
  WeightedCloud cloud;
  const double step = Number(spec, "step", 1e-3);
  if (!(step > 0.0)) Bad("step must be positive");
  auto add_curve = [&](const CurveSpec& c) {
    if (curves != nullptr) curves->push_back(c);
    cloud = DiscretizeCurve(c, step);
  };
  if (model == "four_corner") {
    cloud = GeneratePrefractal(IfsSpec::FourCorner(), static_cast<int>(Integer(spec, "depth", 5)));
  } else if (model == "ifs") {
    IfsSpec ifs;
    ifs.n = static_cast<int>(Integer(spec, "n", 2));
    ifs.m = static_cast<int>(Integer(spec, "m", 1));
    if (ifs.n < 1 || ifs.n > kMaxDim) Bad("ifs dimension out of range");
    if (!spec.contains("maps") || !spec.at("maps").is_array()) Bad("ifs needs maps");
    for (const Json& j : spec.at("maps")) ifs.maps.push_back(ParseSimilarity(j, ifs.n));
    ifs.open_set_condition = spec.value("open_set_condition", true);
    int dim = ifs.n;
    if (spec.contains("base")) ifs.base = ParseVec(spec.at("base"), &dim);
    cloud = GeneratePrefractal(ifs, static_cast<int>(Integer(spec, "depth", 5)));
  } else if (model == "segment") {
    int dim = 0;
    if (!spec.contains("a") || !spec.contains("b")) Bad("segment needs a and b");
    const Vec a = ParseVec(spec.at("a"), &dim);
    const Vec b = ParseVec(spec.at("b"), &dim);
    add_curve(CurveSpec::Segment(a, b, dim));
  } else if (model == "polyline") {
    CurveSpec c;
    int dim = 0;
    if (!spec.contains("vertices") || !spec.at("vertices").is_array()) Bad("polyline needs vertices");
    for (const Json& v : spec.at("vertices")) c.vertices.push_back(ParseVec(v, &dim));
    c.n = dim;
    c.closed = spec.value("closed", false);
    add_curve(c);
  } else if (model == "circle") {
    int dim = 2;
    const Vec center = spec.contains("center") ? ParseVec(spec.at("center"), &dim) : Vec{0.5, 0.5, 0.0};
    if (dim != 2) Bad("circle lives in the plane");
    add_curve(CurveSpec::Circle(center, Number(spec, "radius", 0.3),
                                static_cast<int>(Integer(spec, "vertices", 360))));
  } else if (model == "graph_patch") {
    CurveSpec c;
    c.kind = CurveSpec::Kind::kGraphPatch;
    c.n = 3;
    c.m = 2;
    c.patch.x0 = Number(spec, "x0", 0.0);
    c.patch.x1 = Number(spec, "x1", 1.0);
    c.patch.y0 = Number(spec, "y0", 0.0);
    c.patch.y1 = Number(spec, "y1", 1.0);
    c.patch.nx = static_cast<int>(Integer(spec, "nx", 1));
    c.patch.ny = static_cast<int>(Integer(spec, "ny", 1));
    c.patch.heights = spec.value("heights", std::vector<double>(
        static_cast<std::size_t>((c.patch.nx + 1) * (c.patch.ny + 1)), 0.0));
    add_curve(c);
  } else if (model == "cloud_csv") {
    std::ifstream in(spec.value("path", std::string()));
    if (!in) Bad("cannot open cloud csv");
    cloud = ReadCloudCsv(in);
  } else if (model == "mix") {
    if (!spec.contains("parts") || !spec.at("parts").is_array()) Bad("mix needs parts");
    bool first = true;
    for (const Json& p : spec.at("parts")) {
      WeightedCloud part = BuildSet(p, curves);
      cloud = first ? part : Mix(cloud, part);
      first = false;
    }
  } else {
    Bad("unknown set model " + model);
  }
  if (spec.contains("part")) {
    const std::string part = spec.at("part").get<std::string>();
    if (part != "U" && part != "R") Bad("part must be U or R");
    for (Part& p : cloud.parts) p = part == "U" ? Part::kU : Part::kR;
  }
  cloud.Validate();
  return cloud;
}

void ExperimentConfig::Validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) Bad(std::string(name) + " must be positive");
  };
  if (set.is_null()) Bad("missing set");
  if (m < 1 || m > 2) Bad("m must be 1 or 2");
  for (double e : epsilons) positive(e, "epsilon");
  positive(root.side, "root side");
  if (level < 0 || level > 20) Bad("level out of range");
  if (max_level < 0 || max_level > 30) Bad("max_level out of range");
  if (support != "whole" && support != "set") Bad("support must be whole or set");
  positive(c_config, "c_config");
  positive(measure_scale, "measure_scale");
  positive(min_clearance, "min_clearance");
  positive(clearance_keep, "clearance_keep");
  if (center_candidates < 1 || bf_samples < 1 || directions < 1) Bad("sample counts must be positive");
  positive(collapse_budget, "collapse_budget");
  positive(w_ratio_target, "w_ratio_target");
  positive(radius_factor, "radius_factor");
  if (delta < 0.0) Bad("delta must be non-negative");
  if (sequence != "isometries" && sequence != "ff" && sequence != "psi") {
    Bad("sequence must be isometries, ff or psi");
  }
  if (count < 0) Bad("count must be non-negative");
  positive(declared_lip_bound, "declared_lip_bound");
  for (const auto& [r, big_r] : scale_pairs) {
    if (!(r > 0.0 && r <= big_r)) Bad("scale pairs need 0 < r <= R");
  }
}

ExperimentConfig ParseConfig(const Json& doc) {
  if (!doc.is_object()) Bad("top level must be an object");
  ExperimentConfig c;
  try {
    if (!doc.contains("set")) Bad("missing set");
    c.set = doc.at("set");
    if (doc.contains("seed")) {
      if (!doc.at("seed").is_number_unsigned()) Bad("seed must be a non-negative integer");
      c.seed = doc.at("seed").get<std::uint64_t>();
    }
    c.m = static_cast<int>(Integer(doc, "m", c.m));
    if (doc.contains("epsilons")) c.epsilons = doc.at("epsilons").get<std::vector<double>>();
    if (doc.contains("grid")) {
      const Json& g = doc.at("grid");
      c.level = static_cast<int>(Integer(g, "level", c.level));
      c.max_level = static_cast<int>(Integer(g, "max_level", c.max_level));
      c.support = g.value("support", c.support);
      if (g.contains("root")) {
        int dim = 0;
        c.root.corner = ParseVec(g.at("root").at("corner"), &dim);
        c.root.n = dim;
        c.root.side = Number(g.at("root"), "side", 1.0);
        c.root_given = true;
      }
    }
    c.c_config = Number(doc, "c_config", c.c_config);
    c.measure_scale = Number(doc, "measure_scale", c.measure_scale);
    c.min_clearance = Number(doc, "min_clearance", c.min_clearance);
    c.clearance_keep = Number(doc, "clearance_keep", c.clearance_keep);
    c.center_candidates = static_cast<int>(Integer(doc, "center_candidates", c.center_candidates));
    c.bf_samples = static_cast<int>(Integer(doc, "bf_samples", c.bf_samples));
    c.collapse_gap = Number(doc, "collapse_gap", c.collapse_gap);
    c.collapse_budget = Number(doc, "collapse_budget", c.collapse_budget);
    c.w_ratio_target = Number(doc, "w_ratio_target", c.w_ratio_target);
    c.ambient_samples = static_cast<std::size_t>(Integer(doc, "ambient_samples", 10000));
    c.lipschitz_pairs = static_cast<std::size_t>(Integer(doc, "lipschitz_pairs", 20000));
    c.radius_factor = Number(doc, "radius_factor", c.radius_factor);
    c.directions = static_cast<int>(Integer(doc, "directions", c.directions));
    c.delta = Number(doc, "delta", c.delta);
    if (doc.contains("sequence")) {
      const Json& s = doc.at("sequence");
      c.sequence = s.value("kind", c.sequence);
      c.count = static_cast<int>(Integer(s, "count", c.count));
      if (s.contains("levels")) c.levels = s.at("levels").get<std::vector<int>>();
      c.declared_lip_bound = Number(s, "declared_lip_bound", c.declared_lip_bound);
      c.tolerance = Number(s, "tolerance", c.tolerance);
      c.expect = s.value("expect", c.expect);
    }
    if (doc.contains("semireg")) {
      const Json& s = doc.at("semireg");
      if (s.contains("pairs")) {
        for (const Json& p : s.at("pairs")) {
          if (!p.is_array() || p.size() != 2) Bad("scale pairs are [r, R]");
          c.scale_pairs.emplace_back(p[0].get<double>(), p[1].get<double>());
        }
      }
      c.sample_centers = static_cast<std::size_t>(Integer(s, "centers", 32));
      c.semireg_bound = Number(s, "bound", 0.0);
    }
  } catch (const nlohmann::json::exception& e) {
    Bad(e.what());
  }
  c.Validate();
  return c;
}

Json ConfigToJson(const ExperimentConfig& c) {
  Json pairs = Json::array();
  for (const auto& [r, big_r] : c.scale_pairs) pairs.push_back(Json::array({r, big_r}));
  Json grid{{"level", c.level}, {"max_level", c.max_level}, {"support", c.support}};
  if (c.root_given) {
    grid["root"] = Json{{"corner", ToJson(c.root.corner, c.root.n)}, {"side", c.root.side}};
  }
  return Json{
      {"set", c.set},
      {"seed", c.seed},
      {"m", c.m},
      {"epsilons", c.epsilons},
      {"grid", grid},
      {"c_config", c.c_config},
      {"measure_scale", c.measure_scale},
      {"min_clearance", c.min_clearance},
      {"clearance_keep", c.clearance_keep},
      {"center_candidates", c.center_candidates},
      {"bf_samples", c.bf_samples},
      {"collapse_gap", c.collapse_gap},
      {"collapse_budget", c.collapse_budget},
      {"w_ratio_target", c.w_ratio_target},
      {"ambient_samples", c.ambient_samples},
      {"lipschitz_pairs", c.lipschitz_pairs},
      {"radius_factor", c.radius_factor},
      {"directions", c.directions},
      {"delta", c.delta},
      {"sequence", {{"kind", c.sequence},
                    {"count", c.count},
                    {"levels", c.levels},
                    {"declared_lip_bound", c.declared_lip_bound},
                    {"tolerance", c.tolerance},
                    {"expect", c.expect}}},
      {"semireg", {{"pairs", pairs}, {"centers", c.sample_centers}, {"bound", c.semireg_bound}}},
  };
}

}  // namespace rectlab
