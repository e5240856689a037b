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

#include "rectlab/runner.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>

#include "rectlab/federer_fleming.hpp"
#include "rectlab/lab.hpp"
#include "rectlab/shadow.hpp"
#include "rectlab/svg.hpp"

namespace rectlab {
namespace {

constexpr char kModule[] = "cli-runner";

void Log(const std::string& line) {
  static const bool enabled = [] {
    const char* level = std::getenv("RECTLAB_LOG_LEVEL");
    return level != nullptr && std::string(level) != "off" && std::string(level) != "";
  }();
  if (enabled) std::fprintf(stderr, "[rectlab] %s\n", line.c_str());
}

std::string Csv(const WeightedCloud& cloud) {
  std::ostringstream os;
  WriteCloudCsv(cloud, os);
  return os.str();
}

RootCube RootFor(const ExperimentConfig& config, int n) {
  if (!config.root_given) {
    RootCube q;
    q.n = n;
    return q;
  }
  if (config.root.n != n) throw Refusal(kModule, "grid root dimension differs from the set");
  return config.root;
}

std::unique_ptr<CellOracle> OracleFor(const ExperimentConfig& config, const WeightedCloud& cloud) {
  if (config.support == "set") return std::make_unique<PointSetOracle>(cloud.points, cloud.n);
  return std::make_unique<WholeOracle>();
}

FedererFlemingOptions FfOptions(const ExperimentConfig& c) {
  FedererFlemingOptions o;
  o.m = c.m;
  o.seed = c.seed;
  o.center_candidates = c.center_candidates;
  o.min_clearance = c.min_clearance;
  o.clearance_keep = c.clearance_keep;
  o.c_config = c.c_config;
  o.measure_scale = c.measure_scale;
  o.bf_samples = c.bf_samples;
  o.collapse_gap = c.collapse_gap;
  o.collapse_budget = c.collapse_budget;
  return o;
}

PsiOptions PsiOptionsFor(const ExperimentConfig& c) {
  PsiOptions p;
  p.m = c.m;
  p.c_config = c.c_config;
  p.measure_scale = c.measure_scale;
  p.ambient_samples = c.ambient_samples;
  p.lipschitz_pairs = c.lipschitz_pairs;
  p.seed = c.seed;
  p.max_level = c.max_level;
  p.radius_factor = c.radius_factor;
  p.ff = FfOptions(c);
  return p;
}

Json Points2(const std::vector<Vec>& pts) {
  Json out = Json::array();
  for (const Vec& p : pts) out.push_back(Json::array({p[0], p[1]}));
  return out;
}

Json FaceSegments(const std::vector<DyadicCell>& faces, const RootCube& root) {
  Json out = Json::array();
  for (const DyadicCell& f : faces) {
    const Box b = f.Realize(root);
    out.push_back(Json::array({b.lo[0], b.lo[1], b.hi[0], b.hi[1]}));
  }
  return out;
}

Json Bounds(const RootCube& root) {
  return Json::array({root.corner[0], root.corner[1], root.corner[0] + root.side,
                      root.corner[1] + root.side});
}

struct Run {
  Json results = Json::object();
  std::vector<Inequality> certificates;
  std::vector<std::pair<std::string, std::string>> files;
  Json render;
};

// True when p lies on the boundary of the union of the complex's cubes.
bool OnSupportBoundary(const CellComplex& complex, const Vec& p) {
  DyadicCell f;
  if (!LocateFace(complex.root, complex.level, p, kFaceSnap, &f)) return false;
  return !IsInteriorFace(complex, f);
}

bool InClosedSupport(const CellComplex& complex, const Vec& p) {
  const double s = complex.root.CellSide(complex.level);
  for (const DyadicCell& cube : complex.cells) {
    if (cube.Realize(complex.root).Contains(p, complex.root.n, 1e-9 * s)) return true;
  }
  return false;
}

void GridExperiment(const ExperimentConfig& c, const WeightedCloud& cloud, Run* run) {
  const int n = cloud.n;
  const RootCube root = RootFor(c, n);
  const auto oracle = OracleFor(c, cloud);
  const CellComplex complex = Subdivide(root, c.level, *oracle);
  Json faces = Json::array();
  std::vector<std::vector<DyadicCell>> by_dim(n + 1);
  for (int d = 0; d <= n; ++d) {
    by_dim[d] = Faces(complex, d);
    faces.push_back(by_dim[d].size());
  }
  // Points sampled on lower skeleta must belong to every higher one.
  std::mt19937_64 rng(c.seed);
  std::size_t violations = 0;
  std::size_t probes = 0;
  for (int d = 1; d <= n; ++d) {
    const Skeleton upper(complex, d);
    for (int low = 0; low < d; ++low) {
      if (by_dim[low].empty()) continue;
      for (int k = 0; k < 2000; ++k) {
        const DyadicCell& f =
            by_dim[low][static_cast<std::size_t>(Uniform01(rng) * by_dim[low].size())];
        const Box b = f.Realize(root);
        Vec p = b.lo;
        for (int a = 0; a < n; ++a) p[a] = b.lo[a] + Uniform01(rng) * (b.hi[a] - b.lo[a]);
        ++probes;
        if (!upper.Contains(p, 1e-12 * root.side)) ++violations;
      }
    }
  }
  run->results = Json{{"root", {{"corner", ToJson(root.corner, n)}, {"side", root.side}}},
                      {"level", c.level},
                      {"cells", complex.cells.size()},
                      {"faces_by_dim", faces},
                      {"skeleton_probes", probes},
                      {"points", cloud.size()}};
  run->certificates.push_back(
      {"skeleton monotonicity violations", static_cast<double>(violations), 0.0, false});
  run->files.emplace_back("cloud.csv", Csv(cloud));
  if (n >= 2) {
    Json cells = Json::array();
    for (const DyadicCell& cube : complex.cells) {
      const Box b = cube.Realize(root);
      cells.push_back(Json::array({b.lo[0], b.lo[1], b.hi[0], b.hi[1]}));
    }
    run->render = Json{{"bounds", Bounds(root)},
                       {"points", Points2(cloud.points)},
                       {"cells", cells},
                       {"skeleton", FaceSegments(by_dim[1], root)}};
  }
}

void ShadowExperiment(const ExperimentConfig& c, const WeightedCloud& cloud, Run* run) {
  const int n = cloud.n;
  const double delta = c.delta > 0.0 ? c.delta : CloudResolution(cloud);
  if (!(delta > 0.0)) throw Refusal(kModule, "shadow scale is zero; set delta");
  const std::vector<Frame> frames = SampleFrames(n, c.m, c.directions, c.seed);
  std::vector<double> shadows;
  Json table = Json::array();
  for (const Frame& f : frames) {
    const double s = ShadowMeasure(cloud, f, delta).value;
    shadows.push_back(s);
    Json axes = Json::array();
    for (int i = 0; i < f.m; ++i) axes.push_back(ToJson(f.axes[i], n));
    table.push_back(Json{{"axes", axes}, {"shadow", s}});
  }
  std::vector<double> sorted = shadows;
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted.size() % 2 == 1
                            ? sorted[sorted.size() / 2]
                            : 0.5 * (sorted[sorted.size() / 2 - 1] + sorted[sorted.size() / 2]);
  const WeightedCloud target = cloud.PartWeight(Part::kU) > 0.0 ? cloud.Filter(Part::kU) : cloud;
  const DirectionSearch bf = BfDirectionSearch(target, c.m, c.bf_samples, c.seed, delta);
  Json best = Json::array();
  for (int i = 0; i < bf.best.m; ++i) best.push_back(ToJson(bf.best.axes[i], n));
  run->results = Json{{"delta", delta},
                      {"directions", table},
                      {"median", median},
                      {"min", sorted.front()},
                      {"max", sorted.back()},
                      {"bf_direction", best},
                      {"bf_shadow", bf.best_shadow},
                      {"bf_candidates", bf.frames.size()}};
  run->certificates.push_back({"BF shadow <= median sampled shadow", bf.best_shadow, median, false});
  run->render = Json{{"points", Points2(cloud.points)}, {"shadows", shadows}};
}

void FfExperiment(const ExperimentConfig& c, const WeightedCloud& cloud, Run* run) {
  const int n = cloud.n;
  const RootCube root = RootFor(c, n);
  const auto oracle = OracleFor(c, cloud);
  const FedererFlemingResult ff = FedererFlemingMap(cloud, root, c.level, *oracle, FfOptions(c));
  const CellComplex& complex = ff.complex;
  const double side = root.CellSide(c.level);

  std::size_t outside_moved = 0;
  std::mt19937_64 rng(c.seed);
  for (std::size_t k = 0; k < c.ambient_samples; ++k) {
    Vec x{0.0, 0.0, 0.0};
    for (int a = 0; a < n; ++a) x[a] = root.corner[a] - root.side / 8 + Uniform01(rng) * root.side * 1.25;
    if (!InClosedSupport(complex, x) && ff.map.Apply(x) != x) ++outside_moved;
  }
  const Skeleton skel(complex, c.m);
  std::size_t off_target = 0;
  std::size_t escaped = 0;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (ff.origin_cube[i] < 0) continue;
    const Vec& y = ff.image.points[i];
    if (!skel.Contains(y, 1e-9 * side) && !OnSupportBoundary(complex, y)) ++off_target;
    const Box cube = complex.cells[static_cast<std::size_t>(ff.origin_cube[i])].Realize(root);
    if (!cube.Contains(y, n, 1e-9 * side)) ++escaped;
  }
  const double w_in = MeasureAtScale(cloud.Filter(Part::kU), c.m, side).value;
  const double w_out = MeasureAtScale(ff.image.Filter(Part::kU), c.m, side).value;
  run->certificates = {
      {"probes moved outside the support", static_cast<double>(outside_moved), 0.0, false},
      {"images off the m-skeleton and the support boundary", static_cast<double>(off_target), 0.0, false},
      {"images outside their original cube", static_cast<double>(escaped), 0.0, false},
      ff.c_certificate,
      {"W image measure at the cell scale <= target x input", w_out, c.w_ratio_target * w_in, false},
      {"total weight change", std::abs(ff.image.TotalWeight() - cloud.TotalWeight()), 0.0, false},
  };
  double worst_local = 0.0;
  Json centers = Json::array();
  for (const CenterChoice& cc : ff.centers) {
    if (std::isfinite(cc.clearance)) worst_local = std::max(worst_local, side * std::sqrt(double(n)) / cc.clearance);
    centers.push_back(Json{{"face", ToJson(cc.face, n)},
                           {"center", ToJson(cc.center, n)},
                           {"clearance", cc.clearance},
                           {"local_lipschitz_bound", side * std::sqrt(double(n)) / cc.clearance},
                           {"r_ratio", cc.r_ratio},
                           {"from_bf", cc.from_bf}});
  }
  run->certificates.push_back({"max radial stage bound diam / clearance", worst_local,
                               std::sqrt(double(n)) / c.min_clearance, false});
  run->results = Json{{"cells", complex.cells.size()},
                      {"active_faces", ff.active_faces},
                      {"collapsed_edges", ff.collapsed_edges},
                      {"w_input", ToJson(ff.w_input)},
                      {"w_image", ToJson(ff.w_image)},
                      {"w_input_at_cell_scale", w_in},
                      {"w_image_at_cell_scale", w_out},
                      {"centers", centers},
                      {"provenance", ff.origin_cube}};
  run->files.emplace_back("cloud_before.csv", Csv(cloud));
  run->files.emplace_back("cloud_after.csv", Csv(ff.image));
  run->files.emplace_back("map.json", ToJson(ff.map).dump(1) + "\n");
  if (n >= 2) {
    run->render = Json{{"bounds", Bounds(root)},
                       {"points", Points2(cloud.points)},
                       {"image", Points2(ff.image.points)},
                       {"skeleton", FaceSegments(skel.faces(), root)}};
  }
}

Json PsiJson(const PsiResult& r, int n) {
  Json certs = Json::array();
  for (const Inequality& q : r.certificates) certs.push_back(ToJson(q));
  return Json{{"epsilon", r.epsilon},
              {"delta", r.delta},
              {"root", {{"corner", ToJson(r.root.corner, n)}, {"side", r.root.side}}},
              {"level", r.level},
              {"ball_system", ToJson(r.balls, n)},
              {"h_e", r.h_e},
              {"h_u", r.h_u},
              {"h_r", r.h_r},
              {"h_image", r.h_image},
              {"h_image_u", r.h_image_u},
              {"h_image_r", r.h_image_r},
              {"sup_distance", r.sup_distance},
              {"lipschitz", ToJson(r.lipschitz, n)},
              {"c_certificate", ToJson(r.ff.c_certificate)},
              {"certificates", certs},
              {"derived_applicable", r.derived_applicable},
              {"derived", ToJson(r.derived)},
              {"log", r.log}};
}

void PsiExperiment(const ExperimentConfig& c, const WeightedCloud& cloud, Run* run) {
  Json runs = Json::array();
  const PsiOptions options = PsiOptionsFor(c);
  for (std::size_t i = 0; i < c.epsilons.size(); ++i) {
    Log("psi epsilon " + std::to_string(c.epsilons[i]));
    const PsiResult r = BuildPsiEpsilon(cloud, c.epsilons[i], options);
    runs.push_back(PsiJson(r, cloud.n));
    const std::string tag = "eps" + std::to_string(i);
    for (Inequality q : r.certificates) {
      q.name = tag + ": " + q.name;
      run->certificates.push_back(q);
    }
    if (r.derived_applicable) {
      Inequality q = r.derived;
      q.name = tag + ": " + q.name;
      run->certificates.push_back(q);
    }
    run->files.emplace_back("cloud_after_" + tag + ".csv", Csv(r.image));
    run->files.emplace_back("map_" + tag + ".json", ToJson(r.map).dump(1) + "\n");
    if (i + 1 == c.epsilons.size() && cloud.n >= 2) {
      run->render = Json{{"bounds", Bounds(r.root)},
                         {"points", Points2(cloud.points)},
                         {"image", Points2(r.image.points)}};
    }
  }
  run->results = Json{{"runs", runs}};
  run->files.emplace_back("cloud_before.csv", Csv(cloud));
}

// The cloud plus uniform probes in its bounding box grown by 1/8 per side;
// the largest displacement of a map is often between cloud points.
std::vector<Vec> SupProbes(const WeightedCloud& cloud, std::size_t count, std::uint64_t seed) {
  std::vector<Vec> probes = cloud.points;
  if (cloud.empty()) return probes;
  Vec lo = cloud.points.front();
  Vec hi = lo;
  for (const Vec& p : cloud.points) {
    for (int a = 0; a < cloud.n; ++a) {
      lo[a] = std::min(lo[a], p[a]);
      hi[a] = std::max(hi[a], p[a]);
    }
  }
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < count; ++k) {
    Vec x{0.0, 0.0, 0.0};
    for (int a = 0; a < cloud.n; ++a) {
      const double pad = (hi[a] - lo[a]) / 8;
      x[a] = lo[a] - pad + Uniform01(rng) * (hi[a] - lo[a] + 2 * pad);
    }
    probes.push_back(x);
  }
  return probes;
}

void RectifyExperiment(const ExperimentConfig& c, const WeightedCloud& cloud, Run* run) {
  const int n = cloud.n;
  PerturbationSequence seq;
  seq.declared_lip_bound = c.declared_lip_bound;
  Json steps = Json::array();
  if (c.sequence == "isometries") {
    for (int i = 1; i <= c.count; ++i) {
      AffineMap t;
      t.b = {std::cos(0.3) / i, n > 1 ? std::sin(0.3) / i : 0.0, 0.0};
      PiecewiseMap f(n);
      f.Append(t);
      seq.maps.push_back(f);
    }
  } else if (c.sequence == "ff") {
    const RootCube root = RootFor(c, n);
    for (int level : c.levels) {
      seq.maps.push_back(FedererFlemingMap(cloud, root, level, WholeOracle(), FfOptions(c)).map);
    }
  } else {
    const PsiOptions options = PsiOptionsFor(c);
    for (double eps : c.epsilons) seq.maps.push_back(BuildPsiEpsilon(cloud, eps, options).map);
  }
  const std::vector<Vec> probes = SupProbes(cloud, c.ambient_samples, c.seed);
  for (std::size_t i = 0; i < seq.maps.size(); ++i) {
    const PiecewiseMap& f = seq.maps[i];
    const WeightedCloud image = f.Apply(cloud);
    seq.measures.push_back(MeasureAtScale(image, c.m, c.measure_scale).value);
    seq.sup_distances.push_back(SupDistance(f, probes));
    double base = 1.0;
    double depth = 8.0;
    for (const MapComponent& comp : f.chain()) {
      if (const auto* d = std::get_if<FaceDeformation>(&comp)) {
        base = d->root().side;
        depth = d->level() + 8.0;
      }
    }
    seq.lip_bounds.push_back(
        EstimateLipschitz(f, cloud, c.lipschitz_pairs, c.seed + i, base, depth).value);
    steps.push_back(Json{{"measure", seq.measures.back()},
                         {"sup_distance", seq.sup_distances.back()},
                         {"lipschitz", seq.lip_bounds.back()}});
  }
  const Verdict v = SemicontinuityTest(cloud, seq, c.m, c.measure_scale, c.tolerance);
  run->results = Json{{"sequence", c.sequence},
                      {"steps", steps},
                      {"verdict", VerdictName(v.kind)},
                      {"h_e", v.h_e},
                      {"eta", v.eta},
                      {"tail_min", v.tail_min},
                      {"tail_start", v.tail_start},
                      {"tolerance", v.tolerance},
                      {"lip_bounded", v.lip_bounded},
                      {"sup_decreasing", v.sup_decreasing},
                      {"evidence", v.evidence}};
  for (std::size_t i = 0; i < seq.lip_bounds.size(); ++i) {
    run->certificates.push_back({"lipschitz estimate of map " + std::to_string(i),
                                 seq.lip_bounds[i], c.declared_lip_bound, false});
    if (i > 0) {
      run->certificates.push_back({"sup-distance decreases at map " + std::to_string(i),
                                   seq.sup_distances[i], seq.sup_distances[i - 1], true});
    }
  }
  if (!c.expect.empty()) {
    run->certificates.push_back({"verdict differs from " + c.expect,
                                 c.expect == VerdictName(v.kind) ? 0.0 : 1.0, 0.0, false});
  }
}

void SemiregExperiment(const ExperimentConfig& c, const WeightedCloud& cloud, Run* run) {
  std::vector<std::pair<double, double>> pairs = c.scale_pairs;
  if (pairs.empty()) {
    for (int t = 1; t <= 6; ++t) pairs.emplace_back(std::ldexp(1.0, -2 * t), 1.0);
  }
  const SemiRegularity s = SemiRegularityEstimate(cloud, c.m, pairs, c.sample_centers, c.seed);
  Json table = Json::array();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    table.push_back(Json{{"r", pairs[i].first}, {"R", pairs[i].second}, {"estimate", s.per_pair[i]}});
  }
  run->results = Json{{"pairs", table}, {"estimate", s.estimate}};
  if (c.semireg_bound > 0.0) {
    run->certificates.push_back({"semi-regularity constant", s.estimate, c.semireg_bound, false});
  }
}

void WriteAtomically(const std::filesystem::path& dir,
                     const std::vector<std::pair<std::string, std::string>>& files,
                     std::vector<std::string>* written) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::vector<fs::path> temps;
  try {
    for (const auto& [name, content] : files) {
      const fs::path tmp = dir / ("." + name + ".tmp");
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      temps.push_back(tmp);
      out << content;
      out.close();
      if (!out) throw Refusal(kModule, "cannot write " + tmp.string());
    }
    for (std::size_t i = 0; i < files.size(); ++i) {
      fs::rename(temps[i], dir / files[i].first);
      written->push_back((dir / files[i].first).string());
    }
  } catch (...) {
    std::error_code ec;
    for (const fs::path& t : temps) fs::remove(t, ec);
    throw;
  }
}

}  // namespace

const std::vector<std::string>& ExperimentNames() {
  static const std::vector<std::string> names{"grid", "shadow", "ffmap", "psi", "rectify", "semireg"};
  return names;
}

Artifacts Execute(const std::string& experiment, const ExperimentConfig& config, bool svg) {
  const auto& names = ExperimentNames();
  if (std::find(names.begin(), names.end(), experiment) == names.end()) {
    throw Refusal(kModule, "unknown experiment " + experiment);
  }
  const WeightedCloud cloud = BuildSet(config.set);
  Log(experiment + " on " + std::to_string(cloud.size()) + " points");
  Run run;
  if (experiment == "grid") {
    GridExperiment(config, cloud, &run);
  } else if (experiment == "shadow") {
    ShadowExperiment(config, cloud, &run);
  } else if (experiment == "ffmap") {
    FfExperiment(config, cloud, &run);
  } else if (experiment == "psi") {
    PsiExperiment(config, cloud, &run);
  } else if (experiment == "rectify") {
    RectifyExperiment(config, cloud, &run);
  } else {
    SemiregExperiment(config, cloud, &run);
  }
  Artifacts out;
  out.pass = std::all_of(run.certificates.begin(), run.certificates.end(),
                         [](const Inequality& q) { return q.holds(); });
  Json certs = Json::array();
  for (const Inequality& q : run.certificates) certs.push_back(ToJson(q));
  out.report = Json{{"schema", kReportSchema},
                    {"experiment", experiment},
                    {"config", ConfigToJson(config)},
                    {"results", run.results},
                    {"certificates", certs},
                    {"pass", out.pass}};
  out.files = std::move(run.files);
  out.files.emplace(out.files.begin(), "report.json", out.report.dump(2) + "\n");
  if (svg) {
    const Json data = run.render.is_null() ? Json::object() : run.render;
    for (auto& panel : RenderPanels(data)) out.files.push_back(std::move(panel));
  }
  return out;
}

RunOutcome RunExperiment(const RunRequest& request) {
  RunOutcome outcome;
  ExperimentConfig config;
  try {
    const auto& names = ExperimentNames();
    if (std::find(names.begin(), names.end(), request.experiment) == names.end()) {
      throw Refusal(kModule, "unknown experiment " + request.experiment);
    }
    std::ifstream in(request.config_path);
    if (!in) throw Refusal(kModule, "cannot read config " + request.config_path);
    Json doc;
    try {
      doc = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw Refusal(kModule, std::string("config is not valid JSON: ") + e.what());
    }
    config = ParseConfig(doc);
    if (request.seed) config.seed = *request.seed;
  } catch (const std::exception& e) {
    outcome.exit_code = kExitBadConfig;
    outcome.message = e.what();
    return outcome;
  }
  Artifacts art;
  try {
    art = Execute(request.experiment, config, request.svg);
  } catch (const std::exception& e) {
    outcome.exit_code = kExitRefused;
    outcome.message = e.what();
    return outcome;
  }
  try {
    WriteAtomically(request.out_dir, art.files, &outcome.written);
  } catch (const std::exception& e) {
    outcome.exit_code = kExitRefused;
    outcome.message = e.what();
    return outcome;
  }
  outcome.exit_code = art.pass ? kExitPass : kExitCertificateFailed;
  outcome.message = art.pass ? "all certificates pass" : "some certificates failed";
  return outcome;
}

}  // namespace rectlab
