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

#include "rectlab/rectlab.h"

#include <cstring>
#include <string>

#include "rectlab/json_io.hpp"
#include "rectlab/lab.hpp"
#include "rectlab/runner.hpp"

struct rl_cloud {
  rectlab::WeightedCloud cloud;
};

struct rl_map {
  rectlab::PiecewiseMap map;
};

namespace {

thread_local std::string g_last_error;

rl_status Fail(rl_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Runs body, translating exceptions into status codes.
template <typename Body>
rl_status Guard(Body&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const rectlab::Refusal& e) {
    return Fail(RL_ERR_REFUSED, e.what());
  } catch (const nlohmann::json::exception& e) {
    return Fail(RL_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return Fail(RL_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(RL_ERR_INTERNAL, "unknown exception");
  }
}

char* CopyString(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* rl_version(void) { return "0.1.0"; }

const char* rl_last_error_message(void) { return g_last_error.c_str(); }

void rl_string_free(char* s) { delete[] s; }

rl_status rl_cloud_from_set_json(const char* spec_json, rl_cloud** out) {
  if (spec_json == nullptr || out == nullptr) return Fail(RL_ERR_INVALID_ARGUMENT, "null argument");
  return Guard([&] {
    auto spec = rectlab::Json::parse(spec_json);
    *out = new rl_cloud{rectlab::BuildSet(spec)};
    return RL_OK;
  });
}

rl_status rl_cloud_four_corner(int depth, rl_cloud** out) {
  if (out == nullptr) return Fail(RL_ERR_INVALID_ARGUMENT, "null argument");
  return Guard([&] {
    *out = new rl_cloud{rectlab::GeneratePrefractal(rectlab::IfsSpec::FourCorner(), depth)};
    return RL_OK;
  });
}

rl_status rl_cloud_size(const rl_cloud* cloud, size_t* out) {
  if (cloud == nullptr || out == nullptr) return Fail(RL_ERR_INVALID_ARGUMENT, "null argument");
  *out = cloud->cloud.size();
  return RL_OK;
}

rl_status rl_cloud_dim(const rl_cloud* cloud, int* out) {
  if (cloud == nullptr || out == nullptr) return Fail(RL_ERR_INVALID_ARGUMENT, "null argument");
  *out = cloud->cloud.n;
  return RL_OK;
}

rl_status rl_cloud_point(const rl_cloud* cloud, size_t index, double xyz[3], double* weight,
                         int* part) {
  if (cloud == nullptr || xyz == nullptr) return Fail(RL_ERR_INVALID_ARGUMENT, "null argument");
  if (index >= cloud->cloud.size()) return Fail(RL_ERR_INVALID_ARGUMENT, "index out of range");
  for (int a = 0; a < 3; ++a) xyz[a] = cloud->cloud.points[index][a];
  if (weight != nullptr) *weight = cloud->cloud.weights[index];
  if (part != nullptr) *part = cloud->cloud.parts[index] == rectlab::Part::kU ? RL_PART_U : RL_PART_R;
  return RL_OK;
}

rl_status rl_cloud_total_weight(const rl_cloud* cloud, double* out) {
  if (cloud == nullptr || out == nullptr) return Fail(RL_ERR_INVALID_ARGUMENT, "null argument");
  *out = cloud->cloud.TotalWeight();
  return RL_OK;
}

void rl_cloud_free(rl_cloud* cloud) { delete cloud; }

rl_status rl_measure_at_scale(const rl_cloud* cloud, int m, double delta, double* value) {
  if (cloud == nullptr || value == nullptr) return Fail(RL_ERR_INVALID_ARGUMENT, "null argument");
  return Guard([&] {
    *value = rectlab::MeasureAtScale(cloud->cloud, m, delta).value;
    return RL_OK;
  });
}

rl_status rl_map_identity(int n, rl_map** out) {
  if (out == nullptr || n < 1 || n > 3) return Fail(RL_ERR_INVALID_ARGUMENT, "bad argument");
  *out = new rl_map{rectlab::PiecewiseMap::Identity(n)};
  return RL_OK;
}

rl_status rl_map_compose(const rl_map* a, const rl_map* b, rl_map** out) {
  if (a == nullptr || b == nullptr || out == nullptr) {
    return Fail(RL_ERR_INVALID_ARGUMENT, "null argument");
  }
  return Guard([&] {
    *out = new rl_map{rectlab::PiecewiseMap::Compose(a->map, b->map)};
    return RL_OK;
  });
}

rl_status rl_map_apply_point(const rl_map* map, const double in[3], double out[3]) {
  if (map == nullptr || in == nullptr || out == nullptr) {
    return Fail(RL_ERR_INVALID_ARGUMENT, "null argument");
  }
  return Guard([&] {
    rectlab::Vec p{0.0, 0.0, 0.0};
    for (int a = 0; a < map->map.n(); ++a) p[a] = in[a];
    const rectlab::Vec q = map->map.Apply(p);
    for (int a = 0; a < 3; ++a) out[a] = q[a];
    return RL_OK;
  });
}

rl_status rl_map_apply(const rl_map* map, const rl_cloud* cloud, rl_cloud** out) {
  if (map == nullptr || cloud == nullptr || out == nullptr) {
    return Fail(RL_ERR_INVALID_ARGUMENT, "null argument");
  }
  return Guard([&] {
    *out = new rl_cloud{map->map.Apply(cloud->cloud)};
    return RL_OK;
  });
}

rl_status rl_map_to_json(const rl_map* map, char** out) {
  if (map == nullptr || out == nullptr) return Fail(RL_ERR_INVALID_ARGUMENT, "null argument");
  return Guard([&] {
    *out = CopyString(rectlab::ToJson(map->map).dump());
    return RL_OK;
  });
}

rl_status rl_map_from_json(const char* json, rl_map** out) {
  if (json == nullptr || out == nullptr) return Fail(RL_ERR_INVALID_ARGUMENT, "null argument");
  return Guard([&] {
    *out = new rl_map{rectlab::MapFromJson(rectlab::Json::parse(json))};
    return RL_OK;
  });
}

void rl_map_free(rl_map* map) { delete map; }

rl_status rl_build_psi(const rl_cloud* cloud, double epsilon, uint64_t seed, rl_map** out,
                       int* all_pass) {
  if (cloud == nullptr || out == nullptr) return Fail(RL_ERR_INVALID_ARGUMENT, "null argument");
  return Guard([&] {
    rectlab::PsiOptions options;
    options.seed = seed;
    const rectlab::PsiResult r = rectlab::BuildPsiEpsilon(cloud->cloud, epsilon, options);
    *out = new rl_map{r.map};
    if (all_pass != nullptr) *all_pass = r.AllPass() ? 1 : 0;
    return RL_OK;
  });
}

rl_status rl_run_experiment(const char* experiment, const char* config_path, int has_seed,
                            uint64_t seed, const char* out_dir, int svg, int* exit_code,
                            char** message) {
  if (experiment == nullptr || config_path == nullptr || exit_code == nullptr) {
    return Fail(RL_ERR_INVALID_ARGUMENT, "null argument");
  }
  return Guard([&] {
    rectlab::RunRequest req;
    req.experiment = experiment;
    req.config_path = config_path;
    if (has_seed) req.seed = seed;
    req.out_dir = out_dir != nullptr ? out_dir : ".";
    req.svg = svg != 0;
    const rectlab::RunOutcome outcome = rectlab::RunExperiment(req);
    *exit_code = outcome.exit_code;
    if (message != nullptr) *message = CopyString(outcome.message);
    if (outcome.exit_code == rectlab::kExitBadConfig || outcome.exit_code == rectlab::kExitRefused) {
      g_last_error = outcome.message;
    }
    return RL_OK;
  });
}

}  // extern "C"
