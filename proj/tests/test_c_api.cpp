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

// Exercises the shared library through its C header only.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "rectlab/rectlab.h"

namespace fs = std::filesystem;

namespace {

std::string Env(const char* name) {
  const char* v = std::getenv(name);
  return v ? v : "";
}

}  // namespace

TEST_CASE("version and error reporting") {
  CHECK(std::string(rl_version()).size() > 0);
  rl_cloud* c = nullptr;
  CHECK(rl_cloud_from_set_json("{not json", &c) == RL_ERR_INVALID_ARGUMENT);
  CHECK(c == nullptr);
  CHECK(std::string(rl_last_error_message()).size() > 0);
  CHECK(rl_cloud_four_corner(3, nullptr) == RL_ERR_INVALID_ARGUMENT);
  CHECK(rl_cloud_four_corner(-1, &c) != RL_OK);
  rl_cloud_free(nullptr);
  rl_map_free(nullptr);
  rl_string_free(nullptr);
}

TEST_CASE("clouds") {
  rl_cloud* c = nullptr;
  REQUIRE(rl_cloud_four_corner(3, &c) == RL_OK);
  size_t size = 0;
  int dim = 0;
  double total = 0.0;
  CHECK(rl_cloud_size(c, &size) == RL_OK);
  CHECK(rl_cloud_dim(c, &dim) == RL_OK);
  CHECK(rl_cloud_total_weight(c, &total) == RL_OK);
  CHECK(size == 64);
  CHECK(dim == 2);
  CHECK(total == doctest::Approx(1.0));
  double xyz[3];
  double w = 0.0;
  int part = -1;
  CHECK(rl_cloud_point(c, 0, xyz, &w, &part) == RL_OK);
  CHECK(part == RL_PART_U);
  CHECK(rl_cloud_point(c, size, xyz, &w, &part) == RL_ERR_INVALID_ARGUMENT);
  double h = 0.0;
  CHECK(rl_measure_at_scale(c, 1, 0x1.0p-14, &h) == RL_OK);
  CHECK(h == doctest::Approx(64 * std::sqrt(2.0) * 0x1.0p-14));
  CHECK(rl_measure_at_scale(c, 1, 0.0, &h) == RL_ERR_REFUSED);
  rl_cloud_free(c);
}

TEST_CASE("maps") {
  rl_map* id = nullptr;
  REQUIRE(rl_map_identity(2, &id) == RL_OK);
  const double p[3] = {0.3, 0.7, 0.0};
  double q[3];
  CHECK(rl_map_apply_point(id, p, q) == RL_OK);
  CHECK(q[0] == 0.3);
  CHECK(q[1] == 0.7);

  char* text = nullptr;
  REQUIRE(rl_map_to_json(id, &text) == RL_OK);
  rl_map* back = nullptr;
  CHECK(rl_map_from_json(text, &back) == RL_OK);
  rl_string_free(text);
  rl_map* both = nullptr;
  CHECK(rl_map_compose(id, back, &both) == RL_OK);
  rl_map* bad = nullptr;
  CHECK(rl_map_from_json(R"({"n": 2, "chain": [{"type": "warp"}]})", &bad) == RL_ERR_REFUSED);
  CHECK(bad == nullptr);

  rl_cloud* c = nullptr;
  REQUIRE(rl_cloud_four_corner(4, &c) == RL_OK);
  rl_map* psi = nullptr;
  int all_pass = 0;
  REQUIRE(rl_build_psi(c, 0.2, 1, &psi, &all_pass) == RL_OK);
  CHECK(all_pass == 1);
  rl_cloud* image = nullptr;
  CHECK(rl_map_apply(psi, c, &image) == RL_OK);
  size_t n = 0;
  rl_cloud_size(image, &n);
  CHECK(n == 256);
  double a[3];
  double b[3];
  double w = 0.0;
  int part = 0;
  rl_cloud_point(c, 5, a, &w, &part);
  rl_cloud_point(image, 5, b, &w, &part);
  double direct[3];
  rl_map_apply_point(psi, a, direct);
  CHECK(direct[0] == b[0]);
  CHECK(direct[1] == b[1]);

  rl_cloud* circle = nullptr;
  REQUIRE(rl_cloud_from_set_json(
              R"({"model": "circle", "center": [0.5, 0.5], "radius": 0.3, "vertices": 60, "step": 0.01})",
              &circle) == RL_OK);
  rl_map* none = nullptr;
  CHECK(rl_build_psi(circle, 0.1, 1, &none, &all_pass) == RL_ERR_REFUSED);

  rl_cloud_free(circle);
  rl_cloud_free(image);
  rl_map_free(psi);
  rl_cloud_free(c);
  rl_map_free(both);
  rl_map_free(back);
  rl_map_free(id);
}

TEST_CASE("experiments through the C API") {
  const std::string configs = Env("RECTLAB_TEST_CONFIGS");
  const std::string out = Env("RECTLAB_TEST_OUT");
  REQUIRE(!configs.empty());
  REQUIRE(!out.empty());
  fs::remove_all(out);

  int code = -1;
  char* message = nullptr;
  const std::string good = out + "/rectify";
  REQUIRE(rl_run_experiment("rectify", (configs + "/rectify_circle.json").c_str(), 1, 4,
                            good.c_str(), 0, &code, &message) == RL_OK);
  CHECK(code == 0);
  rl_string_free(message);
  CHECK(fs::exists(good + "/report.json"));

  const std::string bad = out + "/malformed";
  message = nullptr;
  REQUIRE(rl_run_experiment("rectify", (configs + "/malformed.json").c_str(), 0, 0, bad.c_str(), 0,
                            &code, &message) == RL_OK);
  CHECK(code == 2);
  rl_string_free(message);
  CHECK_FALSE(fs::exists(bad));

  message = nullptr;
  REQUIRE(rl_run_experiment("nonsense", (configs + "/rectify_circle.json").c_str(), 0, 0,
                            (out + "/x").c_str(), 0, &code, &message) == RL_OK);
  CHECK(code == 2);
  rl_string_free(message);
}
