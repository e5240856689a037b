/* Copyright 2026 The rectlab Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of librectlab. Handles are opaque; every call returns an
 * rl_status and leaves a message for rl_last_error_message() on failure.
 * Strings returned through char** are released with rl_string_free. */

#ifndef RECTLAB_RECTLAB_H_
#define RECTLAB_RECTLAB_H_

#include <stddef.h>
#include <stdint.h>

#if defined(RECTLAB_BUILDING_LIBRARY)
#define RECTLAB_API __attribute__((visibility("default")))
#else
#define RECTLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct rl_cloud rl_cloud;
typedef struct rl_map rl_map;

typedef enum rl_status {
  RL_OK = 0,
  RL_ERR_INVALID_ARGUMENT = 1,
  RL_ERR_REFUSED = 2, /* a module refused its preconditions or budget */
  RL_ERR_IO = 3,
  RL_ERR_INTERNAL = 4
} rl_status;

enum { RL_PART_U = 0, RL_PART_R = 1 };

RECTLAB_API const char* rl_version(void);
/* Message of the last failed call on this thread; "" when none. */
RECTLAB_API const char* rl_last_error_message(void);
RECTLAB_API void rl_string_free(char* s);

/* Clouds. */
RECTLAB_API rl_status rl_cloud_from_set_json(const char* spec_json, rl_cloud** out);
RECTLAB_API rl_status rl_cloud_four_corner(int depth, rl_cloud** out);
RECTLAB_API rl_status rl_cloud_size(const rl_cloud* cloud, size_t* out);
RECTLAB_API rl_status rl_cloud_dim(const rl_cloud* cloud, int* out);
RECTLAB_API rl_status rl_cloud_point(const rl_cloud* cloud, size_t index, double xyz[3],
                                     double* weight, int* part);
RECTLAB_API rl_status rl_cloud_total_weight(const rl_cloud* cloud, double* out);
RECTLAB_API void rl_cloud_free(rl_cloud* cloud);

RECTLAB_API rl_status rl_measure_at_scale(const rl_cloud* cloud, int m, double delta,
                                          double* value);

/* Maps. */
RECTLAB_API rl_status rl_map_identity(int n, rl_map** out);
/* out = a after b */
RECTLAB_API rl_status rl_map_compose(const rl_map* a, const rl_map* b, rl_map** out);
RECTLAB_API rl_status rl_map_apply_point(const rl_map* map, const double in[3], double out[3]);
RECTLAB_API rl_status rl_map_apply(const rl_map* map, const rl_cloud* cloud, rl_cloud** out);
RECTLAB_API rl_status rl_map_to_json(const rl_map* map, char** out);
RECTLAB_API rl_status rl_map_from_json(const char* json, rl_map** out);
RECTLAB_API void rl_map_free(rl_map* map);

/* Builds psi_epsilon with default options (m = 1). *all_pass receives 1
 * when every certificate holds. */
RECTLAB_API rl_status rl_build_psi(const rl_cloud* cloud, double epsilon, uint64_t seed,
                                   rl_map** out, int* all_pass);

/* Runs a named experiment as the CLI does. *exit_code receives the process
 * exit status (0: all certificates pass, 1: some failed, 2: bad config,
 * 3: refused). The call itself returns RL_OK whenever the run was attempted. */
RECTLAB_API rl_status rl_run_experiment(const char* experiment, const char* config_path,
                                        int has_seed, uint64_t seed, const char* out_dir,
                                        int svg, int* exit_code, char** message);

#ifdef __cplusplus
}
#endif

#endif /* RECTLAB_RECTLAB_H_ */
