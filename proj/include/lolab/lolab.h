// Copyright 2026 The lolab Authors.
//
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

#ifndef LOLAB_LOLAB_H_
#define LOLAB_LOLAB_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LOLAB_API __declspec(dllexport)
#else
#define LOLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lolab_status {
  LOLAB_OK = 0,
  LOLAB_ERR_INVALID_ARGUMENT = 1,
  LOLAB_ERR_UNKNOWN_ALGORITHM = 2,
  LOLAB_ERR_IO = 3,
  LOLAB_ERR_STATE_BUDGET = 4,
  LOLAB_ERR_INTERNAL = 5
} lolab_status;

typedef enum lolab_format { LOLAB_FORMAT_CSV = 0, LOLAB_FORMAT_JSON = 1 } lolab_format;

// Message for the most recent failure on this thread; "" after success.
LOLAB_API const char* lolab_last_error(void);
LOLAB_API const char* lolab_version(void);

// Every char* handed out by this library must be released here.
LOLAB_API void lolab_string_free(char* s);

// Comma-separated list of registered algorithm names.
LOLAB_API lolab_status lolab_algorithms(char** out);

// ---- instances ----------------------------------------------------------
typedef struct lolab_instance lolab_instance;

LOLAB_API lolab_status lolab_instance_random(size_t n, uint64_t seed,
                                             lolab_instance** out);
// Text format: "n=<n>", "z=<bits>", "sigma=<1-based permutation>".
LOLAB_API lolab_status lolab_instance_parse(const char* text,
                                            lolab_instance** out);
LOLAB_API lolab_status lolab_instance_load(const char* path,
                                           lolab_instance** out);
LOLAB_API lolab_status lolab_instance_save(const lolab_instance* inst,
                                           const char* path);
LOLAB_API lolab_status lolab_instance_format(const lolab_instance* inst,
                                             char** out);
LOLAB_API lolab_status lolab_instance_size(const lolab_instance* inst,
                                           size_t* n);
// bits: n characters '0'/'1', position 1 first.
LOLAB_API lolab_status lolab_instance_fitness(const lolab_instance* inst,
                                              const char* bits, size_t* out);
LOLAB_API void lolab_instance_destroy(lolab_instance* inst);

// ---- experiments ----------------------------------------------------------
typedef struct lolab_experiment lolab_experiment;

LOLAB_API lolab_status lolab_experiment_create(const char* algorithm,
                                               lolab_experiment** out);
LOLAB_API lolab_status lolab_experiment_set_n_values(lolab_experiment* exp,
                                                     const size_t* values,
                                                     size_t count);
LOLAB_API lolab_status lolab_experiment_set_repetitions(lolab_experiment* exp,
                                                        size_t reps);
LOLAB_API lolab_status lolab_experiment_set_seed(lolab_experiment* exp,
                                                 uint64_t seed);
LOLAB_API lolab_status lolab_experiment_set_budget(lolab_experiment* exp,
                                                   uint64_t budget);
LOLAB_API lolab_status lolab_experiment_set_threads(lolab_experiment* exp,
                                                    unsigned threads);
// Runs every repetition on a copy of inst instead of a fresh random instance.
LOLAB_API lolab_status lolab_experiment_set_instance(lolab_experiment* exp,
                                                     const lolab_instance* inst);
LOLAB_API void lolab_experiment_destroy(lolab_experiment* exp);

LOLAB_API lolab_status lolab_run(const lolab_experiment* exp, lolab_format format,
                                 char** out);
LOLAB_API lolab_status lolab_scaling(const lolab_experiment* exp,
                                     lolab_format format, char** out);
LOLAB_API lolab_status lolab_level_profile(const lolab_experiment* exp,
                                           char** out);

// ---- bounds ---------------------------------------------------------------
LOLAB_API lolab_status lolab_phi_value(size_t k, size_t m, uint64_t c,
                                       double* out);
LOLAB_API lolab_status lolab_phi_csv(size_t k_max, size_t m_max, double eps,
                                     char** out);
// Sampled grid with k <= k_max, 2 <= m <= m_max, k + m <= max(k_max, m_max).
// *pass receives 1 if max R(p) <= 1 on every evaluated cell.
LOLAB_API lolab_status lolab_verify(double eps, size_t k_max, size_t m_max,
                                    char** report_json, int* pass);
// Game spec text; see parse rules in the README.
LOLAB_API lolab_status lolab_game_solve(const char* spec_text, double* out);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif  // LOLAB_LOLAB_H_
