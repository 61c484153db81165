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

#include "lolab/lolab.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <sstream>
#include <string>

#include "core/bounds.hpp"
#include "core/errors.hpp"
#include "core/harness.hpp"
#include "core/heuristics.hpp"
#include "core/lo_core.hpp"
#include "core/rng.hpp"

struct lolab_instance {
  lolab::LoInstance inst;
};

struct lolab_experiment {
  lolab::ExperimentConfig config;
};

namespace {

thread_local std::string g_last_error;

lolab_status fail(lolab_status status, const char* what) {
  g_last_error = what;
  return status;
}

// Runs body, mapping exceptions to status codes.
template <typename F>
lolab_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return LOLAB_OK;
  } catch (const lolab::UnknownAlgorithm& e) {
    return fail(LOLAB_ERR_UNKNOWN_ALGORITHM, e.what());
  } catch (const lolab::InputError& e) {
    return fail(LOLAB_ERR_INVALID_ARGUMENT, e.what());
  } catch (const lolab::IoError& e) {
    return fail(LOLAB_ERR_IO, e.what());
  } catch (const lolab::StateBudgetExceeded& e) {
    return fail(LOLAB_ERR_STATE_BUDGET, e.what());
  } catch (const std::bad_alloc&) {
    return fail(LOLAB_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LOLAB_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(LOLAB_ERR_INTERNAL, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void require(bool ok, const char* what) {
  if (!ok) throw lolab::InputError(what);
}

lolab::OutputFormat to_format(lolab_format f) {
  switch (f) {
    case LOLAB_FORMAT_CSV: return lolab::OutputFormat::Csv;
    case LOLAB_FORMAT_JSON: return lolab::OutputFormat::Json;
  }
  throw lolab::InputError("unknown output format");
}

}  // namespace

extern "C" {

const char* lolab_last_error(void) { return g_last_error.c_str(); }

const char* lolab_version(void) { return "1.0.0"; }

void lolab_string_free(char* s) { std::free(s); }

lolab_status lolab_algorithms(char** out) {
  return guarded([&] {
    require(out, "null output pointer");
    std::string joined;
    for (const auto& name : lolab::strategy_names()) {
      if (!joined.empty()) joined += ',';
      joined += name;
    }
    *out = dup_string(joined);
  });
}

lolab_status lolab_instance_random(size_t n, uint64_t seed, lolab_instance** out) {
  return guarded([&] {
    require(out, "null output pointer");
    lolab::Rng rng(seed);
    *out = new lolab_instance{lolab::random_instance(n, rng)};
  });
}

lolab_status lolab_instance_parse(const char* text, lolab_instance** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = new lolab_instance{lolab::parse_instance(text)};
  });
}

lolab_status lolab_instance_load(const char* path, lolab_instance** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new lolab_instance{lolab::load_instance(path)};
  });
}

lolab_status lolab_instance_save(const lolab_instance* inst, const char* path) {
  return guarded([&] {
    require(inst && path, "null argument");
    lolab::save_instance(inst->inst, path);
  });
}

lolab_status lolab_instance_format(const lolab_instance* inst, char** out) {
  return guarded([&] {
    require(inst && out, "null argument");
    *out = dup_string(lolab::format_instance(inst->inst));
  });
}

lolab_status lolab_instance_size(const lolab_instance* inst, size_t* n) {
  return guarded([&] {
    require(inst && n, "null argument");
    *n = inst->inst.n();
  });
}

lolab_status lolab_instance_fitness(const lolab_instance* inst, const char* bits,
                                    size_t* out) {
  return guarded([&] {
    require(inst && bits && out, "null argument");
    *out = inst->inst.fitness(lolab::BitString::from_string(bits));
  });
}

void lolab_instance_destroy(lolab_instance* inst) { delete inst; }

lolab_status lolab_experiment_create(const char* algorithm, lolab_experiment** out) {
  return guarded([&] {
    require(algorithm && out, "null argument");
    lolab::make_strategy(algorithm);
    auto* exp = new lolab_experiment{};
    exp->config.algorithm = algorithm;
    *out = exp;
  });
}

lolab_status lolab_experiment_set_n_values(lolab_experiment* exp,
                                           const size_t* values, size_t count) {
  return guarded([&] {
    require(exp && (values || count == 0), "null argument");
    exp->config.n_values.assign(values, values + count);
  });
}

lolab_status lolab_experiment_set_repetitions(lolab_experiment* exp, size_t reps) {
  return guarded([&] {
    require(exp, "null experiment");
    require(reps >= 1, "repetitions must be at least 1");
    exp->config.repetitions = reps;
  });
}

lolab_status lolab_experiment_set_seed(lolab_experiment* exp, uint64_t seed) {
  return guarded([&] {
    require(exp, "null experiment");
    exp->config.master_seed = seed;
  });
}

lolab_status lolab_experiment_set_budget(lolab_experiment* exp, uint64_t budget) {
  return guarded([&] {
    require(exp, "null experiment");
    require(budget >= 1, "budget must be positive");
    exp->config.budget = budget;
  });
}

lolab_status lolab_experiment_set_threads(lolab_experiment* exp, unsigned threads) {
  return guarded([&] {
    require(exp, "null experiment");
    require(threads >= 1, "threads must be at least 1");
    exp->config.threads = threads;
  });
}

lolab_status lolab_experiment_set_instance(lolab_experiment* exp,
                                           const lolab_instance* inst) {
  return guarded([&] {
    require(exp, "null experiment");
    if (inst) exp->config.fixed_instance = inst->inst;
    else exp->config.fixed_instance.reset();
  });
}

void lolab_experiment_destroy(lolab_experiment* exp) { delete exp; }

lolab_status lolab_run(const lolab_experiment* exp, lolab_format format, char** out) {
  return guarded([&] {
    require(exp && out, "null argument");
    const auto fmt = to_format(format);
    std::ostringstream s;
    lolab::write_records(s, lolab::run_experiment(exp->config), fmt);
    *out = dup_string(s.str());
  });
}

lolab_status lolab_scaling(const lolab_experiment* exp, lolab_format format,
                           char** out) {
  return guarded([&] {
    require(exp && out, "null argument");
    const auto fmt = to_format(format);
    std::ostringstream s;
    lolab::write_scaling(s, lolab::run_scaling(exp->config), fmt);
    *out = dup_string(s.str());
  });
}

lolab_status lolab_level_profile(const lolab_experiment* exp, char** out) {
  return guarded([&] {
    require(exp && out, "null argument");
    std::ostringstream s;
    lolab::write_level_profile(s, lolab::run_level_profile(exp->config));
    *out = dup_string(s.str());
  });
}

lolab_status lolab_phi_value(size_t k, size_t m, uint64_t c, double* out) {
  return guarded([&] {
    require(out, "null output pointer");
    *out = lolab::phi_cardinality_dp(k, m, c);
  });
}

lolab_status lolab_phi_csv(size_t k_max, size_t m_max, double eps, char** out) {
  return guarded([&] {
    require(out, "null output pointer");
    std::ostringstream s;
    lolab::write_phi_csv(s, k_max, m_max, eps);
    *out = dup_string(s.str());
  });
}

lolab_status lolab_verify(double eps, size_t k_max, size_t m_max,
                          char** report_json, int* pass) {
  return guarded([&] {
    require(report_json && pass, "null output pointer");
    const auto grid = lolab::InductionGrid::sampled(k_max, m_max,
                                                    std::max(k_max, m_max));
    const auto report = lolab::verify_induction_step(grid, eps);
    std::ostringstream s;
    lolab::write_verify_json(s, report);
    *report_json = dup_string(s.str());
    *pass = report.pass ? 1 : 0;
  });
}

lolab_status lolab_game_solve(const char* spec_text, double* out) {
  return guarded([&] {
    require(spec_text && out, "null argument");
    lolab::ExactLevelGame game;
    *out = static_cast<double>(game.solve(lolab::parse_game_spec(spec_text)));
  });
}

}  // extern "C"
