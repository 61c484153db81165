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

#ifndef LOLAB_CORE_HARNESS_HPP_
#define LOLAB_CORE_HARNESS_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bounds.hpp"
#include "elitist.hpp"
#include "lo_core.hpp"

namespace lolab {

enum class OutputFormat { Csv, Json };

OutputFormat parse_format(std::string_view text);

inline constexpr std::string_view kSchemaLine = "# elitist-lo-lab v1";
inline constexpr std::uint64_t kDefaultBudget = 1000000000;

struct ExperimentConfig {
  std::string algorithm;
  std::vector<std::size_t> n_values;
  std::size_t repetitions = 1;
  std::uint64_t master_seed = 0;
  std::uint64_t budget = kDefaultBudget;
  std::optional<LoInstance> fixed_instance;  // otherwise a fresh one per run
  unsigned threads = 1;

  // Throws InputError / UnknownAlgorithm.
  void validate() const;
};

std::uint64_t repetition_seed(std::uint64_t master, std::size_t n,
                              std::size_t rep);

// The instance a repetition runs on when none is fixed.
LoInstance repetition_instance(std::uint64_t rep_seed, std::size_t n);

RunRecord run_repetition(const ExperimentConfig& config, std::size_t n,
                         std::size_t rep);

// All runs in (n, repetition) order, whatever the thread count.
std::vector<RunRecord> run_experiment(const ExperimentConfig& config);

void write_records(std::ostream& out, const std::vector<RunRecord>& records,
                   OutputFormat format);

struct ScalingRow {
  std::size_t n = 0;
  std::size_t runs = 0;
  double mean = 0.0;
  double std_error = 0.0;
  double ci95 = 0.0;  // normal approximation half-width
  double per_n2 = 0.0;
  double per_nlogn = 0.0;
};

struct PowerFit {
  double exponent = 0.0;
  double coefficient = 0.0;
  double r2 = 0.0;
};

// Least squares on (ln x, ln y).
PowerFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

struct ScalingReport {
  std::string algorithm;
  std::vector<ScalingRow> rows;
  PowerFit fit;        // mean T against n
  PowerFit log_fit;    // mean T / n against log2 n
  double mean_per_nlogn = 0.0;
};

// Needs >= 3 n values and >= 50 repetitions.
ScalingReport summarize_scaling(const ExperimentConfig& config,
                                const std::vector<RunRecord>& records);
ScalingReport run_scaling(const ExperimentConfig& config);
void write_scaling(std::ostream& out, const ScalingReport& report,
                   OutputFormat format);

struct LevelStat {
  int level = 0;
  std::size_t runs_visited = 0;
  double visit_frequency = 0.0;
  double mean_when_visited = 0.0;
};

// Single n, >= 100 repetitions.
std::vector<LevelStat> summarize_levels(const std::vector<RunRecord>& records,
                                        std::size_t n);
std::vector<LevelStat> run_level_profile(const ExperimentConfig& config);
void write_level_profile(std::ostream& out, const std::vector<LevelStat>& stats);

inline constexpr double kDefaultEps = 1.0 / 2048.0;

// Rows for every k <= k_max, 1 <= m <= m_max and C in [1, binom(k+m, m)].
void write_phi_csv(std::ostream& out, std::size_t k_max, std::size_t m_max,
                   double eps);

void write_verify_json(std::ostream& out, const InductionReport& report);

// "n=", "k=", then "set=<1-based positions>" lines or "family=all";
// '#' starts a comment.
SetFamily parse_game_spec(std::string_view text);

// Shortest round-trip representation, always with a decimal point or
// exponent.
std::string format_real(double value);

}  // namespace lolab

#endif  // LOLAB_CORE_HARNESS_HPP_
