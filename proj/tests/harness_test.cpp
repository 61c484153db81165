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

#include "core/harness.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "core/errors.hpp"
#include "json.hpp"

namespace lolab {
namespace {

ExperimentConfig config(const std::string& algo, std::vector<std::size_t> ns,
                        std::size_t reps, std::uint64_t seed = 1) {
  ExperimentConfig c;
  c.algorithm = algo;
  c.n_values = std::move(ns);
  c.repetitions = reps;
  c.master_seed = seed;
  return c;
}

std::string csv_of(const ExperimentConfig& c) {
  std::ostringstream s;
  write_records(s, run_experiment(c), OutputFormat::Csv);
  return s.str();
}

TEST(Experiment, ByteIdenticalReruns) {
  const auto c = config("rls", {8}, 3, 7);
  const std::string a = csv_of(c);
  EXPECT_EQ(a, csv_of(c));
  EXPECT_EQ(a.rfind("# elitist-lo-lab v1\n"
                    "algo,n,seed,total_queries,hit_optimum,budget_exhausted,per_level\n",
                    0),
            0u);
}

TEST(Experiment, ThreadCountDoesNotChangeOutput) {
  auto c = config("oea", {5, 9, 14}, 20, 3);
  const std::string serial = csv_of(c);
  c.threads = 4;
  EXPECT_EQ(serial, csv_of(c));
}

TEST(Experiment, RecordsInNThenRepetitionOrder) {
  const auto records = run_experiment(config("rls", {3, 4}, 5));
  ASSERT_EQ(records.size(), 10u);
  for (std::size_t i = 0; i < 10; ++i) {
    EXPECT_EQ(records[i].n, i < 5 ? 3u : 4u);
    EXPECT_EQ(records[i].seed, repetition_seed(1, records[i].n, i % 5));
  }
}

TEST(Experiment, MemlogWithinBound) {
  for (const auto& r : run_experiment(config("memlog", {64}, 50))) {
    EXPECT_TRUE(r.hit_optimum);
    EXPECT_LE(r.total_queries, 1024u);
  }
}

TEST(Experiment, TinyBudgetFlagsRuns) {
  auto c = config("oea", {16}, 100);
  c.budget = 10;
  std::size_t flagged = 0;
  for (const auto& r : run_experiment(c)) {
    EXPECT_LE(r.total_queries, 10u);
    flagged += r.budget_exhausted;
  }
  EXPECT_GT(flagged, 0u);
}

TEST(Experiment, FixedInstanceUsedForEveryRun) {
  auto c = config("rls", {6}, 4);
  c.fixed_instance = LoInstance::identity(6);
  const auto records = run_experiment(c);
  EXPECT_EQ(records.size(), 4u);
  c.n_values = {7};
  EXPECT_THROW(run_experiment(c), InputError);
}

TEST(Experiment, ValidatesConfig) {
  EXPECT_THROW(run_experiment(config("nope", {4}, 1)), UnknownAlgorithm);
  EXPECT_THROW(run_experiment(config("rls", {4, 4}, 1)), InputError);
  EXPECT_THROW(run_experiment(config("rls", {5, 4}, 1)), InputError);
  EXPECT_THROW(run_experiment(config("rls", {}, 1)), InputError);
  EXPECT_THROW(run_experiment(config("rls", {4}, 0)), InputError);
  EXPECT_THROW(run_experiment(config("rls", {0}, 1)), InputError);
}

TEST(Records, JsonLinesSchema) {
  std::ostringstream s;
  write_records(s, run_experiment(config("rls", {5}, 3)), OutputFormat::Json);
  std::istringstream in(s.str());
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    const auto j = nlohmann::ordered_json::parse(line);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    EXPECT_EQ(keys, (std::vector<std::string>{"algo", "n", "seed", "total_queries",
                                              "hit_optimum", "budget_exhausted",
                                              "per_level"}));
    ASSERT_TRUE(j["per_level"].is_array());
    std::uint64_t sum = 0;
    for (const auto& pair : j["per_level"]) sum += pair[1].get<std::uint64_t>();
    EXPECT_EQ(sum, j["total_queries"].get<std::uint64_t>());
    EXPECT_EQ(j["per_level"][0][0].get<int>(), -1);
    ++lines;
  }
  EXPECT_EQ(lines, 3);
}

TEST(Records, CsvPerLevelField) {
  RunRecord r;
  r.algo = "rls";
  r.n = 2;
  r.seed = 9;
  r.total_queries = 4;
  r.per_level = {{-1, 1}, {0, 2}, {1, 1}};
  r.hit_optimum = true;
  std::ostringstream s;
  write_records(s, {r}, OutputFormat::Csv);
  EXPECT_EQ(s.str(),
            "# elitist-lo-lab v1\n"
            "algo,n,seed,total_queries,hit_optimum,budget_exhausted,per_level\n"
            "rls,2,9,4,true,false,-1:1;0:2;1:1\n");
}

TEST(PowerFit, RecoversExactPowerLaw) {
  const auto fit = fit_power_law({2, 4, 8, 16}, {12, 48, 192, 768});
  EXPECT_NEAR(fit.exponent, 2.0, 1e-12);
  EXPECT_NEAR(fit.coefficient, 3.0, 1e-12);
  EXPECT_NEAR(fit.r2, 1.0, 1e-12);
  EXPECT_THROW(fit_power_law({1}, {1}), InputError);
  EXPECT_THROW(fit_power_law({1, 2}, {0, 1}), InputError);
}

TEST(Scaling, MeanEqualsMeanOfRecords) {
  const auto c = config("rls", {8, 16, 32}, 50, 4);
  const auto records = run_experiment(c);
  const auto report = summarize_scaling(c, records);
  ASSERT_EQ(report.rows.size(), 3u);
  for (const auto& row : report.rows) {
    double sum = 0;
    std::size_t count = 0;
    for (const auto& r : records)
      if (r.n == row.n) sum += double(r.total_queries), ++count;
    EXPECT_EQ(row.runs, count);
    EXPECT_DOUBLE_EQ(row.mean, sum / double(count));
    EXPECT_DOUBLE_EQ(row.ci95, 1.96 * row.std_error);
  }
  EXPECT_GT(report.fit.exponent, 1.5);
  const auto again = run_scaling(c);
  EXPECT_EQ(again.rows[2].mean, report.rows[2].mean);
}

TEST(Scaling, MemlogNLogNCoefficient) {
  const auto report = run_scaling(config("memlog", {64, 256, 1024}, 50, 5));
  EXPECT_GT(report.mean_per_nlogn, 0.0);
  EXPECT_LE(report.mean_per_nlogn, 4.0);
  for (const auto& row : report.rows) EXPECT_LE(row.per_nlogn, 4.0);
}

TEST(Scaling, NeedsThreeSizesAndFiftyReps) {
  EXPECT_THROW(run_scaling(config("rls", {8, 16}, 50)), InputError);
  EXPECT_THROW(run_scaling(config("rls", {8, 16, 32}, 49)), InputError);
}

TEST(Scaling, WritersProduceBothFormats) {
  const auto report = run_scaling(config("memlog", {8, 16, 32}, 50));
  std::ostringstream csv, json;
  write_scaling(csv, report, OutputFormat::Csv);
  write_scaling(json, report, OutputFormat::Json);
  EXPECT_EQ(csv.str().rfind("# elitist-lo-lab v1\n", 0), 0u);
  const auto j = nlohmann::json::parse(json.str());
  EXPECT_EQ(j["rows"].size(), 3u);
  EXPECT_EQ(j["algo"], "memlog");
}

TEST(LevelProfile, InitLevelChargedOncePerRun) {
  const auto stats = run_level_profile(config("rls", {32}, 100));
  ASSERT_FALSE(stats.empty());
  EXPECT_EQ(stats.front().level, kInitLevel);
  EXPECT_EQ(stats.front().runs_visited, 100u);
  EXPECT_EQ(stats.front().mean_when_visited, 1.0);
  EXPECT_EQ(stats.front().visit_frequency, 1.0);
  EXPECT_THROW(run_level_profile(config("rls", {32}, 99)), InputError);
  EXPECT_THROW(run_level_profile(config("rls", {16, 32}, 100)), InputError);
}

TEST(PhiCsv, ContainsHandRow) {
  std::ostringstream s;
  write_phi_csv(s, 2, 2, kDefaultEps);
  const std::string out = s.str();
  EXPECT_EQ(out.rfind("# elitist-lo-lab v1\nk,m,C,B,phi_hat,closed_form,slack\n", 0), 0u);
  EXPECT_NE(out.find("\n1,1,2,1.0,1.5,"), std::string::npos);
  EXPECT_THROW(write_phi_csv(s, 20, 5, kDefaultEps), InputError);
  EXPECT_THROW(write_phi_csv(s, 2, 0, kDefaultEps), InputError);
}

TEST(VerifyJson, ReportShape) {
  const auto report =
      verify_induction_step(InductionGrid::sampled(10, 10, 10, 4, 17), kDefaultEps);
  std::ostringstream s;
  write_verify_json(s, report);
  const auto j = nlohmann::json::parse(s.str());
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(j["cells"].size(), report.cells.size());
  EXPECT_TRUE(j["cells"][0].contains("argmax_p"));
}

TEST(GameSpec, ParsesSetsAndFullFamily) {
  const SetFamily single = parse_game_spec("# singleton\nn=4\nk=1\nset=2\n");
  EXPECT_EQ(single.positions, 4u);
  EXPECT_EQ(single.sets, (std::vector<std::uint32_t>{0b0010}));
  ExactLevelGame game;
  EXPECT_EQ(game.solve(single), Rational(2));  // m = 3: (m+1)/2
  const SetFamily all = parse_game_spec("n=2\nk=1\nfamily=all  # both\n");
  EXPECT_EQ(game.solve(all), Rational(3) / 2);
  const SetFamily two = parse_game_spec("n=4\r\nk=2\r\nset=1 2\r\nset=3,4\r\n");
  EXPECT_EQ(two.sets.size(), 2u);
}

TEST(GameSpec, Rejects) {
  EXPECT_THROW(parse_game_spec("k=1\nset=1\n"), InputError);
  EXPECT_THROW(parse_game_spec("n=3\nk=1\nset=0\n"), InputError);
  EXPECT_THROW(parse_game_spec("n=3\nk=1\nset=1 2\n"), InputError);
  EXPECT_THROW(parse_game_spec("n=3\nk=1\nfamily=all\nset=1\n"), InputError);
  EXPECT_THROW(parse_game_spec("n=3\nk=1\ncolour=red\n"), InputError);
  EXPECT_THROW(parse_game_spec("n=x\nk=1\nset=1\n"), InputError);
  EXPECT_THROW(parse_game_spec("n=3\nk=1\n"), InputError);
}

TEST(FormatReal, AlwaysLooksReal) {
  EXPECT_EQ(format_real(2.0), "2.0");
  EXPECT_EQ(format_real(1.5), "1.5");
  EXPECT_EQ(format_real(0.1), "0.1");
  EXPECT_EQ(format_real(1e300), "1e+300");
}

}  // namespace
}  // namespace lolab
