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

#include "core/heuristics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <deque>

#include "core/errors.hpp"

namespace lolab {
namespace {

std::size_t ceil_log2(std::size_t n) {
  std::size_t r = 0;
  while ((std::size_t{1} << r) < n) ++r;
  return r;
}

std::uint64_t memlog_bound(std::size_t n) { return 2 * n * (ceil_log2(n) + 2); }

TEST(RlsStep, FlipsExactlyOneBit) {
  Rng rng(1);
  const BitString one(1);
  for (int i = 0; i < 10; ++i) EXPECT_TRUE(rls_step(one, rng)[0]);
  for (int i = 0; i < 1000; ++i) {
    const BitString x = BitString::uniform(37, rng);
    EXPECT_EQ(x.hamming_distance(rls_step(x, rng)), 1u);
  }
}

TEST(RlsStep, PositionFrequencyUniform) {
  Rng rng(2);
  const BitString x(8);
  std::vector<int> hits(8, 0);
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) ++hits[rls_step(x, rng).ones().at(0)];
  for (int h : hits) EXPECT_NEAR(h / double(draws), 1.0 / 8, 0.01);
}

TEST(OeaStep, UnchangedWithProbabilitySevenEighthsToTheEighth) {
  Rng rng(3);
  const BitString x(8);
  int same = 0;
  double flipped = 0;
  std::vector<int> per_pos(8, 0);
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const BitString y = oea_step(x, rng);
    same += y == x;
    flipped += double(y.count());
    for (std::size_t p : y.ones()) ++per_pos[p];
  }
  EXPECT_NEAR(same / double(draws), 0.3436089158, 0.01);  // (7/8)^8
  EXPECT_NEAR(flipped / draws, 1.0, 0.02);
  for (int c : per_pos) EXPECT_NEAR(c / double(draws), 1.0 / 8, 0.01);
}

TEST(OeaStep, SingleBitAlwaysFlips) {
  Rng rng(4);
  for (int i = 0; i < 100; ++i) EXPECT_TRUE(oea_step(BitString(1), rng)[0]);
}

TEST(OeaStep, LongStringMeanFlips) {
  Rng rng(5);
  const BitString x(1000);
  double flipped = 0;
  for (int i = 0; i < 20000; ++i) flipped += double(oea_step(x, rng).count());
  EXPECT_NEAR(flipped / 20000, 1.0, 0.03);
}

TEST(Registry, KnownAndUnknownNames) {
  EXPECT_EQ(strategy_names(), (std::vector<std::string>{"rls", "oea", "memlog"}));
  for (const auto& name : strategy_names()) EXPECT_EQ(make_strategy(name)->name(), name);
  EXPECT_THROW(make_strategy("sa"), UnknownAlgorithm);
}

// Property: an unbiased strategy on (z, sigma) with relabeled randomness has
// the same fitness trajectory as on the identity instance.
template <typename Strategy>
void expect_coupled(std::uint64_t master) {
  Rng rng(master);
  for (int pair = 0; pair < 100; ++pair) {
    const std::size_t n = 1 + rng.uniform_below(40);
    const LoInstance inst = random_instance(n, rng);
    const LoInstance id = LoInstance::identity(n);
    const std::uint64_t seed = rng.next();

    std::vector<std::size_t> plain, coupled;
    Strategy s_id;
    RunOptions o1;
    o1.observer = [&](const StepEvent& e) { plain.push_back(lo_value(id, e.query)); };
    const RunRecord r1 = run_one_plus_one(s_id, id, seed, o1);

    Strategy s_inst(Relabeling::onto(inst));
    RunOptions o2;
    o2.observer = [&](const StepEvent& e) { coupled.push_back(lo_value(inst, e.query)); };
    const RunRecord r2 = run_one_plus_one(s_inst, inst, seed, o2);

    ASSERT_EQ(plain, coupled) << "pair " << pair;
    EXPECT_EQ(r1.total_queries, r2.total_queries);
    EXPECT_EQ(r1.per_level, r2.per_level);
  }
}

TEST(Unbiasedness, RlsCoupling) { expect_coupled<RlsStrategy>(100); }
TEST(Unbiasedness, OeaCoupling) { expect_coupled<OeaStrategy>(101); }

TEST(Relabeling, OntoMapsIdentityOptimumToTarget) {
  Rng rng(6);
  const LoInstance inst = random_instance(20, rng);
  const Relabeling r = Relabeling::onto(inst);
  EXPECT_EQ(r.point(BitString(20, true)), inst.target());
  // The j-th most significant identity position lands on sigma(j).
  for (std::size_t j = 0; j < 20; ++j) EXPECT_EQ(r.position(j), inst.order()[j]);
}

// ---- memlog -----------------------------------------------------------------

TEST(Memlog, SingleBitAtMostTwoQueries) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (const char* z : {"0", "1"}) {
      const LoInstance inst(BitString::from_string(z), Permutation::identity(1));
      const RunRecord r = memlog_run(inst, seed);
      EXPECT_TRUE(r.hit_optimum);
      EXPECT_LE(r.total_queries, 2u);
    }
  }
}

TEST(Memlog, TwoBitsFromZeroWithinTwelve) {
  const LoInstance inst = LoInstance::identity(2);  // z = 11, sigma = id
  std::uint64_t seed = 0;
  for (;; ++seed) {
    Rng probe(seed);
    if (BitString::uniform(2, probe) == BitString(2)) break;
  }
  const RunRecord r = memlog_run(inst, seed);
  EXPECT_TRUE(r.hit_optimum);
  EXPECT_LE(r.total_queries, 12u);
}

TEST(Memlog, BoundOnRandomSizes) {
  Rng rng(7);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 1 + rng.uniform_below(trial < 300 ? 64 : 400);
    const LoInstance inst = random_instance(n, rng);
    const RunRecord r = memlog_run(inst, rng.next());
    ASSERT_TRUE(r.hit_optimum) << n;
    ASSERT_LE(r.total_queries, memlog_bound(n)) << n;
  }
}

TEST(Memlog, DeclaredBudget) {
  EXPECT_EQ(MemlogStrategy::budget_for(1), 3u);
  EXPECT_EQ(MemlogStrategy::budget_for(64), 64u + 6 + 2);
  EXPECT_EQ(MemlogStrategy::budget_for(65), 65u + 7 + 2);
  MemlogStrategy s;
  EXPECT_EQ(s.state_budget_bits(100), std::optional<std::size_t>(100 + 7 + 2));
}

// Properties checked after every step: marker ones lie among the f(x) most
// significant positions, the halving record fits in ceil(log2 n) bits, the
// candidate set is a non-empty subset of unmarked positions, and the state
// survives a save/load round trip.
TEST(Memlog, StepInvariants) {
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.uniform_below(70);
    const LoInstance inst = random_instance(n, rng);
    MemlogStrategy s;
    RunOptions options;
    std::size_t steps = 0;
    options.observer = [&](const StepEvent& e) {
      ++steps;
      const std::size_t f = lo_value(inst, e.incumbent);
      std::vector<bool> leading(n, false);
      for (const auto& p : significant_prefix(inst, f)) leading[p.position] = true;
      for (std::size_t p : s.marker_block().ones()) ASSERT_TRUE(leading[p]);
      ASSERT_LE(s.halving_record().size(), ceil_log2(n));
      if (s.in_halving()) {
        const auto cand = s.candidates();
        ASSERT_FALSE(cand.empty());
        for (std::size_t p : cand) ASSERT_FALSE(s.marker_block()[p]);
      }
      MemlogStrategy copy;
      copy.load_state(s.save_state());
      ASSERT_EQ(copy.marker_block(), s.marker_block());
      ASSERT_EQ(copy.halving_record(), s.halving_record());
      ASSERT_EQ(copy.in_halving(), s.in_halving());
    };
    ASSERT_TRUE(run_one_plus_one(s, inst, rng.next(), options).hit_optimum);
    EXPECT_GT(steps, 0u);
  }
}

// Property: within any ceil(log2 n) + 1 consecutive queries the potential
// f(x) + |B1| strictly increases.
TEST(Memlog, ProgressWindow) {
  Rng rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.uniform_below(100);
    const LoInstance inst = random_instance(n, rng);
    const std::size_t window = ceil_log2(n) + 1;
    MemlogStrategy s;
    std::vector<std::size_t> potential;
    RunOptions options;
    options.observer = [&](const StepEvent& e) {
      potential.push_back(lo_value(inst, e.incumbent) + s.marker_block().count());
    };
    run_one_plus_one(s, inst, rng.next(), options);
    for (std::size_t i = 0; i + window < potential.size(); ++i)
      ASSERT_GT(potential[i + window], potential[i]) << "n=" << n << " i=" << i;
  }
}

TEST(Memlog, LoadRejectsWrongSize) {
  MemlogStrategy s;
  // Lengths are n + ceil(log2 n) + 2: 3, 5, 7, 8, ... so 4 is impossible.
  EXPECT_THROW(s.load_state({{0xff}, 4}), InputError);
  EXPECT_THROW(s.load_state({{0x00}, 3}), InputError);  // no record sentinel
}

}  // namespace
}  // namespace lolab
