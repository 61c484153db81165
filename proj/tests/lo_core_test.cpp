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

#include "core/lo_core.hpp"

#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>

#include <filesystem>
#include <map>

#include "core/errors.hpp"
#include "core/rng.hpp"

namespace lolab {
namespace {

LoInstance make(const std::string& z, const std::vector<std::size_t>& sigma1) {
  return LoInstance(BitString::from_string(z), Permutation::from_one_based(sigma1));
}

BitString bits(const std::string& s) { return BitString::from_string(s); }

TEST(LoValue, IdentityPrefix) {
  EXPECT_EQ(lo_value(make("1111", {1, 2, 3, 4}), bits("1101")), 2u);
}

TEST(LoValue, OptimumScoresN) {
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const LoInstance inst = random_instance(1 + i, rng);
    EXPECT_EQ(lo_value(inst, inst.target()), inst.n());
  }
}

TEST(LoValue, PermutedOrder) {
  // sigma = (3,1,4,2,5): x agrees with z on positions 3 and 1, not on 4.
  EXPECT_EQ(lo_value(make("00000", {3, 1, 4, 2, 5}), bits("01011")), 2u);
}

TEST(LoValue, RejectsLengthMismatch) {
  EXPECT_THROW(lo_value(make("11", {1, 2}), bits("1")), InputError);
}

// Property: LO(x) >= k iff x matches z on sigma(1..k), and LO(x) = n iff x = z.
TEST(LoValue, PrefixCharacterizationExhaustive) {
  Rng rng(11);
  for (std::size_t n = 1; n <= 10; ++n) {
    const LoInstance inst = random_instance(n, rng);
    for (std::uint32_t v = 0; v < (1u << n); ++v) {
      BitString x(n);
      for (std::size_t i = 0; i < n; ++i) x.set(i, (v >> i) & 1);
      const std::size_t f = lo_value(inst, x);
      ASSERT_LE(f, n);
      EXPECT_EQ(f == n, x == inst.target());
      for (std::size_t k = 0; k <= n; ++k) {
        bool agrees = true;
        for (const auto& e : significant_prefix(inst, k))
          agrees = agrees && x[e.position] == e.value;
        EXPECT_EQ(f >= k, agrees);
      }
    }
  }
}

TEST(Permutation, RejectsNonBijection) {
  EXPECT_THROW(Permutation::from_one_based({1, 1, 2}), InputError);
  EXPECT_THROW(Permutation::from_one_based({0, 1}), InputError);
  EXPECT_THROW(Permutation::from_one_based({1, 3}), InputError);
}

TEST(RandomInstance, RejectsZero) {
  Rng rng(1);
  EXPECT_THROW(random_instance(0, rng), InputError);
}

TEST(RandomInstance, SameSeedSameInstance) {
  Rng a(99), b(99);
  EXPECT_EQ(random_instance(17, a), random_instance(17, b));
}

TEST(RandomInstance, SingleBitBothEqually) {
  Rng rng(2);
  int ones = 0;
  for (int i = 0; i < 10000; ++i) ones += random_instance(1, rng).target()[0];
  EXPECT_NEAR(ones / 10000.0, 0.5, 0.03);
}

TEST(RandomInstance, UniformOverFortyEightInstancesAtNThree) {
  Rng rng(20260101);
  std::map<std::string, int> counts;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const LoInstance inst = random_instance(3, rng);
    std::string key = inst.target().to_string();
    for (std::size_t p : inst.order().order()) key += char('0' + p);
    ++counts[key];
  }
  ASSERT_EQ(counts.size(), 48u);
  const double expected = draws / 48.0;
  double chi2 = 0;
  for (const auto& [key, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
  const boost::math::chi_squared dist(47);
  const double critical = boost::math::quantile(dist, 0.999);
  EXPECT_NEAR(critical, 82.7204, 1e-3);  // scipy chi2.ppf(0.999, 47)
  EXPECT_LT(chi2, critical);
}

TEST(SignificantPrefix, ReadsOrderAndValues) {
  const LoInstance inst = make("101", {2, 3, 1});
  EXPECT_TRUE(significant_prefix(inst, 0).empty());
  const auto p = significant_prefix(inst, 2);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p[0], (PrefixEntry{1, false}));  // 1-based (2, 0)
  EXPECT_EQ(p[1], (PrefixEntry{2, true}));   // 1-based (3, 1)
  EXPECT_EQ(significant_prefix(inst, 3).size(), 3u);
  EXPECT_THROW(significant_prefix(inst, 4), InputError);
}

TEST(InstanceFormat, RoundTrip) {
  const LoInstance inst = make("0110", {4, 2, 1, 3});
  const std::string text = format_instance(inst);
  EXPECT_EQ(text, "n=4\nz=0110\nsigma=4 2 1 3\n");
  EXPECT_EQ(parse_instance(text), inst);
  EXPECT_EQ(parse_instance("n=4  \r\nz=0110\t\nsigma=4 2 1 3  \n"), inst);
}

TEST(InstanceFormat, StrictParsing) {
  EXPECT_THROW(parse_instance("n=3\nz=0110\nsigma=1 2 3\n"), InputError);
  EXPECT_THROW(parse_instance("n=3\nz=011\nsigma=1 2\n"), InputError);
  EXPECT_THROW(parse_instance("z=011\nn=3\nsigma=1 2 3\n"), InputError);
  EXPECT_THROW(parse_instance("n=3\nz=011\nsigma=1 2 2\n"), InputError);
  EXPECT_THROW(parse_instance("n=0\nz=\nsigma=\n"), InputError);
}

TEST(InstanceFormat, FileRoundTripAndIoErrors) {
  const auto path = std::filesystem::temp_directory_path() / "lolab_inst_test.txt";
  const LoInstance inst = make("10", {2, 1});
  save_instance(inst, path);
  EXPECT_EQ(load_instance(path), inst);
  std::filesystem::remove(path);
  EXPECT_THROW(load_instance(path), IoError);
  EXPECT_THROW(save_instance(inst, "/nonexistent-dir/x/y.txt"), IoError);
}

TEST(CountingOracle, CompareExamples) {
  const LoInstance inst = make("1111", {1, 2, 3, 4});
  CountingOracle oracle(inst);
  oracle.evaluate(bits("1100"));
  EXPECT_EQ(oracle.compare(bits("1100"), bits("1010")), Ordering::Less);
  EXPECT_EQ(oracle.compare(bits("1100"), bits("1100")), Ordering::Equal);
  EXPECT_EQ(oracle.compare(bits("1100"), bits("1111")), Ordering::Greater);
  EXPECT_EQ(oracle.query_count(), 4u);
}

TEST(CountingOracle, ChargesToLevelBeforeQuery) {
  const LoInstance inst = make("1111", {1, 2, 3, 4});
  CountingOracle oracle(inst);
  oracle.evaluate(bits("1000"));  // init
  oracle.evaluate(bits("0000"));  // charged to 1
  oracle.evaluate(bits("1110"));  // charged to 1, enters 3
  oracle.evaluate(bits("1100"));  // charged to 3
  EXPECT_EQ(oracle.per_level(),
            (std::map<int, std::uint64_t>{{kInitLevel, 1}, {1, 2}, {3, 1}}));
  EXPECT_EQ(oracle.best_level(), std::optional<std::size_t>(3));
  EXPECT_FALSE(oracle.optimum_found());
  oracle.evaluate(bits("1111"));
  EXPECT_TRUE(oracle.optimum_found());
}

// Property: sum of per-level charges equals the query count, and the best
// level never decreases, over random query streams.
TEST(CountingOracle, AccountingProperty) {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.uniform_below(12);
    const LoInstance inst = random_instance(n, rng);
    CountingOracle oracle(inst);
    std::size_t last_best = 0;
    const int queries = 1 + int(rng.uniform_below(60));
    for (int q = 0; q < queries; ++q) {
      oracle.evaluate(BitString::uniform(n, rng));
      ASSERT_GE(*oracle.best_level(), last_best);
      last_best = *oracle.best_level();
    }
    std::uint64_t sum = 0;
    for (const auto& [level, c] : oracle.per_level()) sum += c;
    EXPECT_EQ(sum, oracle.query_count());
    EXPECT_EQ(oracle.per_level().at(kInitLevel), 1u);
  }
}

TEST(CountingOracle, CompareIsFunctional) {
  Rng rng(8);
  const LoInstance inst = random_instance(9, rng);
  CountingOracle oracle(inst);
  const BitString x = BitString::uniform(9, rng);
  oracle.evaluate(x);
  for (int i = 0; i < 50; ++i) {
    const BitString y = BitString::uniform(9, rng);
    const Ordering first = oracle.compare(x, y);
    EXPECT_EQ(oracle.compare(x, y), first);
  }
}

TEST(CountingOracle, TransformKeepsOrderButChangesValue) {
  const LoInstance inst = make("111", {1, 2, 3});
  CountingOracle plain(inst);
  CountingOracle shifted(inst, FitnessTransform({1, 3, 5, 7}));
  const BitString a = bits("100"), b = bits("110");
  EXPECT_EQ(plain.white_box_value(a), 1.0);
  EXPECT_EQ(shifted.white_box_value(a), 3.0);
  plain.evaluate(a);
  shifted.evaluate(a);
  EXPECT_EQ(plain.compare(a, b), shifted.compare(a, b));
}

TEST(FitnessTransform, MustBeStrictlyIncreasing) {
  EXPECT_THROW(FitnessTransform({1, 1, 2}), InputError);
  EXPECT_THROW(FitnessTransform({3, 2}), InputError);
  CountingOracle ok(LoInstance::identity(2), FitnessTransform({0, 1, 2}));
  EXPECT_THROW(CountingOracle(LoInstance::identity(3), FitnessTransform({0, 1})),
               InputError);
}

}  // namespace
}  // namespace lolab
