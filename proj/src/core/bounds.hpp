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

#ifndef LOLAB_CORE_BOUNDS_HPP_
#define LOLAB_CORE_BOUNDS_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bitstring.hpp"
#include "lo_core.hpp"

namespace lolab {

using Rational = boost::multiprecision::cpp_rational;

// Exact binomial coefficient; throws InputError if it does not fit 64 bits.
std::uint64_t binomial(std::size_t n, std::size_t k);

// Available information B(k, m, C) = binom(k+m, m) / C.
struct InfoState {
  std::size_t k = 0;
  std::size_t m = 0;
  std::uint64_t configurations = 1;  // C

  Rational information() const;  // exact, k + m <= 64
  double information_value() const;
};

// Exact for k + m <= 64.
Rational available_information_exact(std::size_t k, std::size_t m,
                                     std::uint64_t c);
// Exact binomials up to k + m <= 64, log-gamma beyond.
double available_information(std::size_t k, std::size_t m, std::uint64_t c);

// The k most significant positions (ascending, 0-based) and their target
// values.
struct KConfiguration {
  std::vector<std::size_t> positions;
  std::vector<bool> values;
};

// How a deterministic algorithm chooses its point on entering level k.
using EntryMap = std::function<BitString(const KConfiguration&)>;

struct LevelEntryReport {
  std::uint64_t configurations = 0;  // 2^k * binom(n, k)
  std::uint64_t favourable = 0;      // configurations whose image has B <= 2^(m+1)
  std::size_t images = 0;            // distinct entry points
  double probability = 0.0;
  bool holds = false;                // probability >= 1/2
};

// Exhaustive over all k-configurations, n <= 14.
LevelEntryReport level_entry_information_check(std::size_t n, std::size_t k,
                                               const EntryMap& entry_map);

struct OneBitSimulation {
  std::vector<BitString> queries;  // one-bit neighbours of the start point
  std::size_t original_queries = 0;  // s: trace queries up to leaving
  std::size_t insignificant_tested = 0;
  bool left_level = false;
  bool length_certified = false;     // |queries| <= s + m
  // Every original outcome before the simulation leaves is implied by the
  // simulation's own answers.
  bool knowledge_certified = false;
};

// Replays a level trace with one-bit flips: each original query is expanded
// into single flips of its differing bits (ascending), skipping bits already
// tried on this level and stopping the step at the first drop below k.
// `secret` supplies the oracle; `start` must have fitness exactly k.
OneBitSimulation onebit_simulation(const LoInstance& secret, std::size_t k,
                                   const BitString& start,
                                   std::span<const BitString> trace);

// Cardinality relaxation of the level game:
//   phi(k, 0, C) = 0
//   phi(k, m, C) = 1 + min_c  c/C * (m-1)/m * phi(k, m-1, c)
//                         + (C-c)/C * phi(k-1, m, C-c)
// over max(0, C - binom(k+m-1, m)) <= c <= min(C, binom(k+m-1, m-1)), with
// zero-weight branches dropped. Memoized per (k, m) row.
template <typename Value>
class BasicPhiTable {
 public:
  static constexpr std::size_t kMaxTotal = 24;

  Value value(std::size_t k, std::size_t m, std::uint64_t c);
  std::size_t cached_cells() const { return cached_; }

 private:
  std::vector<std::optional<Value>>& row(std::size_t k, std::size_t m);
  Value compute(std::size_t k, std::size_t m, std::uint64_t c);

  std::map<std::pair<std::size_t, std::size_t>,
           std::vector<std::optional<Value>>>
      rows_;
  std::size_t cached_ = 0;
};

using PhiTable = BasicPhiTable<double>;
using ExactPhiTable = BasicPhiTable<Rational>;

double phi_cardinality_dp(std::size_t k, std::size_t m, std::uint64_t c);

// A family of k-subsets of {0..positions-1}, each a bit mask.
struct SetFamily {
  std::size_t positions = 0;
  std::size_t k = 0;
  std::vector<std::uint32_t> sets;
};

SetFamily make_family(std::size_t positions, std::size_t k,
                      const std::vector<std::vector<std::size_t>>& sets);
SetFamily full_family(std::size_t positions, std::size_t k);

// Optimal expected number of one-bit queries to leave the level when the
// significant set is uniform over the family and the next significant bit is
// uniform over its complement. Exhaustive policy search; positions <= 7.
template <typename Value>
class BasicLevelGame {
 public:
  static constexpr std::size_t kMaxPositions = 7;

  Value solve(const SetFamily& family);
  std::size_t cached_states() const { return memo_.size(); }

 private:
  Value solve_reduced(std::size_t n, std::size_t k,
                      std::vector<std::uint32_t> sets);

  std::unordered_map<std::string, Value> memo_;
};

using LevelGame = BasicLevelGame<double>;
using ExactLevelGame = BasicLevelGame<Rational>;

double exact_level_game(std::size_t positions, std::size_t k,
                        const std::vector<std::vector<std::size_t>>& family);

// One representative (the numerically smallest subset-index mask) of every
// orbit of non-empty families under permutations of the positions.
std::vector<SetFamily> canonical_families(std::size_t positions, std::size_t k);

// eps * (k+m) * (1 - log2(B) / (2m)).
double phi_closed_form(std::size_t k, std::size_t m, double b, double eps);

// The seven summands of the induction remainder R(p), with the convention
// that the p-weighted group vanishes at p = 0 and the (1-p)-weighted group at
// p = 1.
struct RemainderTerms {
  double x1 = 0, a1 = 0, y1 = 0, z = 0, x2 = 0, a2 = 0, y2 = 0;
  double total() const { return x1 + a1 + y1 + z + x2 + a2 + y2; }
};

RemainderTerms induction_remainder(std::size_t k, std::size_t m, double log_b,
                                   double p, double eps);

struct InductionGrid {
  std::vector<std::size_t> k_values;
  std::vector<std::size_t> m_values;
  std::vector<double> logb_fractions;  // log2(B) = fraction * 2m
  std::size_t p_points = 4096;         // includes both endpoints
  std::size_t max_total = 200;         // cells with k + m above are dropped

  static InductionGrid sampled(std::size_t k_max, std::size_t m_max,
                               std::size_t max_total,
                               std::size_t logb_steps = 64,
                               std::size_t p_points = 4096);
};

struct InductionCell {
  std::size_t k = 0;
  std::size_t m = 0;
  double log_b = 0.0;
  double p_min = 0.0;
  double p_max = 0.0;
  double max_r = 0.0;
  double argmax_p = 0.0;
  bool skipped = false;
  std::string note;
};

struct InductionReport {
  double eps = 0.0;
  std::vector<InductionCell> cells;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
  double max_r = 0.0;
  bool pass = false;  // max R(p) <= 1 over every evaluated cell
};

// Numerical sweep of R(p) over [p_min, p_max]. Evidence, not a proof.
InductionReport verify_induction_step(const InductionGrid& grid, double eps);

}  // namespace lolab

#endif  // LOLAB_CORE_BOUNDS_HPP_
