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

#ifndef LOLAB_CORE_ELITIST_HPP_
#define LOLAB_CORE_ELITIST_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bitstring.hpp"
#include "lo_core.hpp"
#include "rng.hpp"

namespace lolab {

// Serialized strategy memory. bit_length is the accounted size; bytes holds
// ceil(bit_length / 8) bytes.
struct StrategyState {
  std::vector<std::uint8_t> bytes;
  std::size_t bit_length = 0;
};

// A (1+1) step rule. It sees the incumbent and the three-way outcome of each
// of its proposals, never a fitness value.
class OnePlusOneStrategy {
 public:
  virtual ~OnePlusOneStrategy() = default;

  virtual std::string name() const = 0;

  // Defaults to a uniform random point.
  virtual BitString initial(std::size_t n, Rng& rng);

  virtual BitString propose(const BitString& incumbent, Rng& rng) = 0;

  // Outcome of the last proposal versus the incumbent it was made from, and
  // whether the runner kept it.
  virtual void observe(Ordering outcome, bool accepted) {
    (void)outcome;
    (void)accepted;
  }

  // Strategies that keep memory across steps declare a budget in bits. The
  // runner then round-trips the state through save/load at every step
  // boundary and rejects oversize states.
  virtual std::optional<std::size_t> state_budget_bits(std::size_t n) const {
    (void)n;
    return std::nullopt;
  }
  virtual StrategyState save_state() const { return {}; }
  virtual void load_state(const StrategyState& state) { (void)state; }
};

enum class TieRule { AcceptEqual, RejectEqual };

struct StepEvent {
  std::uint64_t query_index;  // 1-based
  const BitString& query;
  const BitString& incumbent;       // after selection
  std::optional<Ordering> outcome;  // empty for initialization queries
  bool accepted;
};

using StepObserver = std::function<void(const StepEvent&)>;

struct RunOptions {
  std::optional<std::uint64_t> budget;  // oracle-charged queries
  TieRule ties = TieRule::AcceptEqual;
  StepObserver observer;
};

struct RunRecord {
  std::string algo;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::uint64_t total_queries = 0;
  std::vector<std::pair<int, std::uint64_t>> per_level;
  bool hit_optimum = false;
  bool budget_exhausted = false;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

RunRecord run_one_plus_one(OnePlusOneStrategy& strategy, CountingOracle& oracle,
                           std::uint64_t seed, const RunOptions& options = {});
RunRecord run_one_plus_one(OnePlusOneStrategy& strategy, const LoInstance& inst,
                           std::uint64_t seed, const RunOptions& options = {});

// Population as seen by a (mu+lambda) sampler: members and dense ranks,
// rank 0 being the fittest. Equal fitness <=> equal rank.
struct PopulationView {
  std::span<const BitString> members;
  std::span<const std::size_t> ranks;
};

class MuLambdaStrategy {
 public:
  virtual ~MuLambdaStrategy() = default;

  virtual std::string name() const = 0;

  // i-th initialization point given the points sampled so far.
  virtual BitString initial(std::size_t n, const PopulationView& sampled,
                            Rng& rng);

  virtual std::vector<BitString> offspring(const PopulationView& population,
                                           std::size_t lambda, Rng& rng) = 0;

  // Ranking of parents followed by offspring, before truncation.
  virtual void observe(const PopulationView& merged) { (void)merged; }
};

// Which of several equally-worst points truncation removes first.
enum class TruncationTies { DiscardNewest, DiscardOldest };

struct MuLambdaOptions {
  std::optional<std::uint64_t> budget;
  TruncationTies ties = TruncationTies::DiscardNewest;
  StepObserver observer;  // incumbent = current best member
  // Called after every selection with the surviving population.
  std::function<void(std::span<const BitString>)> on_selection;
};

RunRecord run_mu_lambda(MuLambdaStrategy& strategy, CountingOracle& oracle,
                        std::size_t mu, std::size_t lambda, std::uint64_t seed,
                        const MuLambdaOptions& options = {});
RunRecord run_mu_lambda(MuLambdaStrategy& strategy, const LoInstance& inst,
                        std::size_t mu, std::size_t lambda, std::uint64_t seed,
                        const MuLambdaOptions& options = {});

// Runs a (1+1) rule inside the (mu+lambda) protocol with mu = lambda = 1.
// The rule's outcome is recovered from the merged two-point ranking; `ties`
// must match the truncation rule of the run.
class OnePlusOneAdapter final : public MuLambdaStrategy {
 public:
  OnePlusOneAdapter(OnePlusOneStrategy& inner, TruncationTies ties)
      : inner_(&inner), ties_(ties) {}

  std::string name() const override { return inner_->name(); }
  BitString initial(std::size_t n, const PopulationView& sampled,
                    Rng& rng) override;
  std::vector<BitString> offspring(const PopulationView& population,
                                   std::size_t lambda, Rng& rng) override;
  void observe(const PopulationView& merged) override;

 private:
  OnePlusOneStrategy* inner_;
  TruncationTies ties_;
};

// The oracle handed to the factory is the one the run will use. Shipped
// strategies ignore it; a test strategy may use it to peek.
using StrategyFactory =
    std::function<std::unique_ptr<OnePlusOneStrategy>(const CountingOracle&)>;

// Runs the strategy against f and against transform(f) with the same seed and
// reports whether the two query sequences coincide.
bool verify_ranking_invariance(const StrategyFactory& factory,
                               const LoInstance& inst,
                               const FitnessTransform& transform,
                               std::uint64_t seed,
                               std::optional<std::uint64_t> budget = 1000000);

}  // namespace lolab

#endif  // LOLAB_CORE_ELITIST_HPP_
