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

#include "elitist.hpp"

#include <algorithm>
#include <numeric>

#include "errors.hpp"

namespace lolab {

BitString OnePlusOneStrategy::initial(std::size_t n, Rng& rng) {
  return BitString::uniform(n, rng);
}

BitString MuLambdaStrategy::initial(std::size_t n, const PopulationView&,
                                    Rng& rng) {
  return BitString::uniform(n, rng);
}

namespace {

void require_fresh(const CountingOracle& oracle) {
  if (oracle.query_count() != 0) {
    throw InputError("runner needs an oracle that has not been queried yet");
  }
}

void require_length(const BitString& x, std::size_t n, const char* who) {
  if (x.size() != n) {
    throw InputError(std::string(who) + " produced a point of length " +
                     std::to_string(x.size()) + ", expected " +
                     std::to_string(n));
  }
}

Ordering order_of(const Score& candidate, const Score& reference) {
  if (candidate < reference) return Ordering::Less;
  if (candidate > reference) return Ordering::Greater;
  return Ordering::Equal;
}

void finish(RunRecord& rec, const CountingOracle& oracle) {
  rec.total_queries = oracle.query_count();
  rec.per_level.assign(oracle.per_level().begin(), oracle.per_level().end());
  rec.hit_optimum = oracle.optimum_found();
}

}  // namespace

RunRecord run_one_plus_one(OnePlusOneStrategy& strategy, CountingOracle& oracle,
                           std::uint64_t seed, const RunOptions& options) {
  require_fresh(oracle);
  const std::size_t n = oracle.instance().n();
  Rng rng(seed);
  RunRecord rec;
  rec.algo = strategy.name();
  rec.n = n;
  rec.seed = seed;

  const auto state_budget = strategy.state_budget_bits(n);
  auto checkpoint = [&] {
    if (!state_budget) return;
    StrategyState state = strategy.save_state();
    if (state.bit_length > *state_budget) {
      throw StateBudgetExceeded(rec.algo + " state uses " +
                                std::to_string(state.bit_length) +
                                " bits, budget is " +
                                std::to_string(*state_budget));
    }
    if (state.bytes.size() != (state.bit_length + 7) / 8) {
      throw StateBudgetExceeded(rec.algo + " state payload size mismatch");
    }
    strategy.load_state(state);
  };
  auto budget_left = [&] {
    return !options.budget || oracle.query_count() < *options.budget;
  };

  checkpoint();
  if (!budget_left()) {
    rec.budget_exhausted = true;
    finish(rec, oracle);
    return rec;
  }

  BitString incumbent = strategy.initial(n, rng);
  require_length(incumbent, n, "strategy initialization");
  Score incumbent_score = oracle.evaluate(incumbent);
  if (options.observer) {
    options.observer({oracle.query_count(), incumbent, incumbent, std::nullopt,
                      true});
  }
  checkpoint();

  while (!oracle.optimum_found()) {
    if (!budget_left()) {
      rec.budget_exhausted = true;
      break;
    }
    BitString offspring = strategy.propose(incumbent, rng);
    require_length(offspring, n, "strategy");
    const Score score = oracle.evaluate(offspring);
    const Ordering outcome = order_of(score, incumbent_score);
    const bool accept =
        outcome == Ordering::Greater ||
        (outcome == Ordering::Equal && options.ties == TieRule::AcceptEqual);
    if (accept) {
      incumbent = offspring;
      incumbent_score = score;
    }
    strategy.observe(outcome, accept);
    if (options.observer) {
      options.observer(
          {oracle.query_count(), offspring, incumbent, outcome, accept});
    }
    checkpoint();
  }
  finish(rec, oracle);
  return rec;
}

RunRecord run_one_plus_one(OnePlusOneStrategy& strategy, const LoInstance& inst,
                           std::uint64_t seed, const RunOptions& options) {
  CountingOracle oracle(inst);
  return run_one_plus_one(strategy, oracle, seed, options);
}

namespace {

struct Member {
  BitString point;
  Score score;
  std::uint64_t stamp;
};

// Dense ranks, 0 = fittest.
std::vector<std::size_t> dense_ranks(const std::vector<Member>& members) {
  std::vector<std::size_t> idx(members.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return members[a].score > members[b].score;
  });
  std::vector<std::size_t> ranks(members.size(), 0);
  std::size_t rank = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i > 0 && members[idx[i]].score < members[idx[i - 1]].score) ++rank;
    ranks[idx[i]] = rank;
  }
  return ranks;
}

struct ViewStorage {
  std::vector<BitString> points;
  std::vector<std::size_t> ranks;

  explicit ViewStorage(const std::vector<Member>& members)
      : ranks(dense_ranks(members)) {
    points.reserve(members.size());
    for (const auto& m : members) points.push_back(m.point);
  }
  PopulationView view() const { return {points, ranks}; }
};

const Member& best_of(const std::vector<Member>& members) {
  return *std::max_element(
      members.begin(), members.end(),
      [](const Member& a, const Member& b) { return a.score < b.score; });
}

}  // namespace

RunRecord run_mu_lambda(MuLambdaStrategy& strategy, CountingOracle& oracle,
                        std::size_t mu, std::size_t lambda, std::uint64_t seed,
                        const MuLambdaOptions& options) {
  if (mu == 0 || lambda == 0) throw InputError("mu and lambda must be >= 1");
  require_fresh(oracle);
  const std::size_t n = oracle.instance().n();
  Rng rng(seed);
  RunRecord rec;
  rec.algo = strategy.name();
  rec.n = n;
  rec.seed = seed;
  auto budget_left = [&] {
    return !options.budget || oracle.query_count() < *options.budget;
  };

  std::vector<Member> population;
  std::uint64_t stamp = 0;
  for (std::size_t i = 0; i < mu; ++i) {
    if (!budget_left()) {
      rec.budget_exhausted = true;
      finish(rec, oracle);
      return rec;
    }
    const ViewStorage sampled(population);
    BitString x = strategy.initial(n, sampled.view(), rng);
    require_length(x, n, "strategy initialization");
    Score s = oracle.evaluate(x);
    population.push_back({std::move(x), s, stamp++});
    if (options.observer) {
      options.observer({oracle.query_count(), population.back().point,
                        best_of(population).point, std::nullopt, true});
    }
    if (oracle.optimum_found()) {
      finish(rec, oracle);
      return rec;
    }
  }
  if (options.on_selection) {
    std::vector<BitString> points;
    for (const auto& m : population) points.push_back(m.point);
    options.on_selection(points);
  }

  while (!oracle.optimum_found()) {
    if (!budget_left()) {
      rec.budget_exhausted = true;
      break;
    }
    const ViewStorage parents(population);
    std::vector<BitString> children =
        strategy.offspring(parents.view(), lambda, rng);
    if (children.size() != lambda) {
      throw InputError("sampler returned " + std::to_string(children.size()) +
                       " offspring, expected " + std::to_string(lambda));
    }
    const Score best_parent = best_of(population).score;

    struct Evaluated {
      std::uint64_t stamp;
      Ordering outcome;
      BitString point;
    };
    std::vector<Member> merged = population;
    std::vector<Evaluated> evaluated;
    for (auto& child : children) {
      if (!budget_left()) {
        rec.budget_exhausted = true;
        break;
      }
      require_length(child, n, "sampler");
      const Score s = oracle.evaluate(child);
      evaluated.push_back({stamp, order_of(s, best_parent), child});
      merged.push_back({std::move(child), s, stamp++});
      if (oracle.optimum_found()) break;
    }

    const ViewStorage merged_view(merged);
    strategy.observe(merged_view.view());

    // Truncation: keep the mu best; among equals the configured side goes
    // first.
    std::stable_sort(merged.begin(), merged.end(),
                     [&](const Member& a, const Member& b) {
                       if (a.score != b.score) return a.score > b.score;
                       return options.ties == TruncationTies::DiscardNewest
                                  ? a.stamp < b.stamp
                                  : a.stamp > b.stamp;
                     });
    merged.erase(merged.begin() + static_cast<std::ptrdiff_t>(mu), merged.end());
    population = std::move(merged);

    // Queries of the round are reported after selection so that `accepted`
    // is known.
    if (options.observer) {
      const BitString& best = best_of(population).point;
      std::uint64_t index = oracle.query_count() - evaluated.size();
      for (const auto& e : evaluated) {
        const bool survived =
            std::any_of(population.begin(), population.end(),
                        [&](const Member& m) { return m.stamp == e.stamp; });
        options.observer({++index, e.point, best, e.outcome, survived});
      }
    }
    if (options.on_selection) {
      std::vector<BitString> points;
      for (const auto& m : population) points.push_back(m.point);
      options.on_selection(points);
    }
    if (rec.budget_exhausted) break;
  }
  finish(rec, oracle);
  return rec;
}

RunRecord run_mu_lambda(MuLambdaStrategy& strategy, const LoInstance& inst,
                        std::size_t mu, std::size_t lambda, std::uint64_t seed,
                        const MuLambdaOptions& options) {
  CountingOracle oracle(inst);
  return run_mu_lambda(strategy, oracle, mu, lambda, seed, options);
}

BitString OnePlusOneAdapter::initial(std::size_t n, const PopulationView&,
                                     Rng& rng) {
  return inner_->initial(n, rng);
}

std::vector<BitString> OnePlusOneAdapter::offspring(
    const PopulationView& population, std::size_t lambda, Rng& rng) {
  if (population.members.size() != 1 || lambda != 1) {
    throw InputError("(1+1) adapter requires mu = lambda = 1");
  }
  return {inner_->propose(population.members[0], rng)};
}

void OnePlusOneAdapter::observe(const PopulationView& merged) {
  if (merged.ranks.size() != 2) return;
  const auto parent = merged.ranks[0];
  const auto child = merged.ranks[1];
  const Ordering outcome = child < parent   ? Ordering::Greater
                           : child == parent ? Ordering::Equal
                                             : Ordering::Less;
  const bool accepted =
      outcome == Ordering::Greater ||
      (outcome == Ordering::Equal && ties_ == TruncationTies::DiscardOldest);
  inner_->observe(outcome, accepted);
}

bool verify_ranking_invariance(const StrategyFactory& factory,
                               const LoInstance& inst,
                               const FitnessTransform& transform,
                               std::uint64_t seed,
                               std::optional<std::uint64_t> budget) {
  if (transform.levels() != inst.n() + 1) {
    throw InputError("fitness transform must cover levels 0..n");
  }
  auto trace = [&](std::optional<FitnessTransform> t) {
    CountingOracle oracle(inst, std::move(t));
    auto strategy = factory(oracle);
    std::vector<BitString> queries;
    RunOptions opts;
    opts.budget = budget;
    opts.observer = [&](const StepEvent& e) { queries.push_back(e.query); };
    run_one_plus_one(*strategy, oracle, seed, opts);
    return queries;
  };
  return trace(std::nullopt) == trace(transform);
}

}  // namespace lolab
