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

#ifndef LOLAB_CORE_HEURISTICS_HPP_
#define LOLAB_CORE_HEURISTICS_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bitstring.hpp"
#include "elitist.hpp"
#include "lo_core.hpp"
#include "rng.hpp"

namespace lolab {

// One uniformly chosen bit flipped.
BitString rls_step(const BitString& x, Rng& rng);

// Every bit flipped independently with probability 1/n. The empty flip mask
// is allowed.
BitString oea_step(const BitString& x, Rng& rng);

// A relabeling of the random choices of an unbiased operator: drawn position
// j becomes positions[j], and a drawn point x becomes y with
// y[positions[j]] = x[j] ^ mask[positions[j]].
struct Relabeling {
  Permutation positions;
  BitString mask;

  // The relabeling that maps the all-ones/identity instance onto `inst`.
  static Relabeling onto(const LoInstance& inst);

  std::size_t position(std::size_t j) const { return positions[j]; }
  BitString point(const BitString& x) const;
};

class RlsStrategy final : public OnePlusOneStrategy {
 public:
  explicit RlsStrategy(std::optional<Relabeling> relabel = std::nullopt)
      : relabel_(std::move(relabel)) {}

  std::string name() const override { return "rls"; }
  BitString initial(std::size_t n, Rng& rng) override;
  BitString propose(const BitString& incumbent, Rng& rng) override;

 private:
  std::optional<Relabeling> relabel_;
};

class OeaStrategy final : public OnePlusOneStrategy {
 public:
  explicit OeaStrategy(std::optional<Relabeling> relabel = std::nullopt)
      : relabel_(std::move(relabel)) {}

  std::string name() const override { return "oea"; }
  BitString initial(std::size_t n, Rng& rng) override;
  BitString propose(const BitString& incumbent, Rng& rng) override;

 private:
  std::optional<Relabeling> relabel_;
};

// (1+1) elitist algorithm with n + ceil(log2 n) + 2 bits of extra memory that
// optimizes LeadingOnes in O(n log n) queries.
//
// Memory: a marker block of n bits whose ones are always among the f(x) most
// significant positions of the incumbent x, a halving record of at most
// ceil(log2 n) outcome bits, and a phase flag.
//
// Probe: flip every unmarked position. If all f(x) leading positions are
// marked this strictly improves x; otherwise it strictly worsens x. Either
// way some correct leading position is now unmarked, so halving starts over
// the unmarked positions. Probes are only needed after a new mark, since any
// accepted improvement already implies an unmarked leading position.
//
// Halving: the candidate set is the unmarked positions narrowed by the
// record. Flip its first ceil(|P0|/2) positions: Less keeps that half, Equal
// keeps the other half, Greater is accepted and restarts halving on all
// unmarked positions. A single remaining candidate is marked at once and
// the next step is a probe.
class MemlogStrategy final : public OnePlusOneStrategy {
 public:
  std::string name() const override { return "memlog"; }
  BitString initial(std::size_t n, Rng& rng) override;
  BitString propose(const BitString& incumbent, Rng& rng) override;
  void observe(Ordering outcome, bool accepted) override;

  std::optional<std::size_t> state_budget_bits(std::size_t n) const override;
  StrategyState save_state() const override;
  void load_state(const StrategyState& state) override;

  static std::size_t budget_for(std::size_t n);

  // White-box views for tests.
  const BitString& marker_block() const { return markers_; }
  const std::vector<bool>& halving_record() const { return record_; }
  bool in_halving() const { return halving_; }
  std::vector<std::size_t> candidates() const;

 private:
  void reset(std::size_t n);

  std::size_t n_ = 0;
  BitString markers_;
  bool halving_ = false;
  std::vector<bool> record_;
};

std::unique_ptr<OnePlusOneStrategy> make_strategy(std::string_view name);
std::vector<std::string> strategy_names();

RunRecord memlog_run(const LoInstance& inst, std::uint64_t seed,
                     std::optional<std::uint64_t> budget = std::nullopt);

}  // namespace lolab

#endif  // LOLAB_CORE_HEURISTICS_HPP_
