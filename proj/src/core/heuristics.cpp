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

#include "heuristics.hpp"

#include <bit>
#include <cmath>

#include "errors.hpp"

namespace lolab {

namespace {

std::size_t ceil_log2(std::size_t n) {
  return n <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(n - 1));
}

// Visits the positions of a Bernoulli(1/n) flip mask in increasing order by
// drawing geometric gaps.
template <typename Visit>
void for_each_mutation_position(std::size_t n, Rng& rng, Visit visit) {
  if (n == 1) {
    visit(std::size_t{0});
    return;
  }
  const double log_keep = std::log1p(-1.0 / static_cast<double>(n));
  std::size_t pos = 0;
  while (pos < n) {
    const double u = 1.0 - rng.uniform01();  // (0, 1]
    const double gap = std::floor(std::log(u) / log_keep);
    if (gap >= static_cast<double>(n - pos)) break;
    pos += static_cast<std::size_t>(gap);
    visit(pos);
    ++pos;
  }
}

}  // namespace

BitString rls_step(const BitString& x, Rng& rng) {
  return x.flipped(static_cast<std::size_t>(rng.uniform_below(x.size())));
}

BitString oea_step(const BitString& x, Rng& rng) {
  BitString y = x;
  for_each_mutation_position(x.size(), rng, [&](std::size_t i) { y.flip(i); });
  return y;
}

Relabeling Relabeling::onto(const LoInstance& inst) {
  BitString mask = inst.target();
  for (std::size_t i = 0; i < mask.size(); ++i) mask.flip(i);
  return {inst.order(), std::move(mask)};
}

BitString Relabeling::point(const BitString& x) const {
  if (x.size() != positions.size() || mask.size() != positions.size()) {
    throw InputError("relabeling dimension mismatch");
  }
  BitString y(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    const auto p = positions[j];
    y.set(p, x.test(j) != mask.test(p));
  }
  return y;
}

BitString RlsStrategy::initial(std::size_t n, Rng& rng) {
  BitString x = BitString::uniform(n, rng);
  return relabel_ ? relabel_->point(x) : x;
}

BitString RlsStrategy::propose(const BitString& incumbent, Rng& rng) {
  if (!relabel_) return rls_step(incumbent, rng);
  const auto j = static_cast<std::size_t>(rng.uniform_below(incumbent.size()));
  return incumbent.flipped(relabel_->position(j));
}

BitString OeaStrategy::initial(std::size_t n, Rng& rng) {
  BitString x = BitString::uniform(n, rng);
  return relabel_ ? relabel_->point(x) : x;
}

BitString OeaStrategy::propose(const BitString& incumbent, Rng& rng) {
  if (!relabel_) return oea_step(incumbent, rng);
  BitString y = incumbent;
  for_each_mutation_position(incumbent.size(), rng, [&](std::size_t j) {
    y.flip(relabel_->position(j));
  });
  return y;
}

void MemlogStrategy::reset(std::size_t n) {
  n_ = n;
  markers_ = BitString(n);
  halving_ = false;
  record_.clear();
}

BitString MemlogStrategy::initial(std::size_t n, Rng& rng) {
  reset(n);
  return BitString::uniform(n, rng);
}

std::vector<std::size_t> MemlogStrategy::candidates() const {
  std::vector<std::size_t> pool = markers_.zeros();
  for (bool first_half : record_) {
    const std::size_t half = (pool.size() + 1) / 2;
    if (first_half) {
      pool.resize(half);
    } else {
      pool.erase(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(half));
    }
  }
  return pool;
}

BitString MemlogStrategy::propose(const BitString& incumbent, Rng&) {
  if (incumbent.size() != n_) reset(incumbent.size());
  BitString y = incumbent;
  if (halving_) {
    const auto pool = candidates();
    if (pool.size() < 2) {
      throw std::logic_error("memlog: candidate set too small during halving");
    }
    const std::size_t half = (pool.size() + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) y.flip(pool[i]);
    return y;
  }
  for (auto p : markers_.zeros()) y.flip(p);
  return y;
}

void MemlogStrategy::observe(Ordering outcome, bool) {
  // Any accepted improvement leaves l < f(x): the new x is better than one
  // whose f(x) leading positions already contained every marked one.
  if (outcome == Ordering::Greater) {
    halving_ = true;
    record_.clear();
  } else if (!halving_) {
    // Probe: Less means an unmarked leading position exists. Equal cannot
    // happen while an unmarked position exists.
    halving_ = outcome == Ordering::Less;
    record_.clear();
  } else {
    record_.push_back(outcome == Ordering::Less);
  }
  if (!halving_) return;
  const auto pool = candidates();
  if (pool.size() == 1) {
    // Must be a correct leading position: mark it, no query needed.
    markers_.set(pool.front(), true);
    halving_ = false;
    record_.clear();
  }
}

std::size_t MemlogStrategy::budget_for(std::size_t n) {
  return n + ceil_log2(n) + 2;
}

std::optional<std::size_t> MemlogStrategy::state_budget_bits(
    std::size_t n) const {
  return budget_for(n);
}

// Layout: markers (n bits) | phase (1 bit) | record field (ceil_log2(n) + 1
// bits: the record bits, then a terminating 1).
StrategyState MemlogStrategy::save_state() const {
  const std::size_t field = ceil_log2(n_) + 1;
  if (record_.size() >= field) {
    throw StateBudgetExceeded("memlog: halving record longer than ceil(log2 n)");
  }
  StrategyState state;
  state.bit_length = n_ + 1 + field;
  state.bytes.assign((state.bit_length + 7) / 8, 0);
  auto put = [&](std::size_t i, bool v) {
    if (v) state.bytes[i / 8] |= static_cast<std::uint8_t>(1U << (i % 8));
  };
  for (std::size_t i = 0; i < n_; ++i) put(i, markers_.test(i));
  put(n_, halving_);
  for (std::size_t i = 0; i < record_.size(); ++i) put(n_ + 1 + i, record_[i]);
  put(n_ + 1 + record_.size(), true);
  return state;
}

void MemlogStrategy::load_state(const StrategyState& state) {
  // The payload length n + ceil(log2 n) + 2 is strictly increasing in n.
  std::size_t n = 0;
  while (budget_for(n) < state.bit_length) ++n;
  if (budget_for(n) != state.bit_length || (n_ != 0 && n != n_) ||
      state.bytes.size() != (state.bit_length + 7) / 8) {
    throw InputError("memlog: state size does not match dimension");
  }
  n_ = n;
  const std::size_t field = ceil_log2(n_) + 1;
  auto get = [&](std::size_t i) {
    return ((state.bytes[i / 8] >> (i % 8)) & 1U) != 0;
  };
  BitString markers(n_);
  for (std::size_t i = 0; i < n_; ++i) markers.set(i, get(i));
  const bool halving = get(n_);
  std::size_t sentinel = field;
  for (std::size_t i = field; i-- > 0;) {
    if (get(n_ + 1 + i)) {
      sentinel = i;
      break;
    }
  }
  if (sentinel == field) throw InputError("memlog: record sentinel missing");
  std::vector<bool> record(sentinel);
  for (std::size_t i = 0; i < sentinel; ++i) record[i] = get(n_ + 1 + i);
  markers_ = std::move(markers);
  halving_ = halving;
  record_ = std::move(record);
}

std::unique_ptr<OnePlusOneStrategy> make_strategy(std::string_view name) {
  if (name == "rls") return std::make_unique<RlsStrategy>();
  if (name == "oea") return std::make_unique<OeaStrategy>();
  if (name == "memlog") return std::make_unique<MemlogStrategy>();
  throw UnknownAlgorithm(std::string(name));
}

std::vector<std::string> strategy_names() { return {"rls", "oea", "memlog"}; }

RunRecord memlog_run(const LoInstance& inst, std::uint64_t seed,
                     std::optional<std::uint64_t> budget) {
  MemlogStrategy strategy;
  RunOptions options;
  options.budget = budget;
  return run_one_plus_one(strategy, inst, seed, options);
}

}  // namespace lolab
