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

#ifndef LOLAB_CORE_LO_CORE_HPP_
#define LOLAB_CORE_LO_CORE_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bitstring.hpp"
#include "rng.hpp"

namespace lolab {

// Significance order. order()[j] is the 0-based position of the (j+1)-th most
// significant bit. External formats are 1-based.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::size_t> order);

  static Permutation identity(std::size_t n);
  static Permutation from_one_based(const std::vector<std::size_t>& order);
  static Permutation uniform(std::size_t n, Rng& rng);

  std::size_t size() const { return order_.size(); }
  std::size_t operator[](std::size_t j) const { return order_[j]; }
  const std::vector<std::size_t>& order() const { return order_; }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> order_;
};

// The generalized LeadingOnes function LO_{z,sigma}.
class LoInstance {
 public:
  LoInstance(BitString target, Permutation order);

  static LoInstance identity(std::size_t n);

  std::size_t n() const { return target_.size(); }
  const BitString& target() const { return target_; }
  const Permutation& order() const { return order_; }

  // Length of the longest prefix, in significance order, on which x agrees
  // with the target.
  std::size_t fitness(const BitString& x) const;

  friend bool operator==(const LoInstance&, const LoInstance&) = default;

 private:
  BitString target_;
  Permutation order_;
};

std::size_t lo_value(const LoInstance& inst, const BitString& x);

// z and sigma uniform and independent.
LoInstance random_instance(std::size_t n, Rng& rng);

struct PrefixEntry {
  std::size_t position;  // 0-based
  bool value;
  friend bool operator==(const PrefixEntry&, const PrefixEntry&) = default;
};

// White-box accessor: the k most significant positions with their target
// values. Never routed through an oracle.
std::vector<PrefixEntry> significant_prefix(const LoInstance& inst,
                                            std::size_t k);

// Instance files:
//   n=<int>
//   z=<bitstring>
//   sigma=<space-separated 1-based permutation>
LoInstance parse_instance(std::string_view text);
std::string format_instance(const LoInstance& inst);
LoInstance load_instance(const std::filesystem::path& path);
void save_instance(const LoInstance& inst, const std::filesystem::path& path);

enum class Ordering { Less, Equal, Greater };

std::string_view to_string(Ordering o);

// Strictly increasing map applied to the fitness levels 0..n before values
// are compared. Ranking-based algorithms must not be able to tell it apart
// from the identity.
class FitnessTransform {
 public:
  explicit FitnessTransform(std::vector<double> values);
  static FitnessTransform identity(std::size_t n);

  std::size_t levels() const { return values_.size(); }
  double operator()(std::size_t level) const { return values_[level]; }

 private:
  std::vector<double> values_;
};

// Result of a metered evaluation. Comparable, but the numeric value is only
// reachable through WhiteBox.
class Score {
 public:
  friend std::partial_ordering operator<=>(const Score& a, const Score& b) {
    return a.value_ <=> b.value_;
  }
  friend bool operator==(const Score& a, const Score& b) {
    return a.value_ == b.value_;
  }

 private:
  friend class CountingOracle;
  friend struct WhiteBox;
  Score(double value, std::size_t level) : value_(value), level_(level) {}

  double value_;
  std::size_t level_;
};

// Per-level charge key for the initial query.
inline constexpr int kInitLevel = -1;

// Query-metered access to one instance. Every evaluate() is one query and is
// charged to the best level seen before the query was issued; the very first
// query is charged to kInitLevel.
class CountingOracle {
 public:
  explicit CountingOracle(const LoInstance& inst,
                          std::optional<FitnessTransform> transform = {});

  Score evaluate(const BitString& x);

  // Charges one query for `candidate`; the incumbent is assumed to have
  // been charged when it was sampled. Returns f(candidate) vs f(incumbent).
  Ordering compare(const BitString& incumbent, const BitString& candidate);

  std::uint64_t query_count() const { return query_count_; }
  std::optional<std::size_t> best_level() const { return best_level_; }
  const std::map<int, std::uint64_t>& per_level() const { return per_level_; }
  bool optimum_found() const { return optimum_found_; }
  const LoInstance& instance() const { return *inst_; }

  // Uncharged transformed fitness. Diagnostics and tests only; strategies
  // reach it only if someone hands them the oracle.
  double white_box_value(const BitString& x) const;

 private:
  void check_length(const BitString& x) const;

  const LoInstance* inst_;
  std::optional<FitnessTransform> transform_;
  std::uint64_t query_count_ = 0;
  std::optional<std::size_t> best_level_;
  std::map<int, std::uint64_t> per_level_;
  bool optimum_found_ = false;
};

struct WhiteBox {
  static std::size_t level(const Score& s) { return s.level_; }
  static double value(const Score& s) { return s.value_; }
};

}  // namespace lolab

#endif  // LOLAB_CORE_LO_CORE_HPP_
