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

#include "bounds.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <type_traits>

#include "errors.hpp"

namespace lolab {

namespace {

constexpr std::size_t kExactInfoLimit = 64;

__extension__ typedef unsigned __int128 u128;

std::uint32_t compress_out(std::uint32_t mask, std::size_t b) {
  const std::uint32_t low = (std::uint32_t{1} << b) - 1;
  return (mask & low) | ((mask >> 1) & ~low);
}

template <typename Value>
Value ratio(std::uint64_t a, std::uint64_t b) {
  if constexpr (std::is_same_v<Value, Rational>) {
    return Rational(boost::multiprecision::cpp_int(a),
                    boost::multiprecision::cpp_int(b));
  } else {
    return static_cast<Value>(a) / static_cast<Value>(b);
  }
}

}  // namespace

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  u128 r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;  // exact: r * (n-k+i) is divisible by i
    if (r > std::numeric_limits<std::uint64_t>::max())
      throw InputError("binomial coefficient overflows 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

Rational available_information_exact(std::size_t k, std::size_t m,
                                     std::uint64_t c) {
  if (k + m > kExactInfoLimit)
    throw InputError("exact information needs k + m <= 64");
  const std::uint64_t total = binomial(k + m, m);
  if (c == 0 || c > total)
    throw InputError("configuration count must lie in [1, binom(k+m, m)]");
  return ratio<Rational>(total, c);
}

double available_information(std::size_t k, std::size_t m, std::uint64_t c) {
  if (c == 0) throw InputError("configuration count must be positive");
  if (k + m <= kExactInfoLimit) {
    return static_cast<double>(available_information_exact(k, m, c));
  }
  const double log_total = std::lgamma(double(k + m) + 1) -
                           std::lgamma(double(k) + 1) -
                           std::lgamma(double(m) + 1);
  return std::exp(log_total - std::log(double(c)));
}

Rational InfoState::information() const {
  return available_information_exact(k, m, configurations);
}

double InfoState::information_value() const {
  return available_information(k, m, configurations);
}

// ---- level entry ----------------------------------------------------------

LevelEntryReport level_entry_information_check(std::size_t n, std::size_t k,
                                               const EntryMap& entry_map) {
  if (n == 0 || n > 14) throw InputError("level entry check needs 1 <= n <= 14");
  if (k > n) throw InputError("k must not exceed n");
  if (!entry_map) throw InputError("entry map is empty");

  const std::size_t m = n - k;
  std::unordered_map<BitString, std::uint64_t, BitStringHash> images;
  LevelEntryReport report;

  KConfiguration config;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != k) continue;
    config.positions.clear();
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) config.positions.push_back(i);
    for (std::uint32_t u = 0; u < (std::uint32_t{1} << k); ++u) {
      config.values.assign(k, false);
      for (std::size_t i = 0; i < k; ++i) config.values[i] = (u >> i & 1) != 0;
      BitString y = entry_map(config);
      if (y.size() != n) throw InputError("entry map returned wrong length");
      for (std::size_t i = 0; i < k; ++i) {
        if (y[config.positions[i]] != config.values[i])
          throw InputError("entry point does not have fitness >= k");
      }
      ++images[std::move(y)];
      ++report.configurations;
    }
  }

  // B = binom(n, k) / C; compare binom(n, k) <= 2^(m+1) * C without division.
  const std::uint64_t total = binomial(n, k);
  for (const auto& [point, count] : images) {
    if (total <= (std::uint64_t{1} << (m + 1)) * count)
      report.favourable += count;
  }
  report.images = images.size();
  report.probability =
      double(report.favourable) / double(report.configurations);
  report.holds = 2 * report.favourable >= report.configurations;
  return report;
}

// ---- one-bit simulation ---------------------------------------------------

OneBitSimulation onebit_simulation(const LoInstance& secret, std::size_t k,
                                   const BitString& start,
                                   std::span<const BitString> trace) {
  const std::size_t n = secret.n();
  if (start.size() != n) throw InputError("start point has wrong length");
  if (secret.fitness(start) != k)
    throw InputError("trace does not start at fitness k");

  enum class Tag : unsigned char { Unknown, Significant, Insignificant, Next };
  std::vector<Tag> tag(n, Tag::Unknown);
  OneBitSimulation sim;
  bool knowledge = true;

  for (const BitString& y : trace) {
    if (y.size() != n) throw InputError("trace query has wrong length");
    ++sim.original_queries;
    const std::size_t fy = secret.fitness(y);
    const Ordering truth = fy < k    ? Ordering::Less
                           : fy == k ? Ordering::Equal
                                     : Ordering::Greater;
    const std::vector<std::size_t> diff = (y ^ start).ones();

    for (std::size_t b : diff) {
      if (tag[b] == Tag::Significant) break;
      if (tag[b] != Tag::Unknown) continue;
      BitString q = start.flipped(b);
      const std::size_t fq = secret.fitness(q);
      sim.queries.push_back(std::move(q));
      if (fq < k) {
        tag[b] = Tag::Significant;
        break;
      }
      if (fq > k) {
        tag[b] = Tag::Next;
        sim.left_level = true;
        break;
      }
      tag[b] = Tag::Insignificant;
      ++sim.insignificant_tested;
    }

    // Leaving the level ends the one-bit run, no later than the original.
    if (sim.left_level) break;

    // What the one-bit run can deduce about this query from its own answers.
    std::optional<Ordering> deduced;
    bool all_insignificant = true;
    for (std::size_t b : diff) {
      if (tag[b] == Tag::Significant) {
        deduced = Ordering::Less;
        break;
      }
      if (tag[b] != Tag::Insignificant) all_insignificant = false;
    }
    if (!deduced && all_insignificant) deduced = Ordering::Equal;
    if (!deduced || *deduced != truth) knowledge = false;
    if (truth == Ordering::Greater) break;  // original left, simulation did not
  }

  sim.length_certified = sim.queries.size() <= sim.original_queries + (n - k);
  sim.knowledge_certified = knowledge;
  return sim;
}

// ---- cardinality DP ---------------------------------------------------------

template <typename Value>
std::vector<std::optional<Value>>& BasicPhiTable<Value>::row(std::size_t k,
                                                             std::size_t m) {
  auto [it, inserted] = rows_.try_emplace({k, m});
  if (inserted) it->second.resize(binomial(k + m, m) + 1);
  return it->second;
}

template <typename Value>
Value BasicPhiTable<Value>::value(std::size_t k, std::size_t m,
                                  std::uint64_t c) {
  if (k + m > kMaxTotal) throw InputError("phi table needs k + m <= 24");
  if (c == 0 || c > binomial(k + m, m))
    throw InputError("C must lie in [1, binom(k+m, m)]");
  if (m == 0) return Value(0);
  auto& r = row(k, m);
  if (r[c]) return *r[c];
  return compute(k, m, c);
}

template <typename Value>
Value BasicPhiTable<Value>::compute(std::size_t k, std::size_t m,
                                    std::uint64_t c) {
  const std::size_t total = k + m;
  const std::uint64_t out_cap = binomial(total - 1, m);    // next bit insignificant
  const std::uint64_t in_cap = binomial(total - 1, m - 1);   // next bit significant
  const std::uint64_t lo = c > out_cap ? c - out_cap : 0;
  const std::uint64_t hi = std::min(c, in_cap);

  std::vector<std::optional<Value>>* shrink = m > 1 ? &row(k, m - 1) : nullptr;
  std::vector<std::optional<Value>>* drop = k > 0 ? &row(k - 1, m) : nullptr;
  const Value keep = ratio<Value>(m - 1, m);

  std::optional<Value> best;
  for (std::uint64_t j = lo; j <= hi; ++j) {
    Value cost(0);
    if (j > 0 && shrink) {
      auto& slot = (*shrink)[j];
      const Value sub = slot ? *slot : compute(k, m - 1, j);
      cost += ratio<Value>(j, c) * keep * sub;
    }
    if (j < c) {
      auto& slot = (*drop)[c - j];
      const Value sub = slot ? *slot : compute(k - 1, m, c - j);
      cost += ratio<Value>(c - j, c) * sub;
    }
    if (!best || cost < *best) best = cost;
  }
  Value result = Value(1) + *best;
  row(k, m)[c] = result;
  ++cached_;
  return result;
}

template class BasicPhiTable<double>;
template class BasicPhiTable<Rational>;

double phi_cardinality_dp(std::size_t k, std::size_t m, std::uint64_t c) {
  PhiTable table;
  return table.value(k, m, c);
}

// ---- exact level game -------------------------------------------------------

SetFamily make_family(std::size_t positions, std::size_t k,
                      const std::vector<std::vector<std::size_t>>& sets) {
  if (positions == 0 || positions > LevelGame::kMaxPositions)
    throw InputError("level game needs 1 <= n' <= 7");
  if (k >= positions) throw InputError("level game needs k < n'");
  if (sets.empty()) throw InputError("family must be non-empty");
  SetFamily f{positions, k, {}};
  for (const auto& s : sets) {
    std::uint32_t mask = 0;
    for (std::size_t p : s) {
      if (p >= positions) throw InputError("set position out of range");
      if (mask >> p & 1) throw InputError("set repeats a position");
      mask |= std::uint32_t{1} << p;
    }
    if (s.size() != k) throw InputError("every set must have exactly k elements");
    f.sets.push_back(mask);
  }
  std::sort(f.sets.begin(), f.sets.end());
  if (std::adjacent_find(f.sets.begin(), f.sets.end()) != f.sets.end())
    throw InputError("family contains a duplicate set");
  return f;
}

SetFamily full_family(std::size_t positions, std::size_t k) {
  if (positions == 0 || positions > LevelGame::kMaxPositions)
    throw InputError("level game needs 1 <= n' <= 7");
  if (k >= positions) throw InputError("level game needs k < n'");
  SetFamily f{positions, k, {}};
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << positions); ++mask)
    if (static_cast<std::size_t>(std::popcount(mask)) == k) f.sets.push_back(mask);
  return f;
}

template <typename Value>
Value BasicLevelGame<Value>::solve(const SetFamily& family) {
  if (family.positions == 0 || family.positions > kMaxPositions)
    throw InputError("level game needs 1 <= n' <= 7");
  if (family.k >= family.positions) throw InputError("level game needs k < n'");
  if (family.sets.empty()) throw InputError("family must be non-empty");
  for (std::uint32_t s : family.sets) {
    if (s >> family.positions || std::size_t(std::popcount(s)) != family.k)
      throw InputError("family set is not a k-subset of the positions");
  }
  std::vector<std::uint32_t> sets = family.sets;
  std::sort(sets.begin(), sets.end());
  if (std::adjacent_find(sets.begin(), sets.end()) != sets.end())
    throw InputError("family contains a duplicate set");
  return solve_reduced(family.positions, family.k, std::move(sets));
}

template <typename Value>
Value BasicLevelGame<Value>::solve_reduced(std::size_t n, std::size_t k,
                                           std::vector<std::uint32_t> sets) {
  const std::size_t m = n - k;
  if (m == 0) return Value(0);

  // Relabel positions by descending degree so that families differing only
  // by such a relabeling share a memo entry.
  std::array<std::size_t, 8> degree{};
  for (std::uint32_t s : sets)
    for (std::size_t p = 0; p < n; ++p) degree[p] += s >> p & 1;
  std::array<std::size_t, 8> order{};
  std::iota(order.begin(), order.begin() + n, 0);
  std::stable_sort(order.begin(), order.begin() + n,
                   [&](std::size_t a, std::size_t b) { return degree[a] > degree[b]; });
  std::array<std::size_t, 8> label{};
  for (std::size_t i = 0; i < n; ++i) label[order[i]] = i;
  for (auto& s : sets) {
    std::uint32_t t = 0;
    for (std::size_t p = 0; p < n; ++p)
      if (s >> p & 1) t |= std::uint32_t{1} << label[p];
    s = t;
  }
  std::sort(sets.begin(), sets.end());

  std::string key;
  key.reserve(sets.size() + 2);
  key.push_back(char(n));
  key.push_back(char(k));
  for (std::uint32_t s : sets) key.push_back(char(s));
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  const std::uint64_t size = sets.size();
  std::optional<Value> best;
  std::vector<std::uint32_t> in, out;
  for (std::size_t b = 0; b < n; ++b) {
    in.clear();
    out.clear();
    const std::uint32_t bit = std::uint32_t{1} << b;
    for (std::uint32_t s : sets) {
      if (s & bit) in.push_back(compress_out(s & ~bit, b));
      else out.push_back(compress_out(s, b));
    }
    Value cost(1);
    if (!in.empty())
      cost += ratio<Value>(in.size(), size) * solve_reduced(n - 1, k - 1, in);
    if (!out.empty() && m > 1)
      cost += ratio<Value>(out.size(), size) * ratio<Value>(m - 1, m) *
              solve_reduced(n - 1, k, out);
    if (!best || cost < *best) best = cost;
  }
  memo_.emplace(std::move(key), *best);
  return *best;
}

template class BasicLevelGame<double>;
template class BasicLevelGame<Rational>;

double exact_level_game(std::size_t positions, std::size_t k,
                        const std::vector<std::vector<std::size_t>>& family) {
  LevelGame game;
  return game.solve(make_family(positions, k, family));
}

std::vector<SetFamily> canonical_families(std::size_t positions,
                                          std::size_t k) {
  const SetFamily all = full_family(positions, k);
  const std::size_t s = all.sets.size();
  if (s > 24) throw InputError("too many k-subsets to enumerate families");

  std::unordered_map<std::uint32_t, std::size_t> index;
  for (std::size_t i = 0; i < s; ++i) index[all.sets[i]] = i;

  // Subset-index permutation induced by every position permutation.
  std::vector<std::vector<std::size_t>> actions;
  std::vector<std::size_t> perm(positions);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<std::size_t> act(s);
    for (std::size_t i = 0; i < s; ++i) {
      std::uint32_t t = 0;
      for (std::size_t p = 0; p < positions; ++p)
        if (all.sets[i] >> p & 1) t |= std::uint32_t{1} << perm[p];
      act[i] = index.at(t);
    }
    actions.push_back(std::move(act));
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<bool> seen(std::size_t{1} << s, false);
  std::vector<SetFamily> result;
  for (std::uint32_t f = 1; f < (std::uint32_t{1} << s); ++f) {
    if (seen[f]) continue;
    SetFamily fam{positions, k, {}};
    for (std::size_t i = 0; i < s; ++i)
      if (f >> i & 1) fam.sets.push_back(all.sets[i]);
    result.push_back(std::move(fam));
    for (const auto& act : actions) {
      std::uint32_t g = 0;
      for (std::size_t i = 0; i < s; ++i)
        if (f >> i & 1) g |= std::uint32_t{1} << act[i];
      seen[g] = true;
    }
  }
  return result;
}

// ---- closed form and induction sweep -----------------------------------

double phi_closed_form(std::size_t k, std::size_t m, double b, double eps) {
  if (m == 0) throw InputError("closed form needs m >= 1");
  if (!(b > 0)) throw InputError("information must be positive");
  return eps * double(k + m) * (1.0 - std::log2(b) / (2.0 * double(m)));
}

RemainderTerms induction_remainder(std::size_t k, std::size_t m, double log_b,
                                   double p, double eps) {
  if (m < 2) throw InputError("induction step needs m >= 2");
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("p must lie in [0, 1]");
  const double total = double(k + m);
  const double md = double(m);
  RemainderTerms t;
  if (p > 0.0) {
    const double shift = std::log2(md / total / p);
    const double l1 = log_b + shift;
    const double inner = 1.0 - l1 / (2.0 * (md - 1.0));
    t.x1 = p * eps * (total - 1.0) / md * inner;
    t.a1 = p * eps * inner;
    t.y1 = p * eps * total * shift / (2.0 * md);
    t.z = p * eps * total * shift / (2.0 * md * (md - 1.0));
    t.x2 = p * eps * total * log_b / (2.0 * md * (md - 1.0));
  }
  if (p < 1.0) {
    if (k == 0) throw InputError("p < 1 is infeasible when k = 0");
    const double shift = std::log2(double(k) / total / (1.0 - p));
    t.a2 = (1.0 - p) * eps * (1.0 - (log_b + shift) / (2.0 * md));
    t.y2 = (1.0 - p) * eps * total * shift / (2.0 * md);
  }
  return t;
}

InductionGrid InductionGrid::sampled(std::size_t k_max, std::size_t m_max,
                                     std::size_t max_total,
                                     std::size_t logb_steps,
                                     std::size_t p_points) {
  if (m_max < 2) throw InputError("m_max must be at least 2");
  if (logb_steps == 0 || p_points == 0)
    throw InputError("grid resolution must be positive");
  // Dense at the small end, then geometric, always ending at the maximum.
  auto ladder = [](std::size_t from, std::size_t to) {
    std::vector<std::size_t> v;
    std::size_t x = from;
    for (; x <= to && x <= 8; ++x) v.push_back(x);
    for (; x < to; x += x / 2) v.push_back(x);
    if (v.empty() || v.back() != to) v.push_back(to);
    return v;
  };
  InductionGrid grid;
  grid.k_values = ladder(0, k_max);
  grid.m_values = ladder(2, m_max);
  for (std::size_t j = 0; j < logb_steps; ++j)
    grid.logb_fractions.push_back(double(j) / double(logb_steps));
  grid.p_points = p_points;
  grid.max_total = max_total;
  return grid;
}

InductionReport verify_induction_step(const InductionGrid& grid, double eps) {
  if (!(eps > 0.0)) throw InputError("eps must be positive");
  if (grid.p_points == 0) throw InputError("p_points must be positive");

  // (k, m) cells: the grid product plus, per m, the boundary k = max_total - m.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  const std::size_t k_top = grid.k_values.empty() ? 0 : grid.k_values.back();
  for (std::size_t m : grid.m_values) {
    for (std::size_t k : grid.k_values)
      if (k + m <= grid.max_total) pairs.emplace_back(k, m);
    if (m <= grid.max_total && grid.max_total - m <= k_top)
      pairs.emplace_back(grid.max_total - m, m);
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  InductionReport report;
  report.eps = eps;
  report.max_r = -std::numeric_limits<double>::infinity();
  for (auto [k, m] : pairs) {
    for (double frac : grid.logb_fractions) {
      InductionCell cell;
      cell.k = k;
      cell.m = m;
      cell.log_b = frac * 2.0 * double(m);
      if (m < 2) {
        cell.skipped = true;
        cell.note = "m < 2";
      } else if (!(cell.log_b >= 0.0) || cell.log_b >= 2.0 * double(m)) {
        cell.skipped = true;
        cell.note = "log2 B outside [0, 2m)";
      } else {
        const double total = double(k + m);
        const double b = std::exp2(cell.log_b);
        cell.p_min = std::max(0.0, 1.0 - b * double(k) / total);
        cell.p_max = std::min(1.0, b * double(m) / total);
        // At B = 1 the interval is the single point m/(k+m); rounding can
        // invert the endpoints by an ulp.
        if (cell.p_min > cell.p_max && cell.p_min - cell.p_max <= 1e-12)
          cell.p_min = cell.p_max;
        if (cell.p_min > cell.p_max) {
          cell.skipped = true;
          cell.note = "empty p interval";
        }
      }
      if (cell.skipped) {
        ++report.skipped;
        report.cells.push_back(std::move(cell));
        continue;
      }
      cell.max_r = -std::numeric_limits<double>::infinity();
      const std::size_t points = cell.p_min == cell.p_max ? 1 : grid.p_points;
      for (std::size_t j = 0; j < points; ++j) {
        double p = points == 1 ? cell.p_min
                               : cell.p_min + (cell.p_max - cell.p_min) *
                                                  double(j) / double(points - 1);
        if (j + 1 == points) p = cell.p_max;
        const double r = induction_remainder(k, m, cell.log_b, p, eps).total();
        if (r > cell.max_r) {
          cell.max_r = r;
          cell.argmax_p = p;
        }
      }
      ++report.evaluated;
      report.max_r = std::max(report.max_r, cell.max_r);
      report.cells.push_back(std::move(cell));
    }
  }
  report.pass = report.evaluated > 0 && report.max_r <= 1.0;
  return report;
}

}  // namespace lolab
