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

#include "lo_core.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

#include "errors.hpp"

namespace lolab {

Permutation::Permutation(std::vector<std::size_t> order)
    : order_(std::move(order)) {
  std::vector<bool> seen(order_.size(), false);
  for (auto p : order_) {
    if (p >= order_.size() || seen[p]) {
      throw InputError("permutation is not a bijection on its index set");
    }
    seen[p] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  return Permutation(std::move(order));
}

Permutation Permutation::from_one_based(const std::vector<std::size_t>& order) {
  std::vector<std::size_t> zero_based;
  zero_based.reserve(order.size());
  for (auto p : order) {
    if (p == 0) throw InputError("1-based permutation contains 0");
    zero_based.push_back(p - 1);
  }
  return Permutation(std::move(zero_based));
}

Permutation Permutation::uniform(std::size_t n, Rng& rng) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Fisher-Yates
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform_below(i));
    std::swap(order[i - 1], order[j]);
  }
  return Permutation(std::move(order));
}

LoInstance::LoInstance(BitString target, Permutation order)
    : target_(std::move(target)), order_(std::move(order)) {
  if (target_.size() == 0) throw InputError("instance dimension must be >= 1");
  if (order_.size() != target_.size()) {
    throw InputError("target and permutation lengths differ");
  }
}

LoInstance LoInstance::identity(std::size_t n) {
  return LoInstance(BitString(n, true), Permutation::identity(n));
}

std::size_t LoInstance::fitness(const BitString& x) const {
  if (x.size() != n()) {
    throw InputError("search point length " + std::to_string(x.size()) +
                     " does not match dimension " + std::to_string(n()));
  }
  const auto& order = order_.order();
  std::size_t i = 0;
  while (i < order.size() && x.test(order[i]) == target_.test(order[i])) ++i;
  return i;
}

std::size_t lo_value(const LoInstance& inst, const BitString& x) {
  return inst.fitness(x);
}

LoInstance random_instance(std::size_t n, Rng& rng) {
  if (n == 0) throw InputError("instance dimension must be >= 1");
  BitString z = BitString::uniform(n, rng);
  Permutation sigma = Permutation::uniform(n, rng);
  return LoInstance(std::move(z), std::move(sigma));
}

std::vector<PrefixEntry> significant_prefix(const LoInstance& inst,
                                            std::size_t k) {
  if (k > inst.n()) throw InputError("prefix length exceeds dimension");
  std::vector<PrefixEntry> out;
  out.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    const auto pos = inst.order()[j];
    out.push_back({pos, inst.target().test(pos)});
  }
  return out;
}

namespace {

std::string_view trim_right(std::string_view s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::string_view expect_key(std::string_view line, std::string_view key) {
  line = trim_right(line);
  if (line.size() < key.size() + 1 || line.substr(0, key.size()) != key ||
      line[key.size()] != '=') {
    throw InputError("instance file: expected '" + std::string(key) + "=' line");
  }
  return line.substr(key.size() + 1);
}

std::size_t parse_size(std::string_view s, const char* what) {
  std::size_t value = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end || s.empty()) {
    throw InputError(std::string("instance file: malformed ") + what);
  }
  return value;
}

}  // namespace

LoInstance parse_instance(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    lines.push_back(text.substr(0, nl));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  while (!lines.empty() && trim_right(lines.back()).empty()) lines.pop_back();
  if (lines.size() != 3) {
    throw InputError("instance file: expected exactly 3 lines (n, z, sigma)");
  }

  const std::size_t n = parse_size(expect_key(lines[0], "n"), "n");
  if (n == 0) throw InputError("instance file: n must be >= 1");
  const auto z_text = expect_key(lines[1], "z");
  if (z_text.size() != n) throw InputError("instance file: |z| != n");
  BitString z = BitString::from_string(z_text);

  std::vector<std::size_t> sigma;
  auto rest = expect_key(lines[2], "sigma");
  while (!rest.empty()) {
    const auto sp = rest.find(' ');
    const auto token = rest.substr(0, sp);
    if (token.empty()) throw InputError("instance file: malformed sigma");
    sigma.push_back(parse_size(token, "sigma entry"));
    if (sp == std::string_view::npos) break;
    rest.remove_prefix(sp + 1);
    if (rest.empty()) throw InputError("instance file: malformed sigma");
  }
  if (sigma.size() != n) throw InputError("instance file: |sigma| != n");
  return LoInstance(std::move(z), Permutation::from_one_based(sigma));
}

std::string format_instance(const LoInstance& inst) {
  std::ostringstream out;
  out << "n=" << inst.n() << "\n";
  out << "z=" << inst.target().to_string() << "\n";
  out << "sigma=";
  for (std::size_t j = 0; j < inst.n(); ++j) {
    if (j != 0) out << ' ';
    out << inst.order()[j] + 1;
  }
  out << "\n";
  return out.str();
}

LoInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read instance file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

void save_instance(const LoInstance& inst, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write instance file " + path.string());
  out << format_instance(inst);
  if (!out) throw IoError("write failed for " + path.string());
}

std::string_view to_string(Ordering o) {
  switch (o) {
    case Ordering::Less:
      return "less";
    case Ordering::Equal:
      return "equal";
    case Ordering::Greater:
      return "greater";
  }
  return "?";
}

FitnessTransform::FitnessTransform(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.empty()) throw InputError("fitness transform has no levels");
  for (std::size_t i = 1; i < values_.size(); ++i) {
    if (!(values_[i - 1] < values_[i])) {
      throw InputError("fitness transform is not strictly increasing");
    }
  }
}

FitnessTransform FitnessTransform::identity(std::size_t n) {
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i <= n; ++i) values[i] = static_cast<double>(i);
  return FitnessTransform(std::move(values));
}

CountingOracle::CountingOracle(const LoInstance& inst,
                               std::optional<FitnessTransform> transform)
    : inst_(&inst), transform_(std::move(transform)) {
  if (transform_ && transform_->levels() != inst.n() + 1) {
    throw InputError("fitness transform must cover levels 0..n");
  }
}

void CountingOracle::check_length(const BitString& x) const {
  if (x.size() != inst_->n()) {
    throw InputError("query length " + std::to_string(x.size()) +
                     " does not match dimension " + std::to_string(inst_->n()));
  }
}

double CountingOracle::white_box_value(const BitString& x) const {
  check_length(x);
  const auto level = inst_->fitness(x);
  return transform_ ? (*transform_)(level) : static_cast<double>(level);
}

Score CountingOracle::evaluate(const BitString& x) {
  check_length(x);
  const auto level = inst_->fitness(x);
  const int charged =
      best_level_ ? static_cast<int>(*best_level_) : kInitLevel;
  ++per_level_[charged];
  ++query_count_;
  if (!best_level_ || level > *best_level_) best_level_ = level;
  if (level == inst_->n()) optimum_found_ = true;
  return Score(transform_ ? (*transform_)(level) : static_cast<double>(level),
               level);
}

Ordering CountingOracle::compare(const BitString& incumbent,
                                 const BitString& candidate) {
  check_length(incumbent);
  const double base = white_box_value(incumbent);
  const Score s = evaluate(candidate);
  const double v = WhiteBox::value(s);
  if (v < base) return Ordering::Less;
  if (v > base) return Ordering::Greater;
  return Ordering::Equal;
}

}  // namespace lolab
