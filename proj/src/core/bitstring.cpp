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

#include "bitstring.hpp"

#include <bit>

#include "errors.hpp"

namespace lolab {

namespace {

constexpr std::size_t word_count(std::size_t n) { return (n + 63) / 64; }

}  // namespace

BitString::BitString(std::size_t n, bool value)
    : size_(n), words_(word_count(n), value ? ~std::uint64_t{0} : 0) {
  if (value && (n & 63) != 0) {
    words_.back() &= (std::uint64_t{1} << (n & 63)) - 1;
  }
}

BitString BitString::from_string(std::string_view bits) {
  BitString out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      out.set(i, true);
    } else if (bits[i] != '0') {
      throw InputError("bit string contains a character other than 0/1");
    }
  }
  return out;
}

BitString BitString::uniform(std::size_t n, Rng& rng) {
  BitString out(n);
  for (auto& w : out.words_) w = rng.next();
  if ((n & 63) != 0) {
    out.words_.back() &= (std::uint64_t{1} << (n & 63)) - 1;
  }
  return out;
}

BitString& BitString::operator^=(const BitString& other) {
  if (other.size_ != size_) {
    throw InputError("bit string length mismatch in xor");
  }
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

std::size_t BitString::count() const {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::size_t BitString::hamming_distance(const BitString& other) const {
  if (other.size_ != size_) {
    throw InputError("bit string length mismatch in hamming distance");
  }
  std::size_t total = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    total += static_cast<std::size_t>(std::popcount(words_[w] ^ other.words_[w]));
  }
  return total;
}

std::vector<std::size_t> BitString::ones() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits != 0) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

std::vector<std::size_t> BitString::zeros() const {
  std::vector<std::size_t> out;
  out.reserve(size_ - count());
  for (std::size_t i = 0; i < size_; ++i) {
    if (!test(i)) out.push_back(i);
  }
  return out;
}

std::string BitString::to_string() const {
  std::string out(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (test(i)) out[i] = '1';
  }
  return out;
}

std::size_t BitStringHash::operator()(const BitString& s) const noexcept {
  std::uint64_t h = mix64(s.size());
  for (auto w : s.words()) h = mix64(h ^ w);
  return static_cast<std::size_t>(h);
}

}  // namespace lolab
