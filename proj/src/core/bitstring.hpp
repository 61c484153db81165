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

#ifndef LOLAB_CORE_BITSTRING_HPP_
#define LOLAB_CORE_BITSTRING_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rng.hpp"

namespace lolab {

// Fixed-length bit string packed into 64-bit words. Bits past size() in the
// last word are always zero, so word-wise equality is exact.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t n, bool value = false);

  // Parses a string of '0' and '1' characters; position 0 is the first char.
  static BitString from_string(std::string_view bits);
  static BitString uniform(std::size_t n, Rng& rng);

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool test(std::size_t i) const {
    return ((words_[i >> 6] >> (i & 63)) & 1U) != 0;
  }
  bool operator[](std::size_t i) const { return test(i); }

  void set(std::size_t i, bool value) {
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= bit;
    } else {
      words_[i >> 6] &= ~bit;
    }
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  BitString flipped(std::size_t i) const {
    BitString copy = *this;
    copy.flip(i);
    return copy;
  }

  // In-place XOR with a string of the same length.
  BitString& operator^=(const BitString& other);
  friend BitString operator^(BitString a, const BitString& b) {
    a ^= b;
    return a;
  }

  std::size_t count() const;
  std::size_t hamming_distance(const BitString& other) const;

  // Indices of set (unset) bits in increasing order.
  std::vector<std::size_t> ones() const;
  std::vector<std::size_t> zeros() const;

  std::string to_string() const;
  std::span<const std::uint64_t> words() const { return words_; }

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitStringHash {
  std::size_t operator()(const BitString& s) const noexcept;
};

}  // namespace lolab

#endif  // LOLAB_CORE_BITSTRING_HPP_
