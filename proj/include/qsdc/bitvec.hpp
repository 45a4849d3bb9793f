// Copyright 2026 The qsdc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsdc {

/// Fixed-length bit string packed into 64-bit words. Bit i lives in word
/// i / 64 at position i % 64. Messages, codewords and key material all use
/// this representation.
class BitVec {
 public:
  BitVec() = default;

  explicit BitVec(int size) : size_(size), words_((size + 63) / 64, 0) {
    if (size < 0) throw std::invalid_argument("BitVec: negative size");
  }

  static BitVec from_string(const std::string& bits) {
    BitVec v(static_cast<int>(bits.size()));
    for (int i = 0; i < v.size_; ++i) {
      if (bits[i] == '1') {
        v.set(i, true);
      } else if (bits[i] != '0') {
        throw std::invalid_argument("BitVec: character outside {0,1}");
      }
    }
    return v;
  }

  /// Bit i of the result equals bit i of value; size may exceed 64 (upper
  /// bits zero).
  static BitVec from_u64(int size, std::uint64_t value) {
    BitVec v(size);
    if (!v.words_.empty()) {
      v.words_[0] = size >= 64 ? value : (value & v.tail_mask());
    }
    return v;
  }

  int size() const { return size_; }

  bool get(int i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

  void set(int i, bool value) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }

  void flip(int i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  void xor_with(const BitVec& other) {
    if (other.size_ != size_) throw std::invalid_argument("BitVec: size mismatch");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  }

  int popcount() const {
    int total = 0;
    for (std::uint64_t w : words_) total += std::popcount(w);
    return total;
  }

  int hamming_distance(const BitVec& other) const {
    if (other.size_ != size_) throw std::invalid_argument("BitVec: size mismatch");
    int total = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      total += std::popcount(words_[w] ^ other.words_[w]);
    }
    return total;
  }

  bool any() const {
    for (std::uint64_t w : words_) {
      if (w != 0) return true;
    }
    return false;
  }

  /// Value of the bit string read as a little-endian integer. Requires
  /// size <= 64.
  std::uint64_t to_u64() const {
    if (size_ > 64) throw std::logic_error("BitVec: wider than 64 bits");
    return words_.empty() ? 0 : words_[0];
  }

  std::string to_string() const {
    std::string s(size_, '0');
    for (int i = 0; i < size_; ++i) {
      if (get(i)) s[i] = '1';
    }
    return s;
  }

  bool operator==(const BitVec&) const = default;

  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  std::uint64_t tail_mask() const {
    const int rem = size_ & 63;
    return rem == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << rem) - 1;
  }

  int size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace qsdc
