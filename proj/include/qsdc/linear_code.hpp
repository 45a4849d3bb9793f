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

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qsdc/bitvec.hpp"

namespace qsdc {

/// Exact weight statistics of a code, obtained by enumerating all 2^k
/// codewords.
struct WeightStats {
  double mean_weight = 0.0;
  double var_weight = 0.0;
  std::map<int, std::uint64_t> enumerator;  // weight -> codeword count

  /// var(wt) / (2 n log2 e), the finite-length penalty factor this weight
  /// distribution induces.
  double penalty_factor(int n) const;
};

/// Binary [n, k] linear code given by a full-rank k x n generator matrix
/// over GF(2). Messages are length-k bit vectors, codewords length n.
class BinaryLinearCode {
 public:
  BinaryLinearCode(int k, int n, std::vector<BitVec> generator_rows);

  static BinaryLinearCode repetition(int n);
  static BinaryLinearCode hamming_7_4();
  /// First-order Reed-Muller code RM(1, m): n = 2^m, k = m + 1.
  static BinaryLinearCode reed_muller_1(int m);
  /// Reproducible random full-rank code in systematic form [I | R]; columns
  /// are resampled so none is all-zero.
  static BinaryLinearCode random_code(int k, int n, std::uint64_t seed);

  /// Text format: a "k n" header line followed by k rows of n characters in
  /// {0, 1}.
  static BinaryLinearCode load(std::istream& in);
  static BinaryLinearCode from_file(const std::string& path);
  void save(std::ostream& out) const;

  /// Parses "repetition(3)", "hamming_7_4", "rm_1_4" or "random(k,n,seed)".
  static BinaryLinearCode named(const std::string& name);

  int k() const { return k_; }
  int n() const { return n_; }
  double rate() const { return static_cast<double>(k_) / n_; }
  const std::vector<BitVec>& generator() const { return rows_; }

  /// message . G over GF(2); message must have length k.
  BitVec encode(const BitVec& message) const;

  /// Position j is balanced when exactly half the codewords carry a 1 there,
  /// which holds exactly when generator column j is nonzero.
  std::vector<bool> balanced_positions() const;
  bool all_positions_balanced() const;

  /// Exact enumerator over all 2^k codewords, walked in Gray-code order so
  /// each step is a single row XOR. Refuses k > 24.
  WeightStats enumerate_weights() const;

  /// Nearest codeword in Hamming distance; ties resolve to the smallest
  /// message index. Returns the decoded message. Refuses k > 24.
  BitVec ml_decode(const BitVec& received) const;

 private:
  int k_;
  int n_;
  std::vector<BitVec> rows_;
};

/// Rank of a set of rows over GF(2).
int gf2_rank(std::vector<BitVec> rows);

/// Weight enumerator loaded from a text file of "weight count" lines
/// (comments starting with '#' are skipped). Used for codes too large to
/// enumerate directly.
std::map<int, std::uint64_t> load_weight_enumerator(const std::string& path);

/// Mean and variance of a weight enumerator without access to the code.
WeightStats stats_from_enumerator(const std::map<int, std::uint64_t>& enumerator);

}  // namespace qsdc
