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

#include "qsdc/linear_code.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qsdc/rng.hpp"

namespace qsdc {

namespace {

constexpr int kEnumerationLimit = 24;
constexpr double kLog2EConst = 1.4426950408889634074;

void require_enumerable(int k, const char* what) {
  if (k > kEnumerationLimit) {
    throw std::invalid_argument(std::string(what) + ": refusing k > 24 (2^k enumeration)");
  }
}

}  // namespace

double WeightStats::penalty_factor(int n) const {
  return var_weight / (2.0 * n * kLog2EConst);
}

BinaryLinearCode::BinaryLinearCode(int k, int n, std::vector<BitVec> generator_rows)
    : k_(k), n_(n), rows_(std::move(generator_rows)) {
  if (k <= 0 || n <= 0 || k > n) {
    throw std::invalid_argument("BinaryLinearCode: need 0 < k <= n");
  }
  if (static_cast<int>(rows_.size()) != k) {
    throw std::invalid_argument("BinaryLinearCode: wrong number of generator rows");
  }
  for (const BitVec& row : rows_) {
    if (row.size() != n) throw std::invalid_argument("BinaryLinearCode: row length mismatch");
  }
  if (gf2_rank(rows_) != k) {
    throw std::invalid_argument("BinaryLinearCode: generator is rank deficient");
  }
}

BinaryLinearCode BinaryLinearCode::repetition(int n) {
  BitVec row(n);
  for (int j = 0; j < n; ++j) row.set(j, true);
  return BinaryLinearCode(1, n, {row});
}

BinaryLinearCode BinaryLinearCode::hamming_7_4() {
  return BinaryLinearCode(4, 7,
                          {BitVec::from_string("1000110"), BitVec::from_string("0100101"),
                           BitVec::from_string("0010011"), BitVec::from_string("0001111")});
}

BinaryLinearCode BinaryLinearCode::reed_muller_1(int m) {
  if (m < 1 || m > 20) throw std::invalid_argument("reed_muller_1: m outside [1, 20]");
  const int n = 1 << m;
  std::vector<BitVec> rows;
  BitVec ones(n);
  for (int j = 0; j < n; ++j) ones.set(j, true);
  rows.push_back(ones);
  for (int i = 0; i < m; ++i) {
    BitVec row(n);
    for (int j = 0; j < n; ++j) row.set(j, (j >> i) & 1);
    rows.push_back(row);
  }
  return BinaryLinearCode(m + 1, n, std::move(rows));
}

BinaryLinearCode BinaryLinearCode::random_code(int k, int n, std::uint64_t seed) {
  if (k <= 0 || n <= 0 || k > n) throw std::invalid_argument("random_code: need 0 < k <= n");
  Rng rng(seed);
  std::vector<BitVec> rows(k, BitVec(n));
  for (int i = 0; i < k; ++i) {
    rows[i].set(i, true);  // systematic part keeps the rank full
    for (int j = k; j < n; ++j) rows[i].set(j, rng.coin());
  }
  // Resample all-zero parity columns so every position is balanced.
  for (int j = k; j < n; ++j) {
    bool nonzero = false;
    for (int i = 0; i < k; ++i) nonzero |= rows[i].get(j);
    while (!nonzero) {
      for (int i = 0; i < k; ++i) {
        rows[i].set(j, rng.coin());
        nonzero |= rows[i].get(j);
      }
    }
  }
  return BinaryLinearCode(k, n, std::move(rows));
}

BinaryLinearCode BinaryLinearCode::load(std::istream& in) {
  int k = 0, n = 0;
  if (!(in >> k >> n)) throw std::invalid_argument("code file: missing 'k n' header");
  std::vector<BitVec> rows;
  std::string line;
  while (static_cast<int>(rows.size()) < k && in >> line) {
    if (static_cast<int>(line.size()) != n) {
      throw std::invalid_argument("code file: row length does not match n");
    }
    rows.push_back(BitVec::from_string(line));
  }
  if (static_cast<int>(rows.size()) != k) {
    throw std::invalid_argument("code file: fewer rows than k");
  }
  return BinaryLinearCode(k, n, std::move(rows));
}

BinaryLinearCode BinaryLinearCode::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("code file: cannot open " + path);
  return load(in);
}

void BinaryLinearCode::save(std::ostream& out) const {
  out << k_ << ' ' << n_ << '\n';
  for (const BitVec& row : rows_) out << row.to_string() << '\n';
}

BinaryLinearCode BinaryLinearCode::named(const std::string& name) {
  if (name == "hamming_7_4") return hamming_7_4();
  if (name.rfind("rm_1_", 0) == 0) {
    return reed_muller_1(std::stoi(name.substr(5)));
  }
  auto args_of = [&](const std::string& prefix) -> std::vector<long long> {
    if (name.rfind(prefix + "(", 0) != 0 || name.back() != ')') return {};
    std::vector<long long> args;
    std::stringstream ss(name.substr(prefix.size() + 1, name.size() - prefix.size() - 2));
    std::string tok;
    while (std::getline(ss, tok, ',')) args.push_back(std::stoll(tok));
    return args;
  };
  if (auto args = args_of("repetition"); args.size() == 1) {
    return repetition(static_cast<int>(args[0]));
  }
  if (auto args = args_of("random"); args.size() == 3) {
    return random_code(static_cast<int>(args[0]), static_cast<int>(args[1]),
                       static_cast<std::uint64_t>(args[2]));
  }
  throw std::invalid_argument("unknown code name: " + name);
}

BitVec BinaryLinearCode::encode(const BitVec& message) const {
  if (message.size() != k_) throw std::invalid_argument("encode: message length mismatch");
  BitVec cw(n_);
  for (int i = 0; i < k_; ++i) {
    if (message.get(i)) cw.xor_with(rows_[i]);
  }
  return cw;
}

std::vector<bool> BinaryLinearCode::balanced_positions() const {
  std::vector<bool> balanced(n_, false);
  for (int j = 0; j < n_; ++j) {
    for (int i = 0; i < k_; ++i) {
      if (rows_[i].get(j)) {
        balanced[j] = true;
        break;
      }
    }
  }
  return balanced;
}

bool BinaryLinearCode::all_positions_balanced() const {
  const auto balanced = balanced_positions();
  for (bool b : balanced) {
    if (!b) return false;
  }
  return true;
}

WeightStats BinaryLinearCode::enumerate_weights() const {
  require_enumerable(k_, "enumerate_weights");
  WeightStats stats;
  BitVec cw(n_);
  stats.enumerator[0] += 1;  // message 0
  const std::uint64_t count = std::uint64_t{1} << k_;
  for (std::uint64_t t = 1; t < count; ++t) {
    // Gray-code step: message gray(t) differs from gray(t-1) in bit ctz(t).
    cw.xor_with(rows_[std::countr_zero(t)]);
    stats.enumerator[cw.popcount()] += 1;
  }
  const WeightStats computed = stats_from_enumerator(stats.enumerator);
  stats.mean_weight = computed.mean_weight;
  stats.var_weight = computed.var_weight;
  return stats;
}

BitVec BinaryLinearCode::ml_decode(const BitVec& received) const {
  require_enumerable(k_, "ml_decode");
  if (received.size() != n_) throw std::invalid_argument("ml_decode: length mismatch");
  BitVec cw(n_);
  int best_dist = cw.hamming_distance(received);
  std::uint64_t best_message = 0;
  const std::uint64_t count = std::uint64_t{1} << k_;
  for (std::uint64_t t = 1; t < count; ++t) {
    cw.xor_with(rows_[std::countr_zero(t)]);
    const std::uint64_t message = t ^ (t >> 1);  // Gray order
    const int dist = cw.hamming_distance(received);
    if (dist < best_dist || (dist == best_dist && message < best_message)) {
      best_dist = dist;
      best_message = message;
    }
  }
  return BitVec::from_u64(k_, best_message);
}

int gf2_rank(std::vector<BitVec> rows) {
  if (rows.empty()) return 0;
  const int n = rows.front().size();
  int rank = 0;
  for (int col = 0; col < n && rank < static_cast<int>(rows.size()); ++col) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
      if (rows[r].get(col)) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r != rank && rows[r].get(col)) rows[r].xor_with(rows[rank]);
    }
    ++rank;
  }
  return rank;
}

std::map<int, std::uint64_t> load_weight_enumerator(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("weight enumerator: cannot open " + path);
  std::map<int, std::uint64_t> enumerator;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::stringstream ss(line);
    int weight = 0;
    std::uint64_t count = 0;
    if (!(ss >> weight >> count)) {
      throw std::invalid_argument("weight enumerator: malformed line: " + line);
    }
    enumerator[weight] += count;
  }
  if (enumerator.empty()) throw std::invalid_argument("weight enumerator: empty file");
  return enumerator;
}

WeightStats stats_from_enumerator(const std::map<int, std::uint64_t>& enumerator) {
  WeightStats stats;
  stats.enumerator = enumerator;
  double total = 0.0, sum = 0.0, sum_sq = 0.0;
  for (const auto& [weight, count] : enumerator) {
    const double c = static_cast<double>(count);
    total += c;
    sum += c * weight;
    sum_sq += c * static_cast<double>(weight) * weight;
  }
  stats.mean_weight = sum / total;
  stats.var_weight = sum_sq / total - stats.mean_weight * stats.mean_weight;
  return stats;
}

}  // namespace qsdc
