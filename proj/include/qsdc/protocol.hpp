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
#include <string>
#include <vector>

#include "qsdc/bounds.hpp"
#include "qsdc/channel.hpp"
#include "qsdc/linear_code.hpp"
#include "qsdc/rng.hpp"

namespace qsdc {

/// One simulated session of the block protocol. Within a block the receiver
/// prepares and sends n + p signal qubits, the sender keeps n for encoding
/// and measures p for outbound channel estimation, encodes a one-time-padded
/// codeword with the bit-flip unitary, returns the sequence with fresh pilots
/// in the vacated positions, and both sides distill a key from the codeword
/// via Toeplitz hashing sized by the configured bound.
struct ProtocolConfig {
  BinaryLinearCode code;
  int payload_qubits = 0;  // must equal code.n()
  int pilot_qubits = 1;
  KrausChannel forward_channel = KrausChannel::identity(2);
  KrausChannel backward_channel = KrausChannel::identity(2);
  EveModel eve{};
  double qber_abort_forward = 0.12;
  double qber_abort_backward = 0.12;
  double eps = 0.995;
  double eps_hash = 0.125;
  double c_const = 0.0;
  BoundKind pa_bound = BoundKind::cor2;
  int blocks = 100;
  std::uint64_t seed = 1;
  long long initial_pool_bits = 4096;
  int retransmit_cap = 3;

  void validate() const;
};

/// FIFO pool of key bits with a per-block ledger. Consumption beyond the
/// available material throws; the ledger lets sessions audit conservation.
class KeyPool {
 public:
  KeyPool(Rng& rng, long long initial_bits);

  long long available() const { return static_cast<long long>(bits_.size()) - cursor_; }
  BitVec consume(int count);
  void produce(const BitVec& key);
  void note_block(int block, int consumed, int produced);

  struct LedgerEntry {
    int block = 0;
    int consumed = 0;
    int produced = 0;
  };
  const std::vector<LedgerEntry>& ledger() const { return ledger_; }

 private:
  std::vector<std::uint8_t> bits_;
  long long cursor_ = 0;  // bits before the cursor are spent
  std::vector<LedgerEntry> ledger_;
};

enum class BlockOutcome { completed, retransmit, abort };

std::string to_string(BlockOutcome outcome);

/// Record of one block attempt.
struct BlockTranscript {
  int block = 0;
  int attempt = 0;
  BlockOutcome outcome = BlockOutcome::completed;
  std::string abort_reason;
  double qber_forward = 0.0;
  double qber_backward = 0.0;
  bool decode_correct = false;
  int key_consumed = 0;
  int key_produced = 0;
  long long pool_after = 0;
  double bound_bits = 0.0;  // key-length bound evaluated for this attempt
  BitVec message;           // W
  BitVec padded;            // L = W xor K
  BitVec estimate;          // W-hat

  std::string csv_row() const;
  static std::string csv_header();
};

struct SessionSummary {
  int blocks_started = 0;
  int completed = 0;
  int retransmissions = 0;
  int aborts = 0;
  int decode_errors = 0;
  double empirical_error_rate = 0.0;  // decode errors over completed blocks
  long long key_consumed_total = 0;
  long long key_produced_total = 0;
  long long initial_pool = 0;
  long long final_pool = 0;
  bool halted_pool_exhausted = false;

  std::string csv_comment() const;
};

struct SessionResult {
  std::vector<BlockTranscript> transcripts;
  SessionSummary summary;
};

/// A prepared signal qubit: state, basis (0 = Z, 1 = X) and encoded bit.
struct PreparedQubit {
  DensityOperator state;
  int basis = 0;
  int bit = 0;
};

/// Uniform draw over the four signal states for each of `count` qubits.
std::vector<PreparedQubit> prepare_qubits(Rng& rng, int count);

/// Projective measurement in the Z (basis = 0) or X (basis = 1) basis;
/// returns the observed bit.
int measure(Rng& rng, const DensityOperator& state, int basis);

/// Run the configured number of blocks with pool carry-over. Retransmissions
/// rerun a block with fresh randomness up to the configured cap; the session
/// ends early on an abort or when the pool cannot pad the next message.
SessionResult run_session(const ProtocolConfig& cfg);

}  // namespace qsdc
