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

#include "qsdc/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "qsdc/format.hpp"
#include "qsdc/toeplitz.hpp"

namespace qsdc {

void ProtocolConfig::validate() const {
  if (payload_qubits != code.n()) {
    throw std::invalid_argument("ProtocolConfig: payload_qubits must equal the code length");
  }
  if (pilot_qubits < 1) throw std::invalid_argument("ProtocolConfig: at least one pilot needed");
  for (double threshold : {qber_abort_forward, qber_abort_backward}) {
    if (threshold < 0.0 || threshold > 0.5) {
      throw std::invalid_argument("ProtocolConfig: abort threshold outside [0, 0.5]");
    }
  }
  if (eps <= 0.0 || eps >= 1.0) throw std::invalid_argument("ProtocolConfig: eps outside (0, 1)");
  if (eps_hash <= 0.0 || eps_hash > 1.0) {
    throw std::invalid_argument("ProtocolConfig: eps_hash outside (0, 1]");
  }
  if (blocks < 1) throw std::invalid_argument("ProtocolConfig: blocks must be positive");
  if (initial_pool_bits < 0) throw std::invalid_argument("ProtocolConfig: negative pool");
  if (retransmit_cap < 0) throw std::invalid_argument("ProtocolConfig: negative retransmit cap");
  if (forward_channel.input_dim() != 2 || backward_channel.input_dim() != 2) {
    throw std::invalid_argument("ProtocolConfig: channels must act on qubits");
  }
  if (pa_bound == BoundKind::thm1) {
    throw std::invalid_argument("ProtocolConfig: per-block amplification needs thm2/cor1/cor2");
  }
}

KeyPool::KeyPool(Rng& rng, long long initial_bits) {
  bits_.reserve(static_cast<std::size_t>(initial_bits));
  for (long long i = 0; i < initial_bits; ++i) bits_.push_back(rng.coin() ? 1 : 0);
}

BitVec KeyPool::consume(int count) {
  if (count > available()) throw std::runtime_error("KeyPool: underflow");
  BitVec key(count);
  for (int i = 0; i < count; ++i) key.set(i, bits_[static_cast<std::size_t>(cursor_ + i)] != 0);
  cursor_ += count;
  return key;
}

void KeyPool::produce(const BitVec& key) {
  for (int i = 0; i < key.size(); ++i) bits_.push_back(key.get(i) ? 1 : 0);
}

void KeyPool::note_block(int block, int consumed, int produced) {
  ledger_.push_back({block, consumed, produced});
}

std::string to_string(BlockOutcome outcome) {
  switch (outcome) {
    case BlockOutcome::completed: return "completed";
    case BlockOutcome::retransmit: return "retransmit";
    case BlockOutcome::abort: return "abort";
  }
  return "?";
}

std::string BlockTranscript::csv_header() {
  return "block,outcome,qber_forward,qber_backward,decode_correct,key_consumed,"
         "key_produced,pool_after";
}

std::string BlockTranscript::csv_row() const {
  std::ostringstream row;
  row << block << ',' << to_string(outcome) << ',' << format_double(qber_forward) << ','
      << format_double(qber_backward) << ',' << (decode_correct ? 1 : 0) << ',' << key_consumed
      << ',' << key_produced << ',' << pool_after;
  return row.str();
}

std::string SessionSummary::csv_comment() const {
  std::ostringstream out;
  out << "# summary blocks_started=" << blocks_started << " completed=" << completed
      << " retransmissions=" << retransmissions << " aborts=" << aborts
      << " decode_errors=" << decode_errors
      << " error_rate=" << format_double(empirical_error_rate)
      << " key_consumed=" << key_consumed_total << " key_produced=" << key_produced_total
      << " pool_initial=" << initial_pool << " pool_final=" << final_pool
      << " pool_exhausted=" << (halted_pool_exhausted ? 1 : 0);
  return out.str();
}

std::vector<PreparedQubit> prepare_qubits(Rng& rng, int count) {
  static const std::vector<DensityOperator> signals = bb84_states();
  std::vector<PreparedQubit> prepared;
  prepared.reserve(count);
  for (int i = 0; i < count; ++i) {
    const int choice = static_cast<int>(rng.uniform_int(4));
    prepared.push_back({signals[choice], choice >> 1, choice & 1});
  }
  return prepared;
}

int measure(Rng& rng, const DensityOperator& state, int basis) {
  const Matrix& m = state.matrix();
  double p0;
  if (basis == 0) {
    p0 = m(0, 0).real();
  } else {
    p0 = 0.5 * (m(0, 0) + m(0, 1) + m(1, 0) + m(1, 1)).real();
  }
  p0 = std::clamp(p0 / std::max(state.trace(), 1e-300), 0.0, 1.0);
  return rng.uniform() < p0 ? 0 : 1;
}

namespace {

const Matrix& pauli_flip() {
  static const Matrix u = u_y();
  return u;
}

DensityOperator basis_eigenstate(int basis, int bit) {
  static const std::vector<DensityOperator> signals = bb84_states();
  return signals[basis * 2 + bit];
}

// Per-position attack bookkeeping inside one block attempt. An intercepted
// position is measured in the same basis on both passes.
struct InterceptPlan {
  std::vector<int> basis;  // -1 when the position is left alone
};

struct Transit {
  const ProtocolConfig& cfg;
  Rng& rng;
  InterceptPlan plan;
  KrausChannel probe{KrausChannel::identity(2)};
  bool has_probe = false;

  explicit Transit(const ProtocolConfig& config, Rng& rand) : cfg(config), rng(rand) {
    if (cfg.eve.kind == EveModel::Kind::entangling_probe && cfg.eve.param > 0.0) {
      const double theta = cfg.eve.param * M_PI / 2.0;
      Matrix k0(2, 2), k1(2, 2);
      k0 << 1.0, 0.0, 0.0, std::cos(theta);
      k1 << 0.0, 0.0, 0.0, std::sin(theta);
      probe = KrausChannel({k0, k1});
      has_probe = true;
    }
  }

  void plan_block(int total) {
    plan.basis.assign(total, -1);
    if (cfg.eve.kind == EveModel::Kind::intercept_resend && cfg.eve.param > 0.0) {
      for (int i = 0; i < total; ++i) {
        if (rng.bernoulli(cfg.eve.param)) plan.basis[i] = rng.coin() ? 1 : 0;
      }
    }
  }

  DensityOperator eve_touch(int position, DensityOperator state) {
    if (has_probe) return probe.apply(state);
    const int basis = plan.basis.empty() ? -1 : plan.basis[position];
    if (basis < 0) return state;
    const int outcome = measure(rng, state, basis);
    return basis_eigenstate(basis, outcome);
  }

  DensityOperator forward(int position, DensityOperator state) {
    return eve_touch(position, cfg.forward_channel.apply(state));
  }

  DensityOperator backward(int position, DensityOperator state) {
    return cfg.backward_channel.apply(eve_touch(position, state));
  }
};

struct AttemptResult {
  BlockTranscript transcript;
  bool session_over = false;
};

struct PaContext {
  // Weight statistics are enumeration-backed, so compute them once per
  // session when the configured bound needs them.
  std::optional<WeightStats> stats;
};

double evaluate_block_bound(const ProtocolConfig& cfg, PaContext& ctx, double qber_forward,
                            double qber_backward) {
  // The block's worst observed pilot error rate maps to a single
  // depolarizing-equivalent parameter applied to both passes of the round
  // trip, and the adversary is granted both channel environments. Taking the
  // worst of the two estimates matters: attributing a lucky zero estimate to
  // one pass would zero out the modeled leakage entirely, since a one-pass
  // tap is information-free on its own.
  const double q_hat = std::clamp(2.0 * std::max(qber_forward, qber_backward), 0.0, 1.0);
  const KrausChannel estimated = standard_channel(ChannelKind::depolarizing, q_hat);
  const BitConditionalStates bits =
      channel_environment_bit_states(estimated, estimated, uniform_bb84_ensemble());
  const double chi = per_position_chi(bits);
  const double n = cfg.code.n();
  switch (cfg.pa_bound) {
    case BoundKind::cor2: {
      const auto v0 = rel_entropy_variance(bits.rho0, bits.rho_tilde);
      return cor2_bound(n, cfg.code.rate(), chi,
                        v0.value_or(std::numeric_limits<double>::infinity()), cfg.c_const,
                        cfg.eps)
          .bound_bits;
    }
    case BoundKind::cor1: {
      if (!ctx.stats) ctx.stats = cfg.code.enumerate_weights();
      return cor1_bound(cfg.code, *ctx.stats, chi, bits, cfg.c_const, cfg.eps).bound_bits;
    }
    case BoundKind::thm2: {
      const double v = lemma1_V(CodedCQState::homogeneous(cfg.code, bits));
      return thm2_bound(n, cfg.code.rate(), chi, v, cfg.c_const, cfg.eps).bound_bits;
    }
    case BoundKind::thm1: break;
  }
  throw std::logic_error("evaluate_block_bound: unreachable");
}

AttemptResult run_attempt(const ProtocolConfig& cfg, Rng& rng, KeyPool& pool, PaContext& ctx,
                          int block, int attempt, const BitVec& message) {
  const int n = cfg.payload_qubits;
  const int p = cfg.pilot_qubits;
  const int total = n + p;

  AttemptResult result;
  BlockTranscript& t = result.transcript;
  t.block = block;
  t.attempt = attempt;
  t.message = message;

  Transit transit(cfg, rng);
  transit.plan_block(total);

  // Receiver-side preparation and outbound transit.
  std::vector<PreparedQubit> prepared = prepare_qubits(rng, total);
  std::vector<DensityOperator> line;
  line.reserve(total);
  for (int i = 0; i < total; ++i) line.push_back(transit.forward(i, prepared[i].state));

  // Outbound estimation: p positions are sampled without replacement,
  // measured in a random basis and compared where the bases agree. The
  // sampled positions double as the pilot slots of the return pass, which
  // keeps every remaining payload qubit aligned with its preparation basis
  // without quantum memory on either side.
  std::vector<int> order(total);
  std::iota(order.begin(), order.end(), 0);
  for (int i = 0; i < p; ++i) {
    const int j = i + static_cast<int>(rng.uniform_int(total - i));
    std::swap(order[i], order[j]);
  }
  std::vector<int> pilot_slots(order.begin(), order.begin() + p);
  std::sort(pilot_slots.begin(), pilot_slots.end());

  int matched = 0, errors = 0;
  for (int slot : pilot_slots) {
    const int basis = rng.coin() ? 1 : 0;
    const int outcome = measure(rng, line[slot], basis);
    if (basis == prepared[slot].basis) {
      ++matched;
      if (outcome != prepared[slot].bit) ++errors;
    }
  }
  t.qber_forward = matched > 0 ? static_cast<double>(errors) / matched : 0.0;
  if (t.qber_forward > cfg.qber_abort_forward) {
    t.outcome = BlockOutcome::retransmit;
    return result;
  }

  // One-time pad and codeword encoding on the kept qubits.
  const int k = cfg.code.k();
  if (pool.available() < k) {
    t.outcome = BlockOutcome::abort;
    t.abort_reason = "pool_exhausted";
    result.session_over = true;
    return result;
  }
  const BitVec pad = pool.consume(k);
  t.key_consumed = k;
  BitVec padded = message;
  padded.xor_with(pad);
  t.padded = padded;
  const BitVec codeword = cfg.code.encode(padded);

  std::vector<bool> is_pilot(total, false);
  for (int slot : pilot_slots) is_pilot[slot] = true;
  std::vector<int> payload_slots;
  payload_slots.reserve(n);
  for (int i = 0; i < total; ++i) {
    if (!is_pilot[i]) payload_slots.push_back(i);
  }
  for (int j = 0; j < n; ++j) {
    if (codeword.get(j)) {
      const int slot = payload_slots[j];
      line[slot] = conjugate(pauli_flip(), line[slot]);
    }
  }

  // Fresh pilots fill the vacated slots for return-channel estimation.
  std::vector<PreparedQubit> pilots = prepare_qubits(rng, p);
  for (int i = 0; i < p; ++i) line[pilot_slots[i]] = pilots[i].state;

  // Return transit and the receiver's memory-free measurement: every slot is
  // read in the basis prepared there at the start of the block.
  std::vector<int> outcomes(total, 0);
  for (int i = 0; i < total; ++i) {
    line[i] = transit.backward(i, line[i]);
    outcomes[i] = measure(rng, line[i], prepared[i].basis);
  }

  // Pilot positions and states are revealed; estimate the return channel.
  matched = 0;
  errors = 0;
  for (int i = 0; i < p; ++i) {
    const int slot = pilot_slots[i];
    if (prepared[slot].basis == pilots[i].basis) {
      ++matched;
      if (outcomes[slot] != pilots[i].bit) ++errors;
    }
  }
  t.qber_backward = matched > 0 ? static_cast<double>(errors) / matched : 0.0;
  if (t.qber_backward > cfg.qber_abort_backward) {
    t.outcome = BlockOutcome::retransmit;
    return result;
  }

  // Decode: a flipped in-basis bit marks codeword bit 1.
  BitVec received(n);
  for (int j = 0; j < n; ++j) {
    const int slot = payload_slots[j];
    received.set(j, outcomes[slot] != prepared[slot].bit);
  }
  BitVec decoded = cfg.code.ml_decode(received);
  BitVec estimate = decoded;
  estimate.xor_with(pad);
  t.estimate = estimate;
  t.decode_correct = (estimate == message);

  // Privacy amplification sized by the configured bound at the estimated
  // channels; the Toeplitz seed is public coordination randomness.
  t.bound_bits = evaluate_block_bound(cfg, ctx, t.qber_forward, t.qber_backward);
  long long length = extractable_key_length(t.bound_bits, cfg.eps_hash);
  length = std::min<long long>(length, n);
  if (length > 0) {
    const BitVec key = toeplitz_hash(codeword, rng.next_u64(), static_cast<int>(length));
    pool.produce(key);
    t.key_produced = static_cast<int>(length);
  }
  t.outcome = BlockOutcome::completed;
  return result;
}

}  // namespace

SessionResult run_session(const ProtocolConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  KeyPool pool(rng, cfg.initial_pool_bits);
  PaContext ctx;

  SessionResult result;
  SessionSummary& summary = result.summary;
  summary.initial_pool = pool.available();

  for (int block = 0; block < cfg.blocks; ++block) {
    ++summary.blocks_started;
    BitVec message(cfg.code.k());
    for (int i = 0; i < message.size(); ++i) message.set(i, rng.coin());

    bool session_over = false;
    int retransmits_here = 0;
    for (int attempt = 0;; ++attempt) {
      AttemptResult attempt_result =
          run_attempt(cfg, rng, pool, ctx, block, attempt, message);
      BlockTranscript& t = attempt_result.transcript;

      if (t.outcome == BlockOutcome::retransmit && retransmits_here >= cfg.retransmit_cap) {
        t.outcome = BlockOutcome::abort;
        t.abort_reason = "retransmit_cap";
        attempt_result.session_over = true;
      }

      t.pool_after = pool.available();
      pool.note_block(block, t.key_consumed, t.key_produced);
      summary.key_consumed_total += t.key_consumed;
      summary.key_produced_total += t.key_produced;

      switch (t.outcome) {
        case BlockOutcome::completed:
          ++summary.completed;
          if (!t.decode_correct) ++summary.decode_errors;
          break;
        case BlockOutcome::retransmit:
          ++retransmits_here;
          ++summary.retransmissions;
          break;
        case BlockOutcome::abort:
          ++summary.aborts;
          if (t.abort_reason == "pool_exhausted") summary.halted_pool_exhausted = true;
          break;
      }
      const BlockOutcome outcome = t.outcome;
      session_over = attempt_result.session_over;
      result.transcripts.push_back(std::move(attempt_result.transcript));
      if (outcome != BlockOutcome::retransmit) break;
    }
    if (session_over) break;
  }

  summary.final_pool = pool.available();
  summary.empirical_error_rate =
      summary.completed > 0 ? static_cast<double>(summary.decode_errors) / summary.completed
                            : 0.0;
  return result;
}

}  // namespace qsdc
