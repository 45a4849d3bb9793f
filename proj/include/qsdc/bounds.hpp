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

#include "qsdc/channel.hpp"
#include "qsdc/coded_cq.hpp"
#include "qsdc/entropy.hpp"

namespace qsdc {

enum class BoundKind { thm1, thm2, cor1, cor2 };

BoundKind bound_kind_from_string(const std::string& name);
std::string to_string(BoundKind kind);

/// Evaluated lower bound on the extractable key length of one block, with a
/// term-by-term breakdown. The bound always equals
///   rate_term - holevo_term - v_penalty - g_term - remainder_term - sqrt_term
/// so downstream consumers can audit each contribution. Reports flagged as
/// divergence_infinite carry bound_bits = -inf; the operational meaning is a
/// zero-length key, delivered through extractable_key_length().
struct BoundReport {
  std::string bound;
  double n = 0.0;
  double r_code = 0.0;
  double chi = 0.0;
  double v_used = 0.0;
  double c_const = 0.0;
  double eps = 0.0;
  int b_sub = 0;  // sub-block count and length (asymptotic bound only)
  int m = 0;

  double rate_term = 0.0;      // n R
  double holevo_term = 0.0;    // n chi
  double v_penalty = 0.0;      // variance penalty
  double g_term = 0.0;         // n g(eps)
  double remainder_term = 0.0; // C / n^2
  double sqrt_term = 0.0;      // sub-block deficit (asymptotic bound only)
  double bound_bits = 0.0;

  bool divergence_infinite = false;
  std::string chi_source = "user";
  std::string caveat;

  static std::string csv_header();
  std::string csv_row() const;
};

/// Exact joint divergence of the coded CQ state against the product
/// reference:
///   D(rho_{X^n Z^n} || I_{X^n} (x) sigma_{Z^n}) = -n R + sum_j chi_j,
/// where chi_j is the Holevo information of the bit ensemble induced at
/// position j by uniform codewords and sigma_{Z^n} is the product of the
/// position averages. No enumeration is needed.
double lemma1_D_exact(const CodedCQState& s);

/// Joint relative entropy variance against the same product reference,
/// through its single-letter decomposition:
///   sum_i (1/M) sum_j V_ij  +  Var_i( sum_j D_ij ),
/// with D_ij, V_ij the per-position divergences against the position
/// average. Enumerates the 2^k codewords with Gray-code updates; refuses
/// k > 24.
double lemma1_V(const CodedCQState& s);

/// Independent oracles: assemble the explicit block-diagonal joint state and
/// the product reference as dense matrices and evaluate D and
/// V = tr rho (log rho - log(I (x) sigma))^2 - D^2 directly. Guarded to
/// n <= 6 and k <= 3 so the joint dimension stays at most 512.
double brute_force_joint_D(const CodedCQState& s);
double brute_force_joint_V(const CodedCQState& s);

/// Finite-length bound for one block of n channel uses:
///   n R - n chi - V / (2 n log2 e) - C / n^2 - n g(eps).
/// The underlying expansion is taken at alpha = 1 + 1/n. Requires n >= 1 and
/// 0 < eps < 1; an infinite V produces a flagged report.
BoundReport thm2_bound(double n, double r_code, double chi, double v, double c, double eps);

/// Asymptotic sub-block bound over n = b_sub * m channel uses:
///   n (R - chi) - 4 sqrt(b_sub) log2(2^(m R / 2) + 2) sqrt(log2(2 / eps^2)).
/// Refuses parameter sets violating the floor n >= (8/5) log2(2 / eps^2).
BoundReport thm1_bound(int b_sub, int m, double r_code, double chi, double eps);

/// Weight-statistics specialization for balanced linear codes:
///   n R - n chi - n g(eps)
///   - [V0 n + (V1 - V0) E[wt]] / (2 n log2 e)
///   - (D1 - D0)^2 var(wt) / (2 n log2 e) - C / n^2.
/// A |D1 - D0| below 1e-12 is treated as exactly zero, which makes the
/// variance coefficient vanish identically under a unitary bit encoding.
/// Refuses codes with an unbalanced position, since the derivation assumes
/// every position averages to the even mixture.
BoundReport cor1_bound(const BinaryLinearCode& code, const WeightStats& stats, double chi,
                       const BitConditionalStates& bits, double c, double eps);

/// Unitary-encoder specialization: the variance penalty collapses to the
/// n-independent constant V(rho0 || rho_tilde) / (2 log2 e).
BoundReport cor2_bound(double n, double r_code, double chi, double v0, double c, double eps);

/// Leftover-hashing key length: floor(hmin_lower - 2 log2(1 / eps_hash)),
/// clamped at zero. eps_hash must lie in (0, 1].
long long extractable_key_length(double hmin_lower, double eps_hash);

/// Collective attack families for experiments. The strength parameter means
/// the intercepted fraction for intercept_resend and the probe rotation
/// strength in [0, 1] for entangling_probe.
struct EveModel {
  enum class Kind { none, intercept_resend, entangling_probe };
  Kind kind = Kind::none;
  double param = 0.0;

  static EveModel::Kind kind_from_string(const std::string& name);
  std::string name() const;
};

/// The uniform preparation over the four signal states.
Ensemble uniform_bb84_ensemble();

/// Adversary conditional states per encoded bit under the given attack,
/// averaged over the sender's preparation. Probe attacks tap both the
/// outbound and the return pass of each qubit; the returned system is the
/// pair of probe registers (or the classical measurement record for
/// intercept-resend).
BitConditionalStates eve_bit_states(const EveModel& attack, const Ensemble& preparation);

/// Adversary conditional states when she is granted the full channel noise:
/// Stinespring dilations of the outbound and return channels are applied
/// around the bit encoder and the adversary keeps both environment
/// registers. A single pass leaks nothing on its own (the unrevealed
/// preparation scrambles the traveling qubit), so the correlation between
/// the two environments is precisely what carries the bit. This is what the
/// simulator feeds the bounds after estimating the channels.
BitConditionalStates channel_environment_bit_states(const KrausChannel& forward,
                                                    const KrausChannel& backward,
                                                    const Ensemble& preparation);

/// Holevo information of the even bit ensemble {1/2 rho0, 1/2 rho1}.
double per_position_chi(const BitConditionalStates& bits);

/// Holevo information of the bit-to-state map optimized over the input
/// prior, by ternary search on the concave chi(p).
double binary_input_chi_sup(const BitConditionalStates& bits);

}  // namespace qsdc
