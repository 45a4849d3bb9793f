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

#include "qsdc/bounds.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qsdc/format.hpp"
#include "qsdc/spectral.hpp"

namespace qsdc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Divergences against a position average are finite by construction (the
// average dominates each conditional state), so a missing value here is a
// logic error rather than a physical outcome.
double require_finite(const std::optional<double>& value, const char* what) {
  if (!value) throw std::logic_error(std::string(what) + ": unexpected support violation");
  return *value;
}

// Per-position divergence tables for the single-letter formulas. Entry [j][b]
// is only populated for bit values that some codeword realizes at position j.
struct PositionTables {
  std::vector<std::array<double, 2>> d;
  std::vector<std::array<double, 2>> v;
};

PositionTables position_tables(const CodedCQState& s) {
  const auto balanced = s.code().balanced_positions();
  PositionTables t;
  t.d.assign(s.n(), {0.0, 0.0});
  t.v.assign(s.n(), {0.0, 0.0});
  for (int j = 0; j < s.n(); ++j) {
    const DensityOperator tilde = s.position_average(j);
    const int max_bit = balanced[j] ? 1 : 0;
    for (int b = 0; b <= max_bit; ++b) {
      t.d[j][b] = require_finite(rel_entropy(s.state_at(j, b), tilde), "lemma1");
      t.v[j][b] = require_finite(rel_entropy_variance(s.state_at(j, b), tilde), "lemma1");
    }
  }
  return t;
}

void oracle_size_guard(const CodedCQState& s) {
  if (s.n() > 6 || s.k() > 3) {
    throw std::invalid_argument("brute_force_joint: size guard n <= 6, k <= 3 violated");
  }
}

// log2(2^x + 2) without overflow for large x.
double log2_pow_plus_two(double x) {
  if (x > 50.0) return x;
  return std::log2(std::exp2(x) + 2.0);
}

BoundReport flagged(BoundReport report) {
  report.divergence_infinite = true;
  report.v_penalty = kInf;
  report.v_used = kInf;
  report.bound_bits = -kInf;
  return report;
}

}  // namespace

BoundKind bound_kind_from_string(const std::string& name) {
  if (name == "thm1") return BoundKind::thm1;
  if (name == "thm2") return BoundKind::thm2;
  if (name == "cor1") return BoundKind::cor1;
  if (name == "cor2") return BoundKind::cor2;
  throw std::invalid_argument("unknown bound: " + name);
}

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::thm1: return "thm1";
    case BoundKind::thm2: return "thm2";
    case BoundKind::cor1: return "cor1";
    case BoundKind::cor2: return "cor2";
  }
  return "?";
}

std::string BoundReport::csv_header() {
  return "bound,n,R_code,chi,V,C,eps,bound_bits,rate_term,holevo_term,v_penalty,"
         "g_term,remainder_term,sqrt_term,divergence_infinite,chi_source";
}

std::string BoundReport::csv_row() const {
  std::string row = bound;
  for (double value : {n, r_code, chi, v_used, c_const, eps, bound_bits, rate_term,
                       holevo_term, v_penalty, g_term, remainder_term, sqrt_term}) {
    row += ',';
    row += format_double(value);
  }
  row += divergence_infinite ? ",1," : ",0,";
  row += chi_source;
  return row;
}

double lemma1_D_exact(const CodedCQState& s) {
  const auto balanced = s.code().balanced_positions();
  double chi_sum = 0.0;
  for (int j = 0; j < s.n(); ++j) {
    if (!balanced[j]) continue;  // a constant position contributes nothing
    Ensemble bit_ensemble{{{0.5, s.state_at(j, 0)}, {0.5, s.state_at(j, 1)}}};
    chi_sum += holevo_ensemble(bit_ensemble);
  }
  return -static_cast<double>(s.k()) + chi_sum;
}

double lemma1_V(const CodedCQState& s) {
  const int k = s.k();
  if (k > 24) throw std::invalid_argument("lemma1_V: refusing k > 24 (2^k enumeration)");
  const PositionTables tables = position_tables(s);

  BitVec codeword(s.n());
  // Running totals start at the all-zero codeword.
  double sum_d = 0.0, sum_v = 0.0;
  for (int j = 0; j < s.n(); ++j) {
    sum_d += tables.d[j][0];
    sum_v += tables.v[j][0];
  }

  double mean_v = 0.0, mean_d = 0.0, mean_d_sq = 0.0;
  const double inv_m = std::exp2(-static_cast<double>(k));
  const std::uint64_t count = std::uint64_t{1} << k;
  const auto& rows = s.code().generator();

  for (std::uint64_t t = 0;; ++t) {
    if (t != 0) {
      // Gray-code step: toggle the positions of one generator row and patch
      // the running sums only where a bit changed.
      const BitVec& row = rows[std::countr_zero(t)];
      for (int w = 0; w < static_cast<int>(row.words().size()); ++w) {
        std::uint64_t bits = row.words()[w];
        while (bits != 0) {
          const int j = w * 64 + std::countr_zero(bits);
          bits &= bits - 1;
          const int old_bit = codeword.get(j);
          sum_d -= tables.d[j][old_bit];
          sum_v -= tables.v[j][old_bit];
          codeword.flip(j);
          sum_d += tables.d[j][1 - old_bit];
          sum_v += tables.v[j][1 - old_bit];
        }
      }
    }
    mean_v += inv_m * sum_v;
    mean_d += inv_m * sum_d;
    mean_d_sq += inv_m * sum_d * sum_d;
    if (t + 1 == count) break;
  }
  return mean_v + mean_d_sq - mean_d * mean_d;
}

namespace {

// Explicit joint state rho_{X^n Z^n} and product reference I (x) sigma_{Z^n}
// as dense matrices.
struct JointInstance {
  Matrix joint;
  Matrix reference;
};

JointInstance assemble_joint(const CodedCQState& s) {
  oracle_size_guard(s);
  const int n = s.n();
  const int k = s.k();
  const int m_codewords = 1 << k;

  Matrix sigma = Matrix::Identity(1, 1);
  for (int j = 0; j < n; ++j) sigma = kron(sigma, s.position_average(j).matrix());
  const long z_dim = sigma.rows();
  const long joint_dim = static_cast<long>(m_codewords) * z_dim;
  if (joint_dim > 512) throw std::invalid_argument("brute_force_joint: joint dimension > 512");

  JointInstance inst;
  inst.joint = Matrix::Zero(joint_dim, joint_dim);
  inst.reference = Matrix::Zero(joint_dim, joint_dim);
  const double inv_m = 1.0 / m_codewords;
  for (int i = 0; i < m_codewords; ++i) {
    const BitVec cw = s.code().encode(BitVec::from_u64(k, static_cast<std::uint64_t>(i)));
    Matrix block = Matrix::Identity(1, 1);
    for (int j = 0; j < n; ++j) block = kron(block, s.state_at(j, cw.get(j)).matrix());
    inst.joint.block(i * z_dim, i * z_dim, z_dim, z_dim) = inv_m * block;
    inst.reference.block(i * z_dim, i * z_dim, z_dim, z_dim) = sigma;
  }
  return inst;
}

}  // namespace

double brute_force_joint_D(const CodedCQState& s) {
  const JointInstance inst = assemble_joint(s);
  return require_finite(spectral::rel_entropy_raw(inst.joint, inst.reference),
                        "brute_force_joint_D");
}

double brute_force_joint_V(const CodedCQState& s) {
  const JointInstance inst = assemble_joint(s);
  const double m2 = require_finite(spectral::second_moment_raw(inst.joint, inst.reference),
                                   "brute_force_joint_V");
  const double d = require_finite(spectral::rel_entropy_raw(inst.joint, inst.reference),
                                  "brute_force_joint_V");
  return m2 - d * d;
}

BoundReport thm2_bound(double n, double r_code, double chi, double v, double c, double eps) {
  if (n < 1.0) throw std::invalid_argument("thm2_bound: n must be at least 1");
  if (eps <= 0.0 || eps >= 1.0) throw std::invalid_argument("thm2_bound: eps outside (0, 1)");
  BoundReport report;
  report.bound = "thm2";
  report.n = n;
  report.r_code = r_code;
  report.chi = chi;
  report.v_used = v;
  report.c_const = c;
  report.eps = eps;
  report.rate_term = n * r_code;
  report.holevo_term = n * chi;
  report.g_term = n * g_epsilon(eps);
  report.remainder_term = c / (n * n);
  report.caveat = "remainder constant C is caller-supplied";
  if (std::isinf(v)) return flagged(report);
  report.v_penalty = v / (2.0 * n * kLog2E);
  report.bound_bits = report.rate_term - report.holevo_term - report.v_penalty -
                      report.g_term - report.remainder_term;
  return report;
}

BoundReport thm1_bound(int b_sub, int m, double r_code, double chi, double eps) {
  if (b_sub < 1 || m < 1) throw std::invalid_argument("thm1_bound: b_sub and m must be positive");
  if (eps <= 0.0 || eps >= 1.0) throw std::invalid_argument("thm1_bound: eps outside (0, 1)");
  const double n = static_cast<double>(b_sub) * m;
  const double log_term = std::log2(2.0 / (eps * eps));
  if (n < 1.6 * log_term) {
    throw std::domain_error("thm1_bound: n below the floor (8/5) log2(2/eps^2)");
  }
  BoundReport report;
  report.bound = "thm1";
  report.n = n;
  report.r_code = r_code;
  report.chi = chi;
  report.eps = eps;
  report.b_sub = b_sub;
  report.m = m;
  report.rate_term = n * r_code;
  report.holevo_term = n * chi;
  report.sqrt_term =
      4.0 * std::sqrt(static_cast<double>(b_sub)) * log2_pow_plus_two(m * r_code / 2.0) *
      std::sqrt(log_term);
  report.bound_bits = report.rate_term - report.holevo_term - report.sqrt_term;
  return report;
}

BoundReport cor1_bound(const BinaryLinearCode& code, const WeightStats& stats, double chi,
                       const BitConditionalStates& bits, double c, double eps) {
  if (!code.all_positions_balanced()) {
    throw std::invalid_argument(
        "cor1_bound: code has a position whose average is not the even mixture");
  }
  const double n = code.n();
  BoundReport report;
  report.bound = "cor1";
  report.n = n;
  report.r_code = code.rate();
  report.chi = chi;
  report.c_const = c;
  report.eps = eps;
  report.rate_term = n * report.r_code;
  report.holevo_term = n * chi;
  report.g_term = n * g_epsilon(eps);
  report.remainder_term = c / (n * n);
  report.caveat = "remainder constant C is caller-supplied";

  const auto d0 = rel_entropy(bits.rho0, bits.rho_tilde);
  const auto d1 = rel_entropy(bits.rho1, bits.rho_tilde);
  const auto v0 = rel_entropy_variance(bits.rho0, bits.rho_tilde);
  const auto v1 = rel_entropy_variance(bits.rho1, bits.rho_tilde);
  if (!d0 || !d1 || !v0 || !v1) return flagged(report);

  // Divergence differences at roundoff scale are snapped to zero so a
  // unitary bit encoding yields an exactly vanishing weight-variance
  // coefficient, as the invariance argument dictates.
  double delta_d = *d1 - *d0;
  if (std::abs(delta_d) <= 1e-12) delta_d = 0.0;

  const double v_linear = *v0 * n + (*v1 - *v0) * stats.mean_weight;
  const double v_var = delta_d * delta_d * stats.var_weight;
  report.v_used = v_linear + v_var;
  report.v_penalty = report.v_used / (2.0 * n * kLog2E);
  report.bound_bits = report.rate_term - report.holevo_term - report.g_term -
                      report.v_penalty - report.remainder_term;
  return report;
}

BoundReport cor2_bound(double n, double r_code, double chi, double v0, double c, double eps) {
  if (n < 1.0) throw std::invalid_argument("cor2_bound: n must be at least 1");
  BoundReport report;
  report.bound = "cor2";
  report.n = n;
  report.r_code = r_code;
  report.chi = chi;
  report.v_used = v0;
  report.c_const = c;
  report.eps = eps;
  report.rate_term = n * r_code;
  report.holevo_term = n * chi;
  report.g_term = n * g_epsilon(eps);
  report.remainder_term = c / (n * n);
  report.caveat = "remainder constant C is caller-supplied";
  if (std::isinf(v0)) return flagged(report);
  report.v_penalty = v0 / (2.0 * kLog2E);  // independent of n
  report.bound_bits = report.rate_term - report.holevo_term - report.g_term -
                      report.v_penalty - report.remainder_term;
  return report;
}

long long extractable_key_length(double hmin_lower, double eps_hash) {
  if (eps_hash <= 0.0 || eps_hash > 1.0) {
    throw std::invalid_argument("extractable_key_length: eps_hash outside (0, 1]");
  }
  const double length = hmin_lower - 2.0 * std::log2(1.0 / eps_hash);
  if (!(length > 0.0)) return 0;  // covers -inf and NaN
  return static_cast<long long>(std::floor(length));
}

EveModel::Kind EveModel::kind_from_string(const std::string& name) {
  if (name == "none") return Kind::none;
  if (name == "intercept_resend") return Kind::intercept_resend;
  if (name == "entangling_probe") return Kind::entangling_probe;
  throw std::invalid_argument("unknown attack model: " + name);
}

std::string EveModel::name() const {
  switch (kind) {
    case Kind::none: return "none";
    case Kind::intercept_resend: return "intercept_resend";
    case Kind::entangling_probe: return "entangling_probe";
  }
  return "?";
}

Ensemble uniform_bb84_ensemble() {
  Ensemble prep;
  for (const DensityOperator& state : bb84_states()) prep.entries.emplace_back(0.25, state);
  return prep;
}

namespace {

Matrix encoded_input(const DensityOperator& psi, int bit) {
  if (bit == 0) return psi.matrix();
  const Matrix u = u_y();
  return u * psi.matrix() * u.adjoint();
}

BitConditionalStates intercept_resend_states(double fraction, const Ensemble& preparation) {
  // Classical record (attacked, basis, outbound outcome, return outcome) as a
  // diagonal 16-dimensional state. The return pass of an intercepted qubit is
  // measured in the same basis as the outbound pass, so the outcome parity
  // reveals the encoded bit on every intercepted position.
  std::array<Matrix, 2> rho;
  rho.fill(Matrix::Zero(16, 16));
  const std::array<std::array<CVector, 2>, 2> basis_states = {{{ket0(), ket1()},
                                                               {ket_plus(), ket_minus()}}};
  for (int bit = 0; bit < 2; ++bit) {
    rho[bit](0, 0) += 1.0 - fraction;  // untouched positions leave no record
    for (const auto& [p_psi, psi] : preparation.entries) {
      for (int basis = 0; basis < 2; ++basis) {
        for (int x1 = 0; x1 < 2; ++x1) {
          const CVector& e1 = basis_states[basis][x1];
          const double p_outcome = (e1.adjoint() * psi.matrix() * e1)(0, 0).real();
          if (p_outcome <= 0.0) continue;
          const Matrix resent = encoded_input(DensityOperator::pure(e1), bit);
          for (int x2 = 0; x2 < 2; ++x2) {
            const CVector& e2 = basis_states[basis][x2];
            const double p_return = (e2.adjoint() * resent * e2)(0, 0).real();
            const int index = 8 + basis * 4 + x1 * 2 + x2;
            rho[bit](index, index) += fraction * 0.5 * p_psi * p_outcome * p_return;
          }
        }
      }
    }
  }
  return BitConditionalStates::from_pair(DensityOperator(rho[0]), DensityOperator(rho[1]));
}

BitConditionalStates entangling_probe_states(double strength, const Ensemble& preparation) {
  // One probe register is attached on each pass via a rotation controlled on
  // the computational basis; strength 1 copies the basis value outright.
  const double theta = strength * M_PI / 2.0;
  Matrix r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  const Matrix i2 = Matrix::Identity(2, 2);
  const Matrix i4 = Matrix::Identity(4, 4);
  Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;

  const Matrix probe_out = kron(p0, i4) + kron(p1, kron(r, i2));   // qubit, E1
  const Matrix probe_back = kron(p0, i4) + kron(p1, kron(i2, r));  // qubit, E2

  std::array<Matrix, 2> rho;
  rho.fill(Matrix::Zero(4, 4));
  Matrix ancillas = Matrix::Zero(4, 4);
  ancillas(0, 0) = 1.0;  // |00><00|
  for (int bit = 0; bit < 2; ++bit) {
    const Matrix encoder = kron(bit == 0 ? i2 : u_y(), i4);
    Matrix accumulated = Matrix::Zero(4, 4);
    for (const auto& [p_psi, psi] : preparation.entries) {
      const Matrix start = kron(psi.matrix(), ancillas);
      const Matrix evolved = probe_back * encoder * probe_out * start *
                             probe_out.adjoint() * encoder.adjoint() * probe_back.adjoint();
      const DensityOperator traced =
          partial_trace(DensityOperator(evolved), {2, 2, 2}, {1, 2});
      accumulated += p_psi * traced.matrix();
    }
    rho[bit] = accumulated;
  }
  return BitConditionalStates::from_pair(DensityOperator(rho[0]), DensityOperator(rho[1]));
}

}  // namespace

BitConditionalStates eve_bit_states(const EveModel& attack, const Ensemble& preparation) {
  preparation.validate();
  switch (attack.kind) {
    case EveModel::Kind::none: {
      const DensityOperator vacuum = DensityOperator::pure(ket0());
      return BitConditionalStates::from_pair(vacuum, vacuum);
    }
    case EveModel::Kind::intercept_resend: {
      if (attack.param < 0.0 || attack.param > 1.0) {
        throw std::invalid_argument("eve_bit_states: intercept fraction outside [0, 1]");
      }
      return intercept_resend_states(attack.param, preparation);
    }
    case EveModel::Kind::entangling_probe: {
      if (attack.param < 0.0 || attack.param > 1.0) {
        throw std::invalid_argument("eve_bit_states: probe strength outside [0, 1]");
      }
      return entangling_probe_states(attack.param, preparation);
    }
  }
  throw std::logic_error("eve_bit_states: unreachable");
}

namespace {

// Stinespring isometry V = sum_k K_k (x) |k>_E as a dense matrix from the
// qubit into qubit (x) environment.
Matrix stinespring_isometry(const KrausChannel& channel) {
  const int env_dim = static_cast<int>(channel.kraus_ops().size());
  Matrix v = Matrix::Zero(2 * env_dim, 2);
  for (int k = 0; k < env_dim; ++k) {
    const Matrix& op = channel.kraus_ops()[k];
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) v(r * env_dim + k, c) = op(r, c);
    }
  }
  return v;
}

}  // namespace

BitConditionalStates channel_environment_bit_states(const KrausChannel& forward,
                                                    const KrausChannel& backward,
                                                    const Ensemble& preparation) {
  preparation.validate();
  if (forward.input_dim() != 2 || forward.output_dim() != 2 || backward.input_dim() != 2 ||
      backward.output_dim() != 2) {
    throw std::invalid_argument("channel_environment_bit_states: qubit channels required");
  }
  // A single pass leaks nothing: averaged over the unrevealed preparation
  // the traveling qubit is maximally mixed whichever bit is encoded. The
  // environments of the two passes are correlated through the qubit, and it
  // is that correlation which carries the bit, so both are dilated and both
  // registers are handed to the adversary.
  const Matrix v_fwd = stinespring_isometry(forward);    // q -> q (x) E1
  const Matrix v_bwd = stinespring_isometry(backward);   // q -> q (x) E2
  const int e1 = static_cast<int>(forward.kraus_ops().size());
  const int e2 = static_cast<int>(backward.kraus_ops().size());
  const Matrix i_e1 = Matrix::Identity(e1, e1);

  std::array<Matrix, 2> rho;
  rho.fill(Matrix::Zero(e1 * e2, e1 * e2));
  for (int bit = 0; bit < 2; ++bit) {
    // Reorder q (x) E2 (x) E1 into q (x) E1 (x) E2 at the partial trace.
    const Matrix encoder = kron(bit == 0 ? Matrix::Identity(2, 2) : u_y(), i_e1);
    const Matrix pipeline = kron(v_bwd, i_e1) * encoder * v_fwd;  // q -> q,E2,E1
    Matrix accumulated = Matrix::Zero(e1 * e2, e1 * e2);
    for (const auto& [p_psi, psi] : preparation.entries) {
      const Matrix joint = pipeline * psi.matrix() * pipeline.adjoint();
      const DensityOperator traced =
          partial_trace(DensityOperator(joint), {2, e2, e1}, {1, 2});
      accumulated += p_psi * traced.matrix();
    }
    rho[bit] = (0.5 * (accumulated + accumulated.adjoint().eval())).eval();
  }
  return BitConditionalStates::from_pair(DensityOperator(rho[0]), DensityOperator(rho[1]));
}

double per_position_chi(const BitConditionalStates& bits) {
  Ensemble e{{{0.5, bits.rho0}, {0.5, bits.rho1}}};
  return holevo_ensemble(e);
}

double binary_input_chi_sup(const BitConditionalStates& bits) {
  const double h0 = von_neumann_entropy(bits.rho0);
  const double h1 = von_neumann_entropy(bits.rho1);
  auto chi_at = [&](double p) {
    const DensityOperator avg(p * bits.rho0.matrix() + (1.0 - p) * bits.rho1.matrix());
    return von_neumann_entropy(avg) - p * h0 - (1.0 - p) * h1;
  };
  // chi is concave in the prior, so ternary search converges.
  double lo = 0.0, hi = 1.0;
  for (int iter = 0; iter < 100; ++iter) {
    const double a = lo + (hi - lo) / 3.0;
    const double b = hi - (hi - lo) / 3.0;
    if (chi_at(a) < chi_at(b)) {
      lo = a;
    } else {
      hi = b;
    }
  }
  return chi_at(0.5 * (lo + hi));
}

}  // namespace qsdc
