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

#include "qsdc/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <functional>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <vector>

#include "qsdc/format.hpp"
#include "qsdc/random_states.hpp"
#include "qsdc/spectral.hpp"

namespace qsdc {

namespace {

/// Run `count` index-addressed tasks on `jobs` workers, collecting one output
/// string per task. Output order is the task order regardless of scheduling.
std::vector<std::string> run_pool(int jobs, std::size_t count,
                                  const std::function<std::string(std::size_t)>& task) {
  std::vector<std::string> results(count);
  if (count == 0) return results;
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) results[i] = task(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        results[i] = task(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> threads;
  for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
  for (std::thread& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

struct BoundTask {
  std::size_t code_index;
  double eps;
  double strength;
  BoundKind bound;
  int b_sub;  // meaningful for the asymptotic bound only
};

}  // namespace

int cmd_bounds(const Scenario& scenario, const CommandOptions& options, std::ostream& out) {
  if (!scenario.bounds) throw std::invalid_argument("bounds: scenario lacks a bounds section");
  const BoundsScenario& s = *scenario.bounds;

  std::vector<BoundTask> tasks;
  for (std::size_t c = 0; c < s.codes.size(); ++c) {
    for (double eps : s.eps) {
      for (double strength : s.attack_strength) {
        for (BoundKind bound : s.which) {
          if (bound == BoundKind::thm1) {
            for (int b_sub : s.b_sub) tasks.push_back({c, eps, strength, bound, b_sub});
          } else {
            tasks.push_back({c, eps, strength, bound, 0});
          }
        }
      }
    }
  }

  out << "code,k,attack,strength,b_sub," << BoundReport::csv_header() << "\n";
  const std::string attack_name = EveModel{s.attack_model, 0.0}.name();

  auto evaluate = [&](std::size_t index) {
    const BoundTask& task = tasks[index];
    const CodeSpec& spec = s.codes[task.code_index];
    const BinaryLinearCode code = spec.resolve();
    const EveModel attack{s.attack_model, task.strength};
    const BitConditionalStates bits = eve_bit_states(attack, uniform_bb84_ensemble());
    const double chi = s.chi_source == "channel" ? binary_input_chi_sup(bits)
                                                 : per_position_chi(bits);
    BoundReport report;
    switch (task.bound) {
      case BoundKind::thm1:
        report = thm1_bound(task.b_sub, code.n(), code.rate(), chi, task.eps);
        break;
      case BoundKind::thm2: {
        const double v = lemma1_V(CodedCQState::homogeneous(code, bits));
        report = thm2_bound(code.n(), code.rate(), chi, v, s.c_const, task.eps);
        break;
      }
      case BoundKind::cor1: {
        const WeightStats stats = code.enumerate_weights();
        report = cor1_bound(code, stats, chi, bits, s.c_const, task.eps);
        break;
      }
      case BoundKind::cor2: {
        const auto v0 = rel_entropy_variance(bits.rho0, bits.rho_tilde);
        report = cor2_bound(code.n(), code.rate(), chi,
                            v0.value_or(std::numeric_limits<double>::infinity()), s.c_const,
                            task.eps);
        break;
      }
    }
    report.chi_source = s.chi_source;
    std::ostringstream row;
    row << csv_field(spec.label()) << ',' << code.k() << ',' << attack_name << ','
        << format_double(task.strength) << ',' << task.b_sub << ',' << report.csv_row();
    return row.str();
  };

  for (const std::string& row : run_pool(options.jobs, tasks.size(), evaluate)) {
    out << row << "\n";
  }
  return 0;
}

int cmd_simulate(const Scenario& scenario, const CommandOptions& options, std::ostream& out) {
  if (!scenario.protocol) {
    throw std::invalid_argument("simulate: scenario lacks a protocol section");
  }
  const ProtocolScenario& s = *scenario.protocol;

  std::vector<std::optional<double>> channel_axis{std::nullopt};
  if (!s.sweep.channel_param.empty()) {
    channel_axis.assign(s.sweep.channel_param.begin(), s.sweep.channel_param.end());
  }
  std::vector<std::optional<double>> strength_axis{std::nullopt};
  if (!s.sweep.eve_strength.empty()) {
    strength_axis.assign(s.sweep.eve_strength.begin(), s.sweep.eve_strength.end());
  }

  struct Point {
    std::optional<double> channel_param;
    std::optional<double> eve_strength;
    std::uint64_t seed;
  };
  std::vector<Point> points;
  const std::uint64_t base_seed = options.seed.value_or(s.seed);
  for (const auto& q : channel_axis) {
    for (const auto& strength : strength_axis) {
      points.push_back({q, strength, base_seed + points.size()});
    }
  }

  out << BlockTranscript::csv_header() << "\n";
  auto simulate_point = [&](std::size_t index) {
    const Point& point = points[index];
    const ProtocolConfig cfg = s.materialize(point.channel_param, point.eve_strength, point.seed);
    const SessionResult result = run_session(cfg);
    std::ostringstream text;
    text << "# session channel_param="
         << format_double(point.channel_param.value_or(s.backward_param))
         << " eve_strength=" << format_double(point.eve_strength.value_or(s.eve.param))
         << " seed=" << point.seed << "\n";
    for (const BlockTranscript& t : result.transcripts) text << t.csv_row() << "\n";
    text << result.summary.csv_comment() << "\n";
    return text.str();
  };

  for (const std::string& chunk : run_pool(options.jobs, points.size(), simulate_point)) {
    out << chunk;
  }
  return 0;
}

int cmd_codes(const std::string& name_or_path, std::ostream& out) {
  BinaryLinearCode code = [&] {
    if (std::filesystem::exists(name_or_path)) return BinaryLinearCode::from_file(name_or_path);
    return BinaryLinearCode::named(name_or_path);
  }();
  const WeightStats stats = code.enumerate_weights();
  const auto balanced = code.balanced_positions();
  std::string balanced_string(balanced.size(), '0');
  bool all_balanced = true;
  for (std::size_t j = 0; j < balanced.size(); ++j) {
    balanced_string[j] = balanced[j] ? '1' : '0';
    all_balanced &= balanced[j];
  }

  out << "code,n,k,rate,mean_weight,var_weight,penalty_factor,all_balanced\n";
  out << csv_field(name_or_path) << ',' << code.n() << ',' << code.k() << ','
      << format_double(code.rate()) << ',' << format_double(stats.mean_weight) << ','
      << format_double(stats.var_weight) << ','
      << format_double(stats.penalty_factor(code.n())) << ',' << (all_balanced ? 1 : 0) << "\n";
  out << "# balanced_positions " << balanced_string << "\n";
  out << "# weight_enumerator";
  for (const auto& [weight, count] : stats.enumerator) out << ' ' << weight << ':' << count;
  out << "\n";
  return 0;
}

namespace {

CodedCQState random_instance(Rng& rng) {
  const int n = 1 + static_cast<int>(rng.uniform_int(6));
  const int k = 1 + static_cast<int>(rng.uniform_int(std::min(3, n)));
  BinaryLinearCode code = BinaryLinearCode::random_code(k, n, rng.next_u64());
  std::vector<std::array<DensityOperator, 2>> states;
  states.reserve(n);
  for (int j = 0; j < n; ++j) {
    states.push_back({random_qubit_state(rng, 0.05), random_qubit_state(rng, 0.05)});
  }
  return CodedCQState(std::move(code), std::move(states));
}

struct SuiteResult {
  int failures = 0;
  double worst = 0.0;
};

}  // namespace

int cmd_verify(const VerifyOptions& options, std::ostream& out) {
  Rng rng(options.seed);
  int failures = 0;

  {  // Exact single-letter formulas against the dense joint-state oracles.
    SuiteResult d_suite, v_suite;
    for (int trial = 0; trial < options.trials; ++trial) {
      const CodedCQState instance = random_instance(rng);
      const double dd = std::abs(lemma1_D_exact(instance) - brute_force_joint_D(instance));
      const double dv = std::abs(lemma1_V(instance) + options.inject_v_error -
                                 brute_force_joint_V(instance));
      d_suite.worst = std::max(d_suite.worst, dd);
      v_suite.worst = std::max(v_suite.worst, dv);
      if (dd > 1e-9) ++d_suite.failures;
      if (dv > 1e-8) ++v_suite.failures;
    }
    out << "oracle-equivalence D: " << (options.trials - d_suite.failures) << "/"
        << options.trials << " within 1e-9 (worst " << format_double(d_suite.worst) << ")\n";
    out << "oracle-equivalence V: " << (options.trials - v_suite.failures) << "/"
        << options.trials << " within 1e-8 (worst " << format_double(v_suite.worst) << ")\n";
    failures += d_suite.failures + v_suite.failures;
  }

  {  // Divergence invariance under conjugation by a random unitary.
    SuiteResult suite;
    for (int trial = 0; trial < options.trials; ++trial) {
      const DensityOperator rho = random_qubit_state(rng, 0.05);
      const DensityOperator sigma = random_qubit_state(rng, 0.05);
      const Matrix u = random_unitary(rng, 2);
      const double d = *rel_entropy(rho, sigma);
      const double v = *rel_entropy_variance(rho, sigma);
      const double d_rot = *rel_entropy(conjugate(u, rho), conjugate(u, sigma));
      const double v_rot = *rel_entropy_variance(conjugate(u, rho), conjugate(u, sigma));
      const double err = std::max(std::abs(d - d_rot), std::abs(v - v_rot));
      suite.worst = std::max(suite.worst, err);
      if (err > 1e-10) ++suite.failures;
    }
    out << "unitary-invariance: " << (options.trials - suite.failures) << "/" << options.trials
        << " within 1e-10 (worst " << format_double(suite.worst) << ")\n";
    failures += suite.failures;
  }

  {  // Scalar factoring identities for D and for the squared-log moment.
    SuiteResult d_suite, v_suite;
    const double scalars[] = {0.3, 0.7, 1.5};
    for (int trial = 0; trial < options.trials; ++trial) {
      const double a = scalars[trial % 3];
      const Matrix rho =
          kron(random_qubit_state(rng, 0.02).matrix(), random_qubit_state(rng, 0.02).matrix());
      const Matrix sigma =
          kron(random_qubit_state(rng, 0.02).matrix(), random_qubit_state(rng, 0.02).matrix());
      const double d = *spectral::rel_entropy_raw(rho, sigma);
      const double lhs_d = *spectral::rel_entropy_raw(a * rho, sigma);
      const double dd = std::abs(lhs_d - (a * std::log2(a) + a * d));
      d_suite.worst = std::max(d_suite.worst, dd);
      if (dd > 1e-9) ++d_suite.failures;

      const DensityOperator rho_q = random_qubit_state(rng, 0.02);
      const DensityOperator sigma_q = random_qubit_state(rng, 0.02);
      const double m2 = *rel_entropy_second_moment(rho_q, sigma_q);
      const double d_q = *rel_entropy(rho_q, sigma_q);
      const double lhs_v = *spectral::second_moment_raw(a * rho_q.matrix(), sigma_q.matrix());
      const double log_a = std::log2(a);
      const double dv = std::abs(lhs_v - (a * m2 + a * log_a * log_a + 2.0 * a * log_a * d_q));
      v_suite.worst = std::max(v_suite.worst, dv);
      if (dv > 1e-8) ++v_suite.failures;
    }
    out << "factor-out-D: " << (options.trials - d_suite.failures) << "/" << options.trials
        << " within 1e-9 (worst " << format_double(d_suite.worst) << ")\n";
    out << "factor-out-V: " << (options.trials - v_suite.failures) << "/" << options.trials
        << " within 1e-8 (worst " << format_double(v_suite.worst) << ")\n";
    failures += d_suite.failures + v_suite.failures;
  }

  out << (failures == 0 ? "verify: PASS\n" : "verify: FAIL\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace qsdc
