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

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsdc/bounds.hpp"
#include "qsdc/protocol.hpp"

namespace qsdc {

/// Scenario files are strict JSON: unknown keys are rejected so a typo never
/// silently falls back to a default, and referenced code files must resolve
/// at parse time.

struct CodeSpec {
  std::string name;  // builtin, e.g. "rm_1_4"
  std::string file;  // or a generator matrix file

  BinaryLinearCode resolve() const;
  std::string label() const { return name.empty() ? file : name; }
};

struct BoundsScenario {
  std::vector<BoundKind> which;
  std::vector<CodeSpec> codes;
  std::vector<double> eps;
  double c_const = 0.0;
  EveModel::Kind attack_model = EveModel::Kind::none;
  std::vector<double> attack_strength{0.0};
  std::vector<int> b_sub{1};
  std::string chi_source = "ensemble";  // or "channel"
};

struct ProtocolSweep {
  std::vector<double> channel_param;  // overrides both channel parameters
  std::vector<double> eve_strength;
};

struct ProtocolScenario {
  CodeSpec code;
  int payload_qubits = 0;
  int pilot_qubits = 1;
  ChannelKind forward_kind = ChannelKind::depolarizing;
  double forward_param = 0.0;
  ChannelKind backward_kind = ChannelKind::depolarizing;
  double backward_param = 0.0;
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
  ProtocolSweep sweep;

  /// Materialize a runnable config, optionally overriding channel parameter
  /// and attack strength (sweep axes) and the seed.
  ProtocolConfig materialize(std::optional<double> channel_param,
                             std::optional<double> eve_strength,
                             std::optional<std::uint64_t> seed_override) const;
};

struct Scenario {
  std::optional<BoundsScenario> bounds;
  std::optional<ProtocolScenario> protocol;
};

Scenario parse_scenario(const nlohmann::json& doc);
Scenario parse_scenario_file(const std::string& path);

}  // namespace qsdc
