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
#include <optional>
#include <string>

#include "qsdc/scenario.hpp"

namespace qsdc {

struct CommandOptions {
  std::optional<std::uint64_t> seed;  // overrides scenario seeds when set
  int jobs = 1;
  int verbosity = 0;
};

/// Key-length bound sweep over the scenario grid (codes x eps x attack
/// strength x requested bounds, with the sub-block axis for the asymptotic
/// bound). Grid points run on a worker pool of `jobs` threads; rows are
/// emitted in deterministic grid order regardless of completion order.
/// Returns a process exit code.
int cmd_bounds(const Scenario& scenario, const CommandOptions& options, std::ostream& out);

/// Block-by-block protocol simulation; one transcript row per attempt and a
/// commented summary row per session.
int cmd_simulate(const Scenario& scenario, const CommandOptions& options, std::ostream& out);

/// Weight-statistics report for a builtin code name or a generator file.
int cmd_codes(const std::string& name_or_path, std::ostream& out);

struct VerifyOptions {
  int trials = 100;
  std::uint64_t seed = 0x5eed;
  /// Test hook: added to every single-letter variance before comparison so
  /// the harness can prove it detects deviations.
  double inject_v_error = 0.0;
};

/// Self-check suites: exact joint divergences against the brute-force
/// oracles, unitary invariance of D and V, and the scalar factoring
/// identities. Returns 0 on success, 1 on any failure.
int cmd_verify(const VerifyOptions& options, std::ostream& out);

}  // namespace qsdc
