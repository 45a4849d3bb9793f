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

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qsdc/commands.hpp"

namespace {

constexpr int kExitVerificationFailure = 1;
constexpr int kExitConfigError = 2;

struct CommonArgs {
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  int verbosity = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool needs_config) {
  auto* config = cmd->add_option("--config", args.config_path, "scenario JSON file");
  if (needs_config) config->required();
  cmd->add_option("--out", args.out_path, "write output to this file instead of stdout");
  cmd->add_option("--seed", args.seed, "override the scenario seed");
  cmd->add_option("--jobs", args.jobs, "worker threads for grid points")->check(CLI::PositiveNumber);
  cmd->add_flag("-v,--verbose", args.verbosity, "increase verbosity");
}

int with_output(const CommonArgs& args, const std::function<int(std::ostream&)>& body) {
  if (args.out_path.empty()) return body(std::cout);
  std::ofstream out(args.out_path);
  if (!out) {
    std::cerr << "error: cannot open output file " << args.out_path << "\n";
    return kExitConfigError;
  }
  return body(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"key-length bounds and block-protocol simulation for "
               "quantum-memory-free secure direct communication"};
  app.require_subcommand(1);

  CommonArgs bounds_args, simulate_args;
  auto* bounds_cmd = app.add_subcommand("bounds", "evaluate key-length bounds over a grid");
  add_common(bounds_cmd, bounds_args, true);

  auto* simulate_cmd = app.add_subcommand("simulate", "run block-protocol sessions");
  add_common(simulate_cmd, simulate_args, true);

  qsdc::VerifyOptions verify_options;
  std::string verify_out_path;
  auto* verify_cmd = app.add_subcommand("verify", "run the self-check suites");
  verify_cmd->add_option("--trials", verify_options.trials, "instances per suite")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", verify_options.seed, "seed for the random instances");
  verify_cmd->add_option("--inject", verify_options.inject_v_error,
                         "test hook: perturb the single-letter variance by this amount");
  verify_cmd->add_option("--out", verify_out_path, "write the report to this file");

  std::string codes_target;
  std::string codes_out_path;
  auto* codes_cmd = app.add_subcommand("codes", "report weight statistics of a code");
  codes_cmd->add_option("code", codes_target, "builtin code name or generator matrix file")
      ->required();
  codes_cmd->add_option("--out", codes_out_path, "write the report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfigError;
  }

  try {
    if (bounds_cmd->parsed()) {
      const qsdc::Scenario scenario = qsdc::parse_scenario_file(bounds_args.config_path);
      qsdc::CommandOptions options{bounds_args.seed, bounds_args.jobs, bounds_args.verbosity};
      return with_output(bounds_args,
                         [&](std::ostream& out) { return qsdc::cmd_bounds(scenario, options, out); });
    }
    if (simulate_cmd->parsed()) {
      const qsdc::Scenario scenario = qsdc::parse_scenario_file(simulate_args.config_path);
      qsdc::CommandOptions options{simulate_args.seed, simulate_args.jobs,
                                   simulate_args.verbosity};
      return with_output(simulate_args, [&](std::ostream& out) {
        return qsdc::cmd_simulate(scenario, options, out);
      });
    }
    if (verify_cmd->parsed()) {
      CommonArgs args;
      args.out_path = verify_out_path;
      return with_output(args, [&](std::ostream& out) {
        return qsdc::cmd_verify(verify_options, out) == 0 ? 0 : kExitVerificationFailure;
      });
    }
    if (codes_cmd->parsed()) {
      CommonArgs args;
      args.out_path = codes_out_path;
      return with_output(args,
                         [&](std::ostream& out) { return qsdc::cmd_codes(codes_target, out); });
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitConfigError;
}
