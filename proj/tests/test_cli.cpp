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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qsdc/commands.hpp"

using namespace qsdc;
using nlohmann::json;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> fields_of(const std::string& line) {
  // Minimal RFC-4180 reader: quoted fields may contain commas and doubled
  // quotes.
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else {
      field += c;
    }
  }
  fields.push_back(field);
  return fields;
}

json minimal_bounds_doc() {
  return json{{"bounds",
               {{"which", {"thm2"}},
                {"codes", {{{"name", "rm_1_4"}}}},
                {"eps", {0.9}},
                {"attack", {{"model", "none"}, {"strength", {0.0}}}}}}};
}

json protocol_doc(int blocks, std::uint64_t seed) {
  return json{{"protocol",
               {{"code", {{"name", "random(12,16,7)"}}},
                {"payload_qubits", 16},
                {"pilot_qubits", 8},
                {"blocks", blocks},
                {"seed", seed},
                {"initial_pool_bits", 4000}}}};
}

}  // namespace

TEST_CASE("scenario parsing") {
  SUBCASE("a well-formed document parses") {
    const Scenario s = parse_scenario(minimal_bounds_doc());
    REQUIRE(s.bounds.has_value());
    CHECK(s.bounds->which.size() == 1);
    CHECK(s.bounds->codes.size() == 1);
    CHECK_FALSE(s.protocol.has_value());
  }
  SUBCASE("unknown keys are rejected everywhere") {
    json doc = minimal_bounds_doc();
    doc["bounds"]["typo_key"] = 1;
    CHECK_THROWS_AS(parse_scenario(doc), std::invalid_argument);

    json doc2 = minimal_bounds_doc();
    doc2["mystery"] = true;
    CHECK_THROWS_AS(parse_scenario(doc2), std::invalid_argument);

    json doc3 = protocol_doc(5, 1);
    doc3["protocol"]["qber"] = 0.1;
    CHECK_THROWS_AS(parse_scenario(doc3), std::invalid_argument);
  }
  SUBCASE("an empty document is rejected") {
    CHECK_THROWS_AS(parse_scenario(json::object()), std::invalid_argument);
  }
  SUBCASE("unresolvable code references fail at parse time") {
    json doc = minimal_bounds_doc();
    doc["bounds"]["codes"] = {{{"file", "/nonexistent/code.txt"}}};
    CHECK_THROWS_AS(parse_scenario(doc), std::invalid_argument);
    json doc2 = minimal_bounds_doc();
    doc2["bounds"]["codes"] = {{{"name", "golay"}}};
    CHECK_THROWS_AS(parse_scenario(doc2), std::invalid_argument);
  }
  SUBCASE("code spec needs exactly one of name and file") {
    json doc = minimal_bounds_doc();
    doc["bounds"]["codes"] = {{{"name", "rm_1_4"}, {"file", "x"}}};
    CHECK_THROWS_AS(parse_scenario(doc), std::invalid_argument);
  }
}

TEST_CASE("bounds command") {
  SUBCASE("a single grid point reproduces the direct evaluation") {
    std::ostringstream out;
    CHECK(cmd_bounds(parse_scenario(minimal_bounds_doc()), CommandOptions{}, out) == 0);
    const auto lines = lines_of(out.str());
    REQUIRE(lines.size() == 2);

    const auto header = fields_of(lines[0]);
    const auto row = fields_of(lines[1]);
    REQUIRE(header.size() == row.size());

    // With no attack both conditional states coincide, so chi and V vanish.
    const BoundReport expected = thm2_bound(16, 5.0 / 16.0, 0.0, 0.0, 0.0, 0.9);
    CHECK(row[0] == "rm_1_4");
    CHECK(row[5] == "thm2");
    const double got = std::stod(row[12]);  // bound_bits column
    CHECK(std::abs(got - expected.bound_bits) <= 1e-9);
  }
  SUBCASE("an empty sweep axis yields a header-only table") {
    json doc = minimal_bounds_doc();
    doc["bounds"]["eps"] = json::array();
    std::ostringstream out;
    CHECK(cmd_bounds(parse_scenario(doc), CommandOptions{}, out) == 0);
    CHECK(lines_of(out.str()).size() == 1);
  }
  SUBCASE("grid output is deterministic and independent of the job count") {
    json doc = minimal_bounds_doc();
    doc["bounds"]["which"] = {"thm2", "cor1", "cor2", "thm1"};
    doc["bounds"]["eps"] = {0.5, 0.9};
    doc["bounds"]["attack"] = {{"model", "entangling_probe"}, {"strength", {0.0, 0.5, 1.0}}};
    doc["bounds"]["b_sub"] = {1, 4};
    const Scenario s = parse_scenario(doc);

    std::ostringstream serial, parallel;
    CommandOptions one{}, many{};
    many.jobs = 4;
    CHECK(cmd_bounds(s, one, serial) == 0);
    CHECK(cmd_bounds(s, many, parallel) == 0);
    CHECK(serial.str() == parallel.str());
    // 1 code x 2 eps x 3 strengths x (3 plain bounds + 2 sub-block rows).
    CHECK(lines_of(serial.str()).size() == 1 + 2 * 3 * 5);
  }
  SUBCASE("the optimized-prior chi is labeled and never below the even-prior one") {
    json even = minimal_bounds_doc();
    even["bounds"]["which"] = {"cor2"};
    even["bounds"]["attack"] = {{"model", "entangling_probe"}, {"strength", {0.6}}};
    json optimized = even;
    optimized["bounds"]["chi_source"] = "channel";

    std::ostringstream out_even, out_optimized;
    CHECK(cmd_bounds(parse_scenario(even), CommandOptions{}, out_even) == 0);
    CHECK(cmd_bounds(parse_scenario(optimized), CommandOptions{}, out_optimized) == 0);
    const auto row_even = fields_of(lines_of(out_even.str())[1]);
    const auto row_optimized = fields_of(lines_of(out_optimized.str())[1]);
    CHECK(row_even.back() == "ensemble");
    CHECK(row_optimized.back() == "channel");
    CHECK(std::stod(row_optimized[8]) >= std::stod(row_even[8]) - 1e-10);

    json bad = even;
    bad["bounds"]["chi_source"] = "exact";
    CHECK_THROWS_AS(parse_scenario(bad), std::invalid_argument);
  }
  SUBCASE("the asymptotic bound's floor violation surfaces as a config error") {
    json doc = minimal_bounds_doc();
    doc["bounds"]["which"] = {"thm1"};
    doc["bounds"]["eps"] = {1e-6};  // rm_1_4 block is far below the floor
    std::ostringstream out;
    CHECK_THROWS_AS(cmd_bounds(parse_scenario(doc), CommandOptions{}, out), std::domain_error);
  }
}

TEST_CASE("codes command") {
  std::ostringstream out;
  CHECK(cmd_codes("rm_1_4", out) == 0);
  const auto lines = lines_of(out.str());
  REQUIRE(lines.size() >= 2);
  const auto row = fields_of(lines[1]);
  CHECK(row[1] == "16");
  CHECK(row[2] == "5");
  CHECK(std::stod(row[4]) == 8.0);
  CHECK(std::stod(row[5]) == 4.0);
  const double penalty = 4.0 / (2.0 * 16.0 * std::log2(std::exp(1.0)));
  CHECK(std::abs(std::stod(row[6]) - penalty) <= 1e-12);
  CHECK(row[7] == "1");

  SUBCASE("two-point weight distribution of the repetition code") {
    std::ostringstream rep;
    CHECK(cmd_codes("repetition(3)", rep) == 0);
    const auto rep_row = fields_of(lines_of(rep.str())[1]);
    CHECK(std::stod(rep_row[5]) == 9.0 / 4.0);
  }
  SUBCASE("a zero column is flagged as unbalanced") {
    const std::string path = "/tmp/qsdc_cli_zero_column.txt";
    {
      std::ofstream file(path);
      file << "1 3\n110\n";
    }
    std::ostringstream report;
    CHECK(cmd_codes(path, report) == 0);
    const auto report_lines = lines_of(report.str());
    CHECK(fields_of(report_lines[1]).back() == "0");
    CHECK(report_lines[2].find("110") != std::string::npos);
  }
  SUBCASE("unknown names fail") {
    std::ostringstream sink;
    CHECK_THROWS_AS(cmd_codes("golay", sink), std::invalid_argument);
  }
}

TEST_CASE("sub-block deficits in the emitted table scale with sqrt(B_sub)") {
  json doc{{"bounds",
            {{"which", {"thm1"}},
             {"codes", {{{"name", "random(64,128,3)"}}}},
             {"eps", {1e-6}},
             {"attack", {{"model", "entangling_probe"}, {"strength", {0.3}}}},
             {"b_sub", {1, 4, 16, 64}}}}};
  std::ostringstream out;
  CHECK(cmd_bounds(parse_scenario(doc), CommandOptions{}, out) == 0);
  const auto lines = lines_of(out.str());
  REQUIRE(lines.size() == 5);

  double reference = 0.0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto row = fields_of(lines[i]);
    // The code label contains commas and must arrive quoted as one field.
    CHECK(row[0] == "random(64,128,3)");
    const int b_sub = std::stoi(row[4]);
    const double n = std::stod(row[6]);
    const double r_code = std::stod(row[7]);
    const double chi = std::stod(row[8]);
    const double bound = std::stod(row[12]);
    const double deficit = n * (r_code - chi) - bound;
    const double scaled = deficit / std::sqrt(static_cast<double>(b_sub));
    if (i == 1) {
      reference = scaled;
    } else {
      CHECK(std::abs(scaled - reference) <= 1e-9 * reference);
    }
  }
}

TEST_CASE("simulate command") {
  const Scenario s = parse_scenario(protocol_doc(20, 5));
  std::ostringstream first, second;
  CHECK(cmd_simulate(s, CommandOptions{}, first) == 0);
  CHECK(cmd_simulate(s, CommandOptions{}, second) == 0);
  CHECK(first.str() == second.str());

  const auto lines = lines_of(first.str());
  CHECK(lines.front() == BlockTranscript::csv_header());
  int comments = 0, rows = 0;
  for (const auto& line : lines) {
    if (line.rfind("#", 0) == 0) {
      ++comments;
    } else {
      ++rows;
    }
  }
  CHECK(comments >= 2);  // session banner and summary
  CHECK(rows == 1 + 20); // header plus one row per noiseless block

  SUBCASE("the seed option changes the transcript") {
    CommandOptions options;
    options.seed = 6;
    std::ostringstream other;
    CHECK(cmd_simulate(s, options, other) == 0);
    CHECK(first.str() != other.str());
  }
  SUBCASE("sweeps cover the grid") {
    json doc = protocol_doc(5, 9);
    doc["protocol"]["sweep"] = {{"channel_param", {0.02, 0.05}}};
    doc["protocol"]["qber_abort_forward"] = 0.5;
    doc["protocol"]["qber_abort_backward"] = 0.5;
    std::ostringstream out;
    CHECK(cmd_simulate(parse_scenario(doc), CommandOptions{}, out) == 0);
    int banners = 0;
    for (const auto& line : lines_of(out.str())) {
      if (line.rfind("# session", 0) == 0) ++banners;
    }
    CHECK(banners == 2);
  }
  SUBCASE("attack-strength sweeps drive separate sessions") {
    json doc = protocol_doc(5, 9);
    doc["protocol"]["eve"] = {{"model", "entangling_probe"}, {"param", 0.0}};
    doc["protocol"]["sweep"] = {{"eve_strength", {0.0, 0.5, 1.0}}};
    doc["protocol"]["qber_abort_forward"] = 0.5;
    doc["protocol"]["qber_abort_backward"] = 0.5;
    std::ostringstream out;
    CHECK(cmd_simulate(parse_scenario(doc), CommandOptions{}, out) == 0);
    int banners = 0;
    for (const auto& line : lines_of(out.str())) {
      if (line.rfind("# session", 0) == 0) ++banners;
    }
    CHECK(banners == 3);
  }
}

TEST_CASE("verify command") {
  SUBCASE("the default configuration passes") {
    VerifyOptions options;
    options.trials = 12;
    std::ostringstream out;
    CHECK(cmd_verify(options, out) == 0);
    CHECK(out.str().find("verify: PASS") != std::string::npos);
  }
  SUBCASE("an injected variance perturbation is detected") {
    VerifyOptions options;
    options.trials = 12;
    options.inject_v_error = 1e-3;
    std::ostringstream out;
    CHECK(cmd_verify(options, out) == 1);
    CHECK(out.str().find("verify: FAIL") != std::string::npos);
  }
  SUBCASE("reports are reproducible per seed") {
    VerifyOptions options;
    options.trials = 8;
    options.seed = 123;
    std::ostringstream a, b;
    cmd_verify(options, a);
    cmd_verify(options, b);
    CHECK(a.str() == b.str());
  }
}
