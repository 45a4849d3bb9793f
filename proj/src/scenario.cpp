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

#include "qsdc/scenario.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace qsdc {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw std::invalid_argument("scenario: " + where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      throw std::invalid_argument("scenario: unknown key '" + key + "' in " + where);
    }
  }
}

CodeSpec parse_code(const json& obj, const std::string& where) {
  require_keys(obj, where, {"name", "file"});
  CodeSpec spec;
  if (obj.contains("name")) spec.name = obj.at("name").get<std::string>();
  if (obj.contains("file")) spec.file = obj.at("file").get<std::string>();
  if (spec.name.empty() == spec.file.empty()) {
    throw std::invalid_argument("scenario: " + where + " needs exactly one of name/file");
  }
  spec.resolve();  // fail now if the reference does not resolve
  return spec;
}

template <typename T>
std::vector<T> parse_list(const json& value, const std::string& where) {
  if (!value.is_array()) throw std::invalid_argument("scenario: " + where + " must be a list");
  std::vector<T> out;
  for (const auto& item : value) out.push_back(item.get<T>());
  return out;
}

BoundsScenario parse_bounds(const json& obj) {
  require_keys(obj, "bounds",
               {"which", "codes", "eps", "C", "attack", "b_sub", "chi_source"});
  BoundsScenario s;
  for (const std::string& name : parse_list<std::string>(obj.at("which"), "bounds.which")) {
    s.which.push_back(bound_kind_from_string(name));
  }
  if (!obj.contains("codes")) throw std::invalid_argument("scenario: bounds.codes required");
  for (const auto& item : obj.at("codes")) {
    s.codes.push_back(parse_code(item, "bounds.codes[]"));
  }
  s.eps = parse_list<double>(obj.at("eps"), "bounds.eps");
  if (obj.contains("C")) s.c_const = obj.at("C").get<double>();
  if (obj.contains("attack")) {
    const json& attack = obj.at("attack");
    require_keys(attack, "bounds.attack", {"model", "strength"});
    s.attack_model = EveModel::kind_from_string(attack.at("model").get<std::string>());
    if (attack.contains("strength")) {
      s.attack_strength = parse_list<double>(attack.at("strength"), "bounds.attack.strength");
    }
  }
  if (obj.contains("b_sub")) s.b_sub = parse_list<int>(obj.at("b_sub"), "bounds.b_sub");
  if (obj.contains("chi_source")) {
    s.chi_source = obj.at("chi_source").get<std::string>();
    if (s.chi_source != "ensemble" && s.chi_source != "channel") {
      throw std::invalid_argument("scenario: chi_source must be ensemble or channel");
    }
  }
  return s;
}

ProtocolScenario parse_protocol(const json& obj) {
  require_keys(obj, "protocol",
               {"code", "payload_qubits", "pilot_qubits", "forward_channel", "backward_channel",
                "eve", "qber_abort_forward", "qber_abort_backward", "eps", "eps_hash", "C",
                "pa_bound", "blocks", "seed", "initial_pool_bits", "retransmit_cap", "sweep"});
  ProtocolScenario s;
  s.code = parse_code(obj.at("code"), "protocol.code");
  const BinaryLinearCode code = s.code.resolve();
  s.payload_qubits = obj.value("payload_qubits", code.n());
  s.pilot_qubits = obj.value("pilot_qubits", 1);

  auto parse_channel = [&](const char* key, ChannelKind& kind, double& param) {
    if (!obj.contains(key)) return;
    const json& ch = obj.at(key);
    require_keys(ch, std::string("protocol.") + key, {"kind", "param"});
    kind = channel_kind_from_string(ch.at("kind").get<std::string>());
    param = ch.value("param", 0.0);
  };
  parse_channel("forward_channel", s.forward_kind, s.forward_param);
  parse_channel("backward_channel", s.backward_kind, s.backward_param);

  if (obj.contains("eve")) {
    const json& eve = obj.at("eve");
    require_keys(eve, "protocol.eve", {"model", "param"});
    s.eve.kind = EveModel::kind_from_string(eve.at("model").get<std::string>());
    s.eve.param = eve.value("param", 0.0);
  }
  s.qber_abort_forward = obj.value("qber_abort_forward", s.qber_abort_forward);
  s.qber_abort_backward = obj.value("qber_abort_backward", s.qber_abort_backward);
  s.eps = obj.value("eps", s.eps);
  s.eps_hash = obj.value("eps_hash", s.eps_hash);
  s.c_const = obj.value("C", s.c_const);
  if (obj.contains("pa_bound")) {
    s.pa_bound = bound_kind_from_string(obj.at("pa_bound").get<std::string>());
  }
  s.blocks = obj.value("blocks", s.blocks);
  s.seed = obj.value("seed", s.seed);
  s.initial_pool_bits = obj.value("initial_pool_bits", s.initial_pool_bits);
  s.retransmit_cap = obj.value("retransmit_cap", s.retransmit_cap);
  if (obj.contains("sweep")) {
    const json& sweep = obj.at("sweep");
    require_keys(sweep, "protocol.sweep", {"channel_param", "eve_strength"});
    if (sweep.contains("channel_param")) {
      s.sweep.channel_param =
          parse_list<double>(sweep.at("channel_param"), "protocol.sweep.channel_param");
    }
    if (sweep.contains("eve_strength")) {
      s.sweep.eve_strength =
          parse_list<double>(sweep.at("eve_strength"), "protocol.sweep.eve_strength");
    }
  }
  return s;
}

}  // namespace

BinaryLinearCode CodeSpec::resolve() const {
  if (!name.empty()) return BinaryLinearCode::named(name);
  return BinaryLinearCode::from_file(file);
}

ProtocolConfig ProtocolScenario::materialize(std::optional<double> channel_param,
                                             std::optional<double> eve_strength,
                                             std::optional<std::uint64_t> seed_override) const {
  EveModel eve_model = eve;
  if (eve_strength) eve_model.param = *eve_strength;
  ProtocolConfig cfg{
      .code = code.resolve(),
      .payload_qubits = payload_qubits,
      .pilot_qubits = pilot_qubits,
      .forward_channel = standard_channel(forward_kind, channel_param.value_or(forward_param)),
      .backward_channel = standard_channel(backward_kind, channel_param.value_or(backward_param)),
      .eve = eve_model,
      .qber_abort_forward = qber_abort_forward,
      .qber_abort_backward = qber_abort_backward,
      .eps = eps,
      .eps_hash = eps_hash,
      .c_const = c_const,
      .pa_bound = pa_bound,
      .blocks = blocks,
      .seed = seed_override.value_or(seed),
      .initial_pool_bits = initial_pool_bits,
      .retransmit_cap = retransmit_cap,
  };
  cfg.validate();
  return cfg;
}

Scenario parse_scenario(const nlohmann::json& doc) {
  require_keys(doc, "top level", {"bounds", "protocol"});
  Scenario scenario;
  if (doc.contains("bounds")) scenario.bounds = parse_bounds(doc.at("bounds"));
  if (doc.contains("protocol")) scenario.protocol = parse_protocol(doc.at("protocol"));
  if (!scenario.bounds && !scenario.protocol) {
    throw std::invalid_argument("scenario: needs a bounds or protocol section");
  }
  return scenario;
}

Scenario parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("scenario: cannot open " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("scenario: JSON parse error in " + path + ": " + e.what());
  }
  return parse_scenario(doc);
}

}  // namespace qsdc
