// Copyright 2026 The framesim Authors
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

#include "framesim/circuit.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace framesim {

namespace {

std::pair<int, int> line_column(std::string_view text, std::size_t byte) {
  int line = 1;
  int col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

[[noreturn]] void field_error(const std::string& source, const std::string& field, const std::string& msg) {
  throw CircuitParseError(source + ": field " + field + ": " + msg);
}

const nlohmann::json& require(const nlohmann::json& obj, const char* key, const std::string& source,
                              const std::string& path) {
  if (!obj.is_object()) field_error(source, path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) field_error(source, path + "." + key, "missing");
  return *it;
}

}  // namespace

NoisyChannel GateApplication::channel() const { return make_noisy_gate(name, noise, strength); }

std::string GateApplication::channel_key() const {
  std::string key = canonical_gate_name(name);
  if (noise) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "+%s(%.17g)", to_string(*noise).c_str(), strength);
    key += buf;
  }
  return key;
}

bool GateApplication::is_clifford_pauli_mixture() const {
  return is_clifford_gate(name) && (!noise || *noise != NoiseModel::AmplitudeDamping);
}

void Circuit::validate() const {
  if (n_qubits < 1) throw std::invalid_argument("n_qubits must be positive");
  if (initial_state.size() != n_qubits) throw std::invalid_argument("initial_state length differs from n_qubits");
  if (static_cast<int>(observable.size()) != n_qubits) {
    throw std::invalid_argument("observable length differs from n_qubits");
  }
  if (observable.phase() % 2 != 0) throw std::invalid_argument("observable must be Hermitian (sign + or -)");
  for (std::size_t g = 0; g < gates.size(); ++g) {
    const GateApplication& ga = gates[g];
    const std::string where = "gates[" + std::to_string(g) + "]";
    const int arity = gate_arity(ga.name);
    if (static_cast<int>(ga.qubits.size()) != arity) {
      throw std::invalid_argument(where + ".qubits: gate " + ga.name + " needs " + std::to_string(arity) + " qubits");
    }
    for (std::size_t i = 0; i < ga.qubits.size(); ++i) {
      if (ga.qubits[i] < 0 || ga.qubits[i] >= n_qubits) {
        throw std::invalid_argument(where + ".qubits: index " + std::to_string(ga.qubits[i]) + " out of range");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (ga.qubits[i] == ga.qubits[j]) throw std::invalid_argument(where + ".qubits: duplicate index");
      }
    }
    if (ga.noise && !(ga.strength >= 0.0 && ga.strength <= max_noise_strength(*ga.noise))) {
      throw std::invalid_argument(where + ".noise.strength: outside the valid range of " + to_string(*ga.noise));
    }
  }
}

Circuit parse_circuit(std::string_view text, const std::string& source) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw CircuitParseError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
  }
  Circuit c;
  try {
    const auto& nq = require(j, "n_qubits", source, "$");
    if (!nq.is_number_integer()) field_error(source, "n_qubits", "expected an integer");
    c.n_qubits = nq.get<int>();
    if (c.n_qubits < 1) field_error(source, "n_qubits", "must be positive");

    if (j.contains("initial_state")) {
      if (!j["initial_state"].is_string()) field_error(source, "initial_state", "expected a string of 0 1 + - r l");
      try {
        c.initial_state = ProductState::parse(j["initial_state"].get<std::string>());
      } catch (const std::exception& e) {
        field_error(source, "initial_state", e.what());
      }
    } else {
      c.initial_state = ProductState::zeros(c.n_qubits);
    }

    const auto& obs = require(j, "observable", source, "$");
    if (!obs.is_string()) field_error(source, "observable", "expected a Pauli string such as \"+ZIZ\"");
    try {
      c.observable = PauliString::parse(obs.get<std::string>());
    } catch (const std::exception& e) {
      field_error(source, "observable", e.what());
    }

    const auto& gates = require(j, "gates", source, "$");
    if (!gates.is_array()) field_error(source, "gates", "expected an array");
    for (std::size_t g = 0; g < gates.size(); ++g) {
      const std::string path = "gates[" + std::to_string(g) + "]";
      const auto& gj = gates[g];
      GateApplication ga;
      const auto& name = require(gj, "name", source, path);
      if (!name.is_string()) field_error(source, path + ".name", "expected a string");
      try {
        ga.name = canonical_gate_name(name.get<std::string>());
      } catch (const std::exception& e) {
        field_error(source, path + ".name", e.what());
      }
      const auto& qs = require(gj, "qubits", source, path);
      if (!qs.is_array()) field_error(source, path + ".qubits", "expected an array of integers");
      for (const auto& q : qs) {
        if (!q.is_number_integer()) field_error(source, path + ".qubits", "expected integers");
        ga.qubits.push_back(q.get<int>());
      }
      if (gj.contains("noise") && !gj["noise"].is_null()) {
        const auto& nj = gj["noise"];
        const auto& model = require(nj, "model", source, path + ".noise");
        if (!model.is_string()) field_error(source, path + ".noise.model", "expected a string");
        try {
          ga.noise = parse_noise_model(model.get<std::string>());
        } catch (const std::exception& e) {
          field_error(source, path + ".noise.model", e.what());
        }
        const auto& strength = require(nj, "strength", source, path + ".noise");
        if (!strength.is_number()) field_error(source, path + ".noise.strength", "expected a number");
        ga.strength = strength.get<double>();
      }
      c.gates.push_back(std::move(ga));
    }
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw CircuitParseError(source + ": " + e.what());
  }
  return c;
}

Circuit load_circuit(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CircuitParseError("cannot open circuit file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_circuit(buf.str(), path.string());
}

nlohmann::json circuit_to_json(const Circuit& c) {
  nlohmann::json j;
  j["n_qubits"] = c.n_qubits;
  j["initial_state"] = c.initial_state.letters();
  j["observable"] = c.observable.to_string();
  nlohmann::json gates = nlohmann::json::array();
  for (const GateApplication& g : c.gates) {
    nlohmann::json gj;
    gj["name"] = g.name;
    gj["qubits"] = g.qubits;
    if (g.noise) gj["noise"] = {{"model", to_string(*g.noise)}, {"strength", g.strength}};
    gates.push_back(std::move(gj));
  }
  j["gates"] = std::move(gates);
  return j;
}

}  // namespace framesim
