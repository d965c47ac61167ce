// Copyright 2026 The qfs Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qfs/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "json.hpp"

namespace qfs {

namespace {

std::string qubit_error(std::size_t index, std::size_t n) {
  return "qubit index " + std::to_string(index) + " out of range for " + std::to_string(n) +
         " qubits";
}

}  // namespace

Circuit::Circuit(std::size_t n_qubits, std::size_t depth, Entanglement entanglement,
                 std::vector<Gate> gates)
    : n_qubits_(n_qubits),
      depth_(depth),
      param_count_(n_qubits * (depth + 1)),
      entanglement_(entanglement),
      gates_(std::move(gates)) {
  if (n_qubits_ == 0) throw std::invalid_argument("circuit needs at least one qubit");
  std::vector<int> slot_uses(param_count_, 0);
  for (const Gate& g : gates_) {
    if (g.target >= n_qubits_) throw std::invalid_argument(qubit_error(g.target, n_qubits_));
    if (g.kind == GateKind::cnot) {
      if (g.control >= n_qubits_) throw std::invalid_argument(qubit_error(g.control, n_qubits_));
      if (g.control == g.target) throw std::invalid_argument("CNOT control equals target");
    } else {
      if (g.param >= param_count_) {
        throw std::invalid_argument("parameter slot " + std::to_string(g.param) +
                                    " out of range");
      }
      ++slot_uses[g.param];
    }
  }
  if (std::any_of(slot_uses.begin(), slot_uses.end(), [](int u) { return u != 1; })) {
    throw std::invalid_argument("every parameter slot must be used by exactly one RY gate");
  }
}

std::size_t Circuit::cnot_count() const {
  return static_cast<std::size_t>(std::count_if(
      gates_.begin(), gates_.end(), [](const Gate& g) { return g.kind == GateKind::cnot; }));
}

bool Circuit::same_template(const Circuit& other) const {
  return n_qubits_ == other.n_qubits_ && depth_ == other.depth_ &&
         entanglement_ == other.entanglement_ && gates_ == other.gates_;
}

Circuit build_real_amplitudes(std::size_t n_qubits, std::size_t depth, Entanglement entanglement) {
  if (n_qubits == 0) throw std::invalid_argument("RealAmplitudes needs n >= 1");
  std::vector<Gate> gates;
  gates.reserve(n_qubits * (depth + 1) + depth * (n_qubits - 1));
  auto rotation_layer = [&](std::size_t layer) {
    for (std::size_t q = 0; q < n_qubits; ++q) {
      gates.push_back({GateKind::ry, q, 0, layer * n_qubits + q});
    }
  };
  rotation_layer(0);
  for (std::size_t block = 1; block <= depth; ++block) {
    for (std::size_t q = 0; q + 1 < n_qubits; ++q) {
      gates.push_back({GateKind::cnot, q + 1, q, 0});
    }
    rotation_layer(block);
  }
  return Circuit(n_qubits, depth, entanglement, std::move(gates));
}

ParamVector uniform_init_params(const Circuit& circuit) {
  ParamVector theta = ParamVector::Zero(static_cast<Eigen::Index>(circuit.param_count()));
  theta.head(static_cast<Eigen::Index>(circuit.n_qubits())).setConstant(std::numbers::pi / 2);
  return theta;
}

std::size_t BoundCircuit::max_cnot_span() const {
  std::size_t span = 0;
  for (const BoundGate& g : ops_) {
    if (g.kind == GateKind::cnot) {
      span = std::max(span, g.control > g.target ? g.control - g.target : g.target - g.control);
    }
  }
  return span;
}

BoundCircuit bind(const Circuit& circuit, const ParamVector& theta) {
  if (static_cast<std::size_t>(theta.size()) != circuit.param_count()) {
    throw std::invalid_argument("parameter vector has length " + std::to_string(theta.size()) +
                                ", circuit expects " + std::to_string(circuit.param_count()));
  }
  if (!theta.allFinite()) throw std::invalid_argument("parameter vector has non-finite entries");
  BoundCircuit out;
  out.n_qubits_ = circuit.n_qubits();
  out.depth_ = circuit.depth();
  out.param_count_ = circuit.param_count();
  out.entanglement_ = circuit.entanglement();
  out.direction_ = Direction::forward;
  out.ops_.reserve(circuit.gates().size());
  for (const Gate& g : circuit.gates()) {
    const double angle =
        g.kind == GateKind::ry ? theta[static_cast<Eigen::Index>(g.param)] : 0.0;
    out.ops_.push_back({g.kind, g.target, g.control, g.param, angle});
  }
  return out;
}

ParamVector unbind(const BoundCircuit& bound) {
  if (bound.direction() == Direction::uncompute) {
    throw std::invalid_argument("cannot unbind a compute-uncompute circuit");
  }
  const double sign = bound.direction() == Direction::inverted ? -1.0 : 1.0;
  ParamVector theta = ParamVector::Zero(static_cast<Eigen::Index>(bound.param_count()));
  for (const BoundGate& g : bound.ops()) {
    if (g.kind == GateKind::ry) theta[static_cast<Eigen::Index>(g.param)] = sign * g.angle;
  }
  return theta;
}

BoundCircuit inverse(const BoundCircuit& bound) {
  BoundCircuit out = bound;
  std::reverse(out.ops_.begin(), out.ops_.end());
  for (BoundGate& g : out.ops_) g.angle = -g.angle;
  switch (bound.direction_) {
    case Direction::forward:
      out.direction_ = Direction::inverted;
      break;
    case Direction::inverted:
      out.direction_ = Direction::forward;
      break;
    case Direction::uncompute:
      break;
  }
  return out;
}

BoundCircuit compose_uncompute(const BoundCircuit& a, const BoundCircuit& b) {
  if (a.direction_ != Direction::forward || b.direction_ != Direction::forward) {
    throw std::invalid_argument("compose_uncompute expects two forward-bound circuits");
  }
  if (a.n_qubits_ != b.n_qubits_ || a.depth_ != b.depth_ || a.entanglement_ != b.entanglement_ ||
      a.param_count_ != b.param_count_) {
    throw std::invalid_argument("compose_uncompute: circuit templates differ");
  }
  BoundCircuit out = a;
  out.direction_ = Direction::uncompute;
  const BoundCircuit undo = inverse(b);
  out.ops_.insert(out.ops_.end(), undo.ops_.begin(), undo.ops_.end());
  return out;
}

BoundCircuit make_bound_circuit(std::size_t n_qubits, std::vector<BoundGate> ops) {
  std::size_t slots = 0;
  for (const BoundGate& g : ops) {
    if (g.target >= n_qubits) throw std::invalid_argument(qubit_error(g.target, n_qubits));
    if (g.kind == GateKind::cnot) {
      if (g.control >= n_qubits) throw std::invalid_argument(qubit_error(g.control, n_qubits));
      if (g.control == g.target) throw std::invalid_argument("CNOT control equals target");
    } else {
      slots = std::max(slots, g.param + 1);
    }
  }
  BoundCircuit out;
  out.n_qubits_ = n_qubits;
  out.param_count_ = slots;
  out.ops_ = std::move(ops);
  return out;
}

std::string circuit_to_json(const Circuit& circuit) {
  nlohmann::json j;
  j["n_qubits"] = circuit.n_qubits();
  j["depth"] = circuit.depth();
  j["entanglement"] = "linear";
  j["param_count"] = circuit.param_count();
  auto& gates = j["gates"] = nlohmann::json::array();
  for (const Gate& g : circuit.gates()) {
    if (g.kind == GateKind::ry) {
      gates.push_back({{"kind", "ry"}, {"target", g.target}, {"param", g.param}});
    } else {
      gates.push_back({{"kind", "cnot"}, {"control", g.control}, {"target", g.target}});
    }
  }
  return j.dump(2);
}

namespace {

Circuit parse_circuit(const nlohmann::json& j) {
  if (j.at("entanglement").get<std::string>() != "linear") {
    throw std::invalid_argument("unsupported entanglement pattern");
  }
  std::vector<Gate> gates;
  for (const auto& g : j.at("gates")) {
    const std::string kind = g.at("kind").get<std::string>();
    if (kind == "ry") {
      gates.push_back({GateKind::ry, g.at("target").get<std::size_t>(), 0,
                       g.at("param").get<std::size_t>()});
    } else if (kind == "cnot") {
      gates.push_back({GateKind::cnot, g.at("target").get<std::size_t>(),
                       g.at("control").get<std::size_t>(), 0});
    } else {
      throw std::invalid_argument("unknown gate kind '" + kind + "'");
    }
  }
  return Circuit(j.at("n_qubits").get<std::size_t>(), j.at("depth").get<std::size_t>(),
                 Entanglement::linear, std::move(gates));
}

}  // namespace

Circuit circuit_from_json(std::string_view text) {
  try {
    return parse_circuit(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad circuit JSON: ") + e.what());
  }
}

}  // namespace qfs
