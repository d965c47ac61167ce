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

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qfs {

enum class GateKind { ry, cnot };

/// Two-qubit connectivity of the ansatz. Only the nearest-neighbour ladder
/// is provided.
enum class Entanglement { linear };

struct Gate {
  GateKind kind = GateKind::ry;
  std::size_t target = 0;
  std::size_t control = 0;  // CNOT only
  std::size_t param = 0;    // RY only: slot into the parameter vector

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Rotation angles in radians, one per RY gate.
using ParamVector = Eigen::VectorXd;

/// Parameterized RY/CNOT circuit template.
///
/// Parameter ordering is layer-major: slot `layer * n + q` is the RY angle
/// on qubit q in rotation layer `layer` (layer 0 is the initial layer).
class Circuit {
 public:
  Circuit(std::size_t n_qubits, std::size_t depth, Entanglement entanglement,
          std::vector<Gate> gates);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t depth() const { return depth_; }
  std::size_t param_count() const { return param_count_; }
  Entanglement entanglement() const { return entanglement_; }
  const std::vector<Gate>& gates() const { return gates_; }

  std::size_t cnot_count() const;
  bool same_template(const Circuit& other) const;

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  std::size_t n_qubits_;
  std::size_t depth_;
  std::size_t param_count_;
  Entanglement entanglement_;
  std::vector<Gate> gates_;
};

/// RY layer followed by `depth` blocks of (CNOT ladder 0->1 ... n-2->n-1, RY layer).
Circuit build_real_amplitudes(std::size_t n_qubits, std::size_t depth,
                              Entanglement entanglement = Entanglement::linear);

/// pi/2 on the first rotation layer and 0 elsewhere: the uniform superposition.
ParamVector uniform_init_params(const Circuit& circuit);

enum class Direction { forward, inverted, uncompute };

struct BoundGate {
  GateKind kind = GateKind::ry;
  std::size_t target = 0;
  std::size_t control = 0;
  std::size_t param = 0;
  double angle = 0.0;

  friend bool operator==(const BoundGate&, const BoundGate&) = default;
};

/// Circuit with every rotation resolved to a concrete angle. Immutable.
class BoundCircuit {
 public:
  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t depth() const { return depth_; }
  std::size_t param_count() const { return param_count_; }
  Direction direction() const { return direction_; }
  const std::vector<BoundGate>& ops() const { return ops_; }

  /// Largest |control - target| over the CNOTs; 1 for a linear ladder.
  std::size_t max_cnot_span() const;

  friend bool operator==(const BoundCircuit&, const BoundCircuit&) = default;

 private:
  friend BoundCircuit bind(const Circuit&, const ParamVector&);
  friend BoundCircuit inverse(const BoundCircuit&);
  friend BoundCircuit compose_uncompute(const BoundCircuit&, const BoundCircuit&);
  friend BoundCircuit make_bound_circuit(std::size_t, std::vector<BoundGate>);

  std::size_t n_qubits_ = 0;
  std::size_t depth_ = 0;
  std::size_t param_count_ = 0;
  Entanglement entanglement_ = Entanglement::linear;
  Direction direction_ = Direction::forward;
  std::vector<BoundGate> ops_;
};

/// Throws std::invalid_argument on a length mismatch or non-finite angle.
BoundCircuit bind(const Circuit& circuit, const ParamVector& theta);

/// Recovers the parameter vector of a forward or inverted bound circuit.
ParamVector unbind(const BoundCircuit& bound);

/// Reverses gate order and negates every rotation angle.
BoundCircuit inverse(const BoundCircuit& bound);

/// U^dagger(theta_2) U(theta_1) for a bound at theta_1 and b bound at theta_2.
/// The all-zeros probability of the result is |<psi(theta_2)|psi(theta_1)>|^2.
BoundCircuit compose_uncompute(const BoundCircuit& a, const BoundCircuit& b);

/// Free-form gate list, mostly for tests (e.g. long-range CNOTs).
BoundCircuit make_bound_circuit(std::size_t n_qubits, std::vector<BoundGate> ops);

std::string circuit_to_json(const Circuit& circuit);
Circuit circuit_from_json(std::string_view text);

}  // namespace qfs
