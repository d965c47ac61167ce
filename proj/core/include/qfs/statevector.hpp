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

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "qfs/circuit.hpp"
#include "qfs/rng.hpp"
#include "qfs/sample_set.hpp"

namespace qfs {

using Amplitude = std::complex<double>;

struct SvOptions {
  std::size_t max_qubits = 24;
};

/// Dense 2^n amplitude vector. Bit l of the basis index is qubit l.
class StateVector {
 public:
  /// |0...0> on n qubits.
  explicit StateVector(std::size_t n_qubits);
  StateVector(std::size_t n_qubits, std::vector<Amplitude> amplitudes);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t dimension() const { return amps_.size(); }
  std::span<const Amplitude> amplitudes() const { return amps_; }
  Amplitude amplitude(std::size_t index) const { return amps_[index]; }

  std::vector<double> probabilities() const;
  double norm_squared() const;

  void apply_ry(std::size_t qubit, double angle);
  void apply_cnot(std::size_t control, std::size_t target);
  void apply(const BoundGate& gate);

 private:
  std::size_t n_qubits_;
  std::vector<Amplitude> amps_;
};

/// Throws std::length_error if the circuit exceeds `options.max_qubits`.
StateVector run_sv(const BoundCircuit& bound, const SvOptions& options = {});

/// i.i.d. draws from |a_j|^2.
SampleSet sample(const StateVector& state, std::size_t shots, Rng& rng);

/// i.i.d. draws from an explicit distribution over 2^n basis states.
SampleSet sample_distribution(std::span<const double> probabilities, std::size_t n_qubits,
                              std::size_t shots, Rng& rng);

/// |<a|b>|^2.
double overlap_exact(const StateVector& a, const StateVector& b);

std::complex<double> inner_product(const StateVector& a, const StateVector& b);

/// Debug dump: index,bitstring,re,im,probability.
void write_amplitudes_csv(const StateVector& state, std::ostream& os);

}  // namespace qfs
