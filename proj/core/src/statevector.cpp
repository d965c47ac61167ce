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

#include "qfs/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace qfs {

StateVector::StateVector(std::size_t n_qubits)
    : n_qubits_(n_qubits), amps_(std::size_t{1} << n_qubits, Amplitude{0.0, 0.0}) {
  if (n_qubits >= kMaxBits) throw std::length_error("statevector too large");
  amps_[0] = 1.0;
}

StateVector::StateVector(std::size_t n_qubits, std::vector<Amplitude> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
  if (amps_.size() != (std::size_t{1} << n_qubits)) {
    throw std::invalid_argument("amplitude vector length must be 2^n");
  }
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amps_.size());
  std::transform(amps_.begin(), amps_.end(), p.begin(), [](Amplitude a) { return std::norm(a); });
  return p;
}

double StateVector::norm_squared() const {
  double s = 0.0;
  for (Amplitude a : amps_) s += std::norm(a);
  return s;
}

void StateVector::apply_ry(std::size_t qubit, double angle) {
  const double c = std::cos(angle / 2);
  const double s = std::sin(angle / 2);
  const std::size_t stride = std::size_t{1} << qubit;
  const std::size_t dim = amps_.size();
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t j = base; j < base + stride; ++j) {
      const Amplitude a0 = amps_[j];
      const Amplitude a1 = amps_[j + stride];
      amps_[j] = c * a0 - s * a1;
      amps_[j + stride] = s * a0 + c * a1;
    }
  }
}

void StateVector::apply_cnot(std::size_t control, std::size_t target) {
  const std::size_t cmask = std::size_t{1} << control;
  const std::size_t tmask = std::size_t{1} << target;
  for (std::size_t j = 0; j < amps_.size(); ++j) {
    // Visit each swapped pair once, from the member with the target bit clear.
    if ((j & cmask) != 0 && (j & tmask) == 0) std::swap(amps_[j], amps_[j | tmask]);
  }
}

void StateVector::apply(const BoundGate& gate) {
  if (gate.kind == GateKind::ry) {
    apply_ry(gate.target, gate.angle);
  } else {
    apply_cnot(gate.control, gate.target);
  }
}

StateVector run_sv(const BoundCircuit& bound, const SvOptions& options) {
  if (bound.n_qubits() > options.max_qubits) {
    throw std::length_error("statevector backend capped at " +
                            std::to_string(options.max_qubits) + " qubits, circuit has " +
                            std::to_string(bound.n_qubits()));
  }
  StateVector state(bound.n_qubits());
  for (const BoundGate& g : bound.ops()) state.apply(g);
  return state;
}

SampleSet sample_distribution(std::span<const double> probabilities, std::size_t n_qubits,
                              std::size_t shots, Rng& rng) {
  if (shots == 0) throw std::invalid_argument("shots must be positive");
  std::vector<double> cumulative(probabilities.size());
  double acc = 0.0;
  std::size_t last_nonzero = 0;
  for (std::size_t j = 0; j < probabilities.size(); ++j) {
    acc += probabilities[j];
    cumulative[j] = acc;
    if (probabilities[j] > 0.0) last_nonzero = j;
  }
  SampleSet out(n_qubits);
  for (std::size_t s = 0; s < shots; ++s) {
    const double u = rng.uniform() * acc;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    std::size_t j = static_cast<std::size_t>(it - cumulative.begin());
    if (j > last_nonzero) j = last_nonzero;
    out.add(static_cast<std::uint64_t>(j));
  }
  return out;
}

SampleSet sample(const StateVector& state, std::size_t shots, Rng& rng) {
  const std::vector<double> p = state.probabilities();
  return sample_distribution(p, state.n_qubits(), shots, rng);
}

std::complex<double> inner_product(const StateVector& a, const StateVector& b) {
  if (a.n_qubits() != b.n_qubits()) throw std::invalid_argument("statevector dimension mismatch");
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t j = 0; j < a.dimension(); ++j) acc += std::conj(a.amplitude(j)) * b.amplitude(j);
  return acc;
}

double overlap_exact(const StateVector& a, const StateVector& b) {
  return std::min(1.0, std::norm(inner_product(a, b)));
}

void write_amplitudes_csv(const StateVector& state, std::ostream& os) {
  os << "index,bitstring,re,im,probability\n";
  os << std::setprecision(17);
  for (std::size_t j = 0; j < state.dimension(); ++j) {
    const Amplitude a = state.amplitude(j);
    os << j << ',' << Bitstring(j, state.n_qubits()).str() << ',' << a.real() << ',' << a.imag()
       << ',' << std::norm(a) << '\n';
  }
}

}  // namespace qfs
