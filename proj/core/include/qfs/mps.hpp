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

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "qfs/bitstring.hpp"
#include "qfs/circuit.hpp"
#include "qfs/rng.hpp"
#include "qfs/sample_set.hpp"
#include "qfs/statevector.hpp"

namespace qfs {

struct MpsOptions {
  /// Hard limit on any bond. Exceeding it is an error, never a truncation.
  std::size_t chi_cap = 64;
  /// Singular values below cutoff * s_max are numerical zeros and dropped.
  double relative_cutoff = 1e-12;
};

/// Raised when a circuit cannot be simulated exactly (long-range gate,
/// bond dimension over the cap, non-zero discarded weight).
class MpsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix product state with open boundaries and a movable orthogonality
/// center. Site k holds one (left bond x right bond) matrix per physical
/// value 0/1; sites left of the center are left-canonical, sites right of it
/// right-canonical.
class MpsState {
 public:
  using Matrix = Eigen::MatrixXcd;

  explicit MpsState(std::size_t n_qubits, MpsOptions options = {});

  std::size_t n_qubits() const { return sites_.size(); }
  std::size_t center() const { return center_; }
  const std::array<Matrix, 2>& site(std::size_t k) const { return sites_[k]; }

  /// Dimension of the bond between site k and k+1 (k < n-1).
  std::size_t bond_dimension(std::size_t k) const;
  std::size_t max_bond_dimension() const;
  /// Largest bond dimension reached at any point so far.
  std::size_t peak_bond_dimension() const { return peak_bond_; }
  /// Sum of squared singular values dropped across all splits.
  double discarded_weight() const { return discarded_weight_; }
  /// Total stored complex entries: O(n chi^2).
  std::size_t storage_size() const;

  double norm_squared() const;

  void apply_ry(std::size_t qubit, double angle);
  /// Control and target must be adjacent.
  void apply_cnot(std::size_t control, std::size_t target);
  void apply(const BoundGate& gate);

  void move_center(std::size_t k);

  /// Dense contraction, n <= 24.
  StateVector to_statevector() const;

 private:
  void split_two_site(std::size_t left, const Matrix& theta_rows);

  std::vector<std::array<Matrix, 2>> sites_;
  std::size_t center_ = 0;
  MpsOptions options_;
  std::size_t peak_bond_ = 1;
  double discarded_weight_ = 0.0;
};

/// Exact simulation; throws MpsError for non-nearest-neighbour CNOTs.
MpsState run_mps(const BoundCircuit& bound, const MpsOptions& options = {});

/// Sequential left-to-right conditional sampling, O(n chi^2) per shot.
SampleSet mps_sample(const MpsState& state, std::size_t shots, Rng& rng);

/// <bits|psi> by a single chain of matrix products.
std::complex<double> mps_amplitude(const MpsState& state, const Bitstring& bits);

std::complex<double> mps_inner_product(const MpsState& a, const MpsState& b);

/// |<a|b>|^2 by transfer-matrix contraction.
double mps_overlap(const MpsState& a, const MpsState& b);

}  // namespace qfs
