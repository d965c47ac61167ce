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

#include "qfs/mps.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

namespace qfs {

namespace {

using Matrix = MpsState::Matrix;

}  // namespace

MpsState::MpsState(std::size_t n_qubits, MpsOptions options) : options_(options) {
  if (n_qubits == 0) throw std::invalid_argument("MPS needs at least one qubit");
  if (n_qubits > kMaxBits) throw std::invalid_argument("MPS limited to 64 qubits");
  sites_.resize(n_qubits);
  for (auto& site : sites_) {
    site[0] = Matrix::Ones(1, 1);
    site[1] = Matrix::Zero(1, 1);
  }
}

std::size_t MpsState::bond_dimension(std::size_t k) const {
  return static_cast<std::size_t>(sites_.at(k)[0].cols());
}

std::size_t MpsState::max_bond_dimension() const {
  std::size_t chi = 1;
  for (std::size_t k = 0; k + 1 < sites_.size(); ++k) chi = std::max(chi, bond_dimension(k));
  return chi;
}

std::size_t MpsState::storage_size() const {
  std::size_t total = 0;
  for (const auto& site : sites_) total += static_cast<std::size_t>(site[0].size() + site[1].size());
  return total;
}

double MpsState::norm_squared() const {
  // At the orthogonality center the norm lives entirely in one site.
  const auto& site = sites_[center_];
  return site[0].squaredNorm() + site[1].squaredNorm();
}

void MpsState::apply_ry(std::size_t qubit, double angle) {
  if (qubit >= sites_.size()) throw std::out_of_range("qubit index out of range");
  const double c = std::cos(angle / 2);
  const double s = std::sin(angle / 2);
  auto& site = sites_[qubit];
  Matrix a0 = c * site[0] - s * site[1];
  Matrix a1 = s * site[0] + c * site[1];
  site[0] = std::move(a0);
  site[1] = std::move(a1);
}

void MpsState::move_center(std::size_t k) {
  if (k >= sites_.size()) throw std::out_of_range("center index out of range");
  while (center_ < k) {
    auto& here = sites_[center_];
    auto& next = sites_[center_ + 1];
    const Eigen::Index dl = here[0].rows();
    const Eigen::Index dr = here[0].cols();
    Matrix stacked(2 * dl, dr);
    stacked << here[0], here[1];
    Eigen::HouseholderQR<Matrix> qr(stacked);
    const Eigen::Index r = std::min(2 * dl, dr);
    const Matrix q = qr.householderQ() * Matrix::Identity(2 * dl, r);
    const Matrix rmat = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
    here[0] = q.topRows(dl);
    here[1] = q.bottomRows(dl);
    next[0] = rmat * next[0];
    next[1] = rmat * next[1];
    ++center_;
  }
  while (center_ > k) {
    auto& here = sites_[center_];
    auto& prev = sites_[center_ - 1];
    const Eigen::Index dl = here[0].rows();
    const Eigen::Index dr = here[0].cols();
    Matrix wide(dl, 2 * dr);
    wide << here[0], here[1];
    const Matrix tall = wide.adjoint();
    Eigen::HouseholderQR<Matrix> qr(tall);
    const Eigen::Index r = std::min(2 * dr, dl);
    const Matrix q = qr.householderQ() * Matrix::Identity(2 * dr, r);
    const Matrix rmat = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
    const Matrix qa = q.adjoint();
    here[0] = qa.leftCols(dr);
    here[1] = qa.rightCols(dr);
    const Matrix radj = rmat.adjoint();
    prev[0] = prev[0] * radj;
    prev[1] = prev[1] * radj;
    --center_;
  }
}

void MpsState::split_two_site(std::size_t left, const Matrix& theta) {
  const Eigen::Index dl = sites_[left][0].rows();
  const Eigen::Index dr = sites_[left + 1][0].cols();
  Eigen::JacobiSVD<Matrix> svd(theta, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double threshold = sv.size() > 0 ? options_.relative_cutoff * sv[0] : 0.0;
  Eigen::Index keep = 0;
  double dropped = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > threshold) {
      ++keep;
    } else {
      dropped += sv[i] * sv[i];
    }
  }
  keep = std::max<Eigen::Index>(keep, 1);
  if (static_cast<std::size_t>(keep) > options_.chi_cap) {
    throw MpsError("bond dimension " + std::to_string(keep) + " exceeds cap " +
                   std::to_string(options_.chi_cap));
  }
  discarded_weight_ += dropped;
  const Matrix u = svd.matrixU().leftCols(keep);
  const Matrix sv_adj =
      sv.head(keep).cast<std::complex<double>>().asDiagonal() * svd.matrixV().leftCols(keep).adjoint();
  sites_[left][0] = u.topRows(dl);
  sites_[left][1] = u.bottomRows(dl);
  sites_[left + 1][0] = sv_adj.leftCols(dr);
  sites_[left + 1][1] = sv_adj.rightCols(dr);
  center_ = left + 1;
  peak_bond_ = std::max(peak_bond_, static_cast<std::size_t>(keep));
}

void MpsState::apply_cnot(std::size_t control, std::size_t target) {
  if (control >= sites_.size() || target >= sites_.size()) {
    throw std::out_of_range("qubit index out of range");
  }
  if (control == target) throw std::invalid_argument("CNOT control equals target");
  const std::size_t left = std::min(control, target);
  if (std::max(control, target) - left != 1) {
    throw MpsError("CNOT(" + std::to_string(control) + "," + std::to_string(target) +
                   ") is not nearest-neighbour");
  }
  move_center(left);
  const auto& a = sites_[left];
  const auto& b = sites_[left + 1];
  const Eigen::Index dl = a[0].rows();
  const Eigen::Index dr = b[0].cols();
  // theta rows (s1, l), cols (s2, r); block (s1, s2) = A[s1] B[s2].
  std::array<std::array<Matrix, 2>, 2> block;
  for (int s1 = 0; s1 < 2; ++s1) {
    for (int s2 = 0; s2 < 2; ++s2) block[s1][s2] = a[s1] * b[s2];
  }
  if (control == left) {
    std::swap(block[1][0], block[1][1]);
  } else {
    std::swap(block[0][1], block[1][1]);
  }
  Matrix theta(2 * dl, 2 * dr);
  theta << block[0][0], block[0][1], block[1][0], block[1][1];
  split_two_site(left, theta);
}

void MpsState::apply(const BoundGate& gate) {
  if (gate.kind == GateKind::ry) {
    apply_ry(gate.target, gate.angle);
  } else {
    apply_cnot(gate.control, gate.target);
  }
}

StateVector MpsState::to_statevector() const {
  const std::size_t n = sites_.size();
  if (n > 24) throw std::length_error("dense contraction limited to 24 qubits");
  Matrix partial = Matrix::Ones(1, 1);
  for (std::size_t k = 0; k < n; ++k) {
    const Eigen::Index half = partial.rows();
    Matrix next(2 * half, sites_[k][0].cols());
    next.topRows(half) = partial * sites_[k][0];
    next.bottomRows(half) = partial * sites_[k][1];
    partial = std::move(next);
  }
  std::vector<Amplitude> amps(static_cast<std::size_t>(partial.rows()));
  for (Eigen::Index j = 0; j < partial.rows(); ++j) amps[static_cast<std::size_t>(j)] = partial(j, 0);
  return StateVector(n, std::move(amps));
}

MpsState run_mps(const BoundCircuit& bound, const MpsOptions& options) {
  if (bound.max_cnot_span() > 1) {
    throw MpsError("circuit contains a non-nearest-neighbour CNOT");
  }
  MpsState state(bound.n_qubits(), options);
  for (const BoundGate& g : bound.ops()) state.apply(g);
  if (state.discarded_weight() > 1e-12) {
    throw MpsError("exact simulation discarded singular weight " +
                   std::to_string(state.discarded_weight()));
  }
  return state;
}

SampleSet mps_sample(const MpsState& state, std::size_t shots, Rng& rng) {
  if (shots == 0) throw std::invalid_argument("shots must be positive");
  const MpsState* source = &state;
  std::optional<MpsState> shifted;
  if (state.center() != 0) {
    shifted.emplace(state);
    shifted->move_center(0);
    source = &*shifted;
  }
  const std::size_t n = source->n_qubits();
  SampleSet out(n);
  Eigen::RowVectorXcd v;
  Eigen::RowVectorXcd w0;
  Eigen::RowVectorXcd w1;
  for (std::size_t shot = 0; shot < shots; ++shot) {
    v = Eigen::RowVectorXcd::Ones(1);
    std::uint64_t word = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const auto& site = source->site(k);
      w0.noalias() = v * site[0];
      w1.noalias() = v * site[1];
      const double p0 = w0.squaredNorm();
      const double p1 = w1.squaredNorm();
      const bool one = rng.uniform() * (p0 + p1) >= p0;
      if (one) {
        word |= std::uint64_t{1} << k;
        v = w1 / std::sqrt(p1);
      } else {
        v = w0 / std::sqrt(p0);
      }
    }
    out.add(word);
  }
  return out;
}

std::complex<double> mps_amplitude(const MpsState& state, const Bitstring& bits) {
  if (bits.size() != state.n_qubits()) throw std::invalid_argument("bitstring length mismatch");
  Eigen::RowVectorXcd v = Eigen::RowVectorXcd::Ones(1);
  for (std::size_t k = 0; k < state.n_qubits(); ++k) {
    v = v * state.site(k)[bits.test(k) ? 1 : 0];
  }
  return v(0);
}

std::complex<double> mps_inner_product(const MpsState& a, const MpsState& b) {
  if (a.n_qubits() != b.n_qubits()) throw std::invalid_argument("MPS dimension mismatch");
  Matrix env = Matrix::Ones(1, 1);
  for (std::size_t k = 0; k < a.n_qubits(); ++k) {
    const auto& sa = a.site(k);
    const auto& sb = b.site(k);
    Matrix next = sa[0].adjoint() * env * sb[0];
    next.noalias() += sa[1].adjoint() * env * sb[1];
    env = std::move(next);
  }
  return env(0, 0);
}

double mps_overlap(const MpsState& a, const MpsState& b) {
  return std::min(1.0, std::norm(mps_inner_product(a, b)));
}

}  // namespace qfs
