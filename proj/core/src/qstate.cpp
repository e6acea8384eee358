// Copyright 2026 The noisytel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "noisytel/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace noisytel {
namespace {

int bit_of(Eigen::Index index, int qubit, int n_qubits) {
  return static_cast<int>((index >> (n_qubits - 1 - qubit)) & 1);
}

double hermitian_defect(const ComplexMatrix& m) {
  return max_abs(m - m.adjoint());
}

}  // namespace

int qubit_count(Eigen::Index dim) {
  switch (dim) {
    case 2: return 1;
    case 4: return 2;
    case 8: return 3;
    default:
      throw std::invalid_argument("register dimension must be 2, 4 or 8, got " +
                                  std::to_string(dim));
  }
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void validate_register_matrix(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("matrix must be square");
  }
  qubit_count(m.rows());
  if (!m.allFinite()) {
    throw std::invalid_argument("matrix has non-finite entries");
  }
}

PureState::PureState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  n_qubits_ = qubit_count(amplitudes_.size());
  if (!amplitudes_.allFinite()) {
    throw std::invalid_argument("state has non-finite amplitudes");
  }
  const double norm2 = amplitudes_.squaredNorm();
  if (std::abs(norm2 - 1.0) > kNormTolerance) {
    throw std::invalid_argument("state is not normalized: |psi|^2 = " + std::to_string(norm2));
  }
}

PureState PureState::normalized(ComplexVector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::invalid_argument("cannot normalize a zero or non-finite vector");
  }
  return PureState(amplitudes / norm);
}

ComplexMatrix PureState::projector() const {
  return amplitudes_ * amplitudes_.adjoint();
}

DensityOperator PureState::density() const { return DensityOperator(projector()); }

DensityOperator::DensityOperator(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
  validate_register_matrix(matrix_);
  n_qubits_ = qubit_count(matrix_.rows());
  if (hermitian_defect(matrix_) > kHermitianTolerance) {
    throw std::invalid_argument("density operator is not Hermitian");
  }
  const double trace = matrix_.trace().real();
  if (std::abs(trace - 1.0) > kTraceTolerance) {
    throw std::invalid_argument("density operator trace is " + std::to_string(trace));
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(matrix_, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -kPsdTolerance) {
    throw std::invalid_argument("density operator has negative eigenvalue " +
                                std::to_string(min_eig));
  }
}

const ComplexMatrix& magic_basis() {
  static const ComplexMatrix basis = [] {
    const double s = 1.0 / std::numbers::sqrt2;
    const Complex i(0.0, 1.0);
    ComplexMatrix b = ComplexMatrix::Zero(4, 4);
    b(0, 0) = s;      b(3, 0) = s;
    b(0, 1) = i * s;  b(3, 1) = -i * s;
    b(1, 2) = i * s;  b(2, 2) = i * s;
    b(1, 3) = s;      b(2, 3) = -s;
    return b;
  }();
  return basis;
}

MagicCoefficients to_magic_basis(const PureState& psi) {
  if (psi.n_qubits() != 2) {
    throw std::invalid_argument("magic basis is defined for two qubits only");
  }
  const ComplexVector alpha = magic_basis().adjoint() * psi.amplitudes();
  return {alpha[0], alpha[1], alpha[2], alpha[3]};
}

ComplexVector from_magic_basis(const MagicCoefficients& alpha) {
  ComplexVector a(4);
  for (int k = 0; k < 4; ++k) a[k] = alpha[k];
  return magic_basis() * a;
}

DensityOperator partial_trace(const DensityOperator& rho, std::span<const int> keep) {
  const int n = rho.n_qubits();
  if (keep.empty() || static_cast<int>(keep.size()) >= n) {
    throw std::invalid_argument("partial_trace: keep must be a nonempty proper subset");
  }
  for (std::size_t k = 0; k < keep.size(); ++k) {
    if (keep[k] < 0 || keep[k] >= n || (k > 0 && keep[k] <= keep[k - 1])) {
      throw std::invalid_argument("partial_trace: keep indices must be ascending and in range");
    }
  }
  std::vector<int> traced;
  for (int q = 0; q < n; ++q) {
    if (std::find(keep.begin(), keep.end(), q) == keep.end()) traced.push_back(q);
  }
  const auto m = static_cast<int>(keep.size());
  auto reduced_index = [&](Eigen::Index full) {
    Eigen::Index r = 0;
    for (int k = 0; k < m; ++k) r = (r << 1) | bit_of(full, keep[k], n);
    return r;
  };
  auto same_traced_bits = [&](Eigen::Index a, Eigen::Index b) {
    return std::all_of(traced.begin(), traced.end(),
                       [&](int q) { return bit_of(a, q, n) == bit_of(b, q, n); });
  };

  ComplexMatrix out = ComplexMatrix::Zero(Eigen::Index{1} << m, Eigen::Index{1} << m);
  for (Eigen::Index i = 0; i < rho.dim(); ++i) {
    for (Eigen::Index j = 0; j < rho.dim(); ++j) {
      if (same_traced_bits(i, j)) out(reduced_index(i), reduced_index(j)) += rho(i, j);
    }
  }
  // Summation order can leave ~1e-17 anti-Hermitian noise.
  out = (out + out.adjoint()) * 0.5;
  return DensityOperator(std::move(out));
}

DensityOperator partial_trace(const DensityOperator& rho, std::initializer_list<int> keep) {
  return partial_trace(rho, std::span<const int>(keep.begin(), keep.size()));
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, int subsystem) {
  if (m.rows() != 4 || m.cols() != 4) {
    throw std::invalid_argument("partial_transpose requires a two-qubit matrix");
  }
  if (subsystem != 0 && subsystem != 1) {
    throw std::invalid_argument("partial_transpose: subsystem must be 0 or 1");
  }
  const int shift = 1 - subsystem;
  const Eigen::Index mask = Eigen::Index{1} << shift;
  ComplexMatrix out(4, 4);
  for (Eigen::Index i = 0; i < 4; ++i) {
    for (Eigen::Index j = 0; j < 4; ++j) {
      const Eigen::Index src_row = (i & ~mask) | (j & mask);
      const Eigen::Index src_col = (j & ~mask) | (i & mask);
      out(i, j) = m(src_row, src_col);
    }
  }
  return out;
}

ComplexMatrix partial_transpose(const DensityOperator& rho, int subsystem) {
  return partial_transpose(rho.matrix(), subsystem);
}

Eigensystem hermitian_eigensystem(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eigensystem: matrix must be square");
  if (hermitian_defect(m) > kEigenHermitianTolerance) {
    throw std::invalid_argument("eigensystem: matrix is not Hermitian");
  }
  const ComplexMatrix sym = (m + m.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigensystem: solver did not converge");
  }
  // Eigen returns ascending order.
  Eigensystem result;
  result.values = solver.eigenvalues().reverse();
  result.vectors = solver.eigenvectors().rowwise().reverse();
  return result;
}

double fidelity_pure(const PureState& psi, const DensityOperator& rho) {
  if (psi.dim() != rho.dim()) throw std::invalid_argument("fidelity_pure: dimension mismatch");
  const Complex f = psi.amplitudes().dot(rho.matrix() * psi.amplitudes());
  return f.real();
}

TakagiFactorization takagi_factorize(const ComplexMatrix& a) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("takagi: matrix must be square");
  if (max_abs(a - a.transpose()) > 1e-10 * std::max(1.0, max_abs(a))) {
    throw std::invalid_argument("takagi: matrix is not symmetric");
  }
  // For A = B + iC the real symmetric [[B, C], [C, -B]] has eigenpairs
  // (+s, (x; y)) and (-s, (-y; x)); u = x + iy then satisfies A conj(u) = s u.
  const Eigen::MatrixXd b = a.real();
  const Eigen::MatrixXd c = a.imag();
  Eigen::MatrixXd embedded(2 * n, 2 * n);
  embedded << b, c, c, -b;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(embedded);

  constexpr double kZeroSingular = 1e-13;
  TakagiFactorization out;
  out.values = RealVector::Zero(n);
  out.unitary = ComplexMatrix::Zero(n, n);
  Eigen::Index filled = 0;

  auto try_add = [&](ComplexVector u, double value) {
    for (Eigen::Index k = 0; k < filled; ++k) {
      u -= out.unitary.col(k) * out.unitary.col(k).dot(u);
    }
    const double norm = u.norm();
    if (norm < 1e-6) return;
    out.unitary.col(filled) = u / norm;
    out.values[filled] = value;
    ++filled;
  };

  // Eigenvalues ascending: the last n hold the nonnegative half.
  for (Eigen::Index k = 2 * n - 1; k >= n && filled < n; --k) {
    const double s = solver.eigenvalues()[k];
    if (s <= kZeroSingular) break;
    ComplexVector u(n);
    for (Eigen::Index r = 0; r < n; ++r) {
      u[r] = Complex(solver.eigenvectors()(r, k), solver.eigenvectors()(n + r, k));
    }
    try_add(std::move(u), s);
  }
  // Null directions: any orthonormal completion works.
  for (Eigen::Index r = 0; r < n && filled < n; ++r) {
    try_add(ComplexVector::Unit(n, r), 0.0);
  }
  return out;
}

ComplexMatrix pauli(Axis axis) {
  ComplexMatrix p = ComplexMatrix::Zero(2, 2);
  switch (axis) {
    case Axis::x: p(0, 1) = 1.0; p(1, 0) = 1.0; break;
    case Axis::y: p(0, 1) = Complex(0, -1); p(1, 0) = Complex(0, 1); break;
    case Axis::z: p(0, 0) = 1.0; p(1, 1) = -1.0; break;
  }
  return p;
}

ComplexMatrix hadamard() {
  ComplexMatrix h(2, 2);
  const double s = 1.0 / std::numbers::sqrt2;
  h << s, s, s, -s;
  return h;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix embed(const ComplexMatrix& single, int qubit, int n_qubits) {
  if (qubit < 0 || qubit >= n_qubits) throw std::invalid_argument("embed: qubit out of range");
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int q = 0; q < n_qubits; ++q) {
    out = kron(out, q == qubit ? single : ComplexMatrix::Identity(2, 2));
  }
  return out;
}

ComplexMatrix cnot(int control, int target, int n_qubits) {
  if (control == target || control < 0 || target < 0 || control >= n_qubits ||
      target >= n_qubits) {
    throw std::invalid_argument("cnot: bad qubit indices");
  }
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  const Eigen::Index target_mask = Eigen::Index{1} << (n_qubits - 1 - target);
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const Eigen::Index j = bit_of(i, control, n_qubits) ? (i ^ target_mask) : i;
    out(j, i) = 1.0;
  }
  return out;
}

PureState epr_state() {
  ComplexVector v = ComplexVector::Zero(4);
  v[0] = v[3] = 1.0 / std::numbers::sqrt2;
  return PureState(std::move(v));
}

PureState w_state() {
  ComplexVector v = ComplexVector::Zero(8);
  v[0b100] = 0.5;
  v[0b010] = 0.5;
  v[0b001] = std::numbers::sqrt2 / 2.0;
  return PureState(std::move(v));
}

}  // namespace noisytel
