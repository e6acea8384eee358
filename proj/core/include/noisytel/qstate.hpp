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

#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

/// Dense linear algebra and state primitives for registers of 1 to 3 qubits.
///
/// Basis convention: qubit 0 is the leftmost ket label and the most
/// significant bit of the basis index, so |q0 q1 q2> has index
/// 4*q0 + 2*q1 + q2. Every module in the library shares this convention.
namespace noisytel {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr int kMaxQubits = 3;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
// Integrator output drifts at ~1e-11; closed forms are exact.
inline constexpr double kPsdTolerance = 1e-10;
// Looser bound accepted by the eigensolver.
inline constexpr double kEigenHermitianTolerance = 1e-10;

/// Number of qubits for a register dimension; throws std::invalid_argument
/// unless dim is 2, 4 or 8.
int qubit_count(Eigen::Index dim);

/// Largest absolute entry. Used everywhere as the "max-entry" norm.
double max_abs(const ComplexMatrix& m);

/// Checks the ComplexMatrix invariants (square, dim 2/4/8, finite entries).
void validate_register_matrix(const ComplexMatrix& m);

class DensityOperator;

/// Normalized amplitude vector on 1 to 3 qubits.
class PureState {
 public:
  /// Takes amplitudes that must already be normalized to 1e-12.
  explicit PureState(ComplexVector amplitudes);

  /// Rescales arbitrary nonzero amplitudes to unit norm.
  static PureState normalized(ComplexVector amplitudes);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return amplitudes_.size(); }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  Complex operator[](Eigen::Index i) const { return amplitudes_[i]; }

  ComplexMatrix projector() const;
  DensityOperator density() const;

 private:
  ComplexVector amplitudes_;
  int n_qubits_ = 0;
};

/// Hermitian, unit-trace, positive-semidefinite matrix on 1 to 3 qubits.
/// Validated on construction; immutable afterwards.
class DensityOperator {
 public:
  explicit DensityOperator(ComplexMatrix matrix);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }
  Complex operator()(Eigen::Index r, Eigen::Index c) const { return matrix_(r, c); }

 private:
  ComplexMatrix matrix_;
  int n_qubits_ = 0;
};

/// Coordinates alpha_1..alpha_4 in the magic basis
///   e1 = (|00> + |11>)/sqrt2,   e2 = i(|00> - |11>)/sqrt2,
///   e3 = i(|01> + |10>)/sqrt2,  e4 = (|01> - |10>)/sqrt2.
using MagicCoefficients = std::array<Complex, 4>;

/// Columns are e1..e4 in the computational basis.
const ComplexMatrix& magic_basis();

MagicCoefficients to_magic_basis(const PureState& psi);
/// Inverse map; does not require normalized input.
ComplexVector from_magic_basis(const MagicCoefficients& alpha);

/// Reduced state on the kept qubits (sorted ascending, nonempty, proper).
DensityOperator partial_trace(const DensityOperator& rho, std::span<const int> keep);
DensityOperator partial_trace(const DensityOperator& rho, std::initializer_list<int> keep);

/// Transpose on one qubit of a two-qubit matrix. Hermitian with unit trace
/// but not necessarily positive, hence a plain matrix.
ComplexMatrix partial_transpose(const DensityOperator& rho, int subsystem);
ComplexMatrix partial_transpose(const ComplexMatrix& m, int subsystem);

struct Eigensystem {
  RealVector values;     // descending
  ComplexMatrix vectors; // orthonormal columns, matching values
};

/// Throws std::invalid_argument when m deviates from Hermitian by more
/// than 1e-10 in max-entry norm.
Eigensystem hermitian_eigensystem(const ComplexMatrix& m);

/// <psi|rho|psi>.
double fidelity_pure(const PureState& psi, const DensityOperator& rho);

/// Takagi factorization of a complex symmetric matrix: A = U diag(s) U^T
/// with U unitary and s >= 0 descending.
struct TakagiFactorization {
  RealVector values;
  ComplexMatrix unitary;
};
TakagiFactorization takagi_factorize(const ComplexMatrix& symmetric);

// Gates and fixed states.

enum class Axis { x, y, z };

ComplexMatrix pauli(Axis axis);
ComplexMatrix hadamard();
/// Single-qubit operator acting on `qubit` of an n-qubit register.
ComplexMatrix embed(const ComplexMatrix& single, int qubit, int n_qubits);
/// CNOT on an n-qubit register.
ComplexMatrix cnot(int control, int target, int n_qubits);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// (|00> + |11>)/sqrt2.
PureState epr_state();
/// (|100> + |010> + sqrt2 |001>)/2.
PureState w_state();

}  // namespace noisytel
