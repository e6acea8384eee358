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
#include <vector>

#include "noisytel/channels.hpp"
#include "noisytel/qstate.hpp"

namespace noisytel {

struct EnsembleMember {
  double weight;
  PureState state;
};

/// Weighted pure states whose mixture reconstructs a two-qubit density
/// operator. Weights lie in (0, 1] and sum to 1 within 1e-12. Members are
/// kept in canonical order: descending weight, ties broken by
/// lexicographic comparison of the amplitudes' real parts.
class Ensemble {
 public:
  explicit Ensemble(std::vector<EnsembleMember> members);

  const std::vector<EnsembleMember>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }

  /// sum_i w_i |psi_i><psi_i|.
  ComplexMatrix mixture() const;

 private:
  std::vector<EnsembleMember> members_;
};

/// Phases theta_1..theta_4 with theta_1 = 0 solving
///   c_1 e^{2i theta_1} + c_2 e^{2i theta_2} + c_3 e^{2i theta_3} + c_4 e^{2i theta_4} = 0.
struct PhaseSolution {
  std::array<double, 4> theta;
  double residual;
};

/// Solves the closure condition for nonnegative coefficients `lead` (on
/// e^{2i theta_1}) and `rest`. A solution exists iff no coefficient exceeds
/// the sum of the others; otherwise throws OutOfDomainError. Phases lie in
/// [0, pi).
PhaseSolution solve_phase_condition(double lead, const std::array<double, 3>& rest);

/// Coefficients of the isotropic-channel ensembles.
struct EnsembleCoefficients {
  double lambda1;      // (3 ttau_+ - 1)/2
  double lambda2;      // ttau_-/2
  double omega_plus;   // (sqrt3 (sqrt3 + 1)/6)^{1/2}
  double omega_minus;  // (sqrt3 (sqrt3 - 1)/6)^{1/2}
};
EnsembleCoefficients ensemble_coefficients(double kappa_t);

/// kappa*t where the isotropic channel becomes separable: ln(3)/8.
double isotropic_separability_kt();
/// kappa*t where the different-axis channels become separable: ln(1 + sqrt2)/2.
double different_axis_separability_kt();

/// Closed-form optimal (concurrence-minimizing) ensemble of an EPR channel.
/// Isotropic requires kappa_t <= ln(3)/8 and different-axis kappa_t <=
/// ln(1 + sqrt2)/2; outside those regimes throws OutOfDomainError.
Ensemble optimal_ensemble(const NoiseSpec& spec);

/// Ensemble of product states for the isotropic or a different-axis channel
/// in its separable regime; throws OutOfDomainError otherwise.
Ensemble separable_ensemble(const NoiseSpec& spec);

/// Optimal decomposition of an arbitrary two-qubit state: at most four
/// members, each with concurrence equal to concurrence_mixed(rho).
Ensemble wootters_decomposition(const DensityOperator& rho);

struct EnsembleCheck {
  double residual;  // max-entry norm of mixture - target
  std::vector<double> member_concurrences;
  double mean_concurrence;  // weighted by member weights
};

EnsembleCheck verify_ensemble(const Ensemble& ensemble, const DensityOperator& target);

}  // namespace noisytel
