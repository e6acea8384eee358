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

#include <vector>

#include "noisytel/channels.hpp"
#include "noisytel/qstate.hpp"

namespace noisytel {

/// Bloch angles of the state Alice sends.
class InputAngles {
 public:
  /// theta in [0, pi], phi in [0, 2pi); throws std::invalid_argument otherwise.
  InputAngles(double theta, double phi);

  double theta() const { return theta_; }
  double phi() const { return phi_; }

 private:
  double theta_;
  double phi_;
};

/// cos(theta/2) e^{i phi/2} |0> + sin(theta/2) e^{-i phi/2} |1>.
PureState input_state(const InputAngles& angles);

/// Output of the standard one-qubit teleportation circuit with a two-qubit
/// (possibly mixed) resource shared by Alice (qubit 0) and Bob (qubit 1).
///
/// Register order is input, Alice's half, Bob's half. Alice applies
/// CNOT(input -> her half) then H on the input line and measures both; Bob
/// applies X if the second meter reads 1, then Z if the first reads 1. The
/// four outcomes are summed with their Born weights, so the result is the
/// deterministic channel output rather than one sampled run.
DensityOperator teleport_output(const DensityOperator& resource, const PureState& psi_in);

/// <psi_in|rho_out|psi_in> for the input at `angles`.
double fidelity_at(const DensityOperator& resource, const InputAngles& angles);

/// Gauss-Legendre nodes/weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendreRule gauss_legendre(int n);

inline constexpr int kDefaultQuadratureTheta = 64;
inline constexpr int kDefaultQuadraturePhi = 64;

/// Sphere average (1/4pi) int dphi int dtheta sin(theta) F(theta, phi):
/// Gauss-Legendre in u = cos(theta), trapezoid in phi. Requires both grid
/// sizes >= 8. Accumulates in node-index order.
double average_fidelity(const DensityOperator& resource,
                        int n_theta = kDefaultQuadratureTheta,
                        int n_phi = kDefaultQuadraturePhi);

/// Closed-form average fidelity of each channel:
///   same axis      2/3 + e^{-4kt}/3
///   isotropic      1/2 + e^{-8kt}/2
///   different axis (3 + 2e^{-2kt} + e^{-4kt})/6
///   W channel      (14 + 3e^{-2kt} + 2e^{-4kt} + 5e^{-6kt})/24
double average_fidelity_closed_form(const NoiseSpec& spec);

/// Best average fidelity achievable with a classical channel.
inline constexpr double kClassicalFidelity = 2.0 / 3.0;

/// kappa*t at which the closed-form average fidelity drops to 2/3, by
/// bisection to 1e-9 (tighter in practice). Same-axis channels never reach
/// 2/3 and return +infinity.
double classical_threshold_kt(const NoiseKind& kind);

struct FidelityPoint {
  double kappa_t;
  double avg_fidelity;
};
using FidelityCurve = std::vector<FidelityPoint>;

/// Closed-form F-bar sampled on kt_min, kt_min + step, ... <= kt_max.
FidelityCurve closed_form_fidelity_curve(const NoiseKind& kind, double kt_min, double kt_max,
                                         double kt_step);

}  // namespace noisytel
