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
#include <string>
#include <string_view>
#include <vector>

#include "noisytel/qstate.hpp"

namespace noisytel {

enum class ChannelFamily { same_axis, isotropic, different_axis, w_same_axis_x };

/// Which Lindblad operators act on the shared resource. EPR channels act on
/// both halves of |beta_00>; the W channel acts with sigma_x on all three
/// qubits of the W state.
class NoiseKind {
 public:
  static NoiseKind same_axis(Axis axis);
  static NoiseKind isotropic();
  /// Throws std::invalid_argument when the axes coincide.
  static NoiseKind different_axis(Axis first, Axis second);
  static NoiseKind w_same_axis_x();

  /// Accepts x, y, z, isotropic (or iso), xz, xy, yz, zx, zy, yx, w.
  static NoiseKind parse(std::string_view name);

  ChannelFamily family() const { return family_; }
  Axis first() const { return first_; }
  Axis second() const { return second_; }
  std::string name() const;
  /// 2 for EPR channels, 3 for the W channel.
  int n_qubits() const { return family_ == ChannelFamily::w_same_axis_x ? 3 : 2; }
  bool is_epr() const { return n_qubits() == 2; }

  friend bool operator==(const NoiseKind&, const NoiseKind&) = default;

 private:
  NoiseKind(ChannelFamily family, Axis first, Axis second)
      : family_(family), first_(first), second_(second) {}

  ChannelFamily family_;
  Axis first_;
  Axis second_;
};

/// Every channel studied: three same-axis, isotropic, six different-axis, W.
const std::vector<NoiseKind>& all_noise_kinds();
/// all_noise_kinds() without the W channel.
const std::vector<NoiseKind>& epr_noise_kinds();

/// A channel plus the dimensionless decoherence parameter kappa*t.
class NoiseSpec {
 public:
  /// Throws std::invalid_argument for negative or NaN kappa_t; +inf is
  /// accepted and gives the asymptotic state.
  NoiseSpec(NoiseKind kind, double kappa_t);

  const NoiseKind& kind() const { return kind_; }
  double kappa_t() const { return kappa_t_; }

 private:
  NoiseKind kind_;
  double kappa_t_;
};

struct ChannelCoefficients {
  double tau_plus, tau_minus;    // (1 +- e^{-4kt})/2
  double nu_plus, nu_minus;      // (1 +- e^{-2kt})/2
  double ttau_plus, ttau_minus;  // (1 +- e^{-8kt})/2
  std::array<double, 4> w_alpha; // W-channel alpha_1..alpha_4
  double w_beta_plus, w_beta_minus;  // 1 +- e^{-6kt}
};

ChannelCoefficients channel_coefficients(double kappa_t);

/// kt_min + i * kt_step for i = 0, 1, ... while <= kt_max (with 1e-9 step
/// slack so kt_max itself is included). Throws std::invalid_argument unless
/// 0 <= kt_min <= kt_max and kt_step > 0.
std::vector<double> kappa_grid(double kt_min, double kt_max, double kt_step);

/// Initial resource before noise: |beta_00><beta_00| or |psi_W><psi_W|.
DensityOperator ideal_resource(const NoiseKind& kind);

/// Closed-form noisy resource. EPR channels are 4x4, the W channel 8x8.
DensityOperator analytic_channel(const NoiseSpec& spec);

/// Jump operators L = sigma_alpha on the channel qubits, unit rate.
std::vector<ComplexMatrix> lindblad_operators(const NoiseKind& kind);

/// Right-hand side sum_L (L s L^dag - {L^dag L, s}/2) with H_S = 0.
ComplexMatrix lindblad_rhs(const ComplexMatrix& sigma, const std::vector<ComplexMatrix>& ops);

/// Fixed-step RK4 in s = kappa*t from 0 to kappa_t, Hermitized after each
/// step. No validation of the result; see lindblad_evolve.
ComplexMatrix lindblad_integrate(const ComplexMatrix& rho0,
                                 const std::vector<ComplexMatrix>& ops,
                                 double kappa_t, int steps);

/// 10^4 steps per unit kappa*t, at least one.
int default_lindblad_steps(double kappa_t);

inline constexpr double kIntegratorTolerance = 1e-8;

struct LindbladResult {
  DensityOperator state;
  /// Step-doubling estimate of the max-entry error of `state`.
  double error_estimate;
};

/// Integrates the master equation from rho0 and estimates the error from a
/// half-resolution run. Throws ConvergenceError (carrying the estimate)
/// when the estimate exceeds kIntegratorTolerance.
LindbladResult lindblad_evolve(const DensityOperator& rho0, const NoiseKind& kind,
                               double kappa_t, int steps);

}  // namespace noisytel
