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

#include "noisytel/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "noisytel/errors.hpp"

namespace noisytel {
namespace {

char axis_letter(Axis a) {
  switch (a) {
    case Axis::x: return 'x';
    case Axis::y: return 'y';
    case Axis::z: return 'z';
  }
  return '?';
}

Axis axis_from_letter(char c) {
  switch (c) {
    case 'x': return Axis::x;
    case 'y': return Axis::y;
    case 'z': return Axis::z;
    default: throw std::invalid_argument(std::string("unknown axis '") + c + "'");
  }
}

// Symmetric 4x4 with the X-shaped sparsity shared by all EPR channels:
// diagonal (d0, d1, d1, d0), corner coherence c03 and inner coherence c12.
ComplexMatrix x_shaped(double d0, double d1, double c03, double c12) {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = m(3, 3) = d0;
  m(1, 1) = m(2, 2) = d1;
  m(0, 3) = m(3, 0) = c03;
  m(1, 2) = m(2, 1) = c12;
  return 0.5 * m;
}

ComplexMatrix w_channel_matrix(const ChannelCoefficients& k) {
  const double r2 = std::numbers::sqrt2;
  const auto [a1, a2, a3, a4] = k.w_alpha;
  const double bp = k.w_beta_plus;
  const double bm = k.w_beta_minus;
  Eigen::MatrixXd m(8, 8);
  // clang-format off
  m << 2*a2,    0,     0, r2*a2,     0, r2*a2,    a2,     0,
          0, 2*a1, r2*a1,     0, r2*a1,     0,     0,    a3,
          0, r2*a1, 2*bp,     0,    a1,     0,     0, r2*a3,
      r2*a2,    0,     0,  2*bm,     0,    a4, r2*a4,     0,
          0, r2*a1,   a1,     0,  2*bp,     0,     0, r2*a3,
      r2*a2,    0,     0,    a4,     0,  2*bm, r2*a4,     0,
         a2,    0,     0, r2*a4,     0, r2*a4,  2*a4,     0,
          0,   a3, r2*a3,     0, r2*a3,     0,     0,  2*a3;
  // clang-format on
  return (m / 16.0).cast<Complex>();
}

}  // namespace

NoiseKind NoiseKind::same_axis(Axis axis) { return {ChannelFamily::same_axis, axis, axis}; }

NoiseKind NoiseKind::isotropic() { return {ChannelFamily::isotropic, Axis::x, Axis::x}; }

NoiseKind NoiseKind::different_axis(Axis first, Axis second) {
  if (first == second) {
    throw std::invalid_argument("different-axis channel needs two distinct axes");
  }
  return {ChannelFamily::different_axis, first, second};
}

NoiseKind NoiseKind::w_same_axis_x() { return {ChannelFamily::w_same_axis_x, Axis::x, Axis::x}; }

NoiseKind NoiseKind::parse(std::string_view name) {
  if (name == "isotropic" || name == "iso") return isotropic();
  if (name == "w") return w_same_axis_x();
  if (name.size() == 1) return same_axis(axis_from_letter(name[0]));
  if (name.size() == 2) {
    return different_axis(axis_from_letter(name[0]), axis_from_letter(name[1]));
  }
  throw std::invalid_argument("unknown noise kind '" + std::string(name) + "'");
}

std::string NoiseKind::name() const {
  switch (family_) {
    case ChannelFamily::same_axis: return std::string(1, axis_letter(first_));
    case ChannelFamily::isotropic: return "isotropic";
    case ChannelFamily::different_axis:
      return std::string{axis_letter(first_), axis_letter(second_)};
    case ChannelFamily::w_same_axis_x: return "w";
  }
  return "?";
}

const std::vector<NoiseKind>& all_noise_kinds() {
  static const std::vector<NoiseKind> kinds = [] {
    std::vector<NoiseKind> k = epr_noise_kinds();
    k.push_back(NoiseKind::w_same_axis_x());
    return k;
  }();
  return kinds;
}

const std::vector<NoiseKind>& epr_noise_kinds() {
  static const std::vector<NoiseKind> kinds = {
      NoiseKind::same_axis(Axis::x),
      NoiseKind::same_axis(Axis::y),
      NoiseKind::same_axis(Axis::z),
      NoiseKind::isotropic(),
      NoiseKind::different_axis(Axis::x, Axis::z),
      NoiseKind::different_axis(Axis::x, Axis::y),
      NoiseKind::different_axis(Axis::y, Axis::z),
      NoiseKind::different_axis(Axis::z, Axis::x),
      NoiseKind::different_axis(Axis::z, Axis::y),
      NoiseKind::different_axis(Axis::y, Axis::x),
  };
  return kinds;
}

NoiseSpec::NoiseSpec(NoiseKind kind, double kappa_t) : kind_(kind), kappa_t_(kappa_t) {
  if (std::isnan(kappa_t) || kappa_t < 0.0) {
    throw std::invalid_argument("kappa_t must be nonnegative");
  }
}

ChannelCoefficients channel_coefficients(double kappa_t) {
  if (std::isnan(kappa_t) || kappa_t < 0.0) {
    throw std::invalid_argument("kappa_t must be nonnegative");
  }
  const double e2 = std::exp(-2.0 * kappa_t);
  const double e4 = std::exp(-4.0 * kappa_t);
  const double e6 = std::exp(-6.0 * kappa_t);
  const double e8 = std::exp(-8.0 * kappa_t);
  ChannelCoefficients k{};
  k.tau_plus = (1.0 + e4) / 2.0;
  k.tau_minus = (1.0 - e4) / 2.0;
  k.nu_plus = (1.0 + e2) / 2.0;
  k.nu_minus = (1.0 - e2) / 2.0;
  k.ttau_plus = (1.0 + e8) / 2.0;
  k.ttau_minus = (1.0 - e8) / 2.0;
  k.w_alpha = {1.0 + e2 + e4 + e6, 1.0 + e2 - e4 - e6, 1.0 - e2 - e4 + e6, 1.0 - e2 + e4 - e6};
  k.w_beta_plus = 1.0 + e6;
  k.w_beta_minus = 1.0 - e6;
  return k;
}

std::vector<double> kappa_grid(double kt_min, double kt_max, double kt_step) {
  if (!(kt_step > 0.0) || !(kt_min >= 0.0) || !(kt_max >= kt_min) || !std::isfinite(kt_max)) {
    throw std::invalid_argument("kappa grid: need 0 <= kt_min <= kt_max and kt_step > 0");
  }
  const auto count = static_cast<std::size_t>(std::floor((kt_max - kt_min) / kt_step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = kt_min + static_cast<double>(i) * kt_step;
  return grid;
}

DensityOperator ideal_resource(const NoiseKind& kind) {
  return kind.is_epr() ? epr_state().density() : w_state().density();
}

DensityOperator analytic_channel(const NoiseSpec& spec) {
  const double kt = spec.kappa_t();
  const ChannelCoefficients k = channel_coefficients(kt);
  const double e2 = std::exp(-2.0 * kt);
  const double e4 = std::exp(-4.0 * kt);
  const NoiseKind& kind = spec.kind();

  switch (kind.family()) {
    case ChannelFamily::same_axis:
      switch (kind.first()) {
        case Axis::x: return DensityOperator(x_shaped(k.tau_plus, k.tau_minus, k.tau_plus, k.tau_minus));
        case Axis::y: return DensityOperator(x_shaped(k.tau_plus, k.tau_minus, k.tau_plus, -k.tau_minus));
        case Axis::z: return DensityOperator(x_shaped(1.0, 0.0, e4, 0.0));
      }
      break;
    case ChannelFamily::isotropic:
      return DensityOperator(
          x_shaped(k.ttau_plus, k.ttau_minus, 2.0 * k.ttau_plus - 1.0, 0.0));
    case ChannelFamily::different_axis: {
      // Pauli noise on either half of a Bell-diagonal state acts the same
      // way, so only the unordered axis pair matters.
      const bool has_x = kind.first() == Axis::x || kind.second() == Axis::x;
      const bool has_y = kind.first() == Axis::y || kind.second() == Axis::y;
      if (has_x && has_y) {
        return DensityOperator(x_shaped(k.tau_plus, k.tau_minus, e2, 0.0));
      }
      // The yz coherence between |01> and |10> carries a minus sign: sigma_y
      // maps |beta_00> to the singlet rather than to |beta_01>.
      const double inner_sign = has_x ? 1.0 : -1.0;
      return DensityOperator(
          x_shaped(k.nu_plus, k.nu_minus, e2 * k.nu_plus, inner_sign * e2 * k.nu_minus));
    }
    case ChannelFamily::w_same_axis_x:
      return DensityOperator(w_channel_matrix(k));
  }
  throw std::logic_error("analytic_channel: unhandled channel");
}

std::vector<ComplexMatrix> lindblad_operators(const NoiseKind& kind) {
  std::vector<ComplexMatrix> ops;
  switch (kind.family()) {
    case ChannelFamily::same_axis:
    case ChannelFamily::different_axis:
      ops.push_back(embed(pauli(kind.first()), 0, 2));
      ops.push_back(embed(pauli(kind.second()), 1, 2));
      break;
    case ChannelFamily::isotropic:
      for (int q = 0; q < 2; ++q) {
        for (Axis a : {Axis::x, Axis::y, Axis::z}) ops.push_back(embed(pauli(a), q, 2));
      }
      break;
    case ChannelFamily::w_same_axis_x:
      for (int q = 0; q < 3; ++q) ops.push_back(embed(pauli(Axis::x), q, 3));
      break;
  }
  return ops;
}

ComplexMatrix lindblad_rhs(const ComplexMatrix& sigma, const std::vector<ComplexMatrix>& ops) {
  ComplexMatrix out = ComplexMatrix::Zero(sigma.rows(), sigma.cols());
  for (const auto& l : ops) {
    const ComplexMatrix ldl = l.adjoint() * l;
    out += l * sigma * l.adjoint() - 0.5 * (ldl * sigma + sigma * ldl);
  }
  return out;
}

ComplexMatrix lindblad_integrate(const ComplexMatrix& rho0,
                                 const std::vector<ComplexMatrix>& ops,
                                 double kappa_t, int steps) {
  if (steps < 1) throw std::invalid_argument("lindblad_integrate: steps must be >= 1");
  if (std::isnan(kappa_t) || kappa_t < 0.0 || std::isinf(kappa_t)) {
    throw std::invalid_argument("lindblad_integrate: kappa_t must be finite and nonnegative");
  }
  ComplexMatrix sigma = rho0;
  if (kappa_t == 0.0) return sigma;
  const double h = kappa_t / steps;
  for (int s = 0; s < steps; ++s) {
    const ComplexMatrix k1 = lindblad_rhs(sigma, ops);
    const ComplexMatrix k2 = lindblad_rhs(sigma + 0.5 * h * k1, ops);
    const ComplexMatrix k3 = lindblad_rhs(sigma + 0.5 * h * k2, ops);
    const ComplexMatrix k4 = lindblad_rhs(sigma + h * k3, ops);
    sigma += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    sigma = 0.5 * (sigma + sigma.adjoint()).eval();
  }
  return sigma;
}

int default_lindblad_steps(double kappa_t) {
  return std::max(1, static_cast<int>(std::ceil(1e4 * kappa_t)));
}

LindbladResult lindblad_evolve(const DensityOperator& rho0, const NoiseKind& kind,
                               double kappa_t, int steps) {
  if (rho0.n_qubits() != kind.n_qubits()) {
    throw std::invalid_argument("lindblad_evolve: register size does not match channel");
  }
  if (kappa_t == 0.0) return {rho0, 0.0};
  const auto ops = lindblad_operators(kind);
  const ComplexMatrix fine = lindblad_integrate(rho0.matrix(), ops, kappa_t, steps);
  // RK4 error scales as h^4, so |fine - coarse| ~ 15 * error(fine).
  double estimate;
  if (steps >= 2 && steps % 2 == 0) {
    const ComplexMatrix coarse = lindblad_integrate(rho0.matrix(), ops, kappa_t, steps / 2);
    estimate = max_abs(fine - coarse) / 15.0;
  } else {
    const ComplexMatrix finer = lindblad_integrate(rho0.matrix(), ops, kappa_t, 2 * steps);
    estimate = max_abs(fine - finer) * 16.0 / 15.0;
  }
  if (estimate > kIntegratorTolerance) {
    throw ConvergenceError("lindblad_evolve: " + std::to_string(steps) +
                               " steps give estimated error " + std::to_string(estimate),
                           estimate);
  }
  return {DensityOperator(fine), estimate};
}

}  // namespace noisytel
