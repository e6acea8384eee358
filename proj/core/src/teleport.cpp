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

#include "noisytel/teleport.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace noisytel {
namespace {

constexpr double kPi = std::numbers::pi;

struct BellMeasurement {
  ComplexMatrix unitary;  // H on input after CNOT(input -> Alice)
  std::array<ComplexMatrix, 4> projected_corrections;  // C_m P_m U, m = 2*m1 + m2
};

const BellMeasurement& bell_measurement() {
  static const BellMeasurement bm = [] {
    BellMeasurement out;
    out.unitary = embed(hadamard(), 0, 3) * cnot(0, 1, 3);
    const ComplexMatrix x_bob = embed(pauli(Axis::x), 2, 3);
    const ComplexMatrix z_bob = embed(pauli(Axis::z), 2, 3);
    const ComplexMatrix id = ComplexMatrix::Identity(8, 8);
    for (int m1 = 0; m1 < 2; ++m1) {
      for (int m2 = 0; m2 < 2; ++m2) {
        ComplexMatrix p1 = ComplexMatrix::Zero(2, 2);
        ComplexMatrix p2 = ComplexMatrix::Zero(2, 2);
        p1(m1, m1) = 1.0;
        p2(m2, m2) = 1.0;
        const ComplexMatrix projector = kron(kron(p1, p2), ComplexMatrix::Identity(2, 2));
        const ComplexMatrix correction = (m1 ? z_bob : id) * (m2 ? x_bob : id);
        out.projected_corrections[2 * m1 + m2] = correction * projector * out.unitary;
      }
    }
    return out;
  }();
  return bm;
}

// Linear in both arguments; no validation so it can be applied to basis
// operators |a><b| when tabulating the channel.
ComplexMatrix teleport_linear(const ComplexMatrix& rho_in, const ComplexMatrix& resource) {
  const ComplexMatrix joint = kron(rho_in, resource);
  ComplexMatrix out = ComplexMatrix::Zero(2, 2);
  for (const auto& k : bell_measurement().projected_corrections) {
    const ComplexMatrix branch = k * joint * k.adjoint();
    // Trace out input and Alice: Bob's qubit is the least significant bit.
    for (Eigen::Index alice = 0; alice < 4; ++alice) {
      out += branch.block(2 * alice, 2 * alice, 2, 2);
    }
  }
  return out;
}

void require_two_qubit_resource(const DensityOperator& resource) {
  if (resource.n_qubits() != 2) {
    throw std::invalid_argument("teleportation resource must be a two-qubit state");
  }
}

}  // namespace

InputAngles::InputAngles(double theta, double phi) : theta_(theta), phi_(phi) {
  if (!(theta >= 0.0 && theta <= kPi) || !(phi >= 0.0 && phi < 2.0 * kPi)) {
    throw std::invalid_argument("input angles out of range: theta in [0, pi], phi in [0, 2pi)");
  }
}

PureState input_state(const InputAngles& angles) {
  ComplexVector v(2);
  v[0] = std::cos(angles.theta() / 2.0) * std::polar(1.0, angles.phi() / 2.0);
  v[1] = std::sin(angles.theta() / 2.0) * std::polar(1.0, -angles.phi() / 2.0);
  return PureState::normalized(std::move(v));
}

DensityOperator teleport_output(const DensityOperator& resource, const PureState& psi_in) {
  require_two_qubit_resource(resource);
  if (psi_in.n_qubits() != 1) {
    throw std::invalid_argument("teleported state must be a single qubit");
  }
  ComplexMatrix out = teleport_linear(psi_in.projector(), resource.matrix());
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityOperator(std::move(out));
}

double fidelity_at(const DensityOperator& resource, const InputAngles& angles) {
  const PureState psi = input_state(angles);
  return fidelity_pure(psi, teleport_output(resource, psi));
}

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  // P_n(x) and P_n'(x) by the three-term recurrence.
  auto legendre = [n](double x) {
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    const double pn_1 = n == 1 ? 1.0 : p0;
    return std::pair{p1, n * (x * p1 - pn_1) / (x * x - 1.0)};
  };
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [pn, dp] = legendre(x);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(x).second;
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

double average_fidelity(const DensityOperator& resource, int n_theta, int n_phi) {
  require_two_qubit_resource(resource);
  if (n_theta < 8 || n_phi < 8) {
    throw std::invalid_argument("average_fidelity: grid must be at least 8x8");
  }
  // Tabulate the channel on |a><b| once; each node is then a 2x2 contraction.
  std::array<ComplexMatrix, 4> images;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      ComplexMatrix basis = ComplexMatrix::Zero(2, 2);
      basis(a, b) = 1.0;
      images[2 * a + b] = teleport_linear(basis, resource.matrix());
    }
  }
  const GaussLegendreRule rule = gauss_legendre(n_theta);
  double total = 0.0;
  for (int i = 0; i < n_theta; ++i) {
    const double u = rule.nodes[i];
    const double c = std::sqrt((1.0 + u) / 2.0);  // cos(theta/2)
    const double s = std::sqrt((1.0 - u) / 2.0);  // sin(theta/2)
    double ring = 0.0;
    for (int j = 0; j < n_phi; ++j) {
      const double phi = 2.0 * kPi * j / n_phi;
      const std::array<Complex, 2> psi = {c * std::polar(1.0, phi / 2.0),
                                          s * std::polar(1.0, -phi / 2.0)};
      Complex f = 0.0;
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          const ComplexMatrix& img = images[2 * a + b];
          const Complex rho_ab = psi[a] * std::conj(psi[b]);
          for (int r = 0; r < 2; ++r) {
            for (int q = 0; q < 2; ++q) f += rho_ab * std::conj(psi[r]) * img(r, q) * psi[q];
          }
        }
      }
      ring += f.real();
    }
    total += rule.weights[i] * ring;
  }
  // (1/4pi) * (2pi/n_phi) * sum
  return total / (2.0 * n_phi);
}

double average_fidelity_closed_form(const NoiseSpec& spec) {
  const double kt = spec.kappa_t();
  const double e2 = std::exp(-2.0 * kt);
  const double e4 = std::exp(-4.0 * kt);
  const double e6 = std::exp(-6.0 * kt);
  const double e8 = std::exp(-8.0 * kt);
  switch (spec.kind().family()) {
    case ChannelFamily::same_axis: return 2.0 / 3.0 + e4 / 3.0;
    case ChannelFamily::isotropic: return 0.5 + e8 / 2.0;
    case ChannelFamily::different_axis: return (3.0 + 2.0 * e2 + e4) / 6.0;
    case ChannelFamily::w_same_axis_x: return (14.0 + 3.0 * e2 + 2.0 * e4 + 5.0 * e6) / 24.0;
  }
  throw std::logic_error("average_fidelity_closed_form: unhandled channel");
}

double classical_threshold_kt(const NoiseKind& kind) {
  if (kind.family() == ChannelFamily::same_axis) {
    return std::numeric_limits<double>::infinity();
  }
  auto excess = [&](double kt) {
    return average_fidelity_closed_form(NoiseSpec(kind, kt)) - kClassicalFidelity;
  };
  double lo = 0.0;
  double hi = 1.0;
  while (excess(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  // Bisect to the resolution of double rather than stopping at 1e-9.
  for (int iter = 0; iter < 200 && hi - lo > 1e-15; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

FidelityCurve closed_form_fidelity_curve(const NoiseKind& kind, double kt_min, double kt_max,
                                         double kt_step) {
  FidelityCurve curve;
  for (double kt : kappa_grid(kt_min, kt_max, kt_step)) {
    curve.push_back({kt, average_fidelity_closed_form(NoiseSpec(kind, kt))});
  }
  return curve;
}

}  // namespace noisytel
