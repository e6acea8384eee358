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

#include "noisytel/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "noisytel/entanglement.hpp"
#include "noisytel/errors.hpp"

namespace noisytel {
namespace {

constexpr double kRegimeSlack = 1e-12;
const Complex kI(0.0, 1.0);

// Rows are the sign patterns (+,+,+,+), (+,+,-,-), (+,-,+,-), (+,-,-,+).
constexpr std::array<std::array<double, 4>, 4> kSignPatterns = {{
    {1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}}};

// Relabeling of magic-basis vectors that carries the xz-channel ensembles
// to the other different-axis pairs: position j moves to perm[j].
using MagicPermutation = std::array<int, 4>;

MagicPermutation different_axis_permutation(const NoiseKind& kind) {
  const bool has_x = kind.first() == Axis::x || kind.second() == Axis::x;
  const bool has_y = kind.first() == Axis::y || kind.second() == Axis::y;
  if (has_x && has_y) return {0, 2, 3, 1};  // e2 -> e3 -> e4 -> e2
  if (has_y) return {0, 1, 3, 2};           // e3 <-> e4
  return {0, 1, 2, 3};
}

MagicCoefficients permute(const MagicCoefficients& a, const MagicPermutation& perm) {
  MagicCoefficients out{};
  for (int j = 0; j < 4; ++j) out[perm[j]] = a[j];
  return out;
}

PureState from_magic(const MagicCoefficients& alpha) {
  return PureState::normalized(from_magic_basis(alpha));
}

bool lexicographically_less(const PureState& a, const PureState& b) {
  for (Eigen::Index k = 0; k < a.dim(); ++k) {
    if (a[k].real() != b[k].real()) return a[k].real() < b[k].real();
  }
  return false;
}

// Magic-basis weights of the Bell-diagonal channels in their separable
// regimes, in the order e1..e4.
std::array<double, 4> separable_weights(const NoiseSpec& spec) {
  const ChannelCoefficients k = channel_coefficients(spec.kappa_t());
  const NoiseKind& kind = spec.kind();
  if (kind.family() == ChannelFamily::isotropic) {
    if (spec.kappa_t() < isotropic_separability_kt() - kRegimeSlack) {
      throw OutOfDomainError("isotropic channel is entangled below kappa_t = ln(3)/8");
    }
    const EnsembleCoefficients c = ensemble_coefficients(spec.kappa_t());
    return {c.lambda1, c.lambda2, c.lambda2, c.lambda2};
  }
  if (kind.family() == ChannelFamily::different_axis) {
    if (spec.kappa_t() < different_axis_separability_kt() - kRegimeSlack) {
      throw OutOfDomainError(
          "different-axis channel is entangled below kappa_t = ln(1 + sqrt2)/2");
    }
    const MagicPermutation perm = different_axis_permutation(kind);
    const std::array<double, 4> xz = {k.nu_plus * k.nu_plus, k.nu_plus * k.nu_minus,
                                      k.nu_plus * k.nu_minus, k.nu_minus * k.nu_minus};
    std::array<double, 4> out{};
    for (int j = 0; j < 4; ++j) out[perm[j]] = xz[j];
    return out;
  }
  throw OutOfDomainError("separable decomposition is only constructed for the isotropic and "
                         "different-axis channels");
}

// Sign-pattern superpositions of the vectors x_j with phases e^{i theta_j}.
// Each column becomes one member with weight equal to its squared norm.
std::vector<EnsembleMember> sign_pattern_members(const ComplexMatrix& x,
                                                 const std::array<double, 4>& theta) {
  std::vector<EnsembleMember> members;
  for (const auto& signs : kSignPatterns) {
    ComplexVector z = ComplexVector::Zero(4);
    for (int j = 0; j < 4; ++j) z += 0.5 * signs[j] * std::polar(1.0, theta[j]) * x.col(j);
    const double weight = z.squaredNorm();
    if (weight > 1e-15) members.push_back({weight, PureState::normalized(std::move(z))});
  }
  return members;
}

// Real orthogonal O with (O m O^T)_ii = 0 for every i; m must be real
// symmetric and traceless.
Eigen::MatrixXd zero_diagonal_rotation(Eigen::MatrixXd m) {
  const Eigen::Index n = m.rows();
  Eigen::MatrixXd o = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    const double a = m(k, k);
    if (a == 0.0) continue;
    Eigen::Index j = k + 1;
    while (j < n && m(j, j) * a >= 0.0) ++j;
    if (j == n) break;  // remaining diagonal is already ~0 up to round-off
    const double b = m(k, j);
    const double d = m(j, j);
    // New (k,k) entry a + 2 b u + d u^2 with u = tan(t); a*d < 0 so the
    // roots are real.
    const double disc = std::sqrt(b * b - a * d);
    const double q = -(b + std::copysign(disc, b));
    const double u1 = q / d;
    const double u2 = a / q;
    const double u = std::abs(u1) < std::abs(u2) ? u1 : u2;
    const double t = std::atan(u);
    const double c = std::cos(t);
    const double s = std::sin(t);
    Eigen::MatrixXd r = Eigen::MatrixXd::Identity(n, n);
    r(k, k) = c;
    r(k, j) = s;
    r(j, k) = -s;
    r(j, j) = c;
    m = r * m * r.transpose();
    o = r * o;
  }
  return o;
}

}  // namespace

Ensemble::Ensemble(std::vector<EnsembleMember> members) : members_(std::move(members)) {
  if (members_.empty()) throw std::invalid_argument("ensemble must have at least one member");
  double total = 0.0;
  for (const auto& m : members_) {
    if (!(m.weight > 0.0) || m.weight > 1.0 + 1e-12) {
      throw std::invalid_argument("ensemble weight out of (0, 1]: " + std::to_string(m.weight));
    }
    if (m.state.n_qubits() != 2) {
      throw std::invalid_argument("ensemble members must be two-qubit states");
    }
    total += m.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("ensemble weights sum to " + std::to_string(total));
  }
  std::stable_sort(members_.begin(), members_.end(),
                   [](const EnsembleMember& a, const EnsembleMember& b) {
                     if (std::abs(a.weight - b.weight) > 1e-12) return a.weight > b.weight;
                     return lexicographically_less(a.state, b.state);
                   });
}

ComplexMatrix Ensemble::mixture() const {
  ComplexMatrix out = ComplexMatrix::Zero(4, 4);
  for (const auto& m : members_) out += m.weight * m.state.projector();
  return out;
}

PhaseSolution solve_phase_condition(double lead, const std::array<double, 3>& rest) {
  const std::array<double, 4> coef = {lead, rest[0], rest[1], rest[2]};
  double total = 0.0;
  double largest = 0.0;
  for (double c : coef) {
    if (!(c >= 0.0) || !std::isfinite(c)) {
      throw std::invalid_argument("phase condition coefficients must be finite and nonnegative");
    }
    total += c;
    largest = std::max(largest, c);
  }
  const double slack = 1e-12 * std::max(1.0, total);
  if (largest > total - largest + slack) {
    throw OutOfDomainError("phase condition infeasible: one coefficient exceeds the sum of the "
                           "others (state is entangled)");
  }

  PhaseSolution sol{};
  auto finish = [&](const std::array<double, 4>& psi) {
    Complex sum = 0.0;
    for (int j = 0; j < 4; ++j) {
      double theta = std::remainder(psi[j] / 2.0, std::numbers::pi);
      if (theta < 0.0) theta += std::numbers::pi;
      sol.theta[j] = theta;
      sum += coef[j] * std::polar(1.0, 2.0 * theta);
    }
    sol.residual = std::abs(sum);
    return sol;
  };

  // On the boundary the polygon is flat: the longest side points one way
  // and the rest the other. acos would lose half the digits here.
  if (largest >= total - largest - slack) {
    const auto top = static_cast<std::size_t>(
        std::max_element(coef.begin(), coef.end()) - coef.begin());
    const double base = top == 0 ? 0.0 : std::numbers::pi;
    std::array<double, 4> psi{};
    for (std::size_t j = 0; j < 4; ++j) psi[j] = j == top ? base : base + std::numbers::pi;
    psi[0] = 0.0;
    return finish(psi);
  }

  // Directions psi_j = 2 theta_j of a closed polygon with side lengths coef.
  // Merge the last two sides into one of length L, close the triangle
  // (a, b, L) by the law of cosines, then split L back into (c, d).
  const auto [a, b, c, d] = coef;
  const double lo = std::max(std::abs(c - d), std::abs(a - b));
  const double hi = std::min(c + d, a + b);
  const double len = lo <= hi ? 0.5 * (lo + hi) : hi;

  auto clamp_cos = [](double v) { return std::clamp(v, -1.0, 1.0); };
  double psi_b = 0.0;
  double psi_l = 0.0;
  if (a == 0.0 || b == 0.0) {
    psi_b = 0.0;
    psi_l = std::arg(-(Complex(a) + b));
  } else {
    psi_b = std::acos(clamp_cos((len * len - a * a - b * b) / (2.0 * a * b)));
    const Complex ab = a + b * std::polar(1.0, psi_b);
    psi_l = std::abs(ab) > 0.0 ? std::arg(-ab) : 0.0;
  }
  double psi_c = 0.0;
  double psi_d = 0.0;
  if (len == 0.0) {
    psi_c = 0.0;
    psi_d = std::numbers::pi;
  } else if (c == 0.0 || d == 0.0) {
    psi_c = psi_d = psi_l;
  } else {
    psi_c = psi_l + std::acos(clamp_cos((len * len + c * c - d * d) / (2.0 * len * c)));
    psi_d = psi_l - std::acos(clamp_cos((len * len + d * d - c * c) / (2.0 * len * d)));
  }

  return finish({0.0, psi_b, psi_c, psi_d});
}

EnsembleCoefficients ensemble_coefficients(double kappa_t) {
  const ChannelCoefficients k = channel_coefficients(kappa_t);
  const double r3 = std::numbers::sqrt3;
  return {(3.0 * k.ttau_plus - 1.0) / 2.0, k.ttau_minus / 2.0,
          std::sqrt(r3 * (r3 + 1.0) / 6.0), std::sqrt(r3 * (r3 - 1.0) / 6.0)};
}

double isotropic_separability_kt() { return std::log(3.0) / 8.0; }

double different_axis_separability_kt() { return std::log(1.0 + std::numbers::sqrt2) / 2.0; }

Ensemble optimal_ensemble(const NoiseSpec& spec) {
  const NoiseKind& kind = spec.kind();
  const double kt = spec.kappa_t();
  const ChannelCoefficients k = channel_coefficients(kt);
  std::vector<EnsembleMember> members;

  switch (kind.family()) {
    case ChannelFamily::same_axis: {
      // sqrt(tau_+) e1 +- i sqrt(tau_-) e_m with m = 3 (x), 4 (y), 2 (z).
      const int slot = kind.first() == Axis::x ? 2 : kind.first() == Axis::y ? 3 : 1;
      for (double sign : {1.0, -1.0}) {
        MagicCoefficients alpha{};
        alpha[0] = std::sqrt(k.tau_plus);
        alpha[slot] = sign * kI * std::sqrt(k.tau_minus);
        members.push_back({0.5, from_magic(alpha)});
      }
      break;
    }
    case ChannelFamily::isotropic: {
      if (kt > isotropic_separability_kt() + kRegimeSlack) {
        throw OutOfDomainError("optimal isotropic ensemble requires kappa_t <= ln(3)/8");
      }
      const EnsembleCoefficients c = ensemble_coefficients(kt);
      const double l1 = std::sqrt(std::max(0.0, c.lambda1));
      const double l2 = c.lambda2;
      const std::array<MagicCoefficients, 4> states = {{
          {l1, -kI * std::sqrt(3.0 * l2), 0.0, 0.0},
          {l1, kI * std::sqrt(l2 / 3.0), -2.0 * kI * std::sqrt(2.0 * l2 / 3.0), 0.0},
          {l1, kI * std::sqrt(l2 / 3.0), kI * std::sqrt(2.0 * l2 / 3.0), -kI * std::sqrt(2.0 * l2)},
          {l1, kI * std::sqrt(l2 / 3.0), kI * std::sqrt(2.0 * l2 / 3.0), kI * std::sqrt(2.0 * l2)},
      }};
      for (const auto& s : states) members.push_back({0.25, from_magic(s)});
      break;
    }
    case ChannelFamily::different_axis: {
      if (kt > different_axis_separability_kt() + kRegimeSlack) {
        throw OutOfDomainError(
            "optimal different-axis ensemble requires kappa_t <= ln(1 + sqrt2)/2");
      }
      const double p = k.nu_plus;
      const double m = k.nu_minus;
      const double e2 = p * std::sqrt(m / (1.0 + p));
      const double e3 = std::sqrt(m * (1.0 + 2.0 * p) / (1.0 + p));
      const double e4 = m * std::sqrt(1.0 + 2.0 * p);
      // The e3 coefficient of the second member is e3, not p * e3: only then
      // is the state normalized and the mixture equal to the channel.
      const std::array<MagicCoefficients, 4> xz = {{
          {p, -kI * std::sqrt(m * (1.0 + p)), 0.0, 0.0},
          {p, kI * e2, -kI * e3, 0.0},
          {p, kI * e2, kI * p * e3, -kI * e4},
          {p, kI * e2, kI * p * e3, kI * e4},
      }};
      const std::array<double, 4> weights = {p / (1.0 + 2.0 * p), p / (1.0 + 2.0 * p),
                                             1.0 / (2.0 * (1.0 + 2.0 * p)),
                                             1.0 / (2.0 * (1.0 + 2.0 * p))};
      const MagicPermutation perm = different_axis_permutation(kind);
      for (int i = 0; i < 4; ++i) members.push_back({weights[i], from_magic(permute(xz[i], perm))});
      break;
    }
    case ChannelFamily::w_same_axis_x:
      throw OutOfDomainError("no optimal ensemble is constructed for the three-qubit W channel");
  }
  return Ensemble(std::move(members));
}

Ensemble separable_ensemble(const NoiseSpec& spec) {
  const std::array<double, 4> w = separable_weights(spec);
  const PhaseSolution phases = solve_phase_condition(w[0], {w[1], w[2], w[3]});
  // x_j = -i sqrt(w_j) e_j
  ComplexMatrix x(4, 4);
  for (int j = 0; j < 4; ++j) x.col(j) = -kI * std::sqrt(w[j]) * magic_basis().col(j);
  return Ensemble(sign_pattern_members(x, phases.theta));
}

Ensemble wootters_decomposition(const DensityOperator& rho) {
  if (rho.n_qubits() != 2) throw std::invalid_argument("wootters_decomposition needs two qubits");
  const Eigensystem es = hermitian_eigensystem(rho.matrix());
  std::vector<Eigen::Index> support;
  for (Eigen::Index k = 0; k < 4; ++k) {
    if (es.values[k] > 1e-13) support.push_back(k);
  }
  const auto r = static_cast<Eigen::Index>(support.size());
  ComplexMatrix v(4, r);
  for (Eigen::Index c = 0; c < r; ++c) {
    v.col(c) = es.vectors.col(support[c]) * std::sqrt(es.values[support[c]]);
  }

  // x = v conj(U) gives x_i^T (Y x Y) x_j = lambda_i delta_ij.
  static const ComplexMatrix yy = kron(pauli(Axis::y), pauli(Axis::y));
  const TakagiFactorization tk = takagi_factorize(v.transpose() * yy * v);
  const ComplexMatrix x = v * tk.unitary.conjugate();
  const RealVector& lambda = tk.values;
  double concurrence = lambda[0];
  for (Eigen::Index k = 1; k < r; ++k) concurrence -= lambda[k];

  std::vector<EnsembleMember> members;
  if (concurrence > 0.0) {
    // y_1 = x_1, y_j = i x_j makes the bilinear form diag(l1, -l2, ...);
    // rotate so every member's value equals C times its weight.
    ComplexMatrix y = x;
    RealVector d(r);
    d[0] = lambda[0];
    for (Eigen::Index k = 1; k < r; ++k) {
      y.col(k) *= kI;
      d[k] = -lambda[k];
    }
    const Eigen::MatrixXd gram = (y.adjoint() * y).real();
    const Eigen::MatrixXd target = Eigen::MatrixXd(d.asDiagonal()) - concurrence * gram;
    const Eigen::MatrixXd o = zero_diagonal_rotation(target);
    const ComplexMatrix z = y * o.transpose().cast<Complex>();
    for (Eigen::Index i = 0; i < r; ++i) {
      const double weight = z.col(i).squaredNorm();
      if (weight > 1e-15) members.push_back({weight, PureState::normalized(z.col(i))});
    }
  } else {
    // Close the polygon sum_j lambda_j e^{2i theta_j} = 0; then every
    // sign-pattern superposition has zero concurrence.
    ComplexMatrix x4 = ComplexMatrix::Zero(4, 4);
    std::array<double, 4> l4 = {0.0, 0.0, 0.0, 0.0};
    for (Eigen::Index k = 0; k < r; ++k) {
      x4.col(k) = x.col(k);
      l4[static_cast<std::size_t>(k)] = lambda[k];
    }
    const PhaseSolution phases = solve_phase_condition(l4[0], {l4[1], l4[2], l4[3]});
    members = sign_pattern_members(x4, phases.theta);
  }
  return Ensemble(std::move(members));
}

EnsembleCheck verify_ensemble(const Ensemble& ensemble, const DensityOperator& target) {
  if (target.n_qubits() != 2) throw std::invalid_argument("verify_ensemble: target must be two-qubit");
  EnsembleCheck check{};
  check.residual = max_abs(ensemble.mixture() - target.matrix());
  check.mean_concurrence = 0.0;
  for (const auto& m : ensemble.members()) {
    const double c = concurrence_pure(m.state);
    check.member_concurrences.push_back(c);
    check.mean_concurrence += m.weight * c;
  }
  return check;
}

}  // namespace noisytel
