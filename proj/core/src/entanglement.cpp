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

#include "noisytel/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "json.hpp"

namespace noisytel {
namespace {

constexpr double kSnapToZero = 1e-12;
constexpr double kSnapToOne = 1e-12;
constexpr double kRankCutoff = 1e-13;

const ComplexMatrix& spin_flip() {
  static const ComplexMatrix yy = kron(pauli(Axis::y), pauli(Axis::y));
  return yy;
}

void require_two_qubits(int n_qubits, const char* what) {
  if (n_qubits != 2) throw std::invalid_argument(std::string(what) + " requires two qubits");
}

double checked_concurrence(double c) {
  if (std::isnan(c) || c < 0.0 || c > 1.0 + 1e-12) {
    throw std::invalid_argument("concurrence must lie in [0, 1]");
  }
  return std::min(c, 1.0);
}

// 1 - sqrt(1 - c^2) without cancellation for small c.
double one_minus_sqrt_complement(double c) {
  return c * c / (1.0 + std::sqrt(1.0 - c * c));
}

// Maximizes |<q_0 ... q_{n-1}|psi>|^2 from one starting product state.
double alternating_ascent(const ComplexVector& psi, int n_qubits,
                          std::vector<std::array<Complex, 2>>& q) {
  constexpr int kMaxSweeps = 20000;
  constexpr double kImprovement = 1e-15;
  const Eigen::Index dim = psi.size();
  double value = 0.0;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double sweep_value = 0.0;
    for (int k = 0; k < n_qubits; ++k) {
      // phi_k(b) = <q_others| psi> restricted to bit k = b.
      std::array<Complex, 2> phi = {0.0, 0.0};
      for (Eigen::Index i = 0; i < dim; ++i) {
        Complex amp = psi[i];
        for (int o = 0; o < n_qubits; ++o) {
          if (o == k) continue;
          amp *= std::conj(q[o][(i >> (n_qubits - 1 - o)) & 1]);
        }
        phi[(i >> (n_qubits - 1 - k)) & 1] += amp;
      }
      const double norm2 = std::norm(phi[0]) + std::norm(phi[1]);
      if (norm2 == 0.0) {
        // Orthogonal to every product with the other factors fixed; any q_k
        // is optimal for this coordinate.
        continue;
      }
      const double norm = std::sqrt(norm2);
      q[k] = {phi[0] / norm, phi[1] / norm};
      sweep_value = norm2;
    }
    if (sweep > 0 && sweep_value - value < kImprovement) {
      value = std::max(value, sweep_value);
      break;
    }
    value = sweep_value;
  }
  return value;
}

// G and E depend on sqrt(1 - C^2), so round-off just below C = 1 costs
// eight digits; maximally entangled inputs are reported as exactly 1.
double snap_to_one(double c) { return c >= 1.0 - kSnapToOne ? 1.0 : c; }

}  // namespace

double concurrence_pure(const PureState& psi) {
  require_two_qubits(psi.n_qubits(), "concurrence_pure");
  const MagicCoefficients alpha = to_magic_basis(psi);
  Complex sum = 0.0;
  for (const Complex& a : alpha) sum += a * a;
  return snap_to_one(std::abs(sum));
}

std::array<double, 4> spin_flip_roots(const DensityOperator& rho) {
  require_two_qubits(rho.n_qubits(), "spin_flip_roots");
  const Eigensystem es = hermitian_eigensystem(rho.matrix());
  std::vector<Eigen::Index> support;
  for (Eigen::Index k = 0; k < 4; ++k) {
    if (es.values[k] > kRankCutoff) support.push_back(k);
  }
  ComplexMatrix v(4, static_cast<Eigen::Index>(support.size()));
  for (std::size_t c = 0; c < support.size(); ++c) {
    v.col(static_cast<Eigen::Index>(c)) = es.vectors.col(support[c]) * std::sqrt(es.values[support[c]]);
  }
  const ComplexMatrix tau = v.transpose() * spin_flip() * v;
  Eigen::JacobiSVD<ComplexMatrix> svd(tau);
  std::array<double, 4> roots = {0.0, 0.0, 0.0, 0.0};
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
    roots[static_cast<std::size_t>(k)] = svd.singularValues()[k];
  }
  return roots;
}

double concurrence_mixed(const DensityOperator& rho) {
  const auto l = spin_flip_roots(rho);
  const double c = l[0] - l[1] - l[2] - l[3];
  if (c <= kSnapToZero) return 0.0;
  return snap_to_one(c);
}

double binary_entropy(double x) {
  if (std::isnan(x) || x < 0.0 || x > 1.0) {
    throw std::invalid_argument("binary_entropy: argument must lie in [0, 1]");
  }
  auto term = [](double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; };
  return term(x) + term(1.0 - x);
}

double eof_from_concurrence(double c) {
  c = checked_concurrence(c);
  // h is symmetric, so evaluate at the small root (1 - sqrt(1 - c^2))/2.
  return binary_entropy(one_minus_sqrt_complement(c) / 2.0);
}

double groverian_from_concurrence(double c) {
  c = checked_concurrence(c);
  return std::sqrt(one_minus_sqrt_complement(c) / 2.0);
}

double pmax_pure_2qubit(const PureState& psi) {
  require_two_qubits(psi.n_qubits(), "pmax_pure_2qubit");
  const DensityOperator reduced = partial_trace(psi.density(), {0});
  const double det = (reduced(0, 0) * reduced(1, 1) - reduced(0, 1) * reduced(1, 0)).real();
  // 1 - 4 det equals 1 - C^2; snap it like the concurrence so the two agree at C = 1.
  const double c2 = 1.0 - 4.0 * det;
  return c2 <= 2.0 * kSnapToOne ? 0.5 : 0.5 * (1.0 + std::sqrt(c2));
}

double pmax_numeric(const PureState& psi, int restarts, std::uint64_t seed) {
  if (restarts < 1) throw std::invalid_argument("pmax_numeric: restarts must be >= 1");
  const int n = psi.n_qubits();
  double best = 0.0;
  for (int r = 0; r < restarts; ++r) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(r));
    std::normal_distribution<double> normal;
    std::vector<std::array<Complex, 2>> q(static_cast<std::size_t>(n));
    for (auto& qk : q) {
      Complex a(normal(rng), normal(rng));
      Complex b(normal(rng), normal(rng));
      const double norm = std::sqrt(std::norm(a) + std::norm(b));
      qk = {a / norm, b / norm};
    }
    best = std::max(best, alternating_ascent(psi.amplitudes(), n, q));
  }
  return std::min(best, 1.0);
}

double ppt_min_eigenvalue(const DensityOperator& rho) {
  require_two_qubits(rho.n_qubits(), "ppt_min_eigenvalue");
  const ComplexMatrix pt = partial_transpose(rho, 1);
  return hermitian_eigensystem(pt).values[3];
}

EntanglementReport entanglement_report(const DensityOperator& rho) {
  EntanglementReport report;
  report.concurrence = concurrence_mixed(rho);
  report.eof = eof_from_concurrence(report.concurrence);
  report.groverian = groverian_from_concurrence(report.concurrence);
  report.ppt_min_eig = ppt_min_eigenvalue(rho);
  const Eigensystem es = hermitian_eigensystem(rho.matrix());
  if (es.values[0] > 1.0 - 1e-12) {
    report.pmax = pmax_pure_2qubit(PureState::normalized(es.vectors.col(0)));
  }
  return report;
}

EntanglementReport entanglement_report(const PureState& psi) {
  EntanglementReport report = entanglement_report(psi.density());
  report.concurrence = concurrence_pure(psi);
  report.eof = eof_from_concurrence(report.concurrence);
  report.groverian = groverian_from_concurrence(report.concurrence);
  report.pmax = pmax_pure_2qubit(psi);
  return report;
}

std::string to_json(const EntanglementReport& report) {
  nlohmann::ordered_json doc;
  doc["concurrence"] = report.concurrence;
  doc["eof"] = report.eof;
  doc["groverian"] = report.groverian;
  doc["ppt_min_eig"] = report.ppt_min_eig;
  if (report.pmax) doc["pmax"] = *report.pmax;
  return doc.dump();
}

}  // namespace noisytel
