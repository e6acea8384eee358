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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "json.hpp"
#include "noisytel/channels.hpp"
#include "noisytel/entanglement.hpp"
#include "test_support.hpp"

namespace noisytel {
namespace {

using testing::ket;
using testing::random_density;
using testing::random_pure;

constexpr double kWPmax = 0.5;

// Oracle: l_i = sqrt(eig(rho rho~)) from a general eigensolver.
double concurrence_by_eigenvalues(const DensityOperator& rho) {
  const ComplexMatrix yy = kron(pauli(Axis::y), pauli(Axis::y));
  const ComplexMatrix tilde = yy * rho.matrix().conjugate() * yy;
  Eigen::ComplexEigenSolver<ComplexMatrix> es(rho.matrix() * tilde);
  std::array<double, 4> l{};
  for (int k = 0; k < 4; ++k) l[k] = std::sqrt(std::max(0.0, es.eigenvalues()[k].real()));
  std::sort(l.begin(), l.end(), std::greater<>());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

// Oracle: dense grid over three Bloch spheres, then pattern-search polish.
double pmax_grid_oracle(const PureState& psi) {
  auto qubit = [](double theta, double phi) {
    return std::array<Complex, 2>{std::cos(theta / 2), std::polar(std::sin(theta / 2), phi)};
  };
  auto overlap = [&](const std::array<double, 6>& p) {
    const auto a = qubit(p[0], p[1]), b = qubit(p[2], p[3]), c = qubit(p[4], p[5]);
    Complex s = 0.0;
    for (int i = 0; i < 8; ++i) {
      s += std::conj(a[i >> 2] * b[(i >> 1) & 1] * c[i & 1]) * psi[i];
    }
    return std::norm(s);
  };
  const int nt = 13, np = 16;
  std::vector<std::array<Complex, 2>> grid;
  std::vector<std::pair<double, double>> angles;
  for (int i = 0; i < nt; ++i) {
    for (int j = 0; j < np; ++j) {
      const double t = std::numbers::pi * i / (nt - 1), f = 2 * std::numbers::pi * j / np;
      grid.push_back(qubit(t, f));
      angles.emplace_back(t, f);
    }
  }
  const std::size_t n = grid.size();
  double best = -1.0;
  std::array<std::size_t, 3> arg{};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        Complex s = 0.0;
        for (int b = 0; b < 8; ++b) {
          s += std::conj(grid[i][b >> 2] * grid[j][(b >> 1) & 1] * grid[k][b & 1]) * psi[b];
        }
        if (std::norm(s) > best) {
          best = std::norm(s);
          arg = {i, j, k};
        }
      }
    }
  }
  std::array<double, 6> p = {angles[arg[0]].first, angles[arg[0]].second, angles[arg[1]].first,
                             angles[arg[1]].second, angles[arg[2]].first, angles[arg[2]].second};
  for (double step = 0.1; step > 1e-9;) {
    bool improved = false;
    for (int d = 0; d < 6; ++d) {
      for (double sign : {1.0, -1.0}) {
        auto q = p;
        q[d] += sign * step;
        const double v = overlap(q);
        if (v > best) {
          best = v;
          p = q;
          improved = true;
        }
      }
    }
    if (!improved) step /= 2;
  }
  return best;
}

TEST(ConcurrencePureTest, Examples) {
  EXPECT_EQ(concurrence_pure(epr_state()), 1.0);
  EXPECT_NEAR(concurrence_pure(PureState(ket({1, 0, 0, 0}))), 0.0, 1e-15);
  const ChannelCoefficients k = channel_coefficients(0.3);
  const ComplexVector x1 = std::sqrt(k.tau_plus) * magic_basis().col(0) +
                           Complex(0, 1) * std::sqrt(k.tau_minus) * magic_basis().col(2);
  EXPECT_NEAR(concurrence_pure(PureState(x1)), std::exp(-1.2), 1e-14);
  EXPECT_THROW(concurrence_pure(w_state()), std::invalid_argument);
}

TEST(ConcurrenceMixedTest, ClosedFormExamples) {
  for (double kt : {0.0, 0.1, 0.25, 0.9}) {
    EXPECT_NEAR(concurrence_mixed(analytic_channel(NoiseSpec(NoiseKind::same_axis(Axis::x), kt))),
                std::exp(-4 * kt), 1e-10);
  }
  const double iso = concurrence_mixed(analytic_channel(NoiseSpec(NoiseKind::isotropic(), 0.1)));
  EXPECT_NEAR(iso, 1.5 * (std::exp(-0.8) - 1.0 / 3.0), 1e-12);
  EXPECT_NEAR(iso, 0.173993, 1e-6);
  const double xz = concurrence_mixed(analytic_channel(NoiseSpec(NoiseKind::parse("xz"), 0.2)));
  EXPECT_NEAR(xz, (std::exp(-0.8) + 2 * std::exp(-0.4) - 1) / 2, 1e-12);
  EXPECT_NEAR(xz, 0.394985, 1e-6);
}

TEST(ConcurrenceMixedTest, SeparableStatesReportExactZero) {
  EXPECT_EQ(concurrence_mixed(analytic_channel(NoiseSpec(NoiseKind::isotropic(), 0.5))), 0.0);
  EXPECT_EQ(concurrence_mixed(DensityOperator(ComplexMatrix::Identity(4, 4) / 4.0)), 0.0);
  EXPECT_EQ(concurrence_mixed(PureState(ket({0, 1, 0, 0})).density()), 0.0);
}

TEST(ConcurrenceMixedTest, AgreesWithEigenvalueOracleOnRandomStates) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    const DensityOperator rho = random_density(rng, 2 + trial % 3);
    EXPECT_NEAR(concurrence_mixed(rho), concurrence_by_eigenvalues(rho), 1e-7);
  }
}

TEST(ConcurrenceMixedTest, ReducesToPureFormulaOnRankOne) {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 100; ++trial) {
    const PureState psi = random_pure(2, rng);
    EXPECT_NEAR(concurrence_mixed(psi.density()), concurrence_pure(psi), 1e-10);
  }
}

TEST(ConcurrenceMixedTest, InvariantUnderLocalUnitaries) {
  std::mt19937_64 rng(107);
  for (int trial = 0; trial < 30; ++trial) {
    const DensityOperator rho = random_density(rng, 2);
    const ComplexMatrix u =
        kron(testing::random_unitary_2(rng), testing::random_unitary_2(rng));
    const ComplexMatrix moved = u * rho.matrix() * u.adjoint();
    const DensityOperator rotated(0.5 * (moved + moved.adjoint()));
    EXPECT_NEAR(concurrence_mixed(rotated), concurrence_mixed(rho), 1e-10);
  }
}

TEST(SpinFlipRootsTest, DescendingAndNonnegative) {
  std::mt19937_64 rng(109);
  for (int trial = 0; trial < 20; ++trial) {
    const auto l = spin_flip_roots(random_density(rng));
    for (int k = 0; k < 4; ++k) EXPECT_GE(l[k], 0.0);
    for (int k = 0; k + 1 < 4; ++k) EXPECT_GE(l[k], l[k + 1]);
  }
}

TEST(EofTest, Examples) {
  EXPECT_EQ(eof_from_concurrence(0.0), 0.0);
  EXPECT_EQ(eof_from_concurrence(1.0), 1.0);
  EXPECT_NEAR(eof_from_concurrence(std::exp(-1.0)), 0.2191803107346, 1e-12);
  EXPECT_THROW(eof_from_concurrence(-0.1), std::invalid_argument);
  EXPECT_THROW(eof_from_concurrence(1.1), std::invalid_argument);
  EXPECT_THROW(eof_from_concurrence(std::nan("")), std::invalid_argument);
}

TEST(EofTest, MonotoneAndBelowConcurrence) {
  double prev = -1.0;
  for (int i = 0; i <= 1000; ++i) {
    const double c = i / 1000.0;
    const double e = eof_from_concurrence(c);
    EXPECT_GT(e, prev);
    EXPECT_LE(e, c + 1e-15);
    prev = e;
  }
  // Small-c behaviour stays accurate: E ~ (c^2/4) log2(4e/c^2) region.
  EXPECT_GT(eof_from_concurrence(1e-9), 0.0);
}

TEST(BinaryEntropyTest, EndpointsAndSymmetry) {
  EXPECT_EQ(binary_entropy(0.0), 0.0);
  EXPECT_EQ(binary_entropy(1.0), 0.0);
  EXPECT_EQ(binary_entropy(0.5), 1.0);
  EXPECT_NEAR(binary_entropy(0.2), binary_entropy(0.8), 1e-15);
  EXPECT_THROW(binary_entropy(1.5), std::invalid_argument);
}

TEST(GroverianTest, Examples) {
  EXPECT_EQ(groverian_from_concurrence(0.0), 0.0);
  EXPECT_NEAR(groverian_from_concurrence(1.0), 1.0 / std::numbers::sqrt2, 1e-15);
  EXPECT_NEAR(groverian_from_concurrence(0.6), std::sqrt(0.1), 1e-15);
  EXPECT_NEAR(groverian_from_concurrence(0.6), 0.316228, 1e-6);
  EXPECT_THROW(groverian_from_concurrence(2.0), std::invalid_argument);
}

TEST(PmaxPureTest, Examples) {
  EXPECT_EQ(pmax_pure_2qubit(epr_state()), 0.5);
  EXPECT_NEAR(pmax_pure_2qubit(PureState(ket({1, 0, 0, 0}))), 1.0, 1e-15);
}

TEST(PmaxPureTest, MatchesGroverianOfConcurrence) {
  std::mt19937_64 rng(113);
  for (int trial = 0; trial < 200; ++trial) {
    const PureState psi = random_pure(2, rng);
    EXPECT_NEAR(std::sqrt(1.0 - pmax_pure_2qubit(psi)),
                groverian_from_concurrence(concurrence_pure(psi)), 1e-10);
  }
}

TEST(PmaxNumericTest, ProductAndBellStates) {
  std::mt19937_64 rng(127);
  const PureState a = random_pure(1, rng), b = random_pure(1, rng), c = random_pure(1, rng);
  EXPECT_NEAR(pmax_numeric(PureState(kron(a.amplitudes(), b.amplitudes()))), 1.0, 1e-12);
  EXPECT_NEAR(pmax_numeric(PureState(kron(kron(a.amplitudes(), b.amplitudes()), c.amplitudes()))),
              1.0, 1e-12);
  EXPECT_NEAR(pmax_numeric(epr_state()), 0.5, 1e-12);
  EXPECT_THROW(pmax_numeric(epr_state(), 0), std::invalid_argument);
}

TEST(PmaxNumericTest, AgreesWithTwoQubitFormula) {
  std::mt19937_64 rng(131);
  for (int trial = 0; trial < 50; ++trial) {
    const PureState psi = random_pure(2, rng);
    EXPECT_NEAR(pmax_numeric(psi), pmax_pure_2qubit(psi), 1e-8);
  }
}

TEST(PmaxNumericTest, MonotoneInRestarts) {
  std::mt19937_64 rng(137);
  const PureState psi = random_pure(3, rng);
  double prev = 0.0;
  for (int r : {1, 2, 4, 8}) {
    const double v = pmax_numeric(psi, r, 99);
    EXPECT_GE(v, prev);
    prev = v;
  }
}

TEST(PmaxNumericTest, WStateMatchesGridOracleAndRegressionValue) {
  const double oracle = pmax_grid_oracle(w_state());
  EXPECT_NEAR(oracle, kWPmax, 1e-9);
  EXPECT_NEAR(pmax_numeric(w_state()), oracle, 1e-6);
}

TEST(PmaxNumericTest, RandomThreeQubitStatesMatchGridOracle) {
  std::mt19937_64 rng(139);
  for (int trial = 0; trial < 2; ++trial) {
    const PureState psi = random_pure(3, rng);
    EXPECT_NEAR(pmax_numeric(psi), pmax_grid_oracle(psi), 1e-7);
  }
}

TEST(PptTest, Examples) {
  EXPECT_NEAR(ppt_min_eigenvalue(epr_state().density()), -0.5, 1e-14);
  EXPECT_NEAR(ppt_min_eigenvalue(
                  analytic_channel(NoiseSpec(NoiseKind::isotropic(), std::log(3.0) / 8.0))),
              0.0, 1e-10);
  EXPECT_NEAR(ppt_min_eigenvalue(analytic_channel(
                  NoiseSpec(NoiseKind::parse("xz"), std::log(1 + std::numbers::sqrt2) / 2))),
              0.0, 1e-10);
}

TEST(PptTest, SignAgreesWithConcurrenceOnRandomStates) {
  std::mt19937_64 rng(149);
  for (int trial = 0; trial < 100; ++trial) {
    const DensityOperator rho = random_density(rng);
    const double c = concurrence_mixed(rho);
    const double e = ppt_min_eigenvalue(rho);
    EXPECT_EQ(c > 0.0, e < -1e-12) << "c=" << c << " e=" << e;
  }
}

TEST(ReportTest, PureAndMixedReports) {
  const EntanglementReport pure = entanglement_report(epr_state());
  EXPECT_EQ(pure.concurrence, 1.0);
  EXPECT_EQ(pure.eof, 1.0);
  ASSERT_TRUE(pure.pmax.has_value());
  EXPECT_EQ(*pure.pmax, 0.5);
  const EntanglementReport mixed =
      entanglement_report(analytic_channel(NoiseSpec(NoiseKind::isotropic(), 0.05)));
  EXPECT_FALSE(mixed.pmax.has_value());
  const auto j = nlohmann::json::parse(to_json(mixed));
  for (const char* key : {"concurrence", "eof", "groverian", "ppt_min_eig"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_FALSE(j.contains("pmax"));
  EXPECT_DOUBLE_EQ(j["concurrence"].get<double>(), mixed.concurrence);
}

}  // namespace
}  // namespace noisytel
