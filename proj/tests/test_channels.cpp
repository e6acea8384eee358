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

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "noisytel/channels.hpp"
#include "noisytel/errors.hpp"
#include "test_support.hpp"

namespace noisytel {
namespace {

using testing::bell_diagonal;
using testing::expect_matrix_near;

// Independent oracle: every two-qubit channel output is diagonal in the
// magic basis with these weights.
ComplexMatrix bell_weight_oracle(const NoiseKind& kind, double kt) {
  const ChannelCoefficients k = channel_coefficients(kt);
  const double tp = k.tau_plus, tm = k.tau_minus, p = k.nu_plus, m = k.nu_minus;
  const std::string n = kind.name();
  if (n == "x") return bell_diagonal(tp, 0, tm, 0);
  if (n == "y") return bell_diagonal(tp, 0, 0, tm);
  if (n == "z") return bell_diagonal(tp, tm, 0, 0);
  if (n == "isotropic") {
    const double l2 = k.ttau_minus / 2.0;
    return bell_diagonal((3.0 * k.ttau_plus - 1.0) / 2.0, l2, l2, l2);
  }
  if (n == "xz" || n == "zx") return bell_diagonal(p * p, p * m, p * m, m * m);
  if (n == "yz" || n == "zy") return bell_diagonal(p * p, p * m, m * m, p * m);
  if (n == "xy" || n == "yx") return bell_diagonal(p * p, m * m, p * m, p * m);
  ADD_FAILURE() << "no oracle for " << n;
  return {};
}

TEST(NoiseKindTest, ParsesEveryNameAndRoundTrips) {
  for (const auto& kind : all_noise_kinds()) EXPECT_EQ(NoiseKind::parse(kind.name()), kind);
  EXPECT_EQ(NoiseKind::parse("iso"), NoiseKind::isotropic());
  EXPECT_EQ(all_noise_kinds().size(), 11u);
  EXPECT_EQ(epr_noise_kinds().size(), 10u);
  EXPECT_THROW(NoiseKind::parse("q"), std::invalid_argument);
  EXPECT_THROW(NoiseKind::parse("xx"), std::invalid_argument);
  EXPECT_THROW(NoiseKind::different_axis(Axis::y, Axis::y), std::invalid_argument);
  EXPECT_EQ(NoiseKind::w_same_axis_x().n_qubits(), 3);
}

TEST(NoiseSpecTest, RejectsNegativeAndNan) {
  EXPECT_THROW(NoiseSpec(NoiseKind::isotropic(), -0.1), std::invalid_argument);
  EXPECT_THROW(NoiseSpec(NoiseKind::isotropic(), std::nan("")), std::invalid_argument);
  EXPECT_NO_THROW(NoiseSpec(NoiseKind::isotropic(), std::numeric_limits<double>::infinity()));
}

TEST(ChannelCoefficientsTest, Examples) {
  const ChannelCoefficients zero = channel_coefficients(0.0);
  EXPECT_EQ(zero.tau_plus, 1.0);
  EXPECT_EQ(zero.tau_minus, 0.0);
  EXPECT_EQ(zero.w_beta_plus, 2.0);
  EXPECT_EQ(zero.w_beta_minus, 0.0);
  EXPECT_NEAR(channel_coefficients(0.25).tau_minus, (1.0 - std::exp(-1.0)) / 2.0, 1e-15);
  EXPECT_NEAR(channel_coefficients(0.25).tau_minus, 0.316060, 1e-6);
  const ChannelCoefficients mu = channel_coefficients(std::log(3.0) / 8.0);
  EXPECT_NEAR(mu.ttau_plus, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(mu.ttau_minus, 1.0 / 3.0, 1e-15);
}

TEST(KappaGridTest, IncludesEndpointAndRejectsBadRanges) {
  const auto g = kappa_grid(0.0, 1.0, 0.01);
  ASSERT_EQ(g.size(), 101u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_NEAR(g.back(), 1.0, 1e-15);
  EXPECT_EQ(kappa_grid(0.0, 1.0, 0.3).size(), 4u);
  EXPECT_THROW(kappa_grid(1.0, 0.5, 0.1), std::invalid_argument);
  EXPECT_THROW(kappa_grid(0.0, 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(kappa_grid(-0.1, 1.0, 0.1), std::invalid_argument);
}

TEST(AnalyticChannelTest, NoNoiseIsTheIdealResource) {
  for (const auto& kind : all_noise_kinds()) {
    expect_matrix_near(analytic_channel(NoiseSpec(kind, 0.0)).matrix(),
                       ideal_resource(kind).matrix(), 1e-15);
  }
}

TEST(AnalyticChannelTest, IsotropicAsymptoteIsMaximallyMixed) {
  const double inf = std::numeric_limits<double>::infinity();
  expect_matrix_near(analytic_channel(NoiseSpec(NoiseKind::isotropic(), inf)).matrix(),
                     ComplexMatrix::Identity(4, 4) / 4.0, 1e-15);
}

TEST(AnalyticChannelTest, DifferentAxisEntriesAtTwoTenths) {
  const ComplexMatrix m = analytic_channel(NoiseSpec(NoiseKind::parse("xz"), 0.2)).matrix();
  const double nu_plus = (1.0 + std::exp(-0.4)) / 2.0;
  EXPECT_NEAR(nu_plus, 0.835160, 1e-6);
  EXPECT_NEAR(m(0, 0).real(), nu_plus / 2.0, 1e-15);
  EXPECT_NEAR(m(0, 3).real(), std::exp(-0.4) * nu_plus / 2.0, 1e-15);
  EXPECT_NEAR(m(1, 1).real(), (1.0 - nu_plus) / 2.0, 1e-15);
}

TEST(AnalyticChannelTest, MatchesMagicBasisWeightOracle) {
  for (const auto& kind : epr_noise_kinds()) {
    for (double kt : {0.0, 0.05, 0.137, 0.3, 0.44, 1.0, 3.0}) {
      SCOPED_TRACE(kind.name() + " kt=" + std::to_string(kt));
      expect_matrix_near(analytic_channel(NoiseSpec(kind, kt)).matrix(),
                         bell_weight_oracle(kind, kt), 1e-15);
    }
  }
}

TEST(AnalyticChannelTest, ReversedAxisPairsCoincide) {
  for (const char* pair : {"xz", "yz", "xy"}) {
    const std::string rev{pair[1], pair[0]};
    expect_matrix_near(analytic_channel(NoiseSpec(NoiseKind::parse(pair), 0.3)).matrix(),
                       analytic_channel(NoiseSpec(NoiseKind::parse(rev), 0.3)).matrix(), 0.0);
  }
}

TEST(AnalyticChannelTest, WChannelKeepsTraceAndPositivity) {
  for (double kt : {0.0, 0.1, 0.431041, 2.0}) {
    const DensityOperator rho = analytic_channel(NoiseSpec(NoiseKind::w_same_axis_x(), kt));
    EXPECT_EQ(rho.dim(), 8);
    EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-14);
  }
}

TEST(LindbladTest, ZeroTimeReturnsInitialStateExactly) {
  for (const auto& kind : all_noise_kinds()) {
    const DensityOperator rho0 = ideal_resource(kind);
    const LindbladResult r = lindblad_evolve(rho0, kind, 0.0, 10);
    EXPECT_EQ(max_abs(r.state.matrix() - rho0.matrix()), 0.0);
  }
}

TEST(LindbladTest, SameAxisMatchesClosedFormWithThousandSteps) {
  const NoiseKind kind = NoiseKind::same_axis(Axis::x);
  const LindbladResult r = lindblad_evolve(ideal_resource(kind), kind, 0.1, 1000);
  expect_matrix_near(r.state.matrix(), analytic_channel(NoiseSpec(kind, 0.1)).matrix(), 1e-8);
  EXPECT_LE(r.error_estimate, kIntegratorTolerance);
}

TEST(LindbladTest, IsotropicMatchesClosedForm) {
  const NoiseKind kind = NoiseKind::isotropic();
  EXPECT_EQ(lindblad_operators(kind).size(), 6u);
  const LindbladResult r =
      lindblad_evolve(ideal_resource(kind), kind, 0.05, default_lindblad_steps(0.05));
  expect_matrix_near(r.state.matrix(), analytic_channel(NoiseSpec(kind, 0.05)).matrix(), 1e-8);
}

TEST(LindbladTest, EveryChannelMatchesClosedForm) {
  for (const auto& kind : all_noise_kinds()) {
    for (double kt : {0.05, 0.2}) {
      SCOPED_TRACE(kind.name() + " kt=" + std::to_string(kt));
      const LindbladResult r = lindblad_evolve(ideal_resource(kind), kind, kt, 400);
      expect_matrix_near(r.state.matrix(), analytic_channel(NoiseSpec(kind, kt)).matrix(), 1e-9);
    }
  }
}

TEST(LindbladTest, TooFewStepsReportTheResidual) {
  const NoiseKind kind = NoiseKind::isotropic();
  try {
    lindblad_evolve(ideal_resource(kind), kind, 0.5, 2);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_GT(e.residual(), kIntegratorTolerance);
  }
}

TEST(LindbladTest, RejectsMismatchedRegister) {
  EXPECT_THROW(lindblad_evolve(epr_state().density(), NoiseKind::w_same_axis_x(), 0.1, 100),
               std::invalid_argument);
  EXPECT_THROW(lindblad_integrate(epr_state().density().matrix(),
                                  lindblad_operators(NoiseKind::isotropic()), 0.1, 0),
               std::invalid_argument);
}

TEST(LindbladTest, RhsPreservesTraceAndHermiticity) {
  std::mt19937_64 rng(41);
  const ComplexMatrix rho = testing::random_density(rng).matrix();
  for (const auto& kind : epr_noise_kinds()) {
    const ComplexMatrix d = lindblad_rhs(rho, lindblad_operators(kind));
    EXPECT_NEAR(std::abs(d.trace()), 0.0, 1e-14);
    EXPECT_LE(max_abs(d - d.adjoint()), 1e-14);
  }
}

}  // namespace
}  // namespace noisytel
