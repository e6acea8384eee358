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
#include <cstdint>
#include <optional>
#include <string>

#include "noisytel/qstate.hpp"

namespace noisytel {

/// |sum_i alpha_i^2| over the magic-basis coordinates.
double concurrence_pure(const PureState& psi);

/// Square roots of the spectrum of rho * rho~ with rho~ = (Y x Y) rho* (Y x Y),
/// descending. Computed as singular values of the symmetric matrix
/// V^T (Y x Y) V, where rho = V V^dag.
std::array<double, 4> spin_flip_roots(const DensityOperator& rho);

/// max(0, l1 - l2 - l3 - l4); values within 1e-12 of zero or one are
/// reported as 0 or 1.
double concurrence_mixed(const DensityOperator& rho);

/// -x log2 x - (1-x) log2(1-x) with 0 log2 0 = 0.
double binary_entropy(double x);

double eof_from_concurrence(double c);
double groverian_from_concurrence(double c);

/// (1 + sqrt(1 - 4 det rho_A))/2 for the reduced state of one qubit.
double pmax_pure_2qubit(const PureState& psi);

inline constexpr int kDefaultPmaxRestarts = 32;
inline constexpr std::uint64_t kDefaultPmaxSeed = 0x9e3779b97f4a7c15ULL;

/// max |<q_1 ... q_n|psi>|^2 over product states, by alternating exact
/// single-qubit updates from `restarts` random starts. Restart k is seeded
/// with seed + k, so results do not depend on evaluation order.
double pmax_numeric(const PureState& psi, int restarts = kDefaultPmaxRestarts,
                    std::uint64_t seed = kDefaultPmaxSeed);

/// Smallest eigenvalue of the partial transpose on the second qubit.
double ppt_min_eigenvalue(const DensityOperator& rho);

struct EntanglementReport {
  double concurrence = 0.0;
  double eof = 0.0;
  double groverian = 0.0;
  std::optional<double> pmax;  // pure states only
  double ppt_min_eig = 0.0;
};

/// Report for a two-qubit state. pmax is filled in when rho has rank one.
EntanglementReport entanglement_report(const DensityOperator& rho);
EntanglementReport entanglement_report(const PureState& psi);

/// {"concurrence":..,"eof":..,"groverian":..,"ppt_min_eig":..[,"pmax":..]}
std::string to_json(const EntanglementReport& report);

}  // namespace noisytel
