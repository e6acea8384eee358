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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "noisytel/channels.hpp"

namespace noisytel {

/// Column groups a sweep can emit.
enum class SweepOutput : std::uint8_t {
  avg_fidelity = 1 << 0,  // both the quadrature and the closed form
  concurrence = 1 << 1,
  eof = 1 << 2,
  groverian = 1 << 3,
  ppt = 1 << 4,
};

struct SweepOutputs {
  std::uint8_t bits = 0x1f;

  bool has(SweepOutput o) const { return (bits & static_cast<std::uint8_t>(o)) != 0; }
  static SweepOutputs all() { return {}; }
  /// Comma-separated names: avg_fidelity, concurrence, eof, groverian, ppt.
  static SweepOutputs parse(const std::string& list);
};

enum class OutputFormat { csv, json };
OutputFormat parse_output_format(const std::string& name);

struct SweepConfig {
  NoiseKind noise = NoiseKind::isotropic();
  double kt_min = 0.0;
  double kt_max = 1.0;
  double kt_step = 0.01;
  SweepOutputs outputs;
  OutputFormat format = OutputFormat::csv;
  int n_theta = 64;
  int n_phi = 64;

  /// Throws std::invalid_argument unless kt_min >= 0, kt_step > 0,
  /// kt_max > kt_min and both grid sizes are >= 8.
  void validate() const;
};

/// One grid point. Columns that are undefined for the channel (everything
/// except avg_fidelity_closed for the W channel) are empty.
struct SweepRow {
  double kappa_t = 0.0;
  std::optional<double> avg_fidelity_quadrature;
  std::optional<double> avg_fidelity_closed;
  std::optional<double> concurrence;
  std::optional<double> eof;
  std::optional<double> groverian;
  std::optional<double> ppt_min_eig;
};

inline constexpr double kSweepFidelityConsistency = 1e-8;

struct SweepResult {
  std::vector<SweepRow> rows;  // ascending kappa_t
  std::vector<std::string> warnings;
  /// False when any row's quadrature and closed-form F-bar differ by more
  /// than kSweepFidelityConsistency.
  bool consistent = true;
};

SweepResult run_sweep(const SweepConfig& config);

/// Header `kappa_t,<selected columns>`; 12 significant digits, '\n' endings.
void write_sweep_csv(std::ostream& out, const SweepResult& result, SweepOutputs outputs);
/// Array of row objects with the same keys; empty columns become null.
void write_sweep_json(std::ostream& out, const SweepResult& result, SweepOutputs outputs);

/// Fixed formatting used for all emitted numbers: %.12g, '.' separator.
std::string format_number(double value);

/// Writes the curves behind one figure (2, 3 or 4) into `directory`, one CSV
/// per curve with header `kappa_t,<quantity>`, and returns the paths written.
/// Figure 4 also gets a one-row thresholds file. Throws std::runtime_error
/// naming the path on I/O failure and std::invalid_argument for other
/// figure numbers.
std::vector<std::filesystem::path> emit_figure_data(int figure,
                                                    const std::filesystem::path& directory,
                                                    double kt_step = 0.01);

/// Flat `key=value` experiment file: blank lines and lines starting with '#'
/// are skipped, whitespace around keys and values is trimmed. Throws
/// std::invalid_argument on a line without '='.
std::map<std::string, std::string> parse_key_value_config(std::istream& in);

}  // namespace noisytel
