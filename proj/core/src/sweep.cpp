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

#include "noisytel/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "noisytel/entanglement.hpp"
#include "noisytel/teleport.hpp"

namespace noisytel {
namespace {

struct Column {
  const char* name;
  SweepOutput group;
  std::optional<double> SweepRow::*field;
};

constexpr Column kColumns[] = {
    {"avg_fidelity_quadrature", SweepOutput::avg_fidelity, &SweepRow::avg_fidelity_quadrature},
    {"avg_fidelity_closed", SweepOutput::avg_fidelity, &SweepRow::avg_fidelity_closed},
    {"concurrence", SweepOutput::concurrence, &SweepRow::concurrence},
    {"eof", SweepOutput::eof, &SweepRow::eof},
    {"groverian", SweepOutput::groverian, &SweepRow::groverian},
    {"ppt_min_eig", SweepOutput::ppt, &SweepRow::ppt_min_eig},
};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::filesystem::path write_curve(const std::filesystem::path& directory, const std::string& file,
                                  const std::string& quantity, const std::vector<double>& grid,
                                  const std::vector<double>& values) {
  const std::filesystem::path path = directory / file;
  std::ofstream out = open_for_write(path);
  out << "kappa_t," << quantity << '\n';
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out << format_number(grid[i]) << ',' << format_number(values[i]) << '\n';
  }
  finish(out, path);
  return path;
}

}  // namespace

SweepOutputs SweepOutputs::parse(const std::string& list) {
  SweepOutputs out;
  out.bits = 0;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item == "avg_fidelity") out.bits |= static_cast<std::uint8_t>(SweepOutput::avg_fidelity);
    else if (item == "concurrence") out.bits |= static_cast<std::uint8_t>(SweepOutput::concurrence);
    else if (item == "eof") out.bits |= static_cast<std::uint8_t>(SweepOutput::eof);
    else if (item == "groverian") out.bits |= static_cast<std::uint8_t>(SweepOutput::groverian);
    else if (item == "ppt") out.bits |= static_cast<std::uint8_t>(SweepOutput::ppt);
    else throw std::invalid_argument("unknown sweep output '" + item + "'");
  }
  if (out.bits == 0) throw std::invalid_argument("sweep outputs must not be empty");
  return out;
}

OutputFormat parse_output_format(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw std::invalid_argument("unknown format '" + name + "' (expected csv or json)");
}

void SweepConfig::validate() const {
  if (!(kt_min >= 0.0)) throw std::invalid_argument("kt_min must be >= 0");
  if (!(kt_step > 0.0)) throw std::invalid_argument("kt_step must be > 0");
  if (!(kt_max > kt_min)) throw std::invalid_argument("kt_max must exceed kt_min");
  if (n_theta < 8 || n_phi < 8) throw std::invalid_argument("quadrature grid must be >= 8x8");
}

SweepResult run_sweep(const SweepConfig& config) {
  config.validate();
  SweepResult result;
  const bool epr = config.noise.is_epr();
  if (!epr) {
    result.warnings.push_back(
        "W channel: only avg_fidelity_closed is defined; other columns are null");
  }
  for (double kt : kappa_grid(config.kt_min, config.kt_max, config.kt_step)) {
    const NoiseSpec spec(config.noise, kt);
    SweepRow row;
    row.kappa_t = kt;
    row.avg_fidelity_closed = average_fidelity_closed_form(spec);
    if (epr) {
      const DensityOperator rho = analytic_channel(spec);
      if (config.outputs.has(SweepOutput::avg_fidelity)) {
        row.avg_fidelity_quadrature = average_fidelity(rho, config.n_theta, config.n_phi);
        if (std::abs(*row.avg_fidelity_quadrature - *row.avg_fidelity_closed) >
            kSweepFidelityConsistency) {
          result.consistent = false;
        }
      }
      const double c = concurrence_mixed(rho);
      row.concurrence = c;
      row.eof = eof_from_concurrence(c);
      row.groverian = groverian_from_concurrence(c);
      row.ppt_min_eig = ppt_min_eigenvalue(rho);
    }
    result.rows.push_back(row);
  }
  return result;
}

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  // "-0" would make otherwise identical runs differ by sign of round-off.
  if (std::string(buf) == "-0") return "0";
  return buf;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result, SweepOutputs outputs) {
  out << "kappa_t";
  for (const auto& col : kColumns) {
    if (outputs.has(col.group)) out << ',' << col.name;
  }
  out << '\n';
  for (const auto& row : result.rows) {
    out << format_number(row.kappa_t);
    for (const auto& col : kColumns) {
      if (!outputs.has(col.group)) continue;
      out << ',';
      if (const auto& v = row.*col.field) out << format_number(*v);
    }
    out << '\n';
  }
}

void write_sweep_json(std::ostream& out, const SweepResult& result, SweepOutputs outputs) {
  // Numbers go through format_number so csv and json agree digit for digit.
  out << "[\n";
  for (std::size_t r = 0; r < result.rows.size(); ++r) {
    const SweepRow& row = result.rows[r];
    out << "  {\"kappa_t\": " << format_number(row.kappa_t);
    for (const auto& col : kColumns) {
      if (!outputs.has(col.group)) continue;
      out << ", \"" << col.name << "\": ";
      const auto& v = row.*col.field;
      out << (v ? format_number(*v) : "null");
    }
    out << (r + 1 < result.rows.size() ? "},\n" : "}\n");
  }
  out << "]\n";
}

std::vector<std::filesystem::path> emit_figure_data(int figure,
                                                    const std::filesystem::path& directory,
                                                    double kt_step) {
  if (figure < 2 || figure > 4) {
    throw std::invalid_argument("figure must be 2, 3 or 4");
  }
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw std::runtime_error("cannot create " + directory.string() + ": " + ec.message());

  const std::vector<double> grid = kappa_grid(0.0, 1.0, kt_step);
  std::vector<std::filesystem::path> written;

  auto measures = [&](const NoiseKind& kind) {
    struct Curves { std::vector<double> f, c, e, g; } out;
    for (double kt : grid) {
      const NoiseSpec spec(kind, kt);
      out.f.push_back(average_fidelity_closed_form(spec));
      if (!kind.is_epr()) continue;
      const double c = concurrence_mixed(analytic_channel(spec));
      out.c.push_back(c);
      out.e.push_back(eof_from_concurrence(c));
      out.g.push_back(groverian_from_concurrence(c));
    }
    return out;
  };

  if (figure == 2) {
    // E and G coincide for the three same-axis channels.
    const auto same = measures(NoiseKind::same_axis(Axis::x));
    const auto iso = measures(NoiseKind::isotropic());
    written.push_back(write_curve(directory, "fig2_same_axis_eof.csv", "eof", grid, same.e));
    written.push_back(write_curve(directory, "fig2_same_axis_groverian.csv", "groverian", grid, same.g));
    written.push_back(write_curve(directory, "fig2_isotropic_eof.csv", "eof", grid, iso.e));
    written.push_back(write_curve(directory, "fig2_isotropic_groverian.csv", "groverian", grid, iso.g));
  } else if (figure == 3) {
    const auto diff = measures(NoiseKind::different_axis(Axis::x, Axis::z));
    written.push_back(write_curve(directory, "fig3_different_axis_avg_fidelity.csv", "avg_fidelity", grid, diff.f));
    written.push_back(write_curve(directory, "fig3_different_axis_concurrence.csv", "concurrence", grid, diff.c));
    written.push_back(write_curve(directory, "fig3_different_axis_eof.csv", "eof", grid, diff.e));
    written.push_back(write_curve(directory, "fig3_different_axis_groverian.csv", "groverian", grid, diff.g));
  } else {
    const NoiseKind w = NoiseKind::w_same_axis_x();
    const auto curves = measures(w);
    written.push_back(write_curve(directory, "fig4_w_avg_fidelity.csv", "avg_fidelity", grid, curves.f));
    const std::filesystem::path path = directory / "fig4_thresholds.csv";
    std::ofstream out = open_for_write(path);
    out << "xi_star\n" << format_number(classical_threshold_kt(w)) << '\n';
    finish(out, path);
    written.push_back(path);
  }
  return written;
}

std::map<std::string, std::string> parse_key_value_config(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(number) + ": expected key=value");
    }
    const std::string key = trim(t.substr(0, eq));
    if (key.empty()) {
      throw std::invalid_argument("config line " + std::to_string(number) + ": empty key");
    }
    out[key] = trim(t.substr(eq + 1));
  }
  return out;
}

}  // namespace noisytel
