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

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "noisytel/channels.hpp"
#include "noisytel/decomp.hpp"
#include "noisytel/entanglement.hpp"
#include "noisytel/errors.hpp"
#include "noisytel/matrix_json.hpp"
#include "noisytel/sweep.hpp"
#include "noisytel/teleport.hpp"

namespace noisytel::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kDecompositionResidual = 1e-10;
constexpr double kDecompositionConcurrence = 1e-8;

// Thrown for consistency failures that should map to exit code 2.
class InconsistentResult : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::string format;  // empty: command default
  std::string out;
  std::string grid;
  std::uint64_t seed = kDefaultPmaxSeed;
  std::string config;
};

struct Grid {
  int n_theta = kDefaultQuadratureTheta;
  int n_phi = kDefaultQuadraturePhi;
};

Grid parse_grid(const std::string& text) {
  Grid g;
  if (text.empty()) return g;
  const auto x = text.find('x');
  auto number = [&](std::string_view s) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || s.empty()) {
      throw std::invalid_argument("--grid expects NxM, got '" + text + "'");
    }
    return v;
  };
  if (x == std::string::npos) throw std::invalid_argument("--grid expects NxM, got '" + text + "'");
  const std::string_view view(text);
  g.n_theta = number(view.substr(0, x));
  g.n_phi = number(view.substr(x + 1));
  if (g.n_theta < 8 || g.n_phi < 8) throw std::invalid_argument("--grid needs both sizes >= 8");
  return g;
}

OutputFormat format_or(const GlobalOptions& g, OutputFormat fallback) {
  return g.format.empty() ? fallback : parse_output_format(g.format);
}

// Writes to --out when given, else to the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : path_(path), stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot open " + path + " for writing");
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }
  void close() {
    stream_->flush();
    if (!*stream_) throw std::runtime_error("write failed for " + (path_.empty() ? "output" : path_));
  }

 private:
  std::string path_;
  std::ofstream file_;
  std::ostream* stream_;
};

std::string csv_optional(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

ordered_json json_number(double v) {
  // nlohmann writes non-finite numbers as null.
  return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr);
}

// Command implementations

struct SweepArgs {
  std::string noise = "isotropic";
  double kt_min = 0.0, kt_max = 1.0, kt_step = 0.01;
  std::string outputs = "avg_fidelity,concurrence,eof,groverian,ppt";
};

int cmd_sweep(const GlobalOptions& g, const SweepArgs& a, std::ostream& out, std::ostream& err) {
  SweepConfig config;
  config.noise = NoiseKind::parse(a.noise);
  config.kt_min = a.kt_min;
  config.kt_max = a.kt_max;
  config.kt_step = a.kt_step;
  config.outputs = SweepOutputs::parse(a.outputs);
  config.format = format_or(g, OutputFormat::csv);
  const Grid grid = parse_grid(g.grid);
  config.n_theta = grid.n_theta;
  config.n_phi = grid.n_phi;
  config.validate();

  const SweepResult result = run_sweep(config);
  for (const auto& w : result.warnings) err << "warning: " << w << '\n';
  Sink sink(g.out, out);
  if (config.format == OutputFormat::csv) write_sweep_csv(sink.get(), result, config.outputs);
  else write_sweep_json(sink.get(), result, config.outputs);
  sink.close();
  if (!result.consistent) {
    err << "error: quadrature and closed-form average fidelity disagree beyond "
        << format_number(kSweepFidelityConsistency) << '\n';
    return kExitInconsistent;
  }
  return kExitOk;
}

int cmd_emit_figure(const GlobalOptions& g, int figure, double kt_step, std::ostream& out) {
  if (!(kt_step > 0.0)) throw std::invalid_argument("--kt-step must be > 0");
  const std::string dir = g.out.empty() ? "." : g.out;
  for (const auto& path : emit_figure_data(figure, dir, kt_step)) out << path.string() << '\n';
  return kExitOk;
}

struct PointArgs {
  std::string noise;
  double kt = 0.0;
};

int cmd_channel_matrix(const GlobalOptions& g, const PointArgs& a, bool integrate, int steps,
                       std::ostream& out) {
  const NoiseSpec spec(NoiseKind::parse(a.noise), a.kt);
  ComplexMatrix m;
  if (integrate) {
    if (!std::isfinite(a.kt)) throw std::invalid_argument("--integrate needs a finite --kt");
    if (steps < 0) throw std::invalid_argument("--steps must be positive");
    const int n = steps == 0 ? default_lindblad_steps(a.kt) : steps;
    m = lindblad_evolve(ideal_resource(spec.kind()), spec.kind(), a.kt, n).state.matrix();
  } else {
    m = analytic_channel(spec).matrix();
  }
  Sink sink(g.out, out);
  if (format_or(g, OutputFormat::json) == OutputFormat::json) {
    sink.get() << matrix_to_json(m) << '\n';
  } else {
    sink.get() << "row,col,re,im\n";
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        sink.get() << r << ',' << c << ',' << format_number(m(r, c).real()) << ','
                   << format_number(m(r, c).imag()) << '\n';
      }
    }
  }
  sink.close();
  return kExitOk;
}

int cmd_entangle(const GlobalOptions& g, const PointArgs& a, std::ostream& out) {
  const NoiseSpec spec(NoiseKind::parse(a.noise), a.kt);
  const OutputFormat fmt = format_or(g, OutputFormat::json);
  Sink sink(g.out, out);
  if (!spec.kind().is_epr()) {
    // Two-qubit measures do not apply; the only defined quantity is the
    // geometric measure of the pure W resource.
    if (spec.kappa_t() != 0.0) {
      throw std::invalid_argument("entangle for the W channel is only defined at --kt 0");
    }
    const double pmax = pmax_numeric(w_state(), kDefaultPmaxRestarts, g.seed);
    if (fmt == OutputFormat::json) sink.get() << ordered_json{{"pmax", pmax}}.dump() << '\n';
    else sink.get() << "pmax\n" << format_number(pmax) << '\n';
    sink.close();
    return kExitOk;
  }
  const EntanglementReport report = entanglement_report(analytic_channel(spec));
  if (fmt == OutputFormat::json) {
    sink.get() << to_json(report) << '\n';
  } else {
    sink.get() << "concurrence,eof,groverian,ppt_min_eig,pmax\n"
               << format_number(report.concurrence) << ',' << format_number(report.eof) << ','
               << format_number(report.groverian) << ',' << format_number(report.ppt_min_eig)
               << ',' << csv_optional(report.pmax) << '\n';
  }
  sink.close();
  return kExitOk;
}

int cmd_fidelity(const GlobalOptions& g, const PointArgs& a, std::ostream& out,
                 std::ostream& err) {
  const NoiseSpec spec(NoiseKind::parse(a.noise), a.kt);
  const Grid grid = parse_grid(g.grid);
  const double closed = average_fidelity_closed_form(spec);
  std::optional<double> quad;
  if (spec.kind().is_epr()) {
    quad = average_fidelity(analytic_channel(spec), grid.n_theta, grid.n_phi);
  } else {
    err << "warning: W channel: only avg_fidelity_closed is defined\n";
  }
  Sink sink(g.out, out);
  if (format_or(g, OutputFormat::csv) == OutputFormat::csv) {
    sink.get() << "kappa_t,avg_fidelity_quadrature,avg_fidelity_closed\n"
               << format_number(spec.kappa_t()) << ',' << csv_optional(quad) << ','
               << format_number(closed) << '\n';
  } else {
    ordered_json j;
    j["kappa_t"] = json_number(spec.kappa_t());
    j["avg_fidelity_quadrature"] = quad ? ordered_json(*quad) : ordered_json(nullptr);
    j["avg_fidelity_closed"] = closed;
    sink.get() << j.dump() << '\n';
  }
  sink.close();
  if (quad && std::abs(*quad - closed) > kSweepFidelityConsistency) {
    throw InconsistentResult("quadrature and closed-form average fidelity disagree");
  }
  return kExitOk;
}

int cmd_threshold(const GlobalOptions& g, const std::string& noise, std::ostream& out) {
  const NoiseKind kind = NoiseKind::parse(noise);
  const double kt = classical_threshold_kt(kind);
  Sink sink(g.out, out);
  if (format_or(g, OutputFormat::csv) == OutputFormat::csv) {
    sink.get() << "noise,kappa_t\n" << kind.name() << ',' << format_number(kt) << '\n';
  } else {
    sink.get() << ordered_json{{"noise", kind.name()}, {"kappa_t", json_number(kt)}}.dump()
               << '\n';
  }
  sink.close();
  return kExitOk;
}

int cmd_verify(const GlobalOptions& g, const PointArgs& a, const std::string& method,
               std::ostream& out) {
  const NoiseSpec spec(NoiseKind::parse(a.noise), a.kt);
  if (!spec.kind().is_epr()) {
    throw std::invalid_argument("verify-decomposition needs a two-qubit channel");
  }
  const DensityOperator rho = analytic_channel(spec);
  const Ensemble ensemble = method == "printed"     ? optimal_ensemble(spec)
                            : method == "separable" ? separable_ensemble(spec)
                                                    : wootters_decomposition(rho);
  const EnsembleCheck check = verify_ensemble(ensemble, rho);
  const double c = concurrence_mixed(rho);

  std::vector<double> weights;
  for (const auto& m : ensemble.members()) weights.push_back(m.weight);
  Sink sink(g.out, out);
  if (format_or(g, OutputFormat::json) == OutputFormat::json) {
    ordered_json j;
    j["method"] = method;
    j["residual"] = check.residual;
    j["weights"] = weights;
    j["member_concurrences"] = check.member_concurrences;
    j["mean_concurrence"] = check.mean_concurrence;
    j["concurrence_mixed"] = c;
    sink.get() << j.dump() << '\n';
  } else {
    sink.get() << "member,weight,concurrence\n";
    for (std::size_t i = 0; i < weights.size(); ++i) {
      sink.get() << i << ',' << format_number(weights[i]) << ','
                 << format_number(check.member_concurrences[i]) << '\n';
    }
  }
  sink.close();
  if (check.residual > kDecompositionResidual ||
      std::abs(check.mean_concurrence - c) > kDecompositionConcurrence) {
    throw InconsistentResult("ensemble does not reproduce the channel state");
  }
  return kExitOk;
}

// Config file keys become `--key=value` unless the flag is already given,
// so the command line always wins.
void merge_config(std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file " + path);
  for (const auto& [key, value] : parse_key_value_config(in)) {
    const std::string flag = "--" + key;
    const bool given = std::any_of(args.begin() + 1, args.end(), [&](const std::string& s) {
      return s == flag || s.rfind(flag + "=", 0) == 0;
    });
    if (!given) args.push_back(flag + "=" + value);
  }
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Noisy-channel teleportation and mixed-state entanglement toolkit", "noisytel"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", g.out, "Output file (emit-figure: directory)");
  app.add_option("--grid", g.grid, "Quadrature grid NxM (theta x phi)");
  app.add_option("--seed", g.seed, "Seed for pmax restarts");
  app.add_option("--config", g.config, "key=value file; flags override it");

  const std::string noise_help = "x, y, z, isotropic, xz, zx, xy, yx, yz, zy, w";

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Tabulate measures over a kappa*t grid");
  sweep_cmd->add_option("--noise", sweep.noise, noise_help);
  sweep_cmd->add_option("--kt-min", sweep.kt_min);
  sweep_cmd->add_option("--kt-max", sweep.kt_max);
  sweep_cmd->add_option("--kt-step", sweep.kt_step);
  sweep_cmd->add_option("--outputs", sweep.outputs,
                        "Comma list of avg_fidelity, concurrence, eof, groverian, ppt");

  int figure = 0;
  double fig_step = 0.01;
  auto* fig_cmd = app.add_subcommand("emit-figure", "Write the CSV curves of one figure");
  fig_cmd->add_option("--figure", figure, "2, 3 or 4")->required();
  fig_cmd->add_option("--kt-step", fig_step);

  PointArgs point;
  bool integrate = false;
  int steps = 0;
  auto* matrix_cmd = app.add_subcommand("channel-matrix", "Print the noisy resource state");
  matrix_cmd->add_option("--noise", point.noise, noise_help)->required();
  matrix_cmd->add_option("--kt", point.kt)->required();
  matrix_cmd->add_flag("--integrate", integrate, "Integrate the master equation instead");
  matrix_cmd->add_option("--steps", steps, "RK4 steps (default 1e4 per unit kappa*t)");

  auto* ent_cmd = app.add_subcommand("entangle", "Entanglement measures of the resource");
  ent_cmd->add_option("--noise", point.noise, noise_help)->required();
  ent_cmd->add_option("--kt", point.kt)->required();

  auto* fid_cmd = app.add_subcommand("fidelity", "Average teleportation fidelity");
  fid_cmd->add_option("--noise", point.noise, noise_help)->required();
  fid_cmd->add_option("--kt", point.kt)->required();

  std::string threshold_noise;
  auto* thr_cmd = app.add_subcommand("threshold", "kappa*t where the fidelity reaches 2/3");
  thr_cmd->add_option("--noise", threshold_noise, noise_help)->required();

  std::string method = "printed";
  auto* ver_cmd = app.add_subcommand("verify-decomposition", "Check an ensemble decomposition");
  ver_cmd->add_option("--noise", point.noise, noise_help)->required();
  ver_cmd->add_option("--kt", point.kt)->required();
  ver_cmd->add_option("--method", method)
      ->check(CLI::IsMember({"printed", "wootters", "separable"}));

  try {
    merge_config(args);
    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidArgs;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidArgs;
  }

  try {
    if (*sweep_cmd) return cmd_sweep(g, sweep, out, err);
    if (*fig_cmd) return cmd_emit_figure(g, figure, fig_step, out);
    if (*matrix_cmd) return cmd_channel_matrix(g, point, integrate, steps, out);
    if (*ent_cmd) return cmd_entangle(g, point, out);
    if (*fid_cmd) return cmd_fidelity(g, point, out, err);
    if (*thr_cmd) return cmd_threshold(g, threshold_noise, out);
    if (*ver_cmd) return cmd_verify(g, point, method, out);
  } catch (const InconsistentResult& e) {
    err << "error: " << e.what() << '\n';
    return kExitInconsistent;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << " (estimate " << format_number(e.residual()) << ")\n";
    return kExitInconsistent;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidArgs;
  }
  return kExitInvalidArgs;
}

}  // namespace noisytel::cli
