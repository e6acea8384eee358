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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "json.hpp"

namespace noisytel::cli {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "noisytel");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

TEST(CliTest, HelpSucceeds) { EXPECT_EQ(run_cli({"--help"}).code, kExitOk); }

TEST(CliTest, InvalidArgumentsExitWithOne) {
  EXPECT_EQ(run_cli({}).code, kExitInvalidArgs);
  EXPECT_EQ(run_cli({"frobnicate"}).code, kExitInvalidArgs);
  EXPECT_EQ(run_cli({"threshold", "--noise", "q"}).code, kExitInvalidArgs);
  EXPECT_EQ(run_cli({"entangle", "--noise", "x", "--kt", "-1"}).code, kExitInvalidArgs);
  EXPECT_EQ(run_cli({"entangle", "--noise", "x"}).code, kExitInvalidArgs);
  EXPECT_EQ(run_cli({"sweep", "--format", "xml"}).code, kExitInvalidArgs);
  EXPECT_EQ(run_cli({"sweep", "--kt-max", "0"}).code, kExitInvalidArgs);
  EXPECT_EQ(run_cli({"fidelity", "--noise", "x", "--kt", "0.1", "--grid", "8by8"}).code,
            kExitInvalidArgs);
  EXPECT_EQ(run_cli({"fidelity", "--noise", "x", "--kt", "0.1", "--grid", "4x64"}).code,
            kExitInvalidArgs);
  EXPECT_EQ(run_cli({"emit-figure", "--figure", "7"}).code, kExitInvalidArgs);
  EXPECT_EQ(run_cli({"verify-decomposition", "--noise", "isotropic", "--kt", "0.5"}).code,
            kExitInvalidArgs);
  EXPECT_EQ(run_cli({"verify-decomposition", "--noise", "x", "--kt", "0.5", "--method", "magic"})
                .code,
            kExitInvalidArgs);
  EXPECT_EQ(run_cli({"entangle", "--noise", "w", "--kt", "0.2"}).code, kExitInvalidArgs);
}

TEST(CliTest, ConvergenceFailureExitsWithTwo) {
  const CliRun r = run_cli({"channel-matrix", "--noise", "isotropic", "--kt", "0.5", "--integrate",
                         "--steps", "2"});
  EXPECT_EQ(r.code, kExitInconsistent);
  EXPECT_NE(r.err.find("estimate"), std::string::npos);
}

TEST(CliTest, ChannelMatrixJson) {
  const CliRun r = run_cli({"channel-matrix", "--noise", "xz", "--kt", "0.2"});
  ASSERT_EQ(r.code, kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["dim"], 4);
  EXPECT_NEAR(j["re"][0][0].get<double>(), (1 + std::exp(-0.4)) / 4, 1e-15);
  EXPECT_EQ(j["im"].size(), 4u);
}

TEST(CliTest, IntegratedMatrixAgreesWithClosedForm) {
  const auto a = nlohmann::json::parse(
      run_cli({"channel-matrix", "--noise", "w", "--kt", "0.2", "--integrate"}).out);
  const auto b = nlohmann::json::parse(run_cli({"channel-matrix", "--noise", "w", "--kt", "0.2"}).out);
  ASSERT_EQ(a["dim"], 8);
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) {
      EXPECT_NEAR(a["re"][r][c].get<double>(), b["re"][r][c].get<double>(), 1e-8);
    }
  }
}

TEST(CliTest, EntangleReportsTheFourMeasures) {
  const CliRun r = run_cli({"entangle", "--noise", "isotropic", "--kt", "0.1"});
  ASSERT_EQ(r.code, kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["concurrence"].get<double>(), 0.173993, 1e-6);
  for (const char* key : {"eof", "groverian", "ppt_min_eig"}) EXPECT_TRUE(j.contains(key));
  const CliRun w = run_cli({"entangle", "--noise", "w", "--kt", "0", "--seed", "5"});
  ASSERT_EQ(w.code, kExitOk);
  EXPECT_NEAR(nlohmann::json::parse(w.out)["pmax"].get<double>(), 0.5, 1e-6);
}

TEST(CliTest, FidelityPrintsBothValues) {
  const CliRun r = run_cli({"fidelity", "--noise", "x", "--kt", "0.25", "--grid", "16x16"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out,
            "kappa_t,avg_fidelity_quadrature,avg_fidelity_closed\n"
            "0.25,0.789293147057,0.789293147057\n");
  const CliRun w = run_cli({"fidelity", "--noise", "w", "--kt", "0.25", "--format", "json"});
  ASSERT_EQ(w.code, kExitOk);
  EXPECT_TRUE(nlohmann::json::parse(w.out)["avg_fidelity_quadrature"].is_null());
  EXPECT_NE(w.err.find("warning"), std::string::npos);
}

TEST(CliTest, ThresholdValues) {
  EXPECT_EQ(run_cli({"threshold", "--noise", "x"}).out, "noise,kappa_t\nx,inf\n");
  EXPECT_EQ(run_cli({"threshold", "--noise", "iso"}).out, "noise,kappa_t\nisotropic,0.137326536084\n");
  const auto j = nlohmann::json::parse(run_cli({"threshold", "--noise", "w", "--format", "json"}).out);
  EXPECT_NEAR(j["kappa_t"].get<double>(), 0.431041, 1e-5);
}

TEST(CliTest, VerifyDecompositionMethods) {
  for (const char* method : {"printed", "wootters", "separable"}) {
    const std::string kt = std::string(method) == "separable" ? "0.6" : "0.3";
    const CliRun r = run_cli({"verify-decomposition", "--noise", "yz", "--kt", kt, "--method", method});
    ASSERT_EQ(r.code, kExitOk) << method << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_LE(j["residual"].get<double>(), 1e-10);
    EXPECT_NEAR(j["mean_concurrence"].get<double>(), j["concurrence_mixed"].get<double>(), 1e-8);
    EXPECT_FALSE(j["member_concurrences"].empty());
  }
}

TEST(CliTest, SweepIsReproducibleAndHonoursOut) {
  const fs::path dir = fs::temp_directory_path() / "noisytel_cli_sweep";
  fs::create_directories(dir);
  const std::vector<std::string> base = {"sweep", "--noise", "xz", "--kt-step", "0.1",
                                         "--grid", "16x16"};
  auto with_out = [&](const std::string& name) {
    auto a = base;
    a.push_back("--out");
    a.push_back((dir / name).string());
    return a;
  };
  ASSERT_EQ(run_cli(with_out("a.csv")).code, kExitOk);
  ASSERT_EQ(run_cli(with_out("b.csv")).code, kExitOk);
  EXPECT_EQ(slurp(dir / "a.csv"), slurp(dir / "b.csv"));
  EXPECT_EQ(slurp(dir / "a.csv"), run_cli(base).out);
  fs::remove_all(dir);
}

TEST(CliTest, SweepColumnsAndWarnings) {
  const CliRun r = run_cli({"sweep", "--noise", "w", "--kt-step", "0.5", "--outputs", "avg_fidelity"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "kappa_t,avg_fidelity_quadrature,avg_fidelity_closed");
  EXPECT_NE(r.err.find("warning"), std::string::npos);
}

TEST(CliTest, ConfigFileSuppliesDefaultsAndFlagsOverride) {
  const fs::path cfg = fs::temp_directory_path() / "noisytel_cli.cfg";
  std::ofstream(cfg) << "# shared settings\nnoise=isotropic\nkt-step=0.5\ngrid=16x16\nformat=json\n";
  const CliRun from_file = run_cli({"sweep", "--config", cfg.string()});
  ASSERT_EQ(from_file.code, kExitOk) << from_file.err;
  const auto j = nlohmann::json::parse(from_file.out);
  EXPECT_EQ(j.size(), 3u);

  const CliRun overridden =
      run_cli({"sweep", "--config", cfg.string(), "--format", "csv", "--kt-step=0.25"});
  ASSERT_EQ(overridden.code, kExitOk) << overridden.err;
  EXPECT_EQ(overridden.out.rfind("kappa_t,", 0), 0u);
  EXPECT_EQ(std::count(overridden.out.begin(), overridden.out.end(), '\n'), 6);

  EXPECT_EQ(run_cli({"sweep", "--config", "/nonexistent/file.cfg"}).code, kExitInvalidArgs);
  std::ofstream(cfg) << "noise xz\n";
  EXPECT_EQ(run_cli({"sweep", "--config", cfg.string()}).code, kExitInvalidArgs);
  fs::remove(cfg);
}

TEST(CliTest, EmitFigureWritesIntoOutDirectory) {
  const fs::path dir = fs::temp_directory_path() / "noisytel_cli_fig";
  fs::remove_all(dir);
  const CliRun r = run_cli({"emit-figure", "--figure", "3", "--out", dir.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(fs::exists(dir / "fig3_different_axis_eof.csv"));
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 4);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace noisytel::cli
