// Copyright 2026 The gkp Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "config.hpp"
#include "gkp/errors.hpp"

namespace gkp::cli {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("gkp_cli_test_" + name);
  fs::remove_all(d);
  return d;
}

int run(const std::string& args) {
  const std::string cmd = std::string(GKP_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string capture(const std::string& cmd) {
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), &pclose);
  std::string out;
  std::array<char, 256> buf;
  while (pipe && fgets(buf.data(), buf.size(), pipe.get())) out += buf.data();
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

TEST(Config, ParsesKeyValueLines) {
  const fs::path d = scratch("config");
  fs::create_directories(d);
  std::ofstream(d / "run.cfg") << "# comment\n  dim = 3  \nrng_seed=7 # trailing\n\nsigma = 1,0,0\n";
  KeyValues kv = read_config(d / "run.cfg");
  ASSERT_EQ(kv.size(), 3u);
  EXPECT_EQ(kv[0], (std::pair<std::string, std::string>{"dim", "3"}));
  EXPECT_EQ(kv[1], (std::pair<std::string, std::string>{"rng-seed", "7"}));
  EXPECT_EQ(kv[2].second, "1,0,0");
}

TEST(Config, Errors) {
  const fs::path d = scratch("config_errors");
  fs::create_directories(d);
  std::ofstream(d / "bad.cfg") << "dim 3\n";
  EXPECT_THROW(read_config(d / "bad.cfg"), ParseError);
  std::ofstream(d / "empty_key.cfg") << " = 3\n";
  EXPECT_THROW(read_config(d / "empty_key.cfg"), ParseError);
  EXPECT_THROW(read_config(d / "absent.cfg"), IoError);
}

TEST(ExitCodes, UsageErrors) {
  EXPECT_EQ(run("--help"), 0);
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("frobnicate"), 2);
  EXPECT_EQ(run("verify"), 2);
  EXPECT_EQ(run("solve --dim 2 --grid 100"), 2);
  EXPECT_EQ(run("solve --p 1/2"), 2);
}

TEST(ExitCodes, InadmissibleExponentCreatesNothing) {
  const fs::path d = scratch("guard");
  EXPECT_EQ(run("solve --dim 2 --p 5/1 --out-dir " + d.string()), 2);
  EXPECT_FALSE(fs::exists(d));
}

TEST(ExitCodes, MissingOrCorruptWave) {
  const fs::path d = scratch("corrupt");
  fs::create_directories(d);
  EXPECT_EQ(run("verify --wavefile " + (d / "none").string() + " --out-dir " + d.string()), 2);
  std::ofstream(d / "w.json") << "{ not json";
  std::ofstream(d / "w.f64") << "xxxxxxxx";
  EXPECT_EQ(run("verify --wavefile " + (d / "w").string() + " --out-dir " + d.string()), 2);
}

TEST(ExitCodes, RandomSeedNeedsRngSeed) {
  const fs::path d = scratch("random");
  EXPECT_EQ(run("solve --seed random --grid 32 --box 10 --max-iter 0 --out-dir " + d.string()), 2);
}

TEST(Riesz, WritesReportAndManifest) {
  const fs::path d = scratch("riesz");
  EXPECT_EQ(run("riesz --dim 2 --sigma 1,0 --out-dir " + d.string()), 0);
  ASSERT_TRUE(fs::exists(d / "manifest.json"));
  const std::string manifest = slurp(d / "manifest.json");
  EXPECT_NE(manifest.find("\"command\""), std::string::npos);
  EXPECT_NE(manifest.find("riesz.csv"), std::string::npos);

  const std::string sum = capture("sha256sum " + (d / "riesz.csv").string());
  ASSERT_GE(sum.size(), 64u);
  EXPECT_NE(manifest.find(sum.substr(0, 64)), std::string::npos);
}

TEST(Riesz, ConfigFileSelectsTaskAndFlagsWin) {
  const fs::path d = scratch("riesz_config");
  fs::create_directories(d);
  std::ofstream(d / "run.cfg") << "task = riesz\ndim = 3\nsigma = 0,0,1\nout_dir = " << (d / "from_config").string()
                               << "\n";
  EXPECT_EQ(run("--config " + (d / "run.cfg").string() + " riesz --dim 2 --sigma 0,1"), 0);
  const std::string csv = slurp(d / "from_config" / "riesz.csv");
  EXPECT_FALSE(csv.empty());
  EXPECT_EQ(run("--config " + (d / "run.cfg").string()), 0);
}

TEST(SolveVerify, LumpSeedRoundTrip) {
  const fs::path d = scratch("solve");
  EXPECT_EQ(run("solve --dim 2 --p 1 --seed lump --grid 128 --box 20 --max-iter 0 --name lump --out-dir " +
                d.string()),
            0);
  ASSERT_TRUE(fs::exists(d / "lump.json"));
  ASSERT_TRUE(fs::exists(d / "lump.f64"));
  EXPECT_EQ(fs::file_size(d / "lump.f64"), 128u * 128u * 8u);
  // Small box: the checks run and report failure rather than erroring.
  EXPECT_EQ(run("verify --wavefile " + (d / "lump").string() + " --out-dir " + (d / "v").string()), 1);
  EXPECT_TRUE(fs::exists(d / "v" / "manifest.json"));
}

TEST(SolveVerify, RandomFieldIsDiscriminated) {
  const fs::path d = scratch("random_ok");
  EXPECT_EQ(run("solve --seed random --rng-seed 3 --grid 64 --box 10 --max-iter 0 --name r --out-dir " + d.string()),
            0);
  EXPECT_EQ(run("verify --wavefile " + (d / "r").string() + " --out-dir " + (d / "v").string()), 1);
}

}  // namespace
}  // namespace gkp::cli
