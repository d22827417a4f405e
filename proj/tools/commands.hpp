// Copyright 2026 The gkp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace gkp::cli {

enum ExitCode { kPass = 0, kFail = 1, kConfig = 2 };

struct RunConfig {
  int dim = 2;
  std::string p = "1/1";
  double box = 40.0;
  std::vector<double> half_lengths;  // overrides box
  std::size_t grid = 512;
  std::vector<std::size_t> sizes;    // overrides grid
  std::string seed = "gaussian-bump";
  std::string boundary = "free-space";
  int max_iter = 2000;
  double tol = 1e-12;
  std::uint64_t rng_seed = 0;
  bool rng_seed_set = false;
  std::filesystem::path out_dir = "out";
  std::string name;

  // kernel
  std::string which = "K0";
  int k = 2;
  std::vector<int> exps;
  std::vector<double> point;
  std::vector<double> sigma;
  int axis = 0;
  std::string sing_axis = "1";
  std::vector<double> radii;
  int directions = 0;
  bool limit_check = false;
  bool decay_fit = false;
  bool singularity_fit = false;
  bool riesz_check = false;
  std::optional<double> lambda;
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_subdivisions = 1000;

  // verify
  std::filesystem::path wavefile;
  bool profile = false;
  bool decay = false;
};

int cmd_kernel(const RunConfig& cfg);
int cmd_riesz(const RunConfig& cfg);
int cmd_solve(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg);

// SHA-256 of a file as lowercase hex.
std::string sha256_file(const std::filesystem::path& path);
// Writes <out_dir>/manifest.json for the given artifacts.
void write_manifest(const std::filesystem::path& out_dir, const std::string& command,
                    const std::vector<std::filesystem::path>& artifacts);

}  // namespace gkp::cli
