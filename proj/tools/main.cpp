// Copyright 2026 The gkp Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "gkp/errors.hpp"

namespace {

using gkp::cli::RunConfig;

void add_output(CLI::App* c, RunConfig& cfg) {
  c->add_option("--out-dir", cfg.out_dir, "directory for reports and artifacts");
}

void add_quadrature(CLI::App* c, RunConfig& cfg) {
  c->add_option("--lambda", cfg.lambda, "splitting radius, default 1/|x|");
  c->add_option("--abs-tol", cfg.abs_tol);
  c->add_option("--rel-tol", cfg.rel_tol);
  c->add_option("--max-subdivisions", cfg.max_subdivisions);
}

void add_kernel_selection(CLI::App* c, RunConfig& cfg) {
  c->add_option("--dim", cfg.dim, "space dimension N")->check(CLI::Range(2, 8));
  c->add_option("--which", cfg.which, "K0, H0, Kk or custom");
  c->add_option("--k", cfg.k, "transverse axis for Kk, 2..N");
  c->add_option("--exps", cfg.exps, "monomial exponents for custom")->delimiter(',');
  c->add_option("--sigma", cfg.sigma, "direction")->delimiter(',');
  c->add_option("--radii", cfg.radii)->delimiter(',');
  c->add_option("--directions", cfg.directions);
}

int dispatch(const std::string& name, const RunConfig& cfg) {
  if (name == "kernel") return gkp::cli::cmd_kernel(cfg);
  if (name == "riesz") return gkp::cli::cmd_riesz(cfg);
  if (name == "solve") return gkp::cli::cmd_solve(cfg);
  return gkp::cli::cmd_verify(cfg);
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Solitary waves of generalized Kadomtsev-Petviashvili equations"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "key = value file; command-line flags win");

  auto* kernel = app.add_subcommand("kernel", "evaluate and check the kernels K0, H0, Kk");
  kernel->fallthrough();
  add_kernel_selection(kernel, cfg);
  add_quadrature(kernel, cfg);
  add_output(kernel, cfg);
  kernel->add_option("--point", cfg.point)->delimiter(',');
  kernel->add_option("--sing-axis", cfg.sing_axis, "1 or perp");
  kernel->add_option("--axis", cfg.axis);
  kernel->add_flag("--limit-check", cfg.limit_check);
  kernel->add_flag("--decay-fit", cfg.decay_fit);
  kernel->add_flag("--singularity-fit", cfg.singularity_fit);
  kernel->add_flag("--riesz-check", cfg.riesz_check);

  auto* riesz = app.add_subcommand("riesz", "check the Riesz-transform identity");
  riesz->fallthrough();
  riesz->add_option("--dim", cfg.dim)->check(CLI::Range(2, 8));
  riesz->add_option("--sigma", cfg.sigma)->delimiter(',');
  riesz->add_option("--axis", cfg.axis, "1-based; default every axis with sigma_j != 0");
  add_quadrature(riesz, cfg);
  add_output(riesz, cfg);

  auto* solve = app.add_subcommand("solve", "compute a solitary wave by Petviashvili iteration");
  solve->fallthrough();
  solve->add_option("--dim", cfg.dim)->check(CLI::Range(2, 8));
  solve->add_option("--p", cfg.p, "nonlinearity exponent m/n with n odd");
  solve->add_option("--box", cfg.box, "half-length on every axis");
  solve->add_option("--half-lengths", cfg.half_lengths)->delimiter(',');
  solve->add_option("--grid", cfg.grid, "points per axis, power of two");
  solve->add_option("--sizes", cfg.sizes)->delimiter(',');
  solve->add_option("--seed", cfg.seed, "gaussian-bump, lump or random");
  solve->add_option("--rng-seed", cfg.rng_seed)->each([&](const std::string&) { cfg.rng_seed_set = true; });
  solve->add_option("--boundary", cfg.boundary, "free-space or periodic");
  solve->add_option("--max-iter", cfg.max_iter);
  solve->add_option("--tol", cfg.tol);
  solve->add_option("--name", cfg.name, "artifact basename");
  add_output(solve, cfg);

  auto* verify = app.add_subcommand("verify", "check identities and asymptotics of a saved wave");
  verify->fallthrough();
  verify->add_option("--wavefile", cfg.wavefile)->required();
  verify->add_flag("--profile", cfg.profile);
  verify->add_flag("--decay", cfg.decay);
  verify->add_option("--radii", cfg.radii)->delimiter(',');
  verify->add_option("--directions", cfg.directions);
  verify->add_option("--sigma", cfg.sigma)->delimiter(',');
  add_output(verify, cfg);

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = gkp::cli::merge_config(args, app);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : gkp::cli::kConfig;
  } catch (const gkp::Error& e) {
    std::cerr << "gkp: " << e.what() << "\n";
    return gkp::cli::kConfig;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    return dispatch(name, cfg);
  } catch (const gkp::ParseError& e) {
    std::cerr << "gkp " << name << ": " << e.what() << "\n";
    return gkp::cli::kConfig;
  } catch (const gkp::PreconditionError& e) {
    std::cerr << "gkp " << name << ": " << e.what() << "\n";
    return gkp::cli::kConfig;
  } catch (const gkp::IoError& e) {
    std::cerr << "gkp " << name << ": " << e.what() << "\n";
    return gkp::cli::kConfig;
  } catch (const gkp::UnsupportedError& e) {
    std::cerr << "gkp " << name << ": " << e.what() << "\n";
    return gkp::cli::kConfig;
  } catch (const std::exception& e) {
    std::cerr << "gkp " << name << ": " << e.what() << "\n";
    return gkp::cli::kFail;
  }
}
