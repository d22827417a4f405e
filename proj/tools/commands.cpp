// Copyright 2026 The gkp Authors
// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>

#include "gkp/diagnostics.hpp"
#include "gkp/field_io.hpp"
#include "gkp/kernel.hpp"
#include "gkp/report.hpp"
#include "gkp/solver.hpp"
#include "json.hpp"

namespace gkp::cli {

namespace fs = std::filesystem;

namespace {

constexpr double pi = std::numbers::pi;

QuadratureSpec quad_spec(const RunConfig& cfg) {
  QuadratureSpec q;
  q.lambda = cfg.lambda;
  q.abs_tol = cfg.abs_tol;
  q.rel_tol = cfg.rel_tol;
  q.max_subdivisions = cfg.max_subdivisions;
  q.validate();
  return q;
}

Exponents kernel_exponents(const RunConfig& cfg) {
  if (cfg.which == "K0") return k0_exponents(cfg.dim);
  if (cfg.which == "H0") return h0_exponents(cfg.dim);
  if (cfg.which == "Kk") return kk_exponents(cfg.dim, cfg.k);
  if (cfg.which == "custom") {
    if (static_cast<int>(cfg.exps.size()) != cfg.dim) throw PreconditionError("--exps needs one entry per axis");
    return Exponents(cfg.exps.begin(), cfg.exps.end());
  }
  throw PreconditionError("--which must be K0, H0, Kk or custom");
}

int degree(const Exponents& d) {
  int s = 0;
  for (int v : d) s += v;
  return s;
}

// Along x_1 by default; Kk vanishes on x_k = 0, so it gets an oblique ray in
// the (x_1, x_k) plane.
std::vector<double> default_sigma(const RunConfig& cfg) {
  std::vector<double> s(cfg.dim, 0.0);
  s[0] = 1.0;
  if (cfg.which == "Kk") {
    s[0] = 0.8;
    s.at(cfg.k - 1) = 0.6;
  }
  return s;
}

std::vector<double> log_radii(double lo, double hi, int n) {
  std::vector<double> r;
  for (int i = 0; i < n; ++i) r.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  return r;
}

fs::path prepare(const RunConfig& cfg) {
  fs::create_directories(cfg.out_dir);
  return cfg.out_dir;
}

int finish(const Report& rep, const fs::path& dir, const std::string& stem, const std::string& command,
           std::vector<fs::path> artifacts) {
  const fs::path j = dir / (stem + "_report.json");
  const fs::path c = dir / (stem + "_report.csv");
  rep.write(j, c);
  artifacts.push_back(j);
  artifacts.push_back(c);
  write_manifest(dir, command, artifacts);
  for (const auto& r : rep.rows()) {
    std::cout << (r.pass ? "pass " : "FAIL ") << r.name << " value=" << format17(r.value)
              << " expected=" << format17(r.expected) << " tol=" << format17(r.tolerance) << "\n";
  }
  return rep.all_pass() ? kPass : kFail;
}

Grid grid_from(const RunConfig& cfg) {
  std::vector<double> L = cfg.half_lengths.empty() ? std::vector<double>(cfg.dim, cfg.box) : cfg.half_lengths;
  std::vector<std::size_t> n = cfg.sizes.empty() ? std::vector<std::size_t>(cfg.dim, cfg.grid) : cfg.sizes;
  if (static_cast<int>(L.size()) != cfg.dim || static_cast<int>(n.size()) != cfg.dim) {
    throw PreconditionError("half-lengths and sizes need one entry per axis");
  }
  return Grid(L, n);
}

int limit_check(const RunConfig& cfg, const fs::path& dir) {
  if (cfg.which != "K0") throw PreconditionError("--limit-check applies to K0");
  const int n = cfg.dim;
  const int count = cfg.directions > 0 ? cfg.directions : 8;
  std::vector<double> radii = cfg.radii.empty() ? std::vector<double>{100.0, 200.0} : cfg.radii;
  if (radii.size() != 2 || std::fabs(radii[1] - 2.0 * radii[0]) > 1e-12 * radii[1]) {
    throw PreconditionError("--radii must be R,2R for the limit check");
  }
  const auto q = quad_spec(cfg);
  DerivativeTable table(monomial_symbol(n, k0_exponents(n)));
  Report rep;
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < count; ++i) {
    const double t = pi * i / count;
    std::vector<double> s(n, 0.0);
    s[0] = std::cos(t);
    s[1] = std::sin(t);
    Direction sigma(s);
    double g[2];
    for (int r = 0; r < 2; ++r) {
      std::vector<double> x(n);
      for (int a = 0; a < n; ++a) x[a] = radii[r] * s[a];
      g[r] = std::pow(radii[r], n) * kernel_value(table, k0_exponents(n), x, q).real();
    }
    const double ext = richardson_1_over_r(g[0], g[1]);
    const double pred = k0_limit(sigma);
    const double abs_err = std::fabs(ext - pred);
    const double rel_err = std::fabs(pred) > 1e-12 ? abs_err / std::fabs(pred) : INFINITY;
    std::vector<double> row(s);
    row.insert(row.end(), {ext, pred, rel_err, abs_err});
    rows.push_back(row);
    std::ostringstream name;
    name << "limit sigma1=" << std::setprecision(6) << s[0];
    if (std::fabs(1.0 - n * s[0] * s[0]) < 1e-6) {
      rep.check_abs(name.str(), ext, pred, 1e-3);
    } else {
      rep.check_rel(name.str(), ext, pred, 0.02);
    }
  }
  std::vector<std::string> header;
  for (int a = 1; a <= n; ++a) header.push_back("sigma" + std::to_string(a));
  header.insert(header.end(), {"measured_limit", "predicted", "rel_err", "abs_err"});
  const fs::path csv = dir / "kernel_limit.csv";
  write_csv(csv, header, rows);
  return finish(rep, dir, "kernel_limit", "kernel --limit-check", {csv});
}

int decay_check(const RunConfig& cfg, const fs::path& dir) {
  const int n = cfg.dim;
  const Exponents d = kernel_exponents(cfg);
  Direction sigma = Direction::normalized(cfg.sigma.empty() ? default_sigma(cfg) : cfg.sigma);
  std::vector<double> radii = cfg.radii.empty() ? log_radii(10.0, 500.0, 12) : cfg.radii;
  const auto q = quad_spec(cfg);
  DerivativeTable table(monomial_symbol(n, d));
  std::vector<std::pair<double, double>> samples;
  std::vector<std::complex<double>> values;
  for (double R : radii) {
    std::vector<double> x(n);
    for (int a = 0; a < n; ++a) x[a] = R * sigma[a];
    auto v = kernel_value(table, d, x, q);
    values.push_back(v);
    samples.emplace_back(R, std::abs(v));
  }
  FitResult fit = decay_fit(samples);
  const double expected = -(n - 2.0 + degree(d));
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    std::vector<double> row{radii[i]};
    row.insert(row.end(), sigma.components().begin(), sigma.components().end());
    row.insert(row.end(), {values[i].real(), values[i].imag(), fit.slope});
    rows.push_back(row);
  }
  std::vector<std::string> header{"radius"};
  for (int a = 1; a <= n; ++a) header.push_back("sigma" + std::to_string(a));
  header.insert(header.end(), {"value_re", "value_im", "fitted_exponent"});
  const fs::path csv = dir / "kernel_decay.csv";
  write_csv(csv, header, rows);
  Report rep;
  rep.check_abs(cfg.which + " far-field slope", fit.slope, expected, degree(d) >= 3 ? 0.1 : 0.05);
  rep.set("slope_stderr", fit.slope_stderr);
  for (const auto& w : fit.warnings) rep.note("warning", w);
  return finish(rep, dir, "kernel_decay", "kernel --decay-fit", {csv});
}

int singularity_check(const RunConfig& cfg, const fs::path& dir) {
  const int n = cfg.dim;
  const Exponents d = kernel_exponents(cfg);
  SingularAxis axis;
  if (cfg.sing_axis == "1") {
    axis = SingularAxis::axis1;
  } else if (cfg.sing_axis == "perp" || cfg.sing_axis == "transverse") {
    axis = SingularAxis::transverse;
  } else {
    throw PreconditionError("--sing-axis must be 1 or perp");
  }
  SingularityFit sf = singularity_fit(d, axis, quad_spec(cfg));
  std::vector<std::vector<double>> rows;
  for (const auto& [r, v] : sf.samples) rows.push_back({r, v, sf.fit.slope});
  const fs::path csv = dir / "kernel_singularity.csv";
  write_csv(csv, {"radius", "abs_value", "fitted_exponent"}, rows);
  Report rep;
  const std::string tag = cfg.which + (axis == SingularAxis::axis1 ? " axis-1" : " transverse");
  if (sf.log_factor) {
    rep.check_abs(tag + " slope (logarithmic growth)", sf.fit.slope, 0.0, 0.1);
    rep.note("log_factor", "bound carries a |ln|x|| factor; growth is logarithmic");
  } else {
    rep.check_abs(tag + " singularity exponent", sf.beta, sf.predicted_beta, 0.1);
  }
  (void)n;
  return finish(rep, dir, "kernel_singularity", "kernel --singularity-fit", {csv});
}

int point_eval(const RunConfig& cfg, const fs::path& dir) {
  if (static_cast<int>(cfg.point.size()) != cfg.dim) throw PreconditionError("--point needs one entry per axis");
  const Exponents d = kernel_exponents(cfg);
  auto v = kernel_value(d, cfg.point, quad_spec(cfg));
  std::vector<double> row(cfg.point);
  row.push_back(v.real());
  row.push_back(v.imag());
  std::vector<std::string> header;
  for (int a = 1; a <= cfg.dim; ++a) header.push_back("x" + std::to_string(a));
  header.insert(header.end(), {"value_re", "value_im"});
  const fs::path csv = dir / "kernel_value.csv";
  write_csv(csv, header, {row});
  std::cout << "value " << format17(v.real()) << " " << format17(v.imag()) << "i\n";
  write_manifest(dir, "kernel", {csv});
  return kPass;
}

}  // namespace

std::string sha256_file(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot read " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw Error("sha256: init failed");
  char buf[1 << 16];
  while (is.read(buf, sizeof buf) || is.gcount() > 0) {
    EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(is.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md, &len);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

void write_manifest(const fs::path& out_dir, const std::string& command, const std::vector<fs::path>& artifacts) {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["created"] = utc_timestamp();
  j["artifacts"] = nlohmann::ordered_json::array();
  for (const auto& a : artifacts) {
    j["artifacts"].push_back({{"path", fs::relative(a, out_dir).generic_string()},
                              {"bytes", fs::file_size(a)},
                              {"sha256", sha256_file(a)}});
  }
  std::ofstream os(out_dir / "manifest.json");
  if (!os) throw IoError("cannot write manifest in " + out_dir.string());
  os << j.dump(2) << "\n";
}

int cmd_kernel(const RunConfig& cfg) {
  if (cfg.dim < 2) throw PreconditionError("--dim must be at least 2");
  if (cfg.riesz_check) return cmd_riesz(cfg);
  const fs::path dir = prepare(cfg);
  if (cfg.limit_check) return limit_check(cfg, dir);
  if (cfg.decay_fit) return decay_check(cfg, dir);
  if (cfg.singularity_fit) return singularity_check(cfg, dir);
  return point_eval(cfg, dir);
}

int cmd_riesz(const RunConfig& cfg) {
  const int n = cfg.dim;
  if (n < 2) throw PreconditionError("--dim must be at least 2");
  std::vector<double> s = cfg.sigma;
  if (s.empty()) {
    s.assign(n, 0.0);
    s[0] = 1.0;
  }
  if (static_cast<int>(s.size()) != n) throw PreconditionError("--sigma needs one entry per axis");
  Direction sigma(s);
  const fs::path dir = prepare(cfg);
  const auto q = quad_spec(cfg);
  std::vector<int> axes;
  if (cfg.axis > 0) {
    axes.push_back(cfg.axis);
  } else {
    for (int j = 1; j <= n; ++j) {
      if (std::fabs(sigma[j - 1]) > 1e-12) axes.push_back(j);
    }
  }
  Report rep;
  std::vector<std::vector<double>> rows;
  for (int j : axes) {
    RieszCheck rc = riesz_identity(sigma, j, q);
    std::vector<double> row(s);
    row.insert(row.end(), {static_cast<double>(j), rc.rhs.real(), rc.lhs, rc.residual});
    rows.push_back(row);
    rep.check_below("riesz identity axis " + std::to_string(j), rc.residual, 1e-6);
  }
  rep.set("riesz_value_at_sigma", riesz_value(s));
  rep.set("dirac_coefficient", riesz_dirac_coefficient(n));
  rep.note("principal_value", riesz_principal_value_note());
  std::vector<std::string> header;
  for (int a = 1; a <= n; ++a) header.push_back("sigma" + std::to_string(a));
  header.insert(header.end(), {"axis", "rhs", "lhs", "residual"});
  const fs::path csv = dir / "riesz.csv";
  write_csv(csv, header, rows);
  return finish(rep, dir, "riesz", "riesz", {csv});
}

int cmd_solve(const RunConfig& cfg) {
  const Rational p = Rational::parse(cfg.p);
  check_admissible(p, cfg.dim);
  const Grid g = grid_from(cfg);
  const Boundary b = boundary_from_string(cfg.boundary);
  if (cfg.max_iter < 0) throw PreconditionError("--max-iter must be non-negative");
  if (!(cfg.tol > 0.0)) throw PreconditionError("--tol must be positive");

  Field init(g);
  if (cfg.seed == "random") {
    if (!cfg.rng_seed_set) throw PreconditionError("--seed random needs an explicit --rng-seed");
    std::mt19937_64 rng(cfg.rng_seed);
    std::normal_distribution<double> nd;
    for (auto& v : init.values()) v = nd(rng);
    const double m = mean(init);
    for (auto& v : init.values()) v -= m;
  } else {
    init = seed_field(g, seed_from_string(cfg.seed), b);
  }
  const fs::path dir = prepare(cfg);
  const std::string stem = cfg.name.empty() ? "wave" : cfg.name;
  Report rep;
  std::vector<fs::path> artifacts;

  if (cfg.max_iter == 0) {
    WaveState w(init, p, 1.0, b);
    auto paths = save_wave(w, dir / stem, residual_conv(w));
    rep.note("mode", "seed written without iterating");
    return finish(rep, dir, stem, "solve", {paths.json, paths.payload});
  }

  SolveOptions opt;
  opt.max_iter = cfg.max_iter;
  opt.tol = cfg.tol;
  opt.boundary = b;
  WaveState w = solve_solitary_wave(g, p, init, opt);
  const double res = residual_conv(w);
  auto paths = save_wave(w, dir / stem, res);
  std::vector<std::vector<double>> hist;
  for (std::size_t i = 0; i < w.history.size(); ++i) {
    hist.push_back({static_cast<double>(i), w.history[i].update, w.history[i].stabilizer});
  }
  const fs::path hcsv = dir / (stem + "_history.csv");
  write_csv(hcsv, {"iteration", "update", "stabilizer"}, hist);

  rep.check_below("residual_conv", res, 1e-8);
  rep.set("iterations", static_cast<double>(w.history.size()));
  rep.set("final_stabilizer", w.history.empty() ? 0.0 : w.history.back().stabilizer);
  rep.note("converged", w.metadata["converged"]);
  rep.note("immediate_convergence", w.metadata["immediate_convergence"]);
  if (cfg.seed == "lump") {
    rep.check_abs("first stabilizer near 1", w.history.front().stabilizer, 1.0, 1e-2);
  }
  if (g.dim() == 2 && p == Rational(1, 1) && cfg.seed != "random") {
    rep.set("lump_distance", lump_distance(w.field));
  }
  return finish(rep, dir, stem, "solve", {paths.json, paths.payload, hcsv});
}

int cmd_verify(const RunConfig& cfg) {
  WaveState w = load_wave(cfg.wavefile);
  const int n = w.field.grid().dim();
  const double p = w.p.value();
  const fs::path dir = prepare(cfg);
  Report rep;
  std::vector<fs::path> artifacts;

  rep.check_below("residual_conv", residual_conv(w), 1e-3);
  rep.check_below("residual_h0", residual_h0(w), 1e-2);

  PohozaevReport pr = pohozaev_check(w);
  rep.check_abs("pohozaev identity (dilation, x1 weighted)", pr.identity_a, 0.0, 1e-3);
  for (std::size_t k = 0; k < pr.identity_b.size(); ++k) {
    rep.check_abs("pohozaev identity (transverse axis " + std::to_string(k + 2) + ")", pr.identity_b[k], 0.0, 1e-3);
  }
  rep.check_abs("pohozaev identity (multiplier v)", pr.identity_c, 0.0, 1e-3);
  rep.check_rel("ratio int v^{p+2} / int v^2", pr.ratio_nonlinear, pr.expected_nonlinear, 5e-3);
  rep.check_rel("ratio int (d1 v)^2 / int v^2", pr.ratio_d1, pr.expected_d1, 5e-3);
  for (std::size_t k = 0; k < pr.ratio_vk.size(); ++k) {
    rep.check_rel("ratio int v_" + std::to_string(k + 2) + "^2 / int v^2", pr.ratio_vk[k], pr.expected_vk, 5e-3);
  }
  rep.set("mass", pr.mass);
  rep.set("energy", pr.energy);
  rep.set("action", pr.action);

  AngularProfile pred = v_infinity_prediction(w);
  std::vector<double> e1(n, 0.0);
  e1[0] = 1.0;
  const Direction axis1(e1);
  rep.set("v_inf_axis1_from_power_integral", pred(axis1));
  if (w.p == Rational(1, 1) && (n == 2 || n == 3)) {
    EnergyPrediction ep = v_infinity_from_energy(w);
    const double a = pred(axis1), b = ep.from_energy(axis1), c = ep.from_action(axis1);
    rep.check_rel("v_inf(e1): energy form vs power-integral form", b, a, 1e-2);
    rep.check_rel("v_inf(e1): action form vs power-integral form", c, a, 1e-2);
    rep.check_rel("v_inf(e1): energy form vs action form", b, c, 1e-2);
  }

  if (cfg.profile) {
    const double L = w.field.grid().min_half_length();
    std::vector<double> radii = cfg.radii.empty() ? std::vector<double>{0.125 * L, 0.25 * L, 0.375 * L} : cfg.radii;
    if (n != 2) throw UnsupportedError("--profile samples directions on a circle and needs N = 2");
    auto dirs = circle_directions(cfg.directions > 0 ? cfg.directions : 32);
    AsymptoticProfile prof = profile_extract(w, radii, dirs);
    std::vector<std::vector<double>> rows;
    for (std::size_t j = 0; j < dirs.size(); ++j) {
      std::vector<double> row{dirs[j][0], dirs[j][1]};
      for (std::size_t r = 0; r < radii.size(); ++r) row.push_back(prof.samples[r][j]);
      row.push_back(prof.extrapolated[j]);
      row.push_back(prof.prediction[j]);
      rows.push_back(row);
    }
    std::vector<std::string> header{"sigma1", "sigma2"};
    for (double R : radii) header.push_back("R" + format17(R));
    header.insert(header.end(), {"extrapolated", "predicted"});
    const fs::path csv = dir / "profile.csv";
    write_csv(csv, header, rows);
    artifacts.push_back(csv);
    rep.check_below("profile sup gap (extrapolated)", prof.sup_gap_extrapolated, 0.05);
    rep.set("profile_sup_gap_largest_radius", prof.sup_gap_largest);
    for (const auto& m : prof.warnings) rep.note("profile", m);
  }
  if (cfg.decay) {
    std::vector<double> s = cfg.sigma;
    if (s.empty()) {
      s.assign(n, 0.0);
      s[0] = 1.0;
    }
    Direction sigma = Direction::normalized(s);
    FitResult fv = decay_exponent(w, sigma, DecayQuantity::value);
    FitResult fg = decay_exponent(w, sigma, DecayQuantity::gradient);
    rep.check_abs("decay slope of v", fv.slope, -static_cast<double>(n), 0.1);
    rep.check_abs("decay slope of grad v", fg.slope, -std::min((p + 1.0) * n, n + 1.0), 0.15);
  }
  return finish(rep, dir, "verify", "verify", artifacts);
}

}  // namespace gkp::cli
