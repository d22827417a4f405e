// Copyright 2026 The gkp Authors
// SPDX-License-Identifier: Apache-2.0

#include "gkp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "gkp/diagnostics.hpp"
#include "gkp/report.hpp"
#include "spectral.hpp"

namespace gkp {

using detail::Complex;

namespace {

constexpr double pi = std::numbers::pi;

double ipow(double x, long n) {
  double r = 1.0;
  while (n > 0) {
    if (n & 1) r *= x;
    x *= x;
    n >>= 1;
  }
  return r;
}

// 1D trigonometric interpolation weight for offset t (in grid steps) on an
// n-point periodic grid, Nyquist mode taken as a cosine.
double dirichlet(double t, std::size_t n) {
  const double dn = static_cast<double>(n);
  t = std::remainder(t, dn);
  if (std::fabs(t) < 1e-12) return 1.0;
  return std::sin(pi * t) / (dn * std::tan(pi * t / dn));
}

// Contracts f along every axis with the trigonometric weights of the given
// coordinates; returns values on the tensor product of the coordinate sets.
std::vector<double> contract(const Field& f, const std::vector<std::vector<double>>& coords) {
  const Grid& g = f.grid();
  const int n = g.dim();
  std::vector<std::size_t> shape(g.sizes());
  std::vector<double> data(f.values());
  for (int a = 0; a < n; ++a) {
    const std::size_t src = g.sizes()[a];
    const std::size_t dst = coords[a].size();
    const double h = g.spacing(a);
    std::vector<double> W(dst * src);
    for (std::size_t t = 0; t < dst; ++t) {
      double s = (coords[a][t] + g.half_lengths()[a]) / h;
      for (std::size_t j = 0; j < src; ++j) W[t * src + j] = dirichlet(s - static_cast<double>(j), src);
    }
    std::size_t outer = 1, inner = 1;
    for (int b = 0; b < a; ++b) outer *= shape[b];
    for (int b = a + 1; b < n; ++b) inner *= shape[b];
    std::vector<double> out(outer * dst * inner, 0.0);
    for (std::size_t o = 0; o < outer; ++o) {
      for (std::size_t t = 0; t < dst; ++t) {
        double* dst_row = &out[(o * dst + t) * inner];
        for (std::size_t j = 0; j < src; ++j) {
          const double w = W[t * src + j];
          if (w == 0.0) continue;
          const double* src_row = &data[(o * src + j) * inner];
          for (std::size_t i = 0; i < inner; ++i) dst_row[i] += w * src_row[i];
        }
      }
    }
    data = std::move(out);
    shape[a] = dst;
  }
  return data;
}

Field multiply(const Field& f, const std::function<Complex(const double*)>& m) {
  return detail::apply_table(f, detail::multiplier_table(f.grid(), m));
}

void require_nonzero(const Field& v, const char* what) {
  if (v.max_abs() == 0.0) throw PreconditionError(std::string(what) + ": zero field");
}

}  // namespace

Rational::Rational(long n, long d) : num(n), den(d) {
  if (d == 0) throw PreconditionError("exponent: zero denominator");
  if (d < 0) {
    num = -num;
    den = -den;
  }
  long g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (den % 2 == 0) throw PreconditionError("exponent: denominator must be odd, got " + to_string());
}

Rational Rational::parse(std::string_view text) {
  try {
    auto slash = text.find('/');
    std::string a(text.substr(0, slash));
    std::size_t used = 0;
    long n = std::stol(a, &used);
    if (used != a.size()) throw ParseError("bad exponent");
    long d = 1;
    if (slash != std::string_view::npos) {
      std::string b(text.substr(slash + 1));
      d = std::stol(b, &used);
      if (used != b.size()) throw ParseError("bad exponent");
    }
    return Rational(n, d);
  } catch (const std::logic_error&) {
    throw ParseError("exponent: cannot parse '" + std::string(text) + "'");
  }
}

std::string Rational::to_string() const { return std::to_string(num) + "/" + std::to_string(den); }

double critical_exponent(int dim) { return 4.0 / (2.0 * dim - 3.0); }

void check_admissible(const Rational& p, int dim) {
  if (dim < 2) throw PreconditionError("dimension must be at least 2");
  if (!(p.value() > 0.0)) throw PreconditionError("exponent p must be positive");
  // p >= 4/(2N-3)  <=>  p_num (2N-3) >= 4 p_den, exactly.
  if (p.num * (2L * dim - 3) >= 4L * p.den) {
    throw PreconditionError("p = " + p.to_string() + " >= 4/(2N-3) = " + std::to_string(critical_exponent(dim)) +
                            ": only constant solitary waves exist in this range, nothing to compute");
  }
}

std::string to_string(Boundary b) { return b == Boundary::periodic ? "periodic" : "free-space"; }

Boundary boundary_from_string(std::string_view s) {
  if (s == "periodic") return Boundary::periodic;
  if (s == "free-space" || s == "free_space" || s == "free") return Boundary::free_space;
  throw ParseError("unknown boundary '" + std::string(s) + "'");
}

double signed_power(double u, const Rational& p) {
  if (u == 0.0) return 0.0;
  double mag = p.den == 1 && p.num >= 0 ? ipow(std::fabs(u), p.num) : std::pow(std::fabs(u), p.value());
  bool negative = u < 0.0 && (p.num % 2 != 0);
  return negative ? -mag : mag;
}

Field signed_power(const Field& f, const Rational& p) {
  Field out(f.grid());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = signed_power(f[i], p);
  return out;
}

Convolution::Convolution(const Grid& grid, const KernelSymbol& s, Boundary boundary, std::complex<double> kappa)
    : grid_(grid), boundary_(boundary) {
  if (s.dim() != grid.dim()) throw PreconditionError("symbol and grid dimensions differ");
  if (boundary == Boundary::free_space) {
    free_ = std::make_shared<const FreeSpaceOperator>(grid, s, kappa);
    return;
  }
  const int n = grid.dim();
  table_ = detail::multiplier_table(grid, [&](const double* xi) -> Complex {
    bool zero = true;
    for (int a = 0; a < n; ++a) zero = zero && xi[a] == 0.0;
    if (zero) return 0.0;
    return kappa * s(std::span<const double>(xi, n));
  });
}

Field Convolution::operator()(const Field& f) const {
  if (free_) return free_->apply(f);
  if (!(f.grid() == grid_)) throw PreconditionError("convolution: field grid differs from operator grid");
  return detail::apply_table(f, table_);
}

Field apply_symbol(const Field& f, const KernelSymbol& s, Boundary boundary, std::complex<double> kappa) {
  return Convolution(f.grid(), s, boundary, kappa)(f);
}

Field dealias(const Field& f) {
  const Grid& g = f.grid();
  const int n = g.dim();
  return multiply(f, [&](const double* xi) -> Complex {
    for (int a = 0; a < n; ++a) {
      // |k'| < n/3  <=>  |xi| < (2/3) k_max
      double kp = std::fabs(xi[a]) * g.half_lengths()[a] / pi;
      if (3.0 * kp >= static_cast<double>(g.sizes()[a])) return 0.0;
    }
    return 1.0;
  });
}

Field spectral_derivative(const Field& f, int axis) {
  if (axis < 1 || axis > f.grid().dim()) throw PreconditionError("derivative: axis out of range");
  const int a = axis - 1;
  return multiply(f, [a](const double* xi) { return Complex(0.0, xi[a]); });
}

std::vector<Field> spectral_gradient(const Field& f) {
  std::vector<Field> out;
  for (int a = 1; a <= f.grid().dim(); ++a) out.push_back(spectral_derivative(f, a));
  return out;
}

double parseval_mass(const Field& f) {
  const Grid& g = f.grid();
  auto spec = detail::forward(f);
  const std::size_t last = g.sizes().back();
  const std::size_t ext = last / 2 + 1;
  long double s = 0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    std::size_t k = i % ext;
    double w = (k == 0 || 2 * k == last) ? 1.0 : 2.0;
    s += w * std::norm(spec[i]);
  }
  return static_cast<double>(s) * g.cell_volume() / static_cast<double>(g.size());
}

double interpolate(const Field& f, std::span<const double> x) {
  std::vector<std::vector<double>> c;
  for (double xa : x) c.push_back({xa});
  if (static_cast<int>(c.size()) != f.grid().dim()) throw PreconditionError("interpolate: dimension mismatch");
  return contract(f, c)[0];
}

Field resample(const Field& f, const Grid& target) {
  if (target.dim() != f.grid().dim()) throw PreconditionError("resample: dimension mismatch");
  std::vector<std::vector<double>> c(target.dim());
  for (int a = 0; a < target.dim(); ++a) {
    for (std::size_t i = 0; i < target.sizes()[a]; ++i) c[a].push_back(target.coordinate(a, i));
  }
  return Field(target, contract(f, c));
}

Field center_align(const Field& f) {
  const Grid& g = f.grid();
  const int n = g.dim();
  require_nonzero(f, "center_align");
  std::vector<std::size_t> idx(n);
  g.unravel(f.argmax_abs(), idx);
  std::vector<double> peak(n);
  for (int a = 0; a < n; ++a) {
    const std::size_t m = g.sizes()[a];
    std::vector<std::size_t> lo(idx), hi(idx);
    lo[a] = (idx[a] + m - 1) % m;
    hi[a] = (idx[a] + 1) % m;
    double fm = f[g.ravel(lo)], f0 = f[g.ravel(idx)], fp = f[g.ravel(hi)];
    double den = fm - 2.0 * f0 + fp;
    double d = den != 0.0 ? 0.5 * (fm - fp) / den : 0.0;
    peak[a] = g.coordinate(a, idx[a]) + std::clamp(d, -0.5, 0.5) * g.spacing(a);
  }
  return multiply(f, [&](const double* xi) {
    double phase = 0.0;
    for (int a = 0; a < n; ++a) phase += xi[a] * peak[a];
    return std::polar(1.0, phase);
  });
}

WaveState::WaveState(Field f, Rational p_, double c_, Boundary b)
    : field(std::move(f)), p(p_), c(c_), boundary(b) {
  check_admissible(p, field.grid().dim());
  if (!(c > 0.0) || !std::isfinite(c)) throw PreconditionError("wave speed must be positive");
  field.check_finite();
  if (boundary == Boundary::periodic && std::fabs(mean(field)) > 1e-10 * field.max_abs()) {
    throw PreconditionError("periodic wave state must have zero mean");
  }
}

Seed seed_from_string(std::string_view s) {
  if (s == "gaussian-bump" || s == "gaussian_bump" || s == "default") return Seed::gaussian_bump;
  if (s == "lump") return Seed::lump;
  throw ParseError("unknown seed '" + std::string(s) + "'");
}

Field seed_field(const Grid& grid, Seed seed, Boundary boundary) {
  Field v(grid);
  if (seed == Seed::gaussian_bump) {
    v = Field::sample(grid, [](std::span<const double> x) {
      double r2 = 0.0;
      for (double xa : x) r2 += xa * xa;
      return (2.0 / 25.0 - 4.0 * x[0] * x[0] / 625.0) * std::exp(-r2 / 25.0);
    });
  } else {
    if (grid.dim() != 2) throw UnsupportedError("lump seed exists only for N = 2");
    v = Field::sample(grid, [](std::span<const double> x) { return lump_value(1.0, x); });
  }
  if (boundary == Boundary::periodic) {
    double m = mean(v);
    for (auto& x : v.values()) x -= m;
  }
  return v;
}

FixedPointMap::FixedPointMap(const Grid& grid, Rational p, Boundary boundary, bool dealiased)
    : p_(p), dealiased_(dealiased), k0_(grid, monomial_symbol(grid.dim(), k0_exponents(grid.dim())), boundary) {}

Field FixedPointMap::operator()(const Field& v) const {
  Field w = signed_power(v, p_.plus(1));
  if (dealiased_) w = dealias(w);
  Field out = k0_(w);
  out *= 1.0 / (p_.value() + 1.0);
  return out;
}

WaveState solve_solitary_wave(const Grid& grid, const Rational& p, const Field& init, const SolveOptions& opt) {
  check_admissible(p, grid.dim());
  if (!(init.grid() == grid)) throw PreconditionError("solve: seed grid differs from target grid");
  require_nonzero(init, "solve");
  if (opt.boundary == Boundary::periodic && std::fabs(mean(init)) > 1e-10 * init.max_abs()) {
    throw PreconditionError("solve: periodic seed must have zero mean");
  }
  FixedPointMap T(grid, p, opt.boundary, opt.dealiased);
  const double gamma = (p.value() + 1.0) / p.value();
  std::vector<IterationRecord> history;
  Field v = init;
  bool converged = false;
  bool immediate = false;
  int growth = 0;
  for (int k = 0; k < opt.max_iter; ++k) {
    Field Tv = T(v);
    double S = inner(v, v) / inner(v, Tv);
    if (!(S > 0.0) || !std::isfinite(S)) {
      history.push_back({std::nan(""), S});
      throw ConvergenceError("solve: stabilizer S_k = " + std::to_string(S) + " is not positive", history);
    }
    Tv *= std::pow(S, gamma);
    double nv = l2_norm(v);
    v -= Tv;
    double update = l2_norm(v) / nv;
    v = std::move(Tv);
    IterationRecord rec{update, S};
    if (!history.empty() && update > history.back().update) {
      ++growth;
    } else {
      growth = 0;
    }
    history.push_back(rec);
    if (opt.on_iteration) opt.on_iteration(k, rec);
    if (k < 5 && update < 1e-3) immediate = true;
    if (update < opt.tol) {
      converged = true;
      break;
    }
    if (growth >= opt.divergence_window) {
      throw ConvergenceError("solve: update grew for " + std::to_string(growth) + " consecutive steps", history);
    }
  }
  if (opt.boundary == Boundary::periodic) {
    double m = mean(v);
    for (auto& x : v.values()) x -= m;
  }
  WaveState st(std::move(v), p, 1.0, opt.boundary);
  st.history = std::move(history);
  Field r = st.field;
  r -= T(st.field);
  st.metadata["iterations"] = std::to_string(st.history.size());
  st.metadata["converged"] = converged ? "true" : "false";
  st.metadata["immediate_convergence"] = immediate ? "true" : "false";
  st.metadata["residual"] = format17(l2_norm(r) / l2_norm(st.field));
  return st;
}

WaveState solve_solitary_wave(const Grid& grid, const Rational& p, Seed seed, const SolveOptions& opt) {
  return solve_solitary_wave(grid, p, seed_field(grid, seed, opt.boundary), opt);
}

double residual_conv(const WaveState& w) {
  require_nonzero(w.field, "residual_conv");
  FixedPointMap T(w.field.grid(), w.p, w.boundary, true);
  Field r = w.field;
  r -= T(w.field);
  return l2_norm(r) / l2_norm(w.field);
}

double residual_h0(const WaveState& w) {
  require_nonzero(w.field, "residual_h0");
  const Grid& g = w.field.grid();
  Convolution h0(g, monomial_symbol(g.dim(), h0_exponents(g.dim())), w.boundary, Complex(0.0, -1.0));
  Field src = signed_power(w.field, w.p);
  Field d1 = spectral_derivative(w.field, 1);
  for (std::size_t i = 0; i < src.size(); ++i) src[i] *= d1[i];
  Field r = w.field;
  r -= h0(dealias(src));
  return l2_norm(r) / l2_norm(w.field);
}

TransverseFields transverse_fields(const Field& v) {
  TransverseFields out;
  for (int j = 1; j < v.grid().dim(); ++j) {
    out.components.push_back(multiply(v, [j](const double* xi) -> Complex {
      return xi[0] != 0.0 ? xi[j] / xi[0] : 0.0;
    }));
  }
  return out;
}

TransverseFields transverse_fields(const WaveState& w) { return transverse_fields(w.field); }

WaveState rescale(const WaveState& w, double c) {
  if (!(c > 0.0)) throw PreconditionError("rescale: speed must be positive");
  const Grid& g = w.field.grid();
  std::vector<double> L(g.half_lengths());
  L[0] /= std::sqrt(c);
  for (std::size_t a = 1; a < L.size(); ++a) L[a] /= c;
  Grid target(L, g.sizes());
  std::vector<double> vals(w.field.values());
  if (c != 1.0) {
    const double amp = std::pow(c, 1.0 / w.p.value());
    for (double& x : vals) x *= amp;
  }
  WaveState out(Field(target, std::move(vals)), w.p, w.c * c, w.boundary);
  out.metadata = w.metadata;
  return out;
}

WaveState rescale(const WaveState& w, double c, const Grid& target) {
  if (!(c > 0.0)) throw PreconditionError("rescale: speed must be positive");
  if (target.dim() != w.field.grid().dim()) throw PreconditionError("rescale: dimension mismatch");
  std::vector<std::vector<double>> coords(target.dim());
  for (int a = 0; a < target.dim(); ++a) {
    const double s = a == 0 ? std::sqrt(c) : c;
    for (std::size_t i = 0; i < target.sizes()[a]; ++i) coords[a].push_back(s * target.coordinate(a, i));
  }
  std::vector<double> vals = contract(w.field, coords);
  const double amp = std::pow(c, 1.0 / w.p.value());
  for (double& x : vals) x *= amp;
  Field f(target, std::move(vals));
  if (w.boundary == Boundary::periodic) {
    double m = mean(f);
    for (auto& x : f.values()) x -= m;
  }
  WaveState out(std::move(f), w.p, w.c * c, w.boundary);
  out.metadata = w.metadata;
  return out;
}

}  // namespace gkp
