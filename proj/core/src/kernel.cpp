// Copyright 2026 The gkp Authors
// SPDX-License-Identifier: Apache-2.0

#include "gkp/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>

#include "gkp/errors.hpp"
#include "gkp/quadrature.hpp"

namespace gkp {

namespace {

using std::numbers::pi;
using SphereFn = std::function<double(const double*)>;

long double ipow(long double x, int n) {
  long double r = 1.0L;
  while (n > 0) {
    if (n & 1) r *= x;
    x *= x;
    n >>= 1;
  }
  return r;
}

std::complex<double> ipow(std::complex<double> z, int n) {
  if (n < 0) return 1.0 / ipow(z, -n);
  std::complex<double> r = 1.0;
  for (int k = 0; k < n; ++k) r *= z;
  return r;
}

double norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double sphere_area(int n) { return 2.0 * std::pow(pi, 0.5 * n) / std::tgamma(0.5 * n); }

// Orthonormal frame {xhat, e_1, ..., e_{N-1}}.
struct Frame {
  int n = 0;
  std::vector<double> xhat;
  std::vector<std::vector<double>> perp;
};

Frame make_frame(std::span<const double> x) {
  Frame f;
  f.n = static_cast<int>(x.size());
  double r = norm(x);
  f.xhat.resize(f.n);
  for (int i = 0; i < f.n; ++i) f.xhat[i] = x[i] / r;
  std::vector<std::vector<double>> basis{f.xhat};
  for (int a = 0; a < f.n && static_cast<int>(basis.size()) < f.n; ++a) {
    std::vector<double> v(f.n, 0.0);
    v[a] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        double dot = std::inner_product(v.begin(), v.end(), b.begin(), 0.0);
        for (int i = 0; i < f.n; ++i) v[i] -= dot * b[i];
      }
    }
    double nv = norm(v);
    if (nv < 1e-8) continue;
    for (double& c : v) c /= nv;
    basis.push_back(v);
  }
  f.perp.assign(basis.begin() + 1, basis.end());
  return f;
}

void sort_unique(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end(), [](double a, double b) { return std::fabs(a - b) < 1e-14; }),
          v.end());
}

// Integral of g over S^{M-1} in hyperspherical angles; no breakpoints.
double full_sphere(int M, const std::function<double(const double*)>& g, const quad::Tolerance& tol) {
  if (M == 2) {
    double v[2];
    auto h = [&](double phi) {
      v[0] = std::cos(phi);
      v[1] = std::sin(phi);
      return g(v);
    };
    return quad::qag(h, 0.0, 2.0 * pi, tol).value;
  }
  quad::Tolerance inner = tol;
  inner.abs = tol.abs / pi;
  auto h = [&](double phi) {
    double c = std::cos(phi), s = std::sin(phi);
    auto g2 = [&](const double* vp) {
      std::vector<double> v(M);
      v[0] = c;
      for (int i = 1; i < M; ++i) v[i] = s * vp[i - 1];
      return g(v.data());
    };
    return std::pow(s, M - 2) * full_sphere(M - 1, g2, inner);
  };
  return quad::qag(h, 0.0, pi, tol).value;
}

// Integral of f over the hemisphere {u : u . xhat > 0}. Breakpoints are placed
// where u_i vanishes for each i in break_axes (0-based).
double hemisphere(const Frame& fr, const SphereFn& f, const quad::Tolerance& tol,
                  const std::vector<int>& break_axes) {
  const int n = fr.n;
  if (n == 2) {
    const auto& e = fr.perp[0];
    std::vector<double> br{-pi / 2, 0.0, pi / 2};
    for (int i : break_axes) {
      if (std::fabs(e[i]) < 1e-15) continue;
      double t = std::atan(-fr.xhat[i] / e[i]);
      if (t > -pi / 2 && t < pi / 2) br.push_back(t);
    }
    sort_unique(br);
    double u[2];
    auto g = [&](double t) {
      double c = std::cos(t), s = std::sin(t);
      u[0] = c * fr.xhat[0] + s * e[0];
      u[1] = c * fr.xhat[1] + s * e[1];
      return f(u);
    };
    return quad::qag_pieces(g, br, tol).value;
  }
  if (n == 3) {
    const auto& e1 = fr.perp[0];
    const auto& e2 = fr.perp[1];
    std::vector<double> tb{0.0, pi / 2};
    for (int i : break_axes) {
      double rho = std::hypot(e1[i], e2[i]);
      if (rho < 1e-15) continue;
      double t = std::atan2(std::fabs(fr.xhat[i]), rho);
      if (t > 0 && t < pi / 2) tb.push_back(t);
    }
    sort_unique(tb);
    quad::Tolerance inner = tol;
    inner.abs = tol.abs / (pi / 2);
    auto outer = [&](double theta) {
      double c = std::cos(theta), s = std::sin(theta);
      std::vector<double> pb;
      for (int i : break_axes) {
        double A = e1[i], B = e2[i];
        double rho = std::hypot(A, B);
        if (rho < 1e-15 || s < 1e-300) continue;
        double rhs = -fr.xhat[i] * c / (s * rho);
        if (std::fabs(rhs) > 1.0) continue;
        double phi0 = std::atan2(B, A);
        double da = std::acos(rhs);
        for (double ph : {phi0 + da, phi0 - da}) {
          ph = std::fmod(ph, 2 * pi);
          if (ph < 0) ph += 2 * pi;
          pb.push_back(ph);
        }
      }
      sort_unique(pb);
      std::vector<double> br;
      if (pb.empty()) {
        br = {0.0, 2 * pi};
      } else {
        br = pb;
        br.push_back(pb.front() + 2 * pi);
      }
      double u[3];
      auto g = [&](double phi) {
        double cp = std::cos(phi), sp = std::sin(phi);
        for (int k = 0; k < 3; ++k) u[k] = c * fr.xhat[k] + s * (cp * e1[k] + sp * e2[k]);
        return f(u);
      };
      return s * quad::qag_pieces(g, br, inner).value;
    };
    return quad::qag_pieces(outer, tb, tol).value;
  }
  quad::Tolerance inner = tol;
  inner.abs = tol.abs / (pi / 2);
  auto outer = [&](double theta) {
    double c = std::cos(theta), s = std::sin(theta);
    auto g = [&](const double* v) {
      std::vector<double> u(n);
      for (int k = 0; k < n; ++k) {
        double acc = c * fr.xhat[k];
        for (int a = 0; a < n - 1; ++a) acc += s * v[a] * fr.perp[a][k];
        u[k] = acc;
      }
      return f(u.data());
    };
    return std::pow(s, n - 2) * full_sphere(n - 1, g, inner);
  };
  return quad::qag(outer, 0.0, pi / 2, tol).value;
}

// Symbol restricted to the ray t -> t u.
struct RaySymbol {
  std::vector<long double> a;
  int q;
  long double u1_4;
  bool kp;

  RaySymbol(const KernelSymbol& s, const double* u)
      : a(s.ray_coefficients(u)),
        q(s.denom_power()),
        u1_4(static_cast<long double>(u[0]) * u[0] * u[0] * u[0]),
        kp(s.denominator() == Denominator::kp) {}

  long double operator()(long double t) const {
    long double P = 0.0L;
    for (auto it = a.rbegin(); it != a.rend(); ++it) P = P * t + *it;
    long double D = t * t;
    if (kp) D *= 1.0L + t * t * u1_4;
    return P / ipow(D, q);
  }
};

// Integral over [a, b) (b = infinity when absent) of f(t) cos(w t) or f(t) sin(w t).
double oscillatory(const quad::Integrand& f, double a, std::optional<double> b, double w, bool sine,
                   const quad::Tolerance& tol) {
  double sign = 1.0;
  if (w < 0) {
    w = -w;
    if (sine) sign = -1.0;
  }
  if (w == 0.0) {
    if (sine) return 0.0;
    return b ? quad::qag(f, a, *b, tol).value : quad::qagiu(f, a, tol).value;
  }
  if (b) return sign * quad::qawo(f, a, *b, w, sine, tol).value;
  return sign * quad::qawf(f, a, w, sine, tol).value;
}

// Parity of the symbol under xi_i -> -xi_i: +1 even, -1 odd.
int axis_parity(const KernelSymbol& s, int i) {
  int parity = 0;
  for (const auto& [e, c] : s.numerator().terms()) {
    int v = (e[i] % 2 == 0) ? 1 : -1;
    if (parity == 0) parity = v;
    if (parity != v) throw UnsupportedError("symbol has no definite parity along an axis");
  }
  return parity == 0 ? 1 : parity;
}

// Integral of g(xi) e^{i x.xi} over |xi| > lambda in the plane, iterated as
// xi_1 inside xi_2 over the positive quadrant with the four sign images folded
// into cos/sin weights.
std::complex<double> outer_cartesian_2d(const KernelSymbol& g, std::span<const double> x, double lambda,
                                        std::optional<double> cutoff, const quad::Tolerance& tol) {
  const bool sine1 = axis_parity(g, 0) < 0;
  const bool sine2 = axis_parity(g, 1) < 0;
  if ((sine1 && x[0] == 0.0) || (sine2 && x[1] == 0.0)) return 0.0;
  quad::Tolerance outer_tol = tol;
  outer_tol.abs = tol.abs / 8.0;
  quad::Tolerance inner_tol = tol;
  inner_tol.abs = tol.abs / (8.0 * (1.0 + lambda));
  inner_tol.strict = false;

  auto h = [&](double xi2) {
    double a = xi2 < lambda ? std::sqrt(lambda * lambda - xi2 * xi2) : 0.0;
    std::optional<double> b;
    if (cutoff) b = std::sqrt(std::max(0.0, *cutoff * *cutoff - xi2 * xi2));
    if (b && *b <= a) return 0.0;
    long double xi[2] = {0.0L, xi2};
    auto f = [&](double xi1) {
      xi[0] = xi1;
      return static_cast<double>(g.eval_ld(xi));
    };
    return oscillatory(f, a, b, x[0], sine1, inner_tol);
  };
  auto weighted = [&](double xi2) {
    double w = x[1] * xi2;
    return h(xi2) * (sine2 ? std::sin(w) : std::cos(w));
  };
  double near = quad::qags(weighted, 0.0, lambda, outer_tol).value;
  double far = 0.0;
  if (!cutoff || *cutoff > lambda) far = oscillatory(h, lambda, cutoff, x[1], sine2, outer_tol);
  std::complex<double> val = 4.0 * (near + far);
  if (sine1) val *= std::complex<double>(0.0, 1.0);
  if (sine2) val *= std::complex<double>(0.0, 1.0);
  return val;
}

int numerator_parity(const KernelSymbol& s) {
  int parity = -1;
  for (const auto& [e, c] : s.numerator().terms()) {
    int deg = std::accumulate(e.begin(), e.end(), 0) % 2;
    if (parity < 0) parity = deg;
    if (parity != deg) throw UnsupportedError("numerator mixes even and odd monomials");
  }
  return parity < 0 ? 0 : parity;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (lambda && !(*lambda > 0)) throw PreconditionError("lambda must be positive");
  if (outer_cutoff && lambda && !(*outer_cutoff > *lambda))
    throw PreconditionError("outer_cutoff must exceed lambda");
  if (outer_cutoff && !(*outer_cutoff > 0)) throw PreconditionError("outer_cutoff must be positive");
  if (!(abs_tol > 0) || !(rel_tol > 0)) throw PreconditionError("tolerances must be positive");
  if (max_subdivisions < 10) throw PreconditionError("max_subdivisions must be at least 10");
}

Direction::Direction(std::vector<double> components) : c_(std::move(components)) {
  if (c_.size() < 2) throw PreconditionError("direction needs at least two components");
  if (std::fabs(norm(c_) - 1.0) > 1e-12) throw PreconditionError("direction is not a unit vector");
}

Direction Direction::normalized(std::vector<double> v) {
  double r = norm(v);
  if (!(r > 0)) throw PreconditionError("zero direction");
  for (double& c : v) c /= r;
  return Direction(std::move(v));
}

std::complex<double> split_representation(const DerivativeTable& table, int axis, int p, int m,
                                          std::span<const double> x, double lambda,
                                          const QuadratureSpec& qs) {
  qs.validate();
  const int n = table.base().dim();
  if (static_cast<int>(x.size()) != n) throw PreconditionError("point dimension mismatch");
  if (axis < 1 || axis > n) throw PreconditionError("axis out of range");
  if (p < 1 || m < p) throw PreconditionError("orders must satisfy 1 <= p <= m");
  if (!(lambda > 0)) throw PreconditionError("lambda must be positive");
  const double r = norm(x);
  if (!(r > 0)) throw SingularPointError("kernel evaluated at the origin");
  const double xj = x[axis - 1];
  if (xj == 0.0) throw PreconditionError("split representation needs x_j != 0");

  const int j = axis - 1;
  const int delta = numerator_parity(table.base());
  auto parity = [&](int k) { return ((delta + k) % 2 == 0) ? 1 : -1; };

  std::vector<KernelSymbol> S;
  for (int k = 0; k <= m; ++k) S.push_back(table.derive(axis, k));

  const Frame fr = make_frame(x);
  std::vector<int> break_axes{0};
  if (j != 0) break_axes.push_back(j);

  const double axj = std::fabs(xj);
  const double two_pi_n = std::pow(2 * pi, n);
  const int n_terms = (m - p) + 3;
  const double bracket_tol = qs.abs_tol * two_pi_n * std::pow(axj, p) / n_terms;
  const double half_area = 0.5 * sphere_area(n);

  auto angular_tol = [&](double prefactor) {
    quad::Tolerance t;
    t.abs = bracket_tol / (2.0 * prefactor);
    t.rel = qs.rel_tol;
    t.limit = static_cast<std::size_t>(qs.max_subdivisions);
    return t;
  };
  auto radial_tol = [&](const quad::Tolerance& ang) {
    quad::Tolerance t = ang;
    t.abs = ang.abs / (4.0 * half_area);
    return t;
  };

  using C = std::complex<double>;
  const C I(0.0, 1.0);

  // Outer oscillatory term.
  C outer;
  {
    const double pref = std::pow(axj, p - m);
    const auto at = angular_tol(pref);
    const KernelSymbol& Sm = S[m];
    if (n == 2) {
      outer = outer_cartesian_2d(Sm, x, lambda, qs.outer_cutoff, at);
    } else {
      auto rt = radial_tol(at);
      rt.strict = false;
      const bool sine = parity(m) < 0;
      auto ray = [&](const double* u) -> double {
        RaySymbol rs(Sm, u);
        double w = 0.0;
        for (int k = 0; k < n; ++k) w += x[k] * u[k];
        auto g = [&](double t) { return static_cast<double>(ipow(t, n - 1) * rs(t)); };
        return oscillatory(g, lambda, qs.outer_cutoff, w, sine, rt);
      };
      double val = 2.0 * hemisphere(fr, ray, at, break_axes);
      outer = sine ? I * val : C(val);
    }
  }

  // Inner (e^{ix.xi} - 1) term.
  C inner;
  {
    const auto at = angular_tol(1.0);
    const auto rt = radial_tol(at);
    const bool odd = parity(p) < 0;
    const KernelSymbol& Sp = S[p];
    auto ray = [&](const double* u) -> double {
      RaySymbol rs(Sp, u);
      double w = 0.0;
      for (int k = 0; k < n; ++k) w += x[k] * u[k];
      auto g = [&](double t) {
        long double base = ipow(t, n - 1) * rs(t);
        if (odd) return static_cast<double>(base * std::sin(t * w));
        double s = std::sin(0.5 * t * w);
        return static_cast<double>(-2.0L * base * s * s);
      };
      return quad::qag(g, 0.0, lambda, rt).value;
    };
    double val = 2.0 * hemisphere(fr, ray, at, break_axes);
    inner = odd ? I * val : C(val);
  }

  // Sphere terms on S(0, lambda).
  auto sphere_term = [&](int k, bool oscillating, double prefactor) -> C {
    const auto at = angular_tol(prefactor);
    const KernelSymbol& Sk = S[k];
    const bool even_integrand = parity(k) < 0;  // xi_j d^k R
    if (!oscillating && !even_integrand) return C(0.0);
    std::vector<long double> xi(n);
    auto f = [&](const double* u) -> double {
      double w = 0.0;
      for (int a = 0; a < n; ++a) {
        xi[a] = lambda * static_cast<long double>(u[a]);
        w += x[a] * u[a];
      }
      long double v = u[j] * Sk.eval_ld(xi.data());
      if (!oscillating) return static_cast<double>(v);
      return static_cast<double>(v * (even_integrand ? std::cos(lambda * w) : std::sin(lambda * w)));
    };
    double val = 2.0 * std::pow(lambda, n) * hemisphere(fr, f, at, break_axes);
    return (!oscillating || even_integrand) ? C(val) : I * val;
  };

  C bracket = ipow(-I * xj, p - m) * outer + inner;
  for (int k = p; k < m; ++k) {
    double pref = std::pow(axj, p - k - 1) / lambda;
    bracket += ipow(-I * xj, p - k - 1) / lambda * sphere_term(k, true, pref);
  }
  bracket += sphere_term(p - 1, false, 1.0 / lambda) / lambda;

  return ipow(I, p) / two_pi_n * bracket;
}

KernelOrders kernel_orders(const Exponents& d, std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  if (static_cast<int>(d.size()) != n) throw PreconditionError("exponent vector length must equal dimension");
  int j = 0;
  for (int i = 1; i < n; ++i)
    if (std::fabs(x[i]) > std::fabs(x[j])) j = i;
  int d1 = d[0];
  int dperp = 0;
  for (int i = 1; i < n; ++i) dperp += d[i];
  KernelOrders o;
  o.axis = j + 1;
  o.p = n - 2 + d1 + dperp;
  o.m = (j == 0) ? 2 * n - 4 + d1 + 2 * dperp : o.p;
  return o;
}

std::complex<double> kernel_value(const DerivativeTable& table, const Exponents& d, std::span<const double> x,
                                  const QuadratureSpec& quad) {
  const int n = static_cast<int>(x.size());
  if (n < 2) throw PreconditionError("dimension must be at least 2");
  for (int k : d)
    if (k < 0) throw PreconditionError("negative exponent");
  int d1 = d.at(0);
  int dperp = 0;
  for (int i = 1; i < n; ++i) dperp += d.at(i);
  if (d1 + 2 * dperp > 4) throw PreconditionError("kernel evaluation needs d_1 + 2 d_perp <= 4");
  if (n == 2 && d1 + dperp == 0) throw PreconditionError("kernel evaluation needs d != 0 when N = 2");
  const double r = norm(x);
  if (!(r > 0)) throw SingularPointError("kernel evaluated at the origin");
  auto o = kernel_orders(d, x);
  double lambda = quad.lambda.value_or(1.0 / r);
  auto v = split_representation(table, o.axis, o.p, o.m, x, lambda, quad);
  return v / std::pow(x[o.axis - 1], o.p);
}

std::complex<double> kernel_value(const Exponents& d, std::span<const double> x, const QuadratureSpec& quad) {
  DerivativeTable table(monomial_symbol(static_cast<int>(x.size()), d));
  return kernel_value(table, d, x, quad);
}

double riesz_constant(int dim) { return std::tgamma(0.5 * dim) / (2.0 * std::pow(pi, 0.5 * dim)); }

double riesz_value(std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  if (n < 2) throw PreconditionError("dimension must be at least 2");
  double r = norm(x);
  if (!(r > 0)) throw SingularPointError("Riesz kernel evaluated at the origin");
  return riesz_constant(n) * (r * r - n * x[0] * x[0]) / std::pow(r, n + 2);
}

double riesz_dirac_coefficient(int dim) { return 1.0 / dim; }

std::string riesz_principal_value_note() {
  return "inside B(0,1) the kernel acts as a principal value: <PV, phi> = integral over B(0,1) of "
         "kernel(x) (phi(x) - phi(0)) dx; a Dirac mass of weight 1/N sits at the origin";
}

double k0_limit(const Direction& sigma) {
  const int n = sigma.dim();
  return riesz_constant(n) * (1.0 - n * sigma.sigma1() * sigma.sigma1());
}

RieszCheck riesz_identity(const Direction& sigma, int axis, const QuadratureSpec& quad) {
  const int n = sigma.dim();
  if (axis < 1 || axis > n) throw PreconditionError("axis out of range");
  double sj = sigma[axis - 1];
  if (sj == 0.0) throw PreconditionError("Riesz identity needs sigma_j != 0");
  DerivativeTable table(riesz_symbol(n));
  double lambda = quad.lambda.value_or(1.0);
  auto v = split_representation(table, axis, n, n + 1, sigma.components(), lambda, quad);
  RieszCheck c;
  c.rhs = v / std::pow(sj, n);
  c.lhs = k0_limit(sigma);
  c.residual = std::abs(c.rhs - c.lhs);
  return c;
}

double verify_riesz_identity(const Direction& sigma, int axis, const QuadratureSpec& quad) {
  return riesz_identity(sigma, axis, quad).residual;
}

FitResult decay_fit(std::span<const std::pair<double, double>> samples) {
  FitResult res;
  if (samples.size() < 8) throw PreconditionError("decay fit needs at least 8 samples");
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (!(samples[i].first > samples[i - 1].first)) throw PreconditionError("radii must be strictly increasing");
  std::vector<double> lx, ly;
  for (const auto& [r, v] : samples) {
    if (!(r > 0)) throw PreconditionError("radii must be positive");
    if (v == 0.0 || !std::isfinite(v)) {
      ++res.excluded;
      res.warnings.push_back("excluded sample at radius " + std::to_string(r) + " (zero or non-finite value)");
      continue;
    }
    lx.push_back(std::log(r));
    ly.push_back(std::log(std::fabs(v)));
  }
  res.used = lx.size();
  if (res.used < 8) throw PreconditionError("fewer than 8 usable samples after excluding zeros");
  const double n = static_cast<double>(res.used);
  double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  res.slope = sxy / sxx;
  res.intercept = my - res.slope * mx;
  double ssr = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    double e = ly[i] - res.intercept - res.slope * lx[i];
    ssr += e * e;
  }
  res.slope_stderr = std::sqrt(ssr / (n - 2.0) / sxx);
  return res;
}

double richardson_1_over_r(double g_r, double g_2r) { return 2.0 * g_2r - g_r; }

SingularityFit singularity_fit(const Exponents& d, SingularAxis axis, const QuadratureSpec& quad, double r_min,
                               double r_max, int count) {
  const int n = static_cast<int>(d.size());
  if (n < 2) throw PreconditionError("dimension must be at least 2");
  if (!(r_min > 0) || !(r_max > r_min) || count < 8) throw PreconditionError("bad sampling window");
  int d1 = d[0];
  int dperp = 0;
  for (int i = 1; i < n; ++i) dperp += d[i];
  SingularityFit out;
  double e = n - 2.5 + 0.5 * d1 + dperp;
  out.predicted_beta = axis == SingularAxis::axis1 ? 2.0 * e : e;
  out.log_factor = (n == 2 && d1 == 1 && dperp == 0);

  DerivativeTable table(monomial_symbol(n, d));
  const bool odd_in_x1 = d1 % 2 == 1;
  for (int i = 0; i < count; ++i) {
    double t = r_min * std::pow(r_max / r_min, static_cast<double>(i) / (count - 1));
    std::vector<double> x(n, 0.0);
    if (axis == SingularAxis::axis1) {
      x[0] = t;
    } else {
      x[1] = t;
      if (odd_in_x1) x[0] = t * t;
    }
    auto v = kernel_value(table, d, x, quad);
    out.samples.emplace_back(t, std::abs(v));
  }
  out.fit = decay_fit(out.samples);
  out.beta = -out.fit.slope;
  return out;
}

}  // namespace gkp
