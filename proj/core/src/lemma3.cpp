// Copyright 2026 The gkp Authors
// SPDX-License-Identifier: Apache-2.0

#include <gsl/gsl_integration.h>

#include <cmath>
#include <memory>
#include <numbers>

#include "gkp/kernel.hpp"
#include "gkp/solver.hpp"

namespace gkp {

namespace {

constexpr double pi = std::numbers::pi;

struct Node {
  std::vector<double> u;  // unit vector in the closed positive orthant
  double weight;          // share of the full sphere measure, before reflection
};

struct GaussRule {
  std::vector<double> x, w;
};

GaussRule gauss_legendre(int n, double a, double b) {
  std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> t(
      gsl_integration_glfixed_table_alloc(n), &gsl_integration_glfixed_table_free);
  GaussRule r;
  for (int i = 0; i < n; ++i) {
    double xi, wi;
    gsl_integration_glfixed_point(a, b, i, &xi, &wi, t.get());
    r.x.push_back(xi);
    r.w.push_back(wi);
  }
  return r;
}

// Angular rule on the positive orthant; reflecting through every sign
// pattern yields a rule for the whole sphere.
std::vector<Node> orthant_rule(int dim, int angular) {
  std::vector<Node> out;
  if (angular < 4 || angular % 4 != 0) throw PreconditionError("lemma3: angular nodes must be a multiple of 4");
  const int q = angular / 4;
  if (dim == 2) {
    for (int i = 0; i < q; ++i) {
      double t = 0.5 * pi * (i + 0.5) / q;
      out.push_back({{std::cos(t), std::sin(t)}, 2.0 * pi / angular});
    }
    return out;
  }
  if (dim == 3) {
    GaussRule z = gauss_legendre(q, 0.0, 1.0);
    for (int i = 0; i < q; ++i) {
      double s = std::sqrt(1.0 - z.x[i] * z.x[i]);
      for (int j = 0; j < q; ++j) {
        double phi = 0.5 * pi * (j + 0.5) / q;
        out.push_back({{z.x[i], s * std::cos(phi), s * std::sin(phi)}, z.w[i] * 0.5 * pi / q});
      }
    }
    return out;
  }
  throw UnsupportedError("lemma3: only N = 2 and N = 3 are supported");
}

// Pieces of the radial quadrature: dyadic towards 0 inside the unit ball,
// dyadic outwards beyond it up to r_out.
std::vector<std::pair<double, double>> radial_pieces(double r_out) {
  std::vector<std::pair<double, double>> p{{0.0, 1.0 / 16}, {1.0 / 16, 1.0 / 8}, {1.0 / 8, 0.25},
                                           {0.25, 0.5},     {0.5, 1.0}};
  for (double a = 1.0; a < r_out; a *= 2.0) p.emplace_back(a, std::min(2.0 * a, r_out));
  return p;
}

double sign_of(int mask, int a) { return (mask >> a & 1) ? -1.0 : 1.0; }

}  // namespace

double lemma3_sphere_coefficient(int dim, int k, const Lemma3Options& opt) {
  if (k < 1 || k > dim) throw PreconditionError("lemma3: axis out of range");
  DerivativeTable table(monomial_symbol(dim, k0_exponents(dim)));
  const Exponents d = k0_exponents(dim);
  // Full-sphere rule without symmetry reduction, so a vanishing coefficient
  // is a numerical outcome rather than a construction.
  double sum = 0.0;
  for (const auto& node : orthant_rule(dim, opt.angular_nodes)) {
    for (int mask = 0; mask < (1 << dim); ++mask) {
      std::vector<double> y(dim);
      for (int a = 0; a < dim; ++a) y[a] = sign_of(mask, a) * node.u[a];
      sum += node.weight * kernel_value(table, d, y, opt.quad).real() * y[k - 1];
    }
  }
  return sum;
}

std::vector<double> gradient_via_lemma3(const WaveState& w, int k, const std::vector<std::vector<double>>& x,
                                        const Lemma3Options& opt) {
  const Grid& g = w.field.grid();
  const int n = g.dim();
  if (k < 1 || k > n) throw PreconditionError("lemma3: axis out of range");
  const Field f = signed_power(w.field, w.p.plus(1));
  const auto nodes = orthant_rule(n, opt.angular_nodes);
  const Exponents dk = kk_exponents(n, k);
  DerivativeTable table(monomial_symbol(n, dk));

  double r_out = 1e300;
  for (const auto& xi : x) {
    if (static_cast<int>(xi.size()) != n) throw PreconditionError("lemma3: point dimension mismatch");
    for (int a = 0; a < n; ++a) r_out = std::min(r_out, g.half_lengths()[a] - std::fabs(xi[a]));
  }
  if (!(r_out > 1.0)) throw PreconditionError("lemma3: sample points too close to the box edge");

  // i K_k(y) is real; K_k is odd in y_k and even in the other coordinates.
  struct Sample {
    double r, rw;
    std::size_t node;
    double ik;
  };
  std::vector<Sample> samples;
  for (const auto& [a, b] : radial_pieces(r_out)) {
    GaussRule gr = gauss_legendre(opt.radial_nodes, a, b);
    for (int i = 0; i < opt.radial_nodes; ++i) {
      for (std::size_t j = 0; j < nodes.size(); ++j) {
        std::vector<double> y(n);
        for (int c = 0; c < n; ++c) y[c] = gr.x[i] * nodes[j].u[c];
        double ik = -kernel_value(table, dk, y, opt.quad).imag();
        samples.push_back({gr.x[i], gr.w[i] * std::pow(gr.x[i], n - 1), j, ik});
      }
    }
  }
  const double ck = lemma3_sphere_coefficient(n, k, opt);

  std::vector<double> out;
  std::vector<double> pt(n);
  for (const auto& xi : x) {
    const double fx = interpolate(f, xi);
    double sum = 0.0;
    for (const auto& s : samples) {
      const auto& u = nodes[s.node].u;
      double acc = 0.0;
      for (int mask = 0; mask < (1 << n); ++mask) {
        for (int c = 0; c < n; ++c) pt[c] = xi[c] - s.r * sign_of(mask, c) * u[c];
        double fy = interpolate(f, pt);
        if (s.r < 1.0) fy -= fx;
        acc += sign_of(mask, k - 1) * fy;
      }
      sum += s.rw * nodes[s.node].weight * s.ik * acc;
    }
    out.push_back((sum + ck * fx) / (w.p.value() + 1.0));
  }
  return out;
}

}  // namespace gkp
