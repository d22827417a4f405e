// Copyright 2026 The gkp Authors
// SPDX-License-Identifier: Apache-2.0

#include "gkp/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "gkp/errors.hpp"

namespace gkp::quad {

namespace {

std::atomic<std::size_t> g_evals{0};

struct ErrorHandlerOff {
  ErrorHandlerOff() { gsl_set_error_handler_off(); }
};
const ErrorHandlerOff g_handler_off;

struct WorkspaceDeleter {
  void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};
struct TableDeleter {
  void operator()(gsl_integration_qawo_table* t) const { gsl_integration_qawo_table_free(t); }
};
using Workspace = std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter>;
using Table = std::unique_ptr<gsl_integration_qawo_table, TableDeleter>;

double trampoline(double t, void* p) {
  g_evals.fetch_add(1, std::memory_order_relaxed);
  return (*static_cast<const Integrand*>(p))(t);
}

gsl_function wrap(const Integrand& f) {
  gsl_function g;
  g.function = &trampoline;
  g.params = const_cast<Integrand*>(&f);
  return g;
}

Workspace make_workspace(std::size_t n) {
  Workspace w(gsl_integration_workspace_alloc(n));
  if (!w) throw std::bad_alloc();
  return w;
}

void check(int status, const char* routine, Result& r, const Tolerance& tol,
           const gsl_integration_workspace* w) {
  if (status == GSL_SUCCESS) return;
  double target = std::max(tol.abs, tol.rel * std::fabs(r.value));
  if (std::isfinite(r.value) && r.abserr <= 1e3 * target) return;
  r.converged = false;
  if (!tol.strict && std::isfinite(r.value)) return;
  double a = 0, b = 0, e = 0;
  if (w) {
    for (std::size_t i = 0; i < w->size; ++i) {
      if (w->elist[i] >= e) {
        e = w->elist[i];
        a = w->alist[i];
        b = w->blist[i];
      }
    }
  }
  throw QuadratureError(std::string(routine) + ": " + gsl_strerror(status) + " (estimate " +
                            std::to_string(r.abserr) + ")",
                        a, b, e);
}

}  // namespace

std::size_t evaluation_count() { return g_evals.load(); }

Result qag(const Integrand& f, double a, double b, const Tolerance& tol) {
  auto w = make_workspace(tol.limit);
  gsl_function g = wrap(f);
  Result r;
  int s = gsl_integration_qag(&g, a, b, tol.abs, tol.rel, tol.limit, GSL_INTEG_GAUSS21, w.get(), &r.value,
                              &r.abserr);
  check(s, "qag", r, tol, w.get());
  return r;
}

Result qags(const Integrand& f, double a, double b, const Tolerance& tol) {
  auto w = make_workspace(tol.limit);
  gsl_function g = wrap(f);
  Result r;
  int s = gsl_integration_qags(&g, a, b, tol.abs, tol.rel, tol.limit, w.get(), &r.value, &r.abserr);
  check(s, "qags", r, tol, w.get());
  return r;
}

Result qagiu(const Integrand& f, double a, const Tolerance& tol) {
  auto w = make_workspace(tol.limit);
  gsl_function g = wrap(f);
  Result r;
  int s = gsl_integration_qagiu(&g, a, tol.abs, tol.rel, tol.limit, w.get(), &r.value, &r.abserr);
  check(s, "qagiu", r, tol, w.get());
  return r;
}

namespace {

Result qawf_plain(const Integrand& f, double a, double omega, bool sine, const Tolerance& tol) {
  auto w = make_workspace(tol.limit);
  auto cw = make_workspace(tol.limit);
  Table t(gsl_integration_qawo_table_alloc(omega, 1.0, sine ? GSL_INTEG_SINE : GSL_INTEG_COSINE, 25));
  if (!t) throw std::bad_alloc();
  gsl_function g = wrap(f);
  Result r;
  int s = gsl_integration_qawf(&g, a, tol.abs, tol.limit, w.get(), cw.get(), t.get(), &r.value, &r.abserr);
  Tolerance abs_only = tol;
  abs_only.rel = 0.0;
  // qawf takes no relative tolerance, and its cycle extrapolation can stall on
  // an absolute target far below the value. Retry once at rel * |value|.
  const double relaxed = tol.rel * std::fabs(r.value);
  if (s != GSL_SUCCESS && std::isfinite(r.value) && relaxed > tol.abs) {
    abs_only.abs = relaxed;
    s = gsl_integration_qawf(&g, a, relaxed, tol.limit, w.get(), cw.get(), t.get(), &r.value, &r.abserr);
  }
  check(s, "qawf", r, abs_only, w.get());
  return r;
}

}  // namespace

Result qawf(const Integrand& f, double a, double omega, bool sine, const Tolerance& tol) {
  // GSL samples each cycle of length pi/omega with 25 nodes; a feature much
  // narrower than that is missed silently. Integrate the first cycle on a
  // dyadic partition instead and hand only the tail to qawf.
  const double cycle = M_PI / omega;
  const double scale = std::max(1.0, std::fabs(a));
  if (cycle > 4.0 * scale) {
    std::vector<double> breaks{a};
    for (double s = 1e-3 * scale; s < cycle; s *= 2.0) breaks.push_back(a + s);
    breaks.push_back(a + cycle);
    auto weighted = [&](double t) { return f(t) * (sine ? std::sin(omega * t) : std::cos(omega * t)); };
    Tolerance half = tol;
    half.abs = 0.5 * tol.abs;
    Result head = qag_pieces(weighted, breaks, half);
    Result tail = qawf_plain(f, a + cycle, omega, sine, half);
    head.value += tail.value;
    head.abserr += tail.abserr;
    head.converged = head.converged && tail.converged;
    return head;
  }
  return qawf_plain(f, a, omega, sine, tol);
}

Result qawo(const Integrand& f, double a, double b, double omega, bool sine, const Tolerance& tol) {
  auto w = make_workspace(tol.limit);
  Table t(gsl_integration_qawo_table_alloc(omega, b - a, sine ? GSL_INTEG_SINE : GSL_INTEG_COSINE, 25));
  if (!t) throw std::bad_alloc();
  gsl_function g = wrap(f);
  Result r;
  int s = gsl_integration_qawo(&g, a, tol.abs, tol.rel, tol.limit, w.get(), t.get(), &r.value, &r.abserr);
  check(s, "qawo", r, tol, w.get());
  return r;
}

Result qag_pieces(const Integrand& f, std::span<const double> breaks, const Tolerance& tol) {
  Result total;
  std::size_t pieces = breaks.size() > 1 ? breaks.size() - 1 : 1;
  Tolerance sub = tol;
  sub.abs = tol.abs / static_cast<double>(pieces);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) continue;
    Result r = qag(f, breaks[i], breaks[i + 1], sub);
    total.value += r.value;
    total.abserr += r.abserr;
    total.converged = total.converged && r.converged;
  }
  return total;
}

}  // namespace gkp::quad
