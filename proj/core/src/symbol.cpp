// Copyright 2026 The gkp Authors
// SPDX-License-Identifier: Apache-2.0

#include "gkp/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "gkp/errors.hpp"
#include "json.hpp"

namespace gkp {

namespace {

int total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

long double ipow(long double x, int n) {
  long double r = 1.0L;
  while (n > 0) {
    if (n & 1) r *= x;
    x *= x;
    n >>= 1;
  }
  return r;
}

}  // namespace

MultiIndexPoly::MultiIndexPoly(int dim) : dim_(dim) {}

MultiIndexPoly MultiIndexPoly::monomial(const Exponents& e, const mpq_class& c) {
  MultiIndexPoly p(static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

MultiIndexPoly MultiIndexPoly::constant(int dim, const mpq_class& c) {
  return monomial(Exponents(dim, 0), c);
}

MultiIndexPoly MultiIndexPoly::variable(int dim, int var) {
  Exponents e(dim, 0);
  e.at(var) = 1;
  return monomial(e, 1);
}

int MultiIndexPoly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
  return d;
}

int MultiIndexPoly::min_degree() const {
  if (terms_.empty()) return -1;
  int d = total_degree(terms_.begin()->first);
  for (const auto& [e, c] : terms_) d = std::min(d, total_degree(e));
  return d;
}

void MultiIndexPoly::add_term(const Exponents& e, const mpq_class& c) {
  if (static_cast<int>(e.size()) != dim_) throw PreconditionError("exponent length differs from dimension");
  for (int k : e)
    if (k < 0) throw PreconditionError("negative exponent");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MultiIndexPoly& MultiIndexPoly::operator+=(const MultiIndexPoly& o) {
  if (dim_ == 0) dim_ = o.dim_;
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiIndexPoly& MultiIndexPoly::operator-=(const MultiIndexPoly& o) {
  if (dim_ == 0) dim_ = o.dim_;
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiIndexPoly& MultiIndexPoly::operator*=(const mpq_class& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

MultiIndexPoly operator*(const MultiIndexPoly& a, const MultiIndexPoly& b) {
  if (a.dim_ != b.dim_) throw PreconditionError("dimension mismatch in product");
  MultiIndexPoly r(a.dim_);
  Exponents e(a.dim_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (int i = 0; i < a.dim_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

MultiIndexPoly MultiIndexPoly::derivative(int var) const {
  if (var < 0 || var >= dim_) throw PreconditionError("derivative variable out of range");
  MultiIndexPoly r(dim_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents f = e;
    f[var] -= 1;
    r.add_term(f, c * e[var]);
  }
  return r;
}

mpq_class MultiIndexPoly::eval(const std::vector<mpq_class>& xi) const {
  if (static_cast<int>(xi.size()) != dim_) throw PreconditionError("point dimension mismatch");
  mpq_class s = 0;
  for (const auto& [e, c] : terms_) {
    mpq_class t = c;
    for (int i = 0; i < dim_; ++i) {
      mpz_class num, den;
      mpz_pow_ui(num.get_mpz_t(), xi[i].get_num_mpz_t(), e[i]);
      mpz_pow_ui(den.get_mpz_t(), xi[i].get_den_mpz_t(), e[i]);
      t *= mpq_class(num, den);
    }
    s += t;
  }
  s.canonicalize();
  return s;
}

double MultiIndexPoly::eval(std::span<const double> xi) const {
  if (static_cast<int>(xi.size()) != dim_) throw PreconditionError("point dimension mismatch");
  long double s = 0.0L;
  for (const auto& [e, c] : terms_) {
    long double t = c.get_d();
    for (int i = 0; i < dim_; ++i) t *= ipow(xi[i], e[i]);
    s += t;
  }
  return static_cast<double>(s);
}

std::string MultiIndexPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    mpq_class a = abs(c);
    os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    bool unit = (a == 1) && total_degree(e) > 0;
    if (!unit) os << a.get_str();
    bool need_mul = !unit;
    for (int i = 0; i < dim_; ++i) {
      if (e[i] == 0) continue;
      if (need_mul) os << "*";
      os << "x" << (i + 1);
      if (e[i] > 1) os << "^" << e[i];
      need_mul = true;
    }
    first = false;
  }
  return os.str();
}

KernelSymbol::KernelSymbol(MultiIndexPoly numerator, int denom_power, Denominator den)
    : numerator_(std::move(numerator)), q_(denom_power), den_(den) {
  if (numerator_.dim() < 2) throw PreconditionError("symbol dimension must be at least 2");
  if (q_ < 1) throw PreconditionError("denominator power must be positive");
  for (const auto& [e, c] : numerator_.terms()) {
    compiled_.push_back({e, static_cast<long double>(c.get_d())});
    for (int k : e) max_exp_ = std::max(max_exp_, k);
  }
}

long double KernelSymbol::eval_ld(const long double* xi) const {
  const int n = dim();
  long double r2 = 0.0L;
  for (int i = 0; i < n; ++i) r2 += xi[i] * xi[i];
  long double D = r2;
  if (den_ == Denominator::kp) D += xi[0] * xi[0] * xi[0] * xi[0];
  long double P = 0.0L;
  for (const auto& t : compiled_) {
    long double m = t.coeff;
    for (int i = 0; i < n; ++i)
      if (t.exps[i]) m *= ipow(xi[i], t.exps[i]);
    P += m;
  }
  return P / ipow(D, q_);
}

double KernelSymbol::operator()(std::span<const double> xi) const {
  if (static_cast<int>(xi.size()) != dim()) throw PreconditionError("point dimension mismatch");
  bool origin = std::all_of(xi.begin(), xi.end(), [](double v) { return v == 0.0; });
  if (origin) throw SingularPointError("symbol evaluated at the origin");
  long double buf[16] = {};
  std::vector<long double> big;
  long double* p = buf;
  if (xi.size() > 16) {
    big.resize(xi.size());
    p = big.data();
  }
  for (std::size_t i = 0; i < xi.size(); ++i) p[i] = xi[i];
  return static_cast<double>(eval_ld(p));
}

mpq_class KernelSymbol::eval_exact(const std::vector<mpq_class>& xi) const {
  mpq_class r2 = 0;
  for (const auto& v : xi) r2 += v * v;
  mpq_class D = r2;
  if (den_ == Denominator::kp) D += xi[0] * xi[0] * xi[0] * xi[0];
  if (D == 0) throw SingularPointError("symbol evaluated at the origin");
  mpq_class Dq = 1;
  for (int k = 0; k < q_; ++k) Dq *= D;
  mpq_class r = numerator_.eval(xi) / Dq;
  r.canonicalize();
  return r;
}

std::vector<long double> KernelSymbol::ray_coefficients(const double* u) const {
  std::vector<long double> a(numerator_.degree() + 1, 0.0L);
  for (const auto& t : compiled_) {
    long double m = t.coeff;
    int deg = 0;
    for (int i = 0; i < dim(); ++i) {
      m *= ipow(u[i], t.exps[i]);
      deg += t.exps[i];
    }
    a[deg] += m;
  }
  return a;
}

std::string KernelSymbol::to_json() const {
  nlohmann::ordered_json j;
  j["dim"] = dim();
  j["denom_power"] = q_;
  if (den_ == Denominator::riesz) j["denominator"] = "riesz";
  auto terms = nlohmann::ordered_json::array();
  for (const auto& [e, c] : numerator_.terms()) {
    nlohmann::ordered_json t;
    t["exps"] = e;
    t["num"] = c.get_num().get_str();
    t["den"] = c.get_den().get_str();
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j.dump();
}

KernelSymbol KernelSymbol::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    int dim = j.at("dim").get<int>();
    int q = j.at("denom_power").get<int>();
    Denominator den = Denominator::kp;
    if (j.contains("denominator")) {
      auto s = j["denominator"].get<std::string>();
      if (s == "riesz") den = Denominator::riesz;
      else if (s != "kp") throw ParseError("unknown denominator '" + s + "'");
    }
    MultiIndexPoly P(dim);
    for (const auto& t : j.at("terms")) {
      Exponents e = t.at("exps").get<Exponents>();
      mpq_class c(mpz_class(t.at("num").get<std::string>()), mpz_class(t.at("den").get<std::string>()));
      c.canonicalize();
      P.add_term(e, c);
    }
    return KernelSymbol(std::move(P), q, den);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("symbol json: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("symbol json coefficient: ") + e.what());
  }
}

double eval_symbol(const KernelSymbol& s, std::span<const double> xi) { return s(xi); }

KernelSymbol monomial_symbol(int dim, const Exponents& d) {
  if (dim < 2) throw PreconditionError("dimension must be at least 2");
  if (static_cast<int>(d.size()) != dim) throw PreconditionError("exponent vector length must equal dimension");
  for (int k : d)
    if (k < 0) throw PreconditionError("negative exponent");
  return KernelSymbol(MultiIndexPoly::monomial(d, 1), 1, Denominator::kp);
}

KernelSymbol riesz_symbol(int dim) {
  if (dim < 2) throw PreconditionError("dimension must be at least 2");
  Exponents e(dim, 0);
  e[0] = 2;
  return KernelSymbol(MultiIndexPoly::monomial(e, 1), 1, Denominator::riesz);
}

Exponents h0_exponents(int dim) {
  Exponents d(dim, 0);
  d[0] = 1;
  return d;
}

Exponents k0_exponents(int dim) {
  Exponents d(dim, 0);
  d[0] = 2;
  return d;
}

Exponents kk_exponents(int dim, int k) {
  if (k < 1 || k > dim) throw PreconditionError("axis out of range");
  Exponents d = k0_exponents(dim);
  d[k - 1] += 1;
  return d;
}

DerivativeTable::DerivativeTable(KernelSymbol base) : base_(std::move(base)) {}

KernelSymbol DerivativeTable::derive(int axis, int order) const {
  const int n = base_.dim();
  if (axis < 1 || axis > n) throw PreconditionError("axis out of range");
  if (order < 0) throw PreconditionError("negative derivative order");
  if (order == 0) return base_;

  std::lock_guard<std::mutex> lock(mu_);
  if (auto it = entries_.find({axis, order}); it != entries_.end()) return it->second;

  const int j = axis - 1;
  MultiIndexPoly D(n), dD(n);
  for (int i = 0; i < n; ++i) {
    Exponents e(n, 0);
    e[i] = 2;
    D.add_term(e, 1);
  }
  {
    Exponents e(n, 0);
    e[j] = 1;
    dD.add_term(e, 2);
  }
  if (base_.denominator() == Denominator::kp) {
    Exponents e(n, 0);
    e[0] = 4;
    D.add_term(e, 1);
    if (j == 0) {
      Exponents f(n, 0);
      f[0] = 3;
      dD.add_term(f, 4);
    }
  }

  int start = order;
  while (start > 0 && !entries_.count({axis, start})) --start;
  MultiIndexPoly P = start == 0 ? base_.numerator() : entries_.at({axis, start}).numerator();
  int q = base_.denom_power() + start;
  for (int k = start; k < order; ++k) {
    MultiIndexPoly next = D * P.derivative(j) - dD * P * mpq_class(q);
    P = std::move(next);
    ++q;
    entries_.emplace(std::make_pair(axis, k + 1), KernelSymbol(P, q, base_.denominator()));
  }
  return entries_.at({axis, order});
}

KernelSymbol derive_symbol(const DerivativeTable& table, int axis, int order) {
  return table.derive(axis, order);
}

ExponentRecord predicted_exponents(const Exponents& d, int axis, int order) {
  const int n = static_cast<int>(d.size());
  if (n < 2) throw PreconditionError("dimension must be at least 2");
  if (axis < 1 || axis > n) throw PreconditionError("axis out of range");
  if (order < 0) throw PreconditionError("negative derivative order");
  int d1 = d[0];
  int dperp = 0;
  for (int i = 1; i < n; ++i) dperp += d[i];
  int total = d1 + dperp;
  ExponentRecord r{};
  r.origin_exponent = order + 2 - total;
  double p = order;
  if (axis == 1) {
    r.lq_applies = p > d1 + 2 * dperp - 4;
    r.lq_threshold = (2.0 * n - 1.0) / (p + 4.0 - d1 - 2.0 * dperp);
    r.bounded_at_infinity = p >= d1 + 2 * dperp - 4;
  } else {
    r.lq_applies = p > 0.5 * d1 + dperp - 2.0;
    r.lq_threshold = (2.0 * n - 1.0) / (2.0 * p + 4.0 - d1 - 2.0 * dperp);
    r.bounded_at_infinity = p >= 0.5 * d1 + dperp - 2.0;
  }
  return r;
}

}  // namespace gkp
