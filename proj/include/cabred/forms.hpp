#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cabred/bivar.hpp"
#include "cabred/errors.hpp"
#include "cabred/rational.hpp"

namespace cabred {

enum class FormKind { dx, dy };

// Monomial 1-form x^i y^j dx or x^i y^j dy.
struct Monomial {
  int i = 0;
  int j = 0;
  FormKind kind = FormKind::dx;

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.i == b.i && a.j == b.j && a.kind == b.kind;
  }
  friend bool operator<(const Monomial& a, const Monomial& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  }

  std::string to_string() const {
    std::string s;
    if (i > 0) s += "x^" + std::to_string(i);
    if (j > 0) s += (s.empty() ? "" : "*") + std::string("y^") + std::to_string(j);
    if (!s.empty()) s += "*";
    s += (kind == FormKind::dx) ? "dx" : "dy";
    return s;
  }
};

// Sparse linear combination of monomial 1-forms over a coefficient ring R.
template <class R>
class DifferentialForm {
 public:
  DifferentialForm() = default;

  static DifferentialForm monomial(int i, int j, FormKind kind, const R& c) {
    DifferentialForm f;
    f.add_term({i, j, kind}, c);
    return f;
  }

  void add_term(const Monomial& m, const R& c) {
    if (c.is_zero()) return;
    ensure(m.i >= 0 && m.j >= 0, "DifferentialForm: negative exponent");
    auto it = t_.find(m);
    if (it == t_.end()) {
      t_.emplace(m, c);
    } else {
      it->second = it->second + c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  void remove_term(const Monomial& m) { t_.erase(m); }

  bool is_zero() const { return t_.empty(); }
  std::size_t term_count() const { return t_.size(); }
  const std::map<Monomial, R>& terms() const { return t_; }

  const R* coeff(const Monomial& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? nullptr : &it->second;
  }

  friend bool operator==(const DifferentialForm& a, const DifferentialForm& b) {
    if (a.t_.size() != b.t_.size()) return false;
    auto ia = a.t_.begin();
    auto ib = b.t_.begin();
    for (; ia != a.t_.end(); ++ia, ++ib)
      if (!(ia->first == ib->first) || !(ia->second == ib->second)) return false;
    return true;
  }
  friend bool operator!=(const DifferentialForm& a, const DifferentialForm& b) { return !(a == b); }

  DifferentialForm operator-() const {
    DifferentialForm r;
    for (const auto& [m, c] : t_) r.t_.emplace(m, -c);
    return r;
  }

  friend DifferentialForm operator+(const DifferentialForm& a, const DifferentialForm& b) {
    DifferentialForm r = a;
    for (const auto& [m, c] : b.t_) r.add_term(m, c);
    return r;
  }

  friend DifferentialForm operator-(const DifferentialForm& a, const DifferentialForm& b) {
    DifferentialForm r = a;
    for (const auto& [m, c] : b.t_) r.add_term(m, -c);
    return r;
  }

  DifferentialForm scaled(const R& s) const {
    DifferentialForm r;
    if (s.is_zero()) return r;
    for (const auto& [m, c] : t_) r.add_term(m, c * s);
    return r;
  }

  // Polynomial coefficients of dx and dy.
  std::pair<Bivar<R>, Bivar<R>> split() const {
    Bivar<R> px, py;
    for (const auto& [m, c] : t_) {
      if (m.kind == FormKind::dx) {
        px.add_term(m.i, m.j, c);
      } else {
        py.add_term(m.i, m.j, c);
      }
    }
    return {px, py};
  }

  std::string to_string() const {
    if (t_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : t_) {
      if (!s.empty()) s += " + ";
      s += "(" + c.to_string() + ")*" + m.to_string();
    }
    return s;
  }

 private:
  std::map<Monomial, R> t_;
};

// Coordinates in the cohomology basis {x^i y^j dx : 0 <= i <= b-2,
// 1 <= j <= a-1}, stored densely in (i, j) order.
template <class R>
class CohomologyVector {
 public:
  CohomologyVector() = default;
  CohomologyVector(int a, int b, const R& zero) : a_(a), b_(b) {
    for (int i = 0; i <= b - 2; ++i)
      for (int j = 1; j <= a - 1; ++j) c_.emplace(std::make_pair(i, j), zero);
  }

  int a() const { return a_; }
  int b() const { return b_; }
  std::size_t size() const { return c_.size(); }
  const std::map<std::pair<int, int>, R>& entries() const { return c_; }

  bool contains(int i, int j) const { return c_.count({i, j}) != 0; }

  const R& at(int i, int j) const {
    auto it = c_.find({i, j});
    ensure(it != c_.end(), "CohomologyVector: index outside the basis");
    return it->second;
  }

  void set(int i, int j, const R& v) {
    auto it = c_.find({i, j});
    ensure(it != c_.end(), "CohomologyVector: index outside the basis");
    it->second = v;
  }

  bool is_zero() const {
    for (const auto& [k, v] : c_)
      if (!v.is_zero()) return false;
    return true;
  }

  friend bool operator==(const CohomologyVector& x, const CohomologyVector& y) {
    if (x.a_ != y.a_ || x.b_ != y.b_) return false;
    auto ix = x.c_.begin();
    auto iy = y.c_.begin();
    for (; ix != x.c_.end(); ++ix, ++iy)
      if (!(ix->second == iy->second)) return false;
    return true;
  }
  friend bool operator!=(const CohomologyVector& x, const CohomologyVector& y) { return !(x == y); }

  CohomologyVector scaled(const R& s) const {
    CohomologyVector r = *this;
    for (auto& [k, v] : r.c_) v = v * s;
    return r;
  }

  friend CohomologyVector operator+(const CohomologyVector& x, const CohomologyVector& y) {
    ensure(x.a_ == y.a_ && x.b_ == y.b_, "CohomologyVector: basis mismatch");
    CohomologyVector r = x;
    auto ir = r.c_.begin();
    auto iy = y.c_.begin();
    for (; ir != r.c_.end(); ++ir, ++iy) ir->second = ir->second + iy->second;
    return r;
  }

  DifferentialForm<R> to_form() const {
    DifferentialForm<R> f;
    for (const auto& [k, v] : c_) f.add_term({k.first, k.second, FormKind::dx}, v);
    return f;
  }

 private:
  int a_ = 0;
  int b_ = 0;
  std::map<std::pair<int, int>, R> c_;
};

// Witness that a rewrite is a cohomology identity: the claimed reduction of a
// form omega to a basis combination beta satisfies, as a polynomial identity,
//   omega - beta = d(g) + h*df + u*f*dx + v*f*dy.
template <class R>
struct ExactnessCertificate {
  Bivar<R> g, h, u, v;
};

// Curve data over an arbitrary coefficient ring: the exponents of the
// defining equation with their coefficients in R, plus the inverse of the
// leading coefficient c_(b,0), which is the only element ever divided by.
template <class R>
struct CurveRing {
  int a = 0;
  int b = 0;
  std::map<std::pair<int, int>, R> coeff;
  R cb0;
  R cb0_inv;
  Bivar<R> f, fx, fy;

  static CurveRing build(int a, int b, std::map<std::pair<int, int>, R> coeff, R cb0_inv) {
    CurveRing c;
    c.a = a;
    c.b = b;
    auto lead = coeff.find({b, 0});
    ensure(lead != coeff.end() && !lead->second.is_zero(), "CurveRing: missing leading coefficient");
    c.cb0 = lead->second;
    c.cb0_inv = std::move(cb0_inv);
    ensure((c.cb0 * c.cb0_inv) == c.cb0.one_like(), "CurveRing: cb0_inv is not an inverse");
    c.coeff = std::move(coeff);
    c.f = Bivar<R>::monomial(0, a, c.cb0.one_like());
    for (const auto& [k, v] : c.coeff) c.f.add_term(k.first, k.second, v);
    c.fx = c.f.dx();
    c.fy = c.f.dy();
    return c;
  }
};

// Difference between the claimed identity's two sides; zero means the
// certificate checks out.
template <class R>
std::pair<Bivar<R>, Bivar<R>> certificate_residual(const DifferentialForm<R>& form_in,
                                                   const DifferentialForm<R>& form_out,
                                                   const ExactnessCertificate<R>& cert,
                                                   const CurveRing<R>& C) {
  auto [pin, qin] = form_in.split();
  auto [pout, qout] = form_out.split();
  Bivar<R> lhs_dx = pin - pout;
  Bivar<R> lhs_dy = qin - qout;
  Bivar<R> rhs_dx = cert.g.dx() + cert.h * C.fx + cert.u * C.f;
  Bivar<R> rhs_dy = cert.g.dy() + cert.h * C.fy + cert.v * C.f;
  return {lhs_dx - rhs_dx, lhs_dy - rhs_dy};
}

// Exact verification of a reduction certificate by polynomial arithmetic.
template <class R>
bool check_certificate(const DifferentialForm<R>& form, const CohomologyVector<R>& vec,
                       const ExactnessCertificate<R>& cert, const CurveRing<R>& C) {
  auto [rx, ry] = certificate_residual(form, vec.to_form(), cert, C);
  return rx.is_zero() && ry.is_zero();
}

}  // namespace cabred
