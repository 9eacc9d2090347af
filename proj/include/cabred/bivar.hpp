#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cabred/errors.hpp"
#include "cabred/rational.hpp"
#include "cabred/unipoly.hpp"

namespace cabred {

// Sparse bivariate polynomial over a commutative ring R, keyed by (i, j) for
// x^i y^j.  Zero coefficients are never stored; map order makes iteration and
// serialization deterministic.
template <class R>
class Bivar {
 public:
  using Key = std::pair<int, int>;

  Bivar() = default;

  static Bivar monomial(int i, int j, const R& c) {
    Bivar r;
    r.add_term(i, j, c);
    return r;
  }

  void add_term(int i, int j, const R& c) {
    if (c.is_zero()) return;
    ensure(i >= 0 && j >= 0, "Bivar: negative exponent");
    auto it = t_.find({i, j});
    if (it == t_.end()) {
      t_.emplace(Key{i, j}, c);
    } else {
      it->second = it->second + c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  bool is_zero() const { return t_.empty(); }
  std::size_t term_count() const { return t_.size(); }
  const std::map<Key, R>& terms() const { return t_; }

  friend bool operator==(const Bivar& a, const Bivar& b) {
    if (a.t_.size() != b.t_.size()) return false;
    auto ia = a.t_.begin();
    auto ib = b.t_.begin();
    for (; ia != a.t_.end(); ++ia, ++ib) {
      if (ia->first != ib->first || !(ia->second == ib->second)) return false;
    }
    return true;
  }
  friend bool operator!=(const Bivar& a, const Bivar& b) { return !(a == b); }

  Bivar operator-() const {
    Bivar r;
    for (const auto& [k, c] : t_) r.t_.emplace(k, -c);
    return r;
  }

  friend Bivar operator+(const Bivar& a, const Bivar& b) {
    Bivar r = a;
    for (const auto& [k, c] : b.t_) r.add_term(k.first, k.second, c);
    return r;
  }

  friend Bivar operator-(const Bivar& a, const Bivar& b) {
    Bivar r = a;
    for (const auto& [k, c] : b.t_) r.add_term(k.first, k.second, -c);
    return r;
  }

  friend Bivar operator*(const Bivar& a, const Bivar& b) {
    Bivar r;
    for (const auto& [ka, ca] : a.t_)
      for (const auto& [kb, cb] : b.t_)
        r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return r;
  }

  Bivar scaled(const R& s) const {
    Bivar r;
    if (s.is_zero()) return r;
    for (const auto& [k, c] : t_) r.add_term(k.first, k.second, c * s);
    return r;
  }

  Bivar dx() const {
    Bivar r;
    for (const auto& [k, c] : t_) {
      if (k.first == 0) continue;
      r.add_term(k.first - 1, k.second, scale_int(c, k.first));
    }
    return r;
  }

  Bivar dy() const {
    Bivar r;
    for (const auto& [k, c] : t_) {
      if (k.second == 0) continue;
      r.add_term(k.first, k.second - 1, scale_int(c, k.second));
    }
    return r;
  }

  int xdeg() const {
    int d = -1;
    for (const auto& [k, c] : t_) d = std::max(d, k.first);
    return d;
  }

  int ydeg() const {
    int d = -1;
    for (const auto& [k, c] : t_) d = std::max(d, k.second);
    return d;
  }

  // Coefficients as polynomials in x, indexed by the power of y (ascending).
  std::vector<UniPoly<R>> y_coefficients(const R& zero) const {
    std::vector<std::vector<R>> buckets(static_cast<std::size_t>(std::max(ydeg(), -1) + 1));
    for (const auto& [k, c] : t_) {
      auto& row = buckets[static_cast<std::size_t>(k.second)];
      if (static_cast<int>(row.size()) <= k.first) row.resize(static_cast<std::size_t>(k.first) + 1, zero);
      row[static_cast<std::size_t>(k.first)] = c;
    }
    std::vector<UniPoly<R>> out;
    out.reserve(buckets.size());
    for (auto& row : buckets) out.emplace_back(std::move(row));
    return out;
  }

  static Bivar from_y_coefficients(const std::vector<UniPoly<R>>& ycoeffs) {
    Bivar r;
    for (std::size_t j = 0; j < ycoeffs.size(); ++j)
      for (int i = 0; i <= ycoeffs[j].degree(); ++i)
        r.add_term(i, static_cast<int>(j),
                   ycoeffs[j].coeffs()[static_cast<std::size_t>(i)]);
    return r;
  }

  // Evaluation in a larger ring; lift embeds coefficients.
  template <class T, class Lift>
  T eval(const T& x, const T& y, Lift lift) const {
    T acc = x.zero_like();
    for (const auto& [k, c] : t_) {
      T term = lift(c);
      for (int i = 0; i < k.first; ++i) term = term * x;
      for (int j = 0; j < k.second; ++j) term = term * y;
      acc = acc + term;
    }
    return acc;
  }

  std::string to_string() const {
    if (t_.empty()) return "0";
    std::string s;
    for (const auto& [k, c] : t_) {
      if (!s.empty()) s += " + ";
      s += "(" + c.to_string() + ")";
      if (k.first > 0) s += "*x^" + std::to_string(k.first);
      if (k.second > 0) s += "*y^" + std::to_string(k.second);
    }
    return s;
  }

 private:
  std::map<Key, R> t_;
};

// ---- resultants ----

// Determinant by fraction-free Gaussian elimination; entries live in an
// integral domain with exact division.
template <class F>
UniPoly<F> bareiss_determinant(std::vector<std::vector<UniPoly<F>>> m, const F& one) {
  const std::size_t n = m.size();
  if (n == 0) return UniPoly<F>::constant(one);
  UniPoly<F> denom = UniPoly<F>::constant(one);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && m[pivot][k].is_zero()) ++pivot;
    if (pivot == n) return UniPoly<F>();
    if (pivot != k) {
      std::swap(m[pivot], m[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        UniPoly<F> t = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        m[i][j] = UniPoly<F>::divexact(t, denom);
      }
      m[i][k] = UniPoly<F>();
    }
    denom = m[k][k];
  }
  UniPoly<F> det = m[n - 1][n - 1];
  return negate ? -det : det;
}

// Resultant with respect to y, as a polynomial in x.  Sylvester determinant
// with the rows of f above the rows of g; this fixes the sign convention.
template <class F>
UniPoly<F> resultant_y(const Bivar<F>& f, const Bivar<F>& g) {
  require(!(f.is_zero() && g.is_zero()), "resultant_y: both inputs zero");
  if (f.is_zero() || g.is_zero()) return UniPoly<F>();
  // Any sample coefficient provides the field context.
  const F one = f.terms().begin()->second.one_like();
  const F zero = one.zero_like();
  const int m = f.ydeg();
  const int n = g.ydeg();
  const auto fc = f.y_coefficients(zero);
  const auto gc = g.y_coefficients(zero);
  const std::size_t size = static_cast<std::size_t>(m + n);
  if (size == 0) return UniPoly<F>::constant(one);
  std::vector<std::vector<UniPoly<F>>> s(size, std::vector<UniPoly<F>>(size));
  for (int row = 0; row < n; ++row)
    for (int i = 0; i <= m; ++i)
      s[static_cast<std::size_t>(row)][static_cast<std::size_t>(row + i)] =
          fc[static_cast<std::size_t>(m - i)];
  for (int row = 0; row < m; ++row)
    for (int i = 0; i <= n; ++i)
      s[static_cast<std::size_t>(n + row)][static_cast<std::size_t>(row + i)] =
          gc[static_cast<std::size_t>(n - i)];
  return bareiss_determinant(std::move(s), one);
}

// ---- primitive gcd in y over F[x] ----

namespace detail {

template <class F>
UniPoly<F> y_content(const std::vector<UniPoly<F>>& a) {
  UniPoly<F> c;
  for (const auto& q : a) c = c.is_zero() ? q.monic() : UniPoly<F>::gcd(c, q);
  return c;
}

template <class F>
void y_trim(std::vector<UniPoly<F>>& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

template <class F>
std::vector<UniPoly<F>> y_primitive(std::vector<UniPoly<F>> a) {
  y_trim(a);
  if (a.empty()) return a;
  UniPoly<F> c = y_content(a);
  for (auto& q : a) q = UniPoly<F>::divexact(q, c);
  return a;
}

// Pseudo-remainder of a by b in y.
template <class F>
std::vector<UniPoly<F>> y_pseudo_rem(std::vector<UniPoly<F>> a, const std::vector<UniPoly<F>>& b) {
  const UniPoly<F>& lcb = b.back();
  while (a.size() >= b.size()) {
    UniPoly<F> lca = a.back();
    std::size_t shift = a.size() - b.size();
    for (auto& q : a) q = q * lcb;
    for (std::size_t i = 0; i < b.size(); ++i)
      a[shift + i] = a[shift + i] - lca * b[i];
    y_trim(a);
    if (a.empty()) break;
  }
  return a;
}

}  // namespace detail

// Gcd of two bivariate polynomials, primitive-PRS in y.  The result is
// normalized to have monic content; it is determined up to units, which is
// all the callers need.
template <class F>
Bivar<F> bivar_gcd_y(const Bivar<F>& fa, const Bivar<F>& fb) {
  if (fa.is_zero()) return fb;
  if (fb.is_zero()) return fa;
  const F one = fa.terms().begin()->second.one_like();
  const F zero = one.zero_like();
  auto a = fa.y_coefficients(zero);
  auto b = fb.y_coefficients(zero);
  UniPoly<F> cont = UniPoly<F>::gcd(detail::y_content(a), detail::y_content(b));
  a = detail::y_primitive(std::move(a));
  b = detail::y_primitive(std::move(b));
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    auto r = detail::y_pseudo_rem(a, b);
    a = std::move(b);
    b = detail::y_primitive(std::move(r));
  }
  a = detail::y_primitive(std::move(a));
  // Normalize the top coefficient to be monic for determinism.
  if (!a.empty()) {
    const F s = a.back().lc().inverse();
    for (auto& q : a) q = q.scaled(s);
  }
  for (auto& q : a) q = q * cont;
  return Bivar<F>::from_y_coefficients(a);
}

}  // namespace cabred
