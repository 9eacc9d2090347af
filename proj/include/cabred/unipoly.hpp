#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "cabred/errors.hpp"
#include "cabred/rational.hpp"

namespace cabred {

// Dense univariate polynomial over a field F.  F must provide zero_like(),
// one_like(), is_zero(), inverse() and the usual operators.  The coefficient
// vector never stores trailing zeros; the zero polynomial is the empty vector.
template <class F>
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UniPoly constant(const F& c) {
    UniPoly r;
    if (!c.is_zero()) r.c_.push_back(c);
    return r;
  }

  static UniPoly monomial(const F& c, int deg) {
    UniPoly r;
    if (c.is_zero()) return r;
    r.c_.assign(static_cast<std::size_t>(deg), c.zero_like());
    r.c_.push_back(c);
    return r;
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }

  const F& lc() const {
    ensure(!c_.empty(), "UniPoly: lc of zero polynomial");
    return c_.back();
  }

  const std::vector<F>& coeffs() const { return c_; }

  // Coefficient of x^i, using z as the zero element when out of range.
  F coeff_or(int i, const F& z) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return z;
    return c_[static_cast<std::size_t>(i)];
  }

  friend bool operator==(const UniPoly& a, const UniPoly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (!(a.c_[i] == b.c_[i])) return false;
    return true;
  }
  friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

  UniPoly operator-() const {
    UniPoly r(*this);
    for (auto& c : r.c_) c = -c;
    return r;
  }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const F z = a.c_.front().zero_like();
    UniPoly r;
    std::size_t n = std::max(a.c_.size(), b.c_.size());
    r.c_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      F s = (i < a.c_.size() ? a.c_[i] : z);
      if (i < b.c_.size()) s = s + b.c_[i];
      r.c_.push_back(s);
    }
    r.trim();
    return r;
  }

  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    const F z = a.c_.front().zero_like();
    UniPoly r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, z);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
    }
    r.trim();
    return r;
  }

  UniPoly scaled(const F& s) const {
    UniPoly r;
    if (s.is_zero()) return r;
    r.c_.reserve(c_.size());
    for (const auto& c : c_) r.c_.push_back(c * s);
    r.trim();
    return r;
  }

  // Multiplication by x^k.
  UniPoly shifted(int k) const {
    ensure(k >= 0, "UniPoly: negative shift");
    if (is_zero() || k == 0) return *this;
    UniPoly r;
    r.c_.assign(static_cast<std::size_t>(k), c_.front().zero_like());
    r.c_.insert(r.c_.end(), c_.begin(), c_.end());
    return r;
  }

  UniPoly derivative() const {
    if (c_.size() <= 1) return UniPoly();
    UniPoly r;
    r.c_.reserve(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
      r.c_.push_back(scale_int(c_[i], static_cast<long>(i)));
    r.trim();
    return r;
  }

  // Euclidean division; the divisor must be nonzero.
  static std::pair<UniPoly, UniPoly> divrem(const UniPoly& a, const UniPoly& b) {
    require(!b.is_zero(), "UniPoly: division by zero polynomial");
    if (a.degree() < b.degree()) return {UniPoly(), a};
    const F z = b.c_.front().zero_like();
    const F lcinv = b.lc().inverse();
    std::vector<F> rem = a.c_;
    std::vector<F> quot(static_cast<std::size_t>(a.degree() - b.degree() + 1), z);
    for (int d = a.degree(); d >= b.degree();) {
      F q = rem[static_cast<std::size_t>(d)] * lcinv;
      quot[static_cast<std::size_t>(d - b.degree())] = q;
      for (int i = 0; i <= b.degree(); ++i) {
        std::size_t k = static_cast<std::size_t>(d - b.degree() + i);
        rem[k] = rem[k] - q * b.c_[static_cast<std::size_t>(i)];
      }
      while (!rem.empty() && rem.back().is_zero()) rem.pop_back();
      d = static_cast<int>(rem.size()) - 1;
    }
    return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
  }

  friend UniPoly operator/(const UniPoly& a, const UniPoly& b) { return divrem(a, b).first; }
  friend UniPoly operator%(const UniPoly& a, const UniPoly& b) { return divrem(a, b).second; }

  // Exact division; throws if the remainder is nonzero.
  static UniPoly divexact(const UniPoly& a, const UniPoly& b) {
    auto [q, r] = divrem(a, b);
    ensure(r.is_zero(), "UniPoly: inexact division");
    return q;
  }

  UniPoly monic() const {
    if (is_zero()) return *this;
    return scaled(lc().inverse());
  }

  static UniPoly gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
      UniPoly r = a % b;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  F eval(const F& x) const {
    if (is_zero()) return x.zero_like();
    F acc = c_.back();
    for (int i = degree() - 1; i >= 0; --i) acc = acc * x + c_[static_cast<std::size_t>(i)];
    return acc;
  }

  // Horner evaluation in a larger ring; lift maps coefficients into it.
  template <class T, class Lift>
  T eval_lift(const T& x, Lift lift) const {
    T acc = x.zero_like();
    for (int i = degree(); i >= 0; --i) acc = acc * x + lift(c_[static_cast<std::size_t>(i)]);
    return acc;
  }

  // this^e modulo m, with an arbitrary-precision exponent.
  static UniPoly pow_mod(const UniPoly& base, const Int& e, const UniPoly& m) {
    require(!m.is_zero(), "UniPoly: pow_mod modulus is zero");
    ensure(sgn(e) >= 0, "UniPoly: negative exponent");
    UniPoly result = UniPoly::constant(m.c_.front().one_like());
    UniPoly b = base % m;
    const std::size_t nbits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (sgn(e) == 0) return result;
    for (std::size_t bit = 0; bit < nbits; ++bit) {
      if (mpz_tstbit(e.get_mpz_t(), bit)) result = (result * b) % m;
      b = (b * b) % m;
    }
    return result;
  }

  std::string to_string(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
      const F& c = c_[static_cast<std::size_t>(i)];
      if (c.is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += c.to_string();
      if (i > 0) s += "*" + var + "^" + std::to_string(i);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<F> c_;
};

// Integer scaling used by derivative(); specialized per field in its header.
inline Rat scale_int(const Rat& x, long n) { return x * Rat(n); }

}  // namespace cabred
