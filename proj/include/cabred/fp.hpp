#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "cabred/errors.hpp"
#include "cabred/rational.hpp"
#include "cabred/unipoly.hpp"

namespace cabred {

// Element of the prime field F_p.  Carries its modulus so that values are
// self-contained; p is limited to 31 bits so products fit in int64.
class Fp {
 public:
  Fp() = default;  // invalid sentinel, p = 0
  Fp(std::int64_t v, std::int64_t p) : p_(p) {
    require(p >= 2 && p < (std::int64_t{1} << 31), "Fp: modulus out of range");
    v_ = v % p;
    if (v_ < 0) v_ += p;
  }

  static Fp zero(std::int64_t p) { return Fp(0, p); }
  static Fp one(std::int64_t p) { return Fp(1, p); }
  static Fp from_int(const Int& n, std::int64_t p) {
    Int r = n % Int(static_cast<long>(p));
    return Fp(r.get_si(), p);
  }

  std::int64_t value() const { return v_; }
  std::int64_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }

  Fp zero_like() const { return Fp(0, p_); }
  Fp one_like() const { return Fp(1, p_); }

  Fp operator-() const { return Fp(p_ - v_, p_); }
  friend Fp operator+(const Fp& a, const Fp& b) { a.match(b); return Fp(a.v_ + b.v_, a.p_); }
  friend Fp operator-(const Fp& a, const Fp& b) { a.match(b); return Fp(a.v_ - b.v_ + a.p_, a.p_); }
  friend Fp operator*(const Fp& a, const Fp& b) { a.match(b); return Fp(a.v_ * b.v_ % a.p_, a.p_); }
  friend bool operator==(const Fp& a, const Fp& b) { return a.p_ == b.p_ && a.v_ == b.v_; }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }
  friend bool operator<(const Fp& a, const Fp& b) { a.match(b); return a.v_ < b.v_; }

  Fp inverse() const {
    require(v_ != 0, "Fp: inverse of zero");
    std::int64_t t = 0, nt = 1, r = p_, nr = v_;
    while (nr != 0) {
      std::int64_t q = r / nr;
      std::int64_t tmp = t - q * nt; t = nt; nt = tmp;
      tmp = r - q * nr; r = nr; nr = tmp;
    }
    ensure(r == 1, "Fp: modulus not prime?");
    if (t < 0) t += p_;
    return Fp(t, p_);
  }

  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }

  Fp pow(const Int& e) const {
    ensure(sgn(e) >= 0, "Fp: negative exponent");
    Fp r = one_like(), b = *this;
    const std::size_t nbits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (sgn(e) == 0) return r;
    for (std::size_t bit = 0; bit < nbits; ++bit) {
      if (mpz_tstbit(e.get_mpz_t(), bit)) r = r * b;
      b = b * b;
    }
    return r;
  }

  std::string to_string() const { return std::to_string(v_); }

 private:
  void match(const Fp& o) const { ensure(p_ == o.p_, "Fp: modulus mismatch"); }

  std::int64_t v_ = 0;
  std::int64_t p_ = 0;
};

inline Fp scale_int(const Fp& x, long n) { return x * Fp(n, x.modulus()); }

// Finite extension F_p[t]/(q) with q monic irreducible over F_p.
struct ExtField {
  std::int64_t p;
  UniPoly<Fp> modulus;  // monic, degree >= 1

  int degree() const { return modulus.degree(); }
  Int order() const { return int_pow(Int(static_cast<long>(p)), static_cast<unsigned long>(degree())); }
};

using ExtFieldPtr = std::shared_ptr<const ExtField>;

inline ExtFieldPtr make_ext_field(std::int64_t p, UniPoly<Fp> modulus) {
  require(modulus.degree() >= 1, "ExtField: modulus must be nonconstant");
  auto f = std::make_shared<ExtField>();
  f->p = p;
  f->modulus = modulus.monic();
  return f;
}

// Element of an extension field, stored as a residue polynomial of degree
// below deg(modulus).
class FpE {
 public:
  FpE() = default;
  FpE(ExtFieldPtr field, UniPoly<Fp> rep) : f_(std::move(field)), rep_(std::move(rep) % f_->modulus) {}

  static FpE from_base(const Fp& c, ExtFieldPtr field) {
    return FpE(std::move(field), UniPoly<Fp>::constant(c));
  }
  // The class of t, a root of the defining polynomial.
  static FpE generator(ExtFieldPtr field) {
    auto p = field->p;
    return FpE(std::move(field), UniPoly<Fp>::monomial(Fp::one(p), 1));
  }

  const ExtFieldPtr& field() const { return f_; }
  const UniPoly<Fp>& rep() const { return rep_; }
  bool is_zero() const { return rep_.is_zero(); }

  FpE zero_like() const { return FpE(f_, UniPoly<Fp>()); }
  FpE one_like() const { return FpE(f_, UniPoly<Fp>::constant(Fp::one(f_->p))); }

  FpE operator-() const { return FpE(f_, -rep_); }
  friend FpE operator+(const FpE& a, const FpE& b) { a.match(b); return FpE(a.f_, a.rep_ + b.rep_); }
  friend FpE operator-(const FpE& a, const FpE& b) { a.match(b); return FpE(a.f_, a.rep_ - b.rep_); }
  friend FpE operator*(const FpE& a, const FpE& b) { a.match(b); return FpE(a.f_, a.rep_ * b.rep_); }
  friend bool operator==(const FpE& a, const FpE& b) {
    a.match(b);
    return a.rep_ == b.rep_;
  }
  friend bool operator!=(const FpE& a, const FpE& b) { return !(a == b); }

  FpE inverse() const {
    require(!is_zero(), "FpE: inverse of zero");
    // Extended Euclid over F_p[t].
    UniPoly<Fp> r0 = f_->modulus, r1 = rep_;
    UniPoly<Fp> s0, s1 = UniPoly<Fp>::constant(Fp::one(f_->p));
    while (!r1.is_zero()) {
      auto [q, r2] = UniPoly<Fp>::divrem(r0, r1);
      UniPoly<Fp> s2 = s0 - q * s1;
      r0 = std::move(r1); r1 = std::move(r2);
      s0 = std::move(s1); s1 = std::move(s2);
    }
    ensure(r0.degree() == 0, "FpE: modulus not irreducible?");
    return FpE(f_, s0.scaled(r0.lc().inverse()));
  }

  friend FpE operator/(const FpE& a, const FpE& b) { return a * b.inverse(); }

  FpE pow(const Int& e) const {
    ensure(sgn(e) >= 0, "FpE: negative exponent");
    FpE r = one_like(), b = *this;
    const std::size_t nbits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (sgn(e) == 0) return r;
    for (std::size_t bit = 0; bit < nbits; ++bit) {
      if (mpz_tstbit(e.get_mpz_t(), bit)) r = r * b;
      b = b * b;
    }
    return r;
  }

  std::string to_string() const { return rep_.to_string("t"); }

 private:
  void match(const FpE& o) const {
    ensure(f_ && o.f_ && (f_ == o.f_ || (f_->p == o.f_->p && f_->modulus == o.f_->modulus)),
           "FpE: field mismatch");
  }

  ExtFieldPtr f_;
  UniPoly<Fp> rep_;
};

inline FpE scale_int(const FpE& x, long n) {
  return x * FpE::from_base(Fp(n, x.field()->p), x.field());
}

}  // namespace cabred
