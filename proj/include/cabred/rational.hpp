#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include <gmpxx.h>

#include "cabred/errors.hpp"

namespace cabred {

// Arbitrary-precision integer.  All exact arithmetic in this library sits on
// top of GMP; no floating point is used anywhere.
using Int = mpz_class;

inline Int int_gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int int_pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// Deterministic Miller-Rabin for 64-bit inputs; falls back to GMP for wider
// operands.
bool is_prime(const Int& n);

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set decides primality exactly below 3.3e24.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

}  // namespace detail

inline bool is_prime(const Int& n) {
  if (n.fits_ulong_p()) return detail::is_prime_u64(n.get_ui());
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

// Exact rational number.  Invariants: gcd(|num|, den) = 1, den >= 1, and zero
// is stored as 0/1.  mpq_class keeps the canonical form through arithmetic;
// every raw construction canonicalizes explicitly.
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(long n) : v_(n) {}  // NOLINT: implicit by design, mirrors integer literals
  Rat(const Int& n) : v_(n) {}
  Rat(const Int& num, const Int& den) : v_(num, den) {
    require(sgn(den) != 0, "Rat: zero denominator");
    v_.canonicalize();
  }
  Rat(long num, long den) : Rat(Int(num), Int(den)) {}

  // Accepts "n" or "n/d" with optional sign.
  static Rat parse(const std::string& s) {
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rat(Int(s));
      return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
      throw invalid_input("Rat: cannot parse '" + s + "'");
    }
  }

  Int num() const { return v_.get_num(); }
  Int den() const { return v_.get_den(); }
  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }

  Rat operator-() const { return Rat(mpq_class(-v_)); }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) {
    require(!o.is_zero(), "Rat: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }

  Rat inverse() const {
    require(!is_zero(), "Rat: inverse of zero");
    return Rat(mpq_class(1 / v_));
  }

  // "n/d", or just "n" when d = 1.
  std::string to_string() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  // Ring-concept hooks shared with the other coefficient rings.
  Rat zero_like() const { return Rat(); }
  Rat one_like() const { return Rat(1); }

 private:
  explicit Rat(const mpq_class& v) : v_(v) {}
  mpq_class v_;
};

inline std::ostream& operator<<(std::ostream& os, const Rat& r) {
  return os << r.to_string();
}

// p-adic valuation value; infinite exactly for the zero input.
struct Valuation {
  bool infinite = false;
  long value = 0;

  static Valuation inf() { return Valuation{true, 0}; }
  static Valuation of(long v) { return Valuation{false, v}; }

  friend bool operator==(const Valuation& a, const Valuation& b) {
    return a.infinite == b.infinite && (a.infinite || a.value == b.value);
  }
  // Total order treating infinity as larger than every finite value.
  friend bool operator<(const Valuation& a, const Valuation& b) {
    if (a.infinite) return false;
    if (b.infinite) return true;
    return a.value < b.value;
  }
};

inline Valuation valp(const Int& n, const Int& p) {
  require(is_prime(p), "valp: p must be prime");
  if (sgn(n) == 0) return Valuation::inf();
  Int rest;
  long k = static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
  return Valuation::of(k);
}

inline Valuation valp(const Rat& q, const Int& p) {
  require(is_prime(p), "valp: p must be prime");
  if (q.is_zero()) return Valuation::inf();
  Int rest;
  long vn = static_cast<long>(mpz_remove(rest.get_mpz_t(), q.num().get_mpz_t(), p.get_mpz_t()));
  long vd = static_cast<long>(mpz_remove(rest.get_mpz_t(), q.den().get_mpz_t(), p.get_mpz_t()));
  return Valuation::of(vn - vd);
}

// Ring-concept hooks so the rewrite engine can treat Rat like the symbolic
// coefficient rings.
inline Rat ring_scale(const Rat& x, const Rat& s) { return x * s; }
inline std::size_t ring_size(const Rat&) { return 1; }

}  // namespace cabred
