#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "cabred/curve.hpp"
#include "cabred/errors.hpp"
#include "cabred/rational.hpp"
#include "cabred/reduce.hpp"

namespace cabred {

// The residue pair (j, r) with p = j b (mod a) and p = r a (mod b), together
// with c = r a + j b + a b; then p = c (mod a b).
struct ResidueChoice {
  int j = 0;
  int r = 0;
  long c = 0;
};

namespace detail {

inline long inv_mod(long x, long m) {
  long t = 0, nt = 1, r = m, nr = ((x % m) + m) % m;
  while (nr != 0) {
    long q = r / nr;
    long tmp = t - q * nt; t = nt; nt = tmp;
    tmp = r - q * nr; r = nr; nr = tmp;
  }
  ensure(r == 1, "inv_mod: arguments not coprime");
  return ((t % m) + m) % m;
}

}  // namespace detail

inline ResidueChoice solve_jr(std::int64_t p, int a, int b) {
  require(a >= 2 && b >= 2 && std::gcd(a, b) == 1, "solve_jr: a, b must be coprime and >= 2");
  require(is_prime(Int(static_cast<long>(p))), "solve_jr: p must be prime");
  require(p % a != 0 && p % b != 0, "solve_jr: p must not divide a*b");
  long j = (p % a) * detail::inv_mod(b, a) % a;
  long r = (p % b) * detail::inv_mod(a, b) % b;
  ensure(j >= 1 && j <= a - 1 && r >= 1 && r <= b - 1, "solve_jr: residues out of range");
  ResidueChoice rc{static_cast<int>(j), static_cast<int>(r),
                   r * a + j * b + static_cast<long>(a) * b};
  ensure((p - rc.c) % (static_cast<long>(a) * b) == 0, "solve_jr: congruence failed");
  return rc;
}

// First `count` exponents M with p^M >= c and p^M = c (mod a b), found by
// iterating p^M modulo a b.  The set is infinite: the residue of p recurs
// with the multiplicative order of p mod a b.
inline std::vector<int> mset(std::int64_t p, int a, int b, const ResidueChoice& rc, int count) {
  require(count >= 1, "mset: count must be positive");
  const long ab = static_cast<long>(a) * b;
  const long target = rc.c % ab;
  std::vector<int> out;
  long cur = p % ab;
  Int power(static_cast<long>(p));
  bool big_enough = power >= rc.c;
  for (int M = 1; static_cast<int>(out.size()) < count; ++M) {
    if (M > 1) {
      cur = cur * (p % ab) % ab;
      if (!big_enough) {
        power *= p;
        big_enough = power >= rc.c;
      }
    }
    if (cur == target && big_enough) out.push_back(M);
  }
  return out;
}

inline bool mset_contains(std::int64_t p, int a, int b, const ResidueChoice& rc, int M) {
  if (M < 1) return false;
  const long ab = static_cast<long>(a) * b;
  Int power = int_pow(Int(static_cast<long>(p)), static_cast<unsigned long>(M));
  return power >= rc.c && power % ab == rc.c % ab;
}

// |{0 <= n <= N : n = n0 (mod q)}| by floor arithmetic.
inline Int count_progression(const Int& N, const Int& n0, const Int& q) {
  if (n0 > N) return Int(0);
  return (N - n0) / q + 1;
}

// Cardinalities |P_M'| and |Q_M'| for M' = 1..M, where P counts solutions of
// p^M' | n b + r and Q counts solutions of p^M' | n a b + c over 0 <= n <= N.
// Everything is closed-form; N may have thousands of digits.
inline std::vector<std::pair<Int, Int>> progression_counts(std::int64_t p, int a, int b,
                                                           const ResidueChoice& rc, int M) {
  require(mset_contains(p, a, b, rc, M), "nu_count: M is not an admissible exponent");
  const Int P(static_cast<long>(p));
  const long ab = static_cast<long>(a) * b;
  const Int pM = int_pow(P, static_cast<unsigned long>(M));
  const Int N = (pM - rc.c) / ab;
  ensure(N * ab + rc.c == pM, "nu_count: N is not integral");

  std::vector<std::pair<Int, Int>> out;
  Int q(1);
  for (int Mp = 1; Mp <= M; ++Mp) {
    q *= P;
    Int binv, abinv;
    ensure(mpz_invert(binv.get_mpz_t(), Int(static_cast<long>(b)).get_mpz_t(), q.get_mpz_t()) != 0,
           "nu_count: b not invertible");
    ensure(mpz_invert(abinv.get_mpz_t(), Int(ab).get_mpz_t(), q.get_mpz_t()) != 0,
           "nu_count: ab not invertible");
    Int n0p = ((-Int(rc.r) * binv) % q + q) % q;
    Int n0q = ((-Int(rc.c) * abinv) % q + q) % q;
    out.emplace_back(count_progression(N, n0p, q), count_progression(N, n0q, q));
  }
  return out;
}

// nu = sum over M' of |P_M'| - |Q_M'|.
inline long nu_count(std::int64_t p, int a, int b, const ResidueChoice& rc, int M) {
  Int nu(0);
  for (const auto& [cp, cq] : progression_counts(p, a, b, rc, M)) nu += cp - cq;
  ensure(nu.fits_slong_p(), "nu_count: value out of range");
  return nu.get_si();
}

// Enumeration oracle: sum of valp(n b + r) - valp(n a b + c) over 0 <= n <= N.
inline long nu_brute(std::int64_t p, int a, int b, const ResidueChoice& rc, int M, const Int& cap) {
  require(mset_contains(p, a, b, rc, M), "nu_brute: M is not an admissible exponent");
  const long ab = static_cast<long>(a) * b;
  const Int pM = int_pow(Int(static_cast<long>(p)), static_cast<unsigned long>(M));
  const Int N = (pM - rc.c) / ab;
  if (N > cap) throw cap_exceeded("nu_brute: enumeration cap exceeded");
  const std::int64_t n_max = N.get_si();
  auto val = [&](std::int64_t x) {
    long v = 0;
    while (x % p == 0) {
      x /= p;
      ++v;
    }
    return v;
  };
  long nu = 0;
  for (std::int64_t n = 0; n <= n_max; ++n) {
    nu += val(n * b + rc.r) - val(n * ab + rc.c);
  }
  return nu;
}

// The exact reduction coefficient of the superelliptic ladder,
//   C = prod_{n=0}^{N} -((n b + r) a alpha) / ((n b + r) a + j b + a b).
// Numerator and denominator are accumulated separately and canonicalized
// once, which keeps the cost linear in N.
inline Rat ladder_product(int a, int b, const ResidueChoice& rc, const Int& N, const Int& alpha) {
  require(N.fits_slong_p(), "ladder_product: N too large for exact evaluation");
  const long n_max = N.get_si();
  Int num(1), den(1);
  for (long n = 0; n <= n_max; ++n) {
    Int u = (Int(n) * b + rc.r) * a;
    num *= u * alpha;
    den *= u + Int(rc.j) * b + Int(static_cast<long>(a)) * b;
  }
  if ((n_max + 1) % 2 != 0) num = -num;
  return Rat(num, den);
}

// One infiniteness probe record.
struct ProbeResult {
  int d = 0;
  int M = 0;
  Int N;
  long nu = 0;
  std::optional<Rat> c_exact;
  bool bound_ok = false;
};

// Probes d = 1..d_max on the curve y^a + x^b + alpha.  The exact coefficient
// is computed whenever N fits under exact_cap, and its valuation is checked
// against the counting formula.
inline std::vector<ProbeResult> probe(std::int64_t p, int a, int b, const Int& alpha, int d_max,
                                      const Int& exact_cap) {
  require(!Fp::from_int(alpha, p).is_zero(), "probe: alpha must be a unit mod p");
  const ResidueChoice rc = solve_jr(p, a, b);
  const std::vector<int> Ms = mset(p, a, b, rc, d_max);
  const long ab = static_cast<long>(a) * b;
  std::vector<ProbeResult> out;
  for (int d = 1; d <= d_max; ++d) {
    ProbeResult res;
    res.d = d;
    res.M = Ms[static_cast<std::size_t>(d - 1)];
    const Int pM = int_pow(Int(static_cast<long>(p)), static_cast<unsigned long>(res.M));
    res.N = (pM - rc.c) / ab;
    res.nu = nu_count(p, a, b, rc, res.M);
    res.bound_ok = res.nu <= -d;
    if (res.N <= exact_cap) {
      res.c_exact = ladder_product(a, b, rc, res.N, alpha);
      ensure(valp(*res.c_exact, Int(static_cast<long>(p))) == Valuation::of(res.nu),
             "probe: exact coefficient valuation disagrees with the counting formula");
    }
    out.push_back(std::move(res));
  }
  return out;
}

// Bridge between the combinatorial and the cohomological pipeline: reduce
// x^((N_d+1)b + (r-1)) y^j dx on the concrete curve and compare with the
// closed-form ladder product.
inline bool crosscheck_reduction(std::int64_t p, int a, int b, const Int& alpha, int d,
                                 const Int& chain_cap) {
  const ResidueChoice rc = solve_jr(p, a, b);
  const int M = mset(p, a, b, rc, d).back();
  const long ab = static_cast<long>(a) * b;
  const Int pM = int_pow(Int(static_cast<long>(p)), static_cast<unsigned long>(M));
  const Int N = (pM - rc.c) / ab;
  if (N > chain_cap) throw cap_exceeded("crosscheck_reduction: chain cap exceeded");
  const Rat expected = ladder_product(a, b, rc, N, alpha);

  CabParams curve = make_superelliptic(p, a, b, alpha).to_cab();
  CurveRing<Rat> ring = curve_ring(curve);
  const long i_d = (N.get_si() + 1) * b + (rc.r - 1);
  auto res = reduce_to_basis(
      DifferentialForm<Rat>::monomial(static_cast<int>(i_d), rc.j, FormKind::dx, Rat(1)), ring);
  for (const auto& [k, v] : res.vector.entries()) {
    if (k.first == rc.r - 1 && k.second == rc.j) {
      if (!(v == expected)) return false;
    } else if (!v.is_zero()) {
      return false;
    }
  }
  return true;
}

}  // namespace cabred
