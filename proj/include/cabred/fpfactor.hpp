#pragma once

#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "cabred/errors.hpp"
#include "cabred/fp.hpp"
#include "cabred/unipoly.hpp"

namespace cabred {

// ---- field helpers shared by the splitting routines ----

inline Fp field_random(const Fp& proto, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> d(0, proto.modulus() - 1);
  return Fp(d(rng), proto.modulus());
}

inline FpE field_random(const FpE& proto, std::mt19937_64& rng) {
  const auto& F = proto.field();
  std::uniform_int_distribution<std::int64_t> d(0, F->p - 1);
  std::vector<Fp> c;
  c.reserve(static_cast<std::size_t>(F->degree()));
  for (int i = 0; i < F->degree(); ++i) c.emplace_back(d(rng), F->p);
  return FpE(F, UniPoly<Fp>(std::move(c)));
}

inline Int field_order(const Fp& proto) { return Int(static_cast<long>(proto.modulus())); }
inline Int field_order(const FpE& proto) { return proto.field()->order(); }
inline std::int64_t field_char(const Fp& proto) { return proto.modulus(); }
inline std::int64_t field_char(const FpE& proto) { return proto.field()->p; }

inline UniPoly<FpE> lift_to_ext(const UniPoly<Fp>& f, const ExtFieldPtr& F) {
  std::vector<FpE> c;
  c.reserve(f.coeffs().size());
  for (const auto& a : f.coeffs()) c.push_back(FpE::from_base(a, F));
  return UniPoly<FpE>(std::move(c));
}

// ---- squarefreeness over the prime field ----

// For f with vanishing derivative over F_p, returns g with g(x)^p = f(x).
inline UniPoly<Fp> pth_root(const UniPoly<Fp>& f) {
  require(!f.is_zero(), "pth_root: zero polynomial");
  const std::int64_t p = f.lc().modulus();
  std::vector<Fp> c;
  for (int i = 0; i <= f.degree(); ++i) {
    Fp ci = f.coeff_or(i, f.lc().zero_like());
    if (i % p == 0) {
      c.push_back(ci);  // c^(1/p) = c on the prime field
    } else {
      ensure(ci.is_zero(), "pth_root: input is not a p-th power");
    }
  }
  return UniPoly<Fp>(std::move(c));
}

// True iff f has no repeated roots in the algebraic closure.  The
// derivative-vanishing case (f a p-th power) reduces to the p-th root, which
// is nonconstant and hence repeated.
inline bool squarefree_fp(const UniPoly<Fp>& f) {
  require(!f.is_zero(), "squarefree_fp: zero polynomial");
  if (f.degree() == 0) return true;
  UniPoly<Fp> d = f.derivative();
  if (d.is_zero()) return pth_root(f).degree() == 0;
  return UniPoly<Fp>::gcd(f, d).degree() == 0;
}

// Squarefree decomposition of a monic polynomial in characteristic p.
// Returns pairwise-coprime monic parts with their multiplicities.
inline std::vector<std::pair<UniPoly<Fp>, int>> squarefree_decomposition(const UniPoly<Fp>& f) {
  require(!f.is_zero(), "squarefree_decomposition: zero polynomial");
  std::vector<std::pair<UniPoly<Fp>, int>> out;
  if (f.degree() == 0) return out;
  const std::int64_t p = f.lc().modulus();

  UniPoly<Fp> d = f.derivative();
  if (d.is_zero()) {
    for (auto& [h, m] : squarefree_decomposition(pth_root(f))) out.emplace_back(h, m * static_cast<int>(p));
    return out;
  }

  UniPoly<Fp> c = UniPoly<Fp>::gcd(f, d);
  UniPoly<Fp> w = UniPoly<Fp>::divexact(f, c);
  int i = 1;
  while (w.degree() > 0) {
    UniPoly<Fp> y = UniPoly<Fp>::gcd(w, c);
    UniPoly<Fp> z = UniPoly<Fp>::divexact(w, y);
    if (z.degree() > 0) out.emplace_back(z.monic(), i);
    ++i;
    w = std::move(y);
    if (!c.is_zero() && w.degree() >= 0) c = UniPoly<Fp>::divexact(c, w);
  }
  if (c.degree() > 0) {
    for (auto& [h, m] : squarefree_decomposition(pth_root(c))) out.emplace_back(h, m * static_cast<int>(p));
  }
  return out;
}

// ---- distinct-degree and equal-degree splitting ----

// f monic squarefree; returns (product of irreducible factors of degree d, d).
inline std::vector<std::pair<UniPoly<Fp>, int>> distinct_degree_split(UniPoly<Fp> f) {
  std::vector<std::pair<UniPoly<Fp>, int>> out;
  const std::int64_t p = f.lc().modulus();
  const UniPoly<Fp> x = UniPoly<Fp>::monomial(Fp::one(p), 1);
  UniPoly<Fp> h = x % f;
  int d = 0;
  while (f.degree() > 0 && 2 * (d + 1) <= f.degree()) {
    ++d;
    h = UniPoly<Fp>::pow_mod(h, Int(static_cast<long>(p)), f);
    UniPoly<Fp> g = UniPoly<Fp>::gcd(h - x, f);
    if (g.degree() > 0) {
      out.emplace_back(g, d);
      f = UniPoly<Fp>::divexact(f, g);
      h = h % f;
    }
  }
  if (f.degree() > 0) out.emplace_back(f, f.degree());
  return out;
}

namespace detail {

// Cantor-Zassenhaus splitter, generic over the field so the same code serves
// F_p and its extensions.
template <class K>
UniPoly<K> random_split_poly(const UniPoly<K>& g, const Int& order_d, std::mt19937_64& rng) {
  const K proto = g.lc();
  const std::int64_t p = field_char(proto);
  std::uniform_int_distribution<int> degd(1, std::max(1, g.degree() - 1));
  std::vector<K> c;
  int deg = degd(rng);
  c.reserve(static_cast<std::size_t>(deg) + 1);
  for (int i = 0; i <= deg; ++i) c.push_back(field_random(proto, rng));
  UniPoly<K> v(std::move(c));
  if (v.is_zero()) return v;
  if (p != 2) {
    Int e = (order_d - 1) / 2;
    return UniPoly<K>::pow_mod(v, e, g) - UniPoly<K>::constant(proto.one_like());
  }
  // char 2: additive trace sum v + v^2 + ... + v^(2^(k-1)) with 2^k = order_d.
  std::size_t k = mpz_sizeinbase(order_d.get_mpz_t(), 2) - 1;
  UniPoly<K> acc, cur = v % g;
  for (std::size_t i = 0; i < k; ++i) {
    acc = acc + cur;
    cur = (cur * cur) % g;
  }
  return acc;
}

template <class K>
void equal_degree_split(const UniPoly<K>& g, int d, const Int& order_d,
                        std::mt19937_64& rng, std::vector<UniPoly<K>>& out) {
  if (g.degree() == d) {
    out.push_back(g.monic());
    return;
  }
  for (;;) {
    UniPoly<K> s = random_split_poly(g, order_d, rng);
    if (s.is_zero()) continue;
    UniPoly<K> w = UniPoly<K>::gcd(s, g);
    if (w.degree() > 0 && w.degree() < g.degree()) {
      equal_degree_split(w, d, order_d, rng, out);
      equal_degree_split(UniPoly<K>::divexact(g, w), d, order_d, rng, out);
      return;
    }
  }
}

}  // namespace detail

struct FpFactor {
  UniPoly<Fp> poly;
  int multiplicity;
};

struct FpFactorization {
  Fp unit;
  std::vector<FpFactor> factors;
};

// Deterministic order for factor lists: by degree, then coefficients from the
// top down.
inline bool factor_less(const UniPoly<Fp>& a, const UniPoly<Fp>& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    const Fp za = a.coeffs()[static_cast<std::size_t>(i)];
    const Fp zb = b.coeffs()[static_cast<std::size_t>(i)];
    if (za.value() != zb.value()) return za.value() < zb.value();
  }
  return false;
}

// Full factorization over F_p: squarefree decomposition, distinct-degree
// splitting, then randomized equal-degree splitting.  The caller supplies the
// generator so runs are reproducible; the output order is canonical anyway.
inline FpFactorization factor_fp(const UniPoly<Fp>& f, std::mt19937_64& rng) {
  require(!f.is_zero(), "factor_fp: zero polynomial");
  FpFactorization res{f.lc(), {}};
  UniPoly<Fp> m = f.monic();
  if (m.degree() == 0) return res;
  const Int p(static_cast<long>(f.lc().modulus()));
  for (const auto& [part, mult] : squarefree_decomposition(m)) {
    for (const auto& [prod, d] : distinct_degree_split(part)) {
      std::vector<UniPoly<Fp>> irr;
      Int order_d;
      mpz_pow_ui(order_d.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(d));
      detail::equal_degree_split(prod, d, order_d, rng, irr);
      for (auto& q : irr) res.factors.push_back({std::move(q), mult});
    }
  }
  std::sort(res.factors.begin(), res.factors.end(),
            [](const FpFactor& a, const FpFactor& b) { return factor_less(a.poly, b.poly); });
  return res;
}

// Rabin irreducibility test.
inline bool is_irreducible(const UniPoly<Fp>& f) {
  require(!f.is_zero(), "is_irreducible: zero polynomial");
  const int n = f.degree();
  if (n < 1) return false;
  const std::int64_t p = f.lc().modulus();
  const UniPoly<Fp> x = UniPoly<Fp>::monomial(Fp::one(p), 1);
  const UniPoly<Fp> m = f.monic();
  auto frob_power = [&](int k) {
    Int e = int_pow(Int(static_cast<long>(p)), static_cast<unsigned long>(k));
    return UniPoly<Fp>::pow_mod(x, e, m);
  };
  if (frob_power(n) != x % m) return false;
  int rest = n;
  for (int ell = 2; ell * ell <= rest; ++ell) {
    if (rest % ell != 0) continue;
    while (rest % ell == 0) rest /= ell;
    if (UniPoly<Fp>::gcd(frob_power(n / ell) - x, m).degree() != 0) return false;
  }
  if (rest > 1 && UniPoly<Fp>::gcd(frob_power(n / rest) - x, m).degree() != 0) return false;
  return true;
}

inline UniPoly<Fp> random_irreducible(std::int64_t p, int deg, std::mt19937_64& rng) {
  require(deg >= 1, "random_irreducible: degree must be positive");
  std::uniform_int_distribution<std::int64_t> d(0, p - 1);
  for (;;) {
    std::vector<Fp> c;
    c.reserve(static_cast<std::size_t>(deg) + 1);
    for (int i = 0; i < deg; ++i) c.emplace_back(d(rng), p);
    c.emplace_back(1, p);
    UniPoly<Fp> cand(std::move(c));
    if (is_irreducible(cand)) return cand;
  }
}

// One root of h in the coefficient field, if any.
template <class K>
std::optional<K> find_one_root(const UniPoly<K>& h, std::mt19937_64& rng) {
  require(!h.is_zero(), "find_one_root: zero polynomial");
  if (h.degree() == 0) return std::nullopt;
  const K proto = h.lc();
  const Int q = field_order(proto);
  const UniPoly<K> x = UniPoly<K>::monomial(proto.one_like(), 1);
  UniPoly<K> g = UniPoly<K>::gcd(UniPoly<K>::pow_mod(x, q, h) - x % h, h);
  if (g.degree() == 0) return std::nullopt;
  while (g.degree() > 1) {
    UniPoly<K> s = detail::random_split_poly(g, q, rng);
    if (s.is_zero()) continue;
    UniPoly<K> w = UniPoly<K>::gcd(s, g);
    if (w.degree() > 0 && w.degree() < g.degree()) g = w;
  }
  return -g.coeff_or(0, proto.zero_like());
}

}  // namespace cabred
