#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cabred/bivar.hpp"
#include "cabred/errors.hpp"
#include "cabred/fp.hpp"
#include "cabred/fpfactor.hpp"
#include "cabred/rational.hpp"

namespace cabred {

// Defining data of an affine plane curve y^a + sum f_j(x) y^j + f_0(x) = 0
// given by integer coefficient lifts.  Key (i, j) carries the coefficient of
// x^i y^j; the admissible support is {a i + b j < a b} together with (b, 0).
struct CabParams {
  std::int64_t p = 0;
  int a = 0;
  int b = 0;
  std::map<std::pair<int, int>, Int> coeffs;

  bool supports(int i, int j) const {
    if (i < 0 || j < 0) return false;
    if (i == b && j == 0) return true;
    return static_cast<long>(a) * i + static_cast<long>(b) * j < static_cast<long>(a) * b;
  }

  // True when the special fiber has no middle terms f_j, 1 <= j <= a-1.
  bool superelliptic_fiber() const {
    for (const auto& [k, c] : coeffs)
      if (k.second >= 1 && !(Fp::from_int(c, p).is_zero())) return false;
    return true;
  }
};

struct ValidationReport {
  std::vector<std::string> violations;
  std::optional<CabParams> params;

  bool ok() const { return violations.empty(); }
};

inline ValidationReport validate(std::int64_t p, int a, int b,
                                 const std::map<std::pair<int, int>, Int>& coeffs) {
  ValidationReport rep;
  auto fail = [&](const std::string& msg) { rep.violations.push_back(msg); };

  if (p < 2 || p >= (std::int64_t{1} << 31) || !is_prime(Int(static_cast<long>(p))))
    fail("p must be a prime below 2^31");
  if (a < 2) fail("a must be at least 2");
  if (b < 2) fail("b must be at least 2");
  if (a >= 2 && b >= 2) {
    if (std::gcd(a, b) != 1) fail("a and b must be coprime");
    if (p >= 2 && (static_cast<std::int64_t>(a) * b) % p == 0) fail("p must not divide a*b");
  }
  CabParams cp{p, a, b, {}};
  if (rep.violations.empty()) {
    for (const auto& [k, c] : coeffs) {
      if (!cp.supports(k.first, k.second)) {
        fail("coefficient exponent (" + std::to_string(k.first) + "," + std::to_string(k.second) +
             ") outside the admissible support");
        continue;
      }
      if (sgn(c) != 0) cp.coeffs[k] = c;
    }
    auto lead = cp.coeffs.find({b, 0});
    if (lead == cp.coeffs.end() || Fp::from_int(lead->second, p).is_zero())
      fail("leading coefficient c_(b,0) must be a unit mod p");
  }
  if (rep.violations.empty()) rep.params = std::move(cp);
  return rep;
}

inline CabParams validate_or_throw(std::int64_t p, int a, int b,
                                   const std::map<std::pair<int, int>, Int>& coeffs) {
  ValidationReport rep = validate(p, a, b, coeffs);
  if (!rep.ok()) {
    std::string msg = "invalid curve:";
    for (const auto& v : rep.violations) msg += " " + v + ";";
    throw invalid_input(msg);
  }
  return *rep.params;
}

// y^a + x^b + alpha with alpha a unit mod p.
struct SuperellipticParams {
  std::int64_t p = 0;
  int a = 0;
  int b = 0;
  Int alpha;

  CabParams to_cab() const {
    return validate_or_throw(p, a, b, {{{0, 0}, alpha}, {{b, 0}, Int(1)}});
  }
};

inline SuperellipticParams make_superelliptic(std::int64_t p, int a, int b, const Int& alpha) {
  SuperellipticParams s{p, a, b, alpha};
  CabParams c = s.to_cab();
  require(!Fp::from_int(alpha, p).is_zero(), "superelliptic: alpha must be a unit mod p");
  (void)c;
  return s;
}

inline long genus(int a, int b) {
  require(a >= 1 && b >= 1 && std::gcd(a, b) == 1, "genus: a, b must be coprime positive integers");
  return static_cast<long>(a - 1) * (b - 1) / 2;
}

// Pole order at the point at infinity of the 1-form x^i y^j dx.
inline long ord_infinity(int a, int b, long i, long j) {
  require(i >= 0 && j >= 0, "ord_infinity: exponents must be nonnegative");
  return -(static_cast<long>(a) * (i + 1) + j * b + 1);
}

// The mod-p defining polynomial, including the monic y^a term.
inline Bivar<Fp> special_fiber(const CabParams& c) {
  Bivar<Fp> f = Bivar<Fp>::monomial(0, c.a, Fp::one(c.p));
  for (const auto& [k, v] : c.coeffs) f.add_term(k.first, k.second, Fp::from_int(v, c.p));
  return f;
}

// ---- smoothness of the special fiber ----

struct SingularWitness {
  ExtFieldPtr field;  // degree 1 means a rational point
  FpE x, y;
};

struct ClearanceRecord {
  UniPoly<Fp> factor;  // irreducible factor of the resultant gcd, ruled out
};

struct SmoothnessCertificate {
  bool smooth = false;
  bool used_superelliptic_fast_path = false;
  int shear = 0;                              // x -> x + shear*y applied before elimination
  std::optional<UniPoly<Fp>> resultant_gcd;   // gcd of the two elimination resultants
  std::vector<ClearanceRecord> clearances;
  std::optional<SingularWitness> witness;
};

namespace detail {

inline UniPoly<FpE> specialize_x(const Bivar<Fp>& f, const FpE& xi) {
  const auto& F = xi.field();
  std::vector<UniPoly<Fp>> rows = f.y_coefficients(Fp::zero(F->p));
  std::vector<FpE> c;
  c.reserve(rows.size());
  for (const auto& row : rows) c.push_back(row.eval_lift(xi, [&](const Fp& a) { return FpE::from_base(a, F); }));
  return UniPoly<FpE>(std::move(c));
}

// Searches for eta with h(eta) = 0, where h lives over L = F_p[t]/(q); the
// returned coordinates lie in one common field (L itself or a composite).
inline std::optional<std::pair<ExtFieldPtr, std::pair<FpE, FpE>>> root_above(
    const UniPoly<Fp>& q, const UniPoly<FpE>& h, std::mt19937_64& rng) {
  const std::int64_t p = q.lc().modulus();
  const int s = q.degree();
  if (auto direct = find_one_root(h, rng)) {
    return std::make_pair(h.lc().field(), std::make_pair(FpE::generator(h.lc().field()), *direct));
  }
  for (int t = 2; t <= std::max(1, h.degree()); ++t) {
    ExtFieldPtr K = make_ext_field(p, random_irreducible(p, s * t, rng));
    auto xi = find_one_root(lift_to_ext(q, K), rng);
    ensure(xi.has_value(), "root_above: base polynomial must split in the composite field");
    // Transport h across the embedding sending the class of t in L to xi.
    std::vector<FpE> c;
    c.reserve(h.coeffs().size());
    for (const auto& coeff : h.coeffs())
      c.push_back(coeff.rep().eval_lift(*xi, [&](const Fp& a) { return FpE::from_base(a, K); }));
    UniPoly<FpE> hk(std::move(c));
    if (auto eta = find_one_root(hk, rng)) return std::make_pair(K, std::make_pair(*xi, *eta));
  }
  return std::nullopt;
}

inline Bivar<Fp> shear_x(const Bivar<Fp>& f, const Fp& t) {
  // substitute x -> x + t*y
  Bivar<Fp> out;
  for (const auto& [k, c] : f.terms()) {
    Bivar<Fp> acc = Bivar<Fp>::monomial(0, k.second, c);
    Bivar<Fp> lin;
    lin.add_term(1, 0, c.one_like());
    lin.add_term(0, 1, t);
    for (int n = 0; n < k.first; ++n) acc = acc * lin;
    out = out + acc;
  }
  return out;
}

struct ScanResult {
  bool smooth = false;
  UniPoly<Fp> resultant_gcd;
  std::vector<ClearanceRecord> clearances;
  std::optional<SingularWitness> witness;
  bool degenerate = false;  // both resultants vanished and no repeated part found
};

inline ScanResult singular_scan(const Bivar<Fp>& f, std::mt19937_64& rng) {
  ScanResult res;
  const std::int64_t p = f.terms().begin()->second.modulus();
  Bivar<Fp> fx = f.dx();
  Bivar<Fp> fy = f.dy();
  if (fx.is_zero() || fy.is_zero()) {
    res.degenerate = true;
    return res;
  }
  UniPoly<Fp> g1 = resultant_y(f, fy);
  UniPoly<Fp> g2 = resultant_y(f, fx);
  UniPoly<Fp> d = UniPoly<Fp>::gcd(g1, g2);

  if (d.is_zero()) {
    // Both resultants vanish identically.  A common factor of f and both
    // partials is singular along its whole locus; look for one.
    Bivar<Fp> H = bivar_gcd_y(bivar_gcd_y(f, fx), fy);
    if (H.ydeg() >= 1) {
      auto rows = H.y_coefficients(Fp::zero(p));
      const UniPoly<Fp>& lead = rows.back();
      // Pick xi with lead(xi) != 0, in F_p if possible.
      std::optional<UniPoly<Fp>> q;
      for (std::int64_t c = 0; c < p; ++c) {
        if (!lead.eval(Fp(c, p)).is_zero()) {
          q = UniPoly<Fp>(std::vector<Fp>{Fp(-c, p), Fp::one(p)});
          break;
        }
      }
      if (!q) q = random_irreducible(p, lead.degree() + 1, rng);
      ExtFieldPtr L = make_ext_field(p, *q);
      FpE xi = FpE::generator(L);
      UniPoly<FpE> h = specialize_x(H, xi);
      auto found = root_above(*q, h, rng);
      ensure(found.has_value(), "singular_scan: repeated component must carry a point");
      res.witness = SingularWitness{found->first, found->second.first, found->second.second};
      return res;
    }
    res.degenerate = true;
    return res;
  }

  res.resultant_gcd = d;
  if (d.degree() == 0) {
    res.smooth = true;
    return res;
  }
  for (const auto& fac : factor_fp(d, rng).factors) {
    ExtFieldPtr L = make_ext_field(p, fac.poly);
    FpE xi = FpE::generator(L);
    UniPoly<FpE> A = specialize_x(f, xi);
    UniPoly<FpE> Ax = specialize_x(fx, xi);
    UniPoly<FpE> Ay = specialize_x(fy, xi);
    UniPoly<FpE> h = UniPoly<FpE>::gcd(UniPoly<FpE>::gcd(A, Ax), Ay);
    if (h.degree() <= 0) {
      // No common zero above this x-coordinate.  A constant nonzero gcd rules
      // it out; gcd zero would mean all three vanish identically, impossible
      // since f is monic in y.
      ensure(!h.is_zero(), "singular_scan: three-way gcd vanished");
      res.clearances.push_back({fac.poly});
      continue;
    }
    auto found = root_above(fac.poly, h, rng);
    ensure(found.has_value(), "singular_scan: common root must exist in a composite field");
    res.witness = SingularWitness{found->first, found->second.first, found->second.second};
    return res;
  }
  res.smooth = true;
  return res;
}

}  // namespace detail

// Verifies that the witness satisfies f = f_x = f_y = 0 in its field.
inline bool verify_witness(const CabParams& c, const SingularWitness& w) {
  Bivar<Fp> f = special_fiber(c);
  auto lift = [&](const Fp& a) { return FpE::from_base(a, w.field); };
  return f.eval(w.x, w.y, lift).is_zero() && f.dx().eval(w.x, w.y, lift).is_zero() &&
         f.dy().eval(w.x, w.y, lift).is_zero();
}

// Jacobian-criterion smoothness via resultant elimination, ignoring the
// superelliptic shortcut.  Exposed separately so the shortcut can be tested
// against it.
inline SmoothnessCertificate smoothness_by_elimination(const CabParams& c, std::mt19937_64& rng) {
  Bivar<Fp> f = special_fiber(c);
  for (std::int64_t t = 0; t < c.p; ++t) {
    Bivar<Fp> g = (t == 0) ? f : detail::shear_x(f, Fp(t, c.p));
    detail::ScanResult scan = detail::singular_scan(g, rng);
    if (scan.degenerate) continue;  // retry with a sheared coordinate
    SmoothnessCertificate cert;
    cert.smooth = scan.smooth;
    cert.shear = static_cast<int>(t);
    if (!scan.resultant_gcd.is_zero()) cert.resultant_gcd = scan.resultant_gcd;
    cert.clearances = std::move(scan.clearances);
    if (scan.witness) {
      // Undo the shear: the scan found a singular point of f(x + t y, y).
      SingularWitness w = *scan.witness;
      if (t != 0) w.x = w.x + w.y * FpE::from_base(Fp(t, c.p), w.field);
      ensure(verify_witness(c, w), "smoothness: witness failed re-verification");
      cert.witness = std::move(w);
    }
    return cert;
  }
  throw internal_error("smoothness: elimination degenerate for every shear");
}

// Smoothness of the special fiber.  Superelliptic fibers take the squarefree
// shortcut; everything else goes through elimination.
inline SmoothnessCertificate is_smooth(const CabParams& c, std::mt19937_64& rng) {
  if (c.superelliptic_fiber()) {
    SmoothnessCertificate cert;
    cert.used_superelliptic_fast_path = true;
    std::vector<Fp> f0c(static_cast<std::size_t>(c.b) + 1, Fp::zero(c.p));
    for (const auto& [k, v] : c.coeffs)
      if (k.second == 0) f0c[static_cast<std::size_t>(k.first)] = Fp::from_int(v, c.p);
    UniPoly<Fp> f0(std::move(f0c));
    if (squarefree_fp(f0)) {
      cert.smooth = true;
      return cert;
    }
    UniPoly<Fp> d = f0.derivative();
    UniPoly<Fp> rep = d.is_zero() ? pth_root(f0) : UniPoly<Fp>::gcd(f0, d);
    auto fac = factor_fp(rep, rng);
    ensure(!fac.factors.empty(), "smoothness: repeated part has no factor");
    ExtFieldPtr L = make_ext_field(c.p, fac.factors.front().poly);
    SingularWitness w{L, FpE::generator(L), FpE::from_base(Fp::zero(c.p), L)};
    ensure(verify_witness(c, w), "smoothness: witness failed re-verification");
    cert.witness = std::move(w);
    return cert;
  }
  return smoothness_by_elimination(c, rng);
}

}  // namespace cabred
