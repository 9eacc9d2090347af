#pragma once

// Shared fixtures and independent oracles for the test suites.  Everything
// here is deliberately naive: brute-force enumeration and first-principles
// formulas that the library implementations are checked against.

#include <map>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "cabred/curve.hpp"
#include "cabred/fp.hpp"
#include "cabred/fpfactor.hpp"
#include "cabred/forms.hpp"
#include "cabred/rational.hpp"
#include "cabred/reduce.hpp"
#include "cabred/unipoly.hpp"

namespace testsupport {

using namespace cabred;

// ---- fixture curves ----

inline CabParams curve_e1() {  // y^2 + x^3 + 1 over F_5
  return validate_or_throw(5, 2, 3, {{{0, 0}, Int(1)}, {{3, 0}, Int(1)}});
}

inline CabParams curve_e2() {  // y^2 + x^3 + 1 over F_7
  return validate_or_throw(7, 2, 3, {{{0, 0}, Int(1)}, {{3, 0}, Int(1)}});
}

inline CabParams curve_c1() {  // y^2 + x y + x^3 + 1 over F_5, not superelliptic
  return validate_or_throw(5, 2, 3, {{{0, 0}, Int(1)}, {{3, 0}, Int(1)}, {{1, 1}, Int(1)}});
}

inline CabParams curve_c2() {  // y^3 + x^2 y + x^4 + x + 1 over F_7
  return validate_or_throw(
      7, 3, 4, {{{0, 0}, Int(1)}, {{1, 0}, Int(1)}, {{4, 0}, Int(1)}, {{2, 1}, Int(1)}});
}

inline CabParams curve_e3() {  // y^2 + x^5 + 1 over F_7
  return validate_or_throw(7, 2, 5, {{{0, 0}, Int(1)}, {{5, 0}, Int(1)}});
}

// ---- random generators (all deterministic via the caller's engine) ----

inline Rat random_rat(std::mt19937_64& rng, long num_bound = 50, long den_bound = 12) {
  std::uniform_int_distribution<long> num(-num_bound, num_bound);
  std::uniform_int_distribution<long> den(1, den_bound);
  return Rat(num(rng), den(rng));
}

inline Rat random_nonzero_rat(std::mt19937_64& rng) {
  for (;;) {
    Rat r = random_rat(rng);
    if (!r.is_zero()) return r;
  }
}

inline UniPoly<Fp> random_fp_poly(std::int64_t p, int max_deg, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> degd(0, max_deg);
  std::uniform_int_distribution<std::int64_t> cd(0, p - 1);
  int deg = degd(rng);
  std::vector<Fp> c;
  for (int i = 0; i <= deg; ++i) c.emplace_back(cd(rng), p);
  return UniPoly<Fp>(std::move(c));
}

inline Bivar<Rat> random_bivar_q(std::mt19937_64& rng, int max_deg, int terms) {
  std::uniform_int_distribution<int> ed(0, max_deg);
  Bivar<Rat> g;
  for (int t = 0; t < terms; ++t) {
    int i = ed(rng), j = ed(rng);
    if (i + j > max_deg) continue;
    g.add_term(i, j, random_rat(rng));
  }
  return g;
}

inline DifferentialForm<Rat> d_of(const Bivar<Rat>& g) {
  DifferentialForm<Rat> f;
  const Bivar<Rat> gx = g.dx();
  const Bivar<Rat> gy = g.dy();
  for (const auto& [k, c] : gx.terms()) f.add_term({k.first, k.second, FormKind::dx}, c);
  for (const auto& [k, c] : gy.terms()) f.add_term({k.first, k.second, FormKind::dy}, c);
  return f;
}

// ---- bootstrap tower of small fields with brute-force verified moduli ----
//
// A monic polynomial of degree n over F_p is irreducible iff it has no root
// in F_(p^m) for every m <= n/2.  Fields are built inductively on that same
// criterion, so the tower never trusts the library's splitting code.

inline std::vector<FpE> all_field_elements(const ExtFieldPtr& F) {
  std::vector<FpE> out;
  const int n = F->degree();
  const std::int64_t p = F->p;
  std::vector<std::int64_t> digits(static_cast<std::size_t>(n), 0);
  for (;;) {
    std::vector<Fp> c;
    for (int i = 0; i < n; ++i) c.emplace_back(digits[static_cast<std::size_t>(i)], p);
    out.emplace_back(F, UniPoly<Fp>(std::move(c)));
    int pos = 0;
    while (pos < n) {
      if (++digits[static_cast<std::size_t>(pos)] < p) break;
      digits[static_cast<std::size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == n) break;
  }
  return out;
}

ExtFieldPtr oracle_field(std::int64_t p, int degree);

inline bool oracle_has_root_in(const UniPoly<Fp>& q, const ExtFieldPtr& F) {
  for (const FpE& xi : all_field_elements(F)) {
    if (q.eval_lift(xi, [&](const Fp& c) { return FpE::from_base(c, F); }).is_zero()) return true;
  }
  return false;
}

inline bool oracle_irreducible(const UniPoly<Fp>& q) {
  const std::int64_t p = q.lc().modulus();
  if (q.degree() < 1) return false;
  for (int m = 1; 2 * m <= q.degree(); ++m) {
    if (oracle_has_root_in(q, oracle_field(p, m))) return false;
  }
  return true;
}

inline ExtFieldPtr oracle_field(std::int64_t p, int degree) {
  static std::map<std::pair<std::int64_t, int>, ExtFieldPtr> cache;
  auto it = cache.find({p, degree});
  if (it != cache.end()) return it->second;
  // first monic polynomial of this degree, in counting order, with no root in
  // the smaller fields of the tower
  std::vector<std::int64_t> digits(static_cast<std::size_t>(degree), 0);
  for (;;) {
    std::vector<Fp> c;
    for (int i = 0; i < degree; ++i) c.emplace_back(digits[static_cast<std::size_t>(i)], p);
    c.emplace_back(1, p);
    UniPoly<Fp> cand(std::move(c));
    if (oracle_irreducible(cand)) {
      auto F = make_ext_field(p, cand);
      cache[{p, degree}] = F;
      return F;
    }
    int pos = 0;
    while (pos < degree) {
      if (++digits[static_cast<std::size_t>(pos)] < p) break;
      digits[static_cast<std::size_t>(pos)] = 0;
      ++pos;
    }
    ensure(pos < degree, "oracle_field: no irreducible of this degree?");
  }
}

// Brute singular-point scan over F_(p^m) for m <= max_deg; returns a point
// with f = f_x = f_y = 0 if one exists in those fields.
inline std::optional<std::pair<FpE, FpE>> brute_singular_point(const CabParams& c, int max_deg) {
  Bivar<Fp> f = special_fiber(c);
  Bivar<Fp> fx = f.dx();
  Bivar<Fp> fy = f.dy();
  for (int m = 1; m <= max_deg; ++m) {
    ExtFieldPtr F = oracle_field(c.p, m);
    auto lift = [&](const Fp& a) { return FpE::from_base(a, F); };
    std::vector<FpE> elems = all_field_elements(F);
    for (const FpE& x : elems) {
      for (const FpE& y : elems) {
        if (f.eval(x, y, lift).is_zero() && fx.eval(x, y, lift).is_zero() &&
            fy.eval(x, y, lift).is_zero())
          return std::make_pair(x, y);
      }
    }
  }
  return std::nullopt;
}

// ---- tiny F_p linear algebra, used to plant singular points ----

// Solutions of A x = b over F_p: returns a particular solution and a basis of
// the kernel, or nullopt when inconsistent.
struct FpSolutions {
  std::vector<Fp> particular;
  std::vector<std::vector<Fp>> kernel;
};

inline std::optional<FpSolutions> solve_fp(std::vector<std::vector<Fp>> A, std::vector<Fp> b) {
  const std::size_t rows = A.size();
  const std::size_t cols = rows == 0 ? 0 : A[0].size();
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && A[piv][col].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(A[piv], A[rank]);
    std::swap(b[piv], b[rank]);
    Fp inv = A[rank][col].inverse();
    for (std::size_t j = col; j < cols; ++j) A[rank][j] = A[rank][j] * inv;
    b[rank] = b[rank] * inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || A[r][col].is_zero()) continue;
      Fp factor = A[r][col];
      for (std::size_t j = col; j < cols; ++j) A[r][j] = A[r][j] - factor * A[rank][j];
      b[r] = b[r] - factor * b[rank];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  for (std::size_t r = rank; r < rows; ++r)
    if (!b[r].is_zero()) return std::nullopt;

  const Fp zero = b.empty() ? Fp(0, 2) : b[0].zero_like();
  FpSolutions sol;
  sol.particular.assign(cols, zero);
  for (std::size_t r = 0; r < rank; ++r) sol.particular[pivot_col[r]] = b[r];
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t col : pivot_col) is_pivot[col] = true;
  for (std::size_t free_col = 0; free_col < cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<Fp> v(cols, zero);
    v[free_col] = zero.one_like();
    for (std::size_t r = 0; r < rank; ++r) v[pivot_col[r]] = -A[r][free_col];
    sol.kernel.push_back(std::move(v));
  }
  return sol;
}

}  // namespace testsupport
