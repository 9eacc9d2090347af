#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "cabred/errors.hpp"
#include "cabred/laurent.hpp"
#include "cabred/probe.hpp"
#include "cabred/reduce.hpp"

namespace cabred {

// The family of all curves y^a + sum z_(i,j) x^i y^j with (i, j) running over
// the admissible support; one symbolic variable per support element, with
// z_(b,0) the only invertible one.
struct GenericFamily {
  std::int64_t p = 0;
  int a = 0;
  int b = 0;
  std::vector<std::pair<int, int>> support;
  VarSetPtr vars;

  static GenericFamily make(std::int64_t p, int a, int b) {
    require(a >= 2 && b >= 2 && std::gcd(a, b) == 1, "GenericFamily: a, b must be coprime and >= 2");
    require(is_prime(Int(static_cast<long>(p))), "GenericFamily: p must be prime");
    require(p % a != 0 && p % b != 0, "GenericFamily: p must not divide a*b");
    GenericFamily fam;
    fam.p = p;
    fam.a = a;
    fam.b = b;
    for (int j = 0; j <= a - 1; ++j)
      for (int i = 0; static_cast<long>(a) * i + static_cast<long>(b) * j < static_cast<long>(a) * b; ++i)
        fam.support.emplace_back(i, j);
    fam.support.emplace_back(b, 0);
    std::sort(fam.support.begin(), fam.support.end());
    std::vector<std::string> names;
    int invertible = -1;
    names.reserve(fam.support.size());
    for (std::size_t k = 0; k < fam.support.size(); ++k) {
      const auto& [i, j] = fam.support[k];
      names.push_back("z" + std::to_string(i) + "_" + std::to_string(j));
      if (i == b && j == 0) invertible = static_cast<int>(k);
    }
    fam.vars = VarSet::make(std::move(names), invertible);
    return fam;
  }

  int index_of(int i, int j) const {
    for (std::size_t k = 0; k < support.size(); ++k)
      if (support[k] == std::make_pair(i, j)) return static_cast<int>(k);
    throw invalid_input("GenericFamily: (i, j) not in the support");
  }

  // Fully symbolic coefficient ring.
  CurveRing<MultiLaurent> ring() const {
    std::map<std::pair<int, int>, MultiLaurent> coeff;
    for (std::size_t k = 0; k < support.size(); ++k)
      coeff.emplace(support[k], MultiLaurent::variable(vars, static_cast<int>(k)));
    MultiLaurent cb0_inv = MultiLaurent::variable(vars, vars->invertible, -1);
    return CurveRing<MultiLaurent>::build(a, b, std::move(coeff), std::move(cb0_inv));
  }

  // Superelliptic section of the family: only z_(0,0) and z_(b,0) survive.
  // Every intermediate form on the reduction ladder is then a single
  // monomial, which is what makes very long chains tractable.
  CurveRing<MultiLaurent> superelliptic_ring() const {
    std::map<std::pair<int, int>, MultiLaurent> coeff;
    coeff.emplace(std::make_pair(0, 0), MultiLaurent::variable(vars, index_of(0, 0)));
    coeff.emplace(std::make_pair(b, 0), MultiLaurent::variable(vars, index_of(b, 0)));
    MultiLaurent cb0_inv = MultiLaurent::variable(vars, vars->invertible, -1);
    return CurveRing<MultiLaurent>::build(a, b, std::move(coeff), std::move(cb0_inv));
  }
};

inline long default_symbolic_cap(int b) { return 2L * b + 4; }

struct GenericReduction {
  int i = 0;
  int j = 0;
  CohomologyVector<MultiLaurent> vector;
  ReduceStats stats;
};

// Reduction of x^i y^j dx with symbolic coefficients.  The result expresses
// the class in the basis with coefficients in Q[z][z_(b,0)^-1]; only z_(b,0)
// is ever inverted, which the Laurent ring enforces on every insertion.
inline GenericReduction generic_reduce(const GenericFamily& fam, int i, int j,
                                       long symbolic_cap = -1, ReduceOptions opt = {}) {
  if (symbolic_cap < 0) symbolic_cap = default_symbolic_cap(fam.b);
  require(i >= 0 && j >= 0, "generic_reduce: exponents must be nonnegative");
  if (i > symbolic_cap) throw cap_exceeded("generic_reduce: symbolic cap exceeded");
  CurveRing<MultiLaurent> ring = fam.ring();
  auto res = reduce_to_basis(
      DifferentialForm<MultiLaurent>::monomial(i, j, FormKind::dx, ring.cb0.one_like()), ring, opt);
  return GenericReduction{i, j, std::move(res.vector), res.stats};
}

// Evaluation of a symbolic reduction at a concrete coefficient tuple; the
// leading coefficient must specialize to a nonzero value.
inline CohomologyVector<Rat> specialize(const GenericFamily& fam,
                                        const CohomologyVector<MultiLaurent>& vec,
                                        const std::map<std::pair<int, int>, Rat>& point) {
  std::vector<Rat> values(fam.support.size(), Rat(0));
  for (const auto& [k, v] : point) {
    values[static_cast<std::size_t>(fam.index_of(k.first, k.second))] = v;
  }
  require(!values[static_cast<std::size_t>(fam.vars->invertible)].is_zero(),
          "specialize: leading coefficient must be nonzero");
  CohomologyVector<Rat> out(vec.a(), vec.b(), Rat(0));
  for (const auto& [k, coeff] : vec.entries()) out.set(k.first, k.second, coeff.eval(values));
  return out;
}

inline CohomologyVector<Rat> specialize(const GenericFamily& fam, const GenericReduction& red,
                                        const std::map<std::pair<int, int>, Rat>& point) {
  return specialize(fam, red.vector, point);
}

// Scale a Laurent polynomial by p^k.
inline MultiLaurent scale_by_prime_power(const MultiLaurent& g, std::int64_t p, long k) {
  Int pk = int_pow(Int(static_cast<long>(p)), static_cast<unsigned long>(k));
  return g.scaled(Rat(pk));
}

struct LocusReport {
  std::int64_t p = 0;
  int a = 0;
  int b = 0;
  int d = 0;
  int j = 0;
  int r = 0;
  Int i_d;
  long l_d = 0;
  bool long_chain = false;  // computed on the superelliptic section
  MultiLaurent g_exact;     // the basis coefficient of slot (r-1, j)
  std::vector<std::pair<std::vector<int>, Int>> locus_mod_p;  // image of p^l_d * g
  ReduceStats stats;
};

// The d-th renormalized locus datum: reduces x^(i_d) y^j dx symbolically,
// extracts the (r-1, j) coefficient G, computes the least l with p^l G
// integral at p, and reduces p^l G modulo p.  Small i_d runs fully
// symbolically; longer chains run on the superelliptic section, where the
// reported l_d is still a lower bound for the full family's.
inline LocusReport locus(const GenericFamily& fam, const ResidueChoice& rc, int d,
                         long symbolic_cap = -1, const Int& chain_cap = Int(100000),
                         ReduceOptions opt = {}) {
  require(d >= 1, "locus: d must be positive");
  if (symbolic_cap < 0) symbolic_cap = default_symbolic_cap(fam.b);
  const int M = mset(fam.p, fam.a, fam.b, rc, d).back();
  const long ab = static_cast<long>(fam.a) * fam.b;
  const Int pM = int_pow(Int(static_cast<long>(fam.p)), static_cast<unsigned long>(M));
  const Int N = (pM - rc.c) / ab;
  const Int i_d = (N + 1) * fam.b + (rc.r - 1);

  LocusReport rep;
  rep.p = fam.p;
  rep.a = fam.a;
  rep.b = fam.b;
  rep.d = d;
  rep.j = rc.j;
  rep.r = rc.r;
  rep.i_d = i_d;

  CohomologyVector<MultiLaurent> vec;
  if (i_d <= symbolic_cap) {
    GenericReduction red = generic_reduce(fam, static_cast<int>(i_d.get_si()), rc.j, symbolic_cap, opt);
    vec = std::move(red.vector);
    rep.stats = red.stats;
  } else if (N <= chain_cap) {
    CurveRing<MultiLaurent> ring = fam.superelliptic_ring();
    opt.max_steps = std::max(opt.max_steps, 4 * (i_d.get_si() + 1));
    auto res = reduce_to_basis(DifferentialForm<MultiLaurent>::monomial(
                                   static_cast<int>(i_d.get_si()), rc.j, FormKind::dx,
                                   ring.cb0.one_like()),
                               ring, opt);
    vec = std::move(res.vector);
    rep.stats = res.stats;
    rep.long_chain = true;
  } else {
    throw cap_exceeded("locus: chain too long for the configured caps");
  }

  rep.g_exact = vec.at(rc.r - 1, rc.j);
  ensure(!rep.g_exact.is_zero(), "locus: ladder coefficient vanished");
  Valuation mv = rep.g_exact.min_valp(Int(static_cast<long>(fam.p)));
  rep.l_d = std::max(0L, -mv.value);
  ensure(rep.l_d >= d, "locus: l_d >= d failed");
  rep.locus_mod_p =
      scale_by_prime_power(rep.g_exact, fam.p, rep.l_d).mod_p_image(Int(static_cast<long>(fam.p)));
  ensure(!rep.locus_mod_p.empty(), "locus: mod-p image vanished");
  return rep;
}

}  // namespace cabred
