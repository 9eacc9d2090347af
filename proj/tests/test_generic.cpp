#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cabred/generic.hpp"
#include "support.hpp"

using namespace cabred;

namespace {

// Random integer coefficient tuple for the family, with a unit leading
// coefficient and a smooth special fiber.
std::map<std::pair<int, int>, Rat> random_point(const GenericFamily& fam, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> cd(-10, 10);
  for (;;) {
    std::map<std::pair<int, int>, Rat> point;
    std::map<std::pair<int, int>, Int> lifts;
    for (const auto& [i, j] : fam.support) {
      long v = cd(rng);
      if (i == fam.b && j == 0) {
        while (v % fam.p == 0) v = cd(rng);
      }
      if (v != 0) {
        point[{i, j}] = Rat(v);
        lifts[{i, j}] = Int(v);
      }
    }
    ValidationReport rep = validate(fam.p, fam.a, fam.b, lifts);
    if (!rep.ok()) continue;
    std::mt19937_64 smooth_rng(99);
    if (!is_smooth(*rep.params, smooth_rng).smooth) continue;
    return point;
  }
}

CurveRing<Rat> ring_at(const GenericFamily& fam, const std::map<std::pair<int, int>, Rat>& point) {
  std::map<std::pair<int, int>, Int> lifts;
  for (const auto& [k, v] : point) lifts[k] = v.num();
  return curve_ring(validate_or_throw(fam.p, fam.a, fam.b, lifts));
}

}  // namespace

TEST_CASE("family support and variables") {
  GenericFamily fam = GenericFamily::make(5, 2, 3);
  std::vector<std::pair<int, int>> want{{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 0}, {3, 0}};
  REQUIRE(fam.support == want);
  REQUIRE(fam.vars->names[static_cast<std::size_t>(fam.vars->invertible)] == "z3_0");
  REQUIRE_THROWS_AS(GenericFamily::make(5, 2, 5), invalid_input);
}

TEST_CASE("symbolic reduction of small monomials") {
  GenericFamily fam = GenericFamily::make(5, 2, 3);

  SECTION("basis monomial stays put") {
    GenericReduction red = generic_reduce(fam, 1, 1);
    for (const auto& [k, v] : red.vector.entries()) {
      if (k == std::make_pair(1, 1)) {
        REQUIRE(v == MultiLaurent::constant(fam.vars, Rat(1)));
      } else {
        REQUIRE(v.is_zero());
      }
    }
  }
  SECTION("j = 0 monomials are exact") {
    REQUIRE(generic_reduce(fam, 2, 0).vector.is_zero());
  }
  SECTION("x^3 y dx specializes to the concrete value") {
    GenericReduction red = generic_reduce(fam, 3, 1);
    std::map<std::pair<int, int>, Rat> superelliptic{{{0, 0}, Rat(1)}, {{3, 0}, Rat(1)}};
    CohomologyVector<Rat> vec = specialize(fam, red, superelliptic);
    REQUIRE(vec.at(0, 1) == Rat(-2, 11));
    REQUIRE(vec.at(1, 1) == Rat(0));
  }
  SECTION("symbolic cap") {
    REQUIRE_NOTHROW(generic_reduce(fam, 10, 1));
    REQUIRE_THROWS_AS(generic_reduce(fam, 11, 1), cap_exceeded);
  }
}

TEST_CASE("symbolic certificates verify") {
  GenericFamily fam = GenericFamily::make(5, 2, 3);
  CurveRing<MultiLaurent> ring = fam.ring();
  ReduceOptions opt;
  opt.want_certificate = true;
  for (int i : {3, 5}) {
    auto form = DifferentialForm<MultiLaurent>::monomial(i, 1, FormKind::dx, ring.cb0.one_like());
    auto res = reduce_to_basis(form, ring, opt);
    REQUIRE(res.certificate.has_value());
    REQUIRE(check_certificate(form, res.vector, *res.certificate, ring));
  }
}

TEST_CASE("specialization commutes with reduction") {
  std::mt19937_64 rng(2208);
  for (auto [p, a, b] : {std::tuple<std::int64_t, int, int>{5, 2, 3}, {7, 2, 5}}) {
    GenericFamily fam = GenericFamily::make(p, a, b);
    for (int j = 1; j <= a - 1; ++j) {
      for (int i = 0; i <= b + 3; ++i) {
        GenericReduction red = generic_reduce(fam, i, j);
        // denominator discipline: only the leading variable is inverted
        for (const auto& [k, coeff] : red.vector.entries()) {
          for (const auto& [exps, c] : coeff.terms()) {
            for (std::size_t v = 0; v < exps.size(); ++v)
              if (static_cast<int>(v) != fam.vars->invertible) REQUIRE(exps[v] >= 0);
          }
        }
        for (int trial = 0; trial < 8; ++trial) {
          auto point = random_point(fam, rng);
          CohomologyVector<Rat> via_symbolic = specialize(fam, red, point);
          auto concrete = reduce_to_basis(
              DifferentialForm<Rat>::monomial(i, j, FormKind::dx, Rat(1)), ring_at(fam, point));
          REQUIRE(via_symbolic == concrete.vector);
        }
      }
    }
  }
}

TEST_CASE("two lifts of the same fiber both match the symbolic reduction") {
  std::mt19937_64 rng(2209);
  GenericFamily fam = GenericFamily::make(5, 2, 3);
  GenericReduction red = generic_reduce(fam, 4, 1);
  auto point = random_point(fam, rng);
  auto shifted = point;
  for (auto& [k, v] : shifted) v += Rat(5);  // same curve mod p, different lift
  REQUIRE(specialize(fam, red, point) ==
          reduce_to_basis(DifferentialForm<Rat>::monomial(4, 1, FormKind::dx, Rat(1)),
                          ring_at(fam, point))
              .vector);
  REQUIRE(specialize(fam, red, shifted) ==
          reduce_to_basis(DifferentialForm<Rat>::monomial(4, 1, FormKind::dx, Rat(1)),
                          ring_at(fam, shifted))
              .vector);
}

TEST_CASE("specialization requires an invertible leading coefficient") {
  GenericFamily fam = GenericFamily::make(5, 2, 3);
  GenericReduction red = generic_reduce(fam, 3, 1);
  std::map<std::pair<int, int>, Rat> point{{{0, 0}, Rat(1)}, {{3, 0}, Rat(0)}};
  REQUIRE_THROWS_AS(specialize(fam, red, point), invalid_input);
}

TEST_CASE("locus datum for the base example") {
  GenericFamily fam = GenericFamily::make(5, 2, 3);
  ResidueChoice rc = solve_jr(5, 2, 3);
  LocusReport rep = locus(fam, rc, 1);
  REQUIRE(rep.i_d == 60);
  REQUIRE(rep.long_chain);
  REQUIRE(rep.l_d == 1);
  REQUIRE_FALSE(rep.g_exact.is_zero());
  REQUIRE_FALSE(rep.locus_mod_p.empty());

  // The surviving monomial is z0_0^20 z3_0^-20 with the ladder-product
  // coefficient; its valuation gives l_1 = 1.
  REQUIRE(rep.g_exact.term_count() == 1);
  const auto& [exps, coeff] = *rep.g_exact.terms().begin();
  REQUIRE(exps[static_cast<std::size_t>(fam.index_of(0, 0))] == 20);
  REQUIRE(exps[static_cast<std::size_t>(fam.index_of(3, 0))] == -20);
  Rat expected = ladder_product(2, 3, rc, Int(19), Int(1));
  REQUIRE(coeff == expected);

  // Consistency with the specialization to y^2 + x^3 + 1: p^l_1 C_1 is a
  // p-adic unit, and the mod-p locus evaluated at that point equals it.
  Rat unit = expected * Rat(5);
  REQUIRE(valp(unit, Int(5)) == Valuation::of(0));
  Int expect_mod;
  Int den_inv;
  mpz_invert(den_inv.get_mpz_t(), unit.den().get_mpz_t(), Int(5).get_mpz_t());
  expect_mod = ((unit.num() % 5) * den_inv % 5 + 5) % 5;
  // evaluate the single mod-p term at z0_0 = 1, z3_0 = 1
  REQUIRE(rep.locus_mod_p.size() == 1);
  REQUIRE(rep.locus_mod_p[0].second == expect_mod);
  REQUIRE(expect_mod != 0);
}

TEST_CASE("locus for d = 2 still bounds l_d") {
  GenericFamily fam = GenericFamily::make(5, 2, 3);
  ResidueChoice rc = solve_jr(5, 2, 3);
  LocusReport rep = locus(fam, rc, 2);
  REQUIRE(rep.i_d == 1560);
  REQUIRE(rep.l_d >= 2);
}

TEST_CASE("locus cap handling") {
  GenericFamily fam = GenericFamily::make(5, 2, 3);
  ResidueChoice rc = solve_jr(5, 2, 3);
  REQUIRE_THROWS_AS(locus(fam, rc, 1, 10, Int(5)), cap_exceeded);
}

TEST_CASE("full-family locus restricts to the long-chain section") {
  // For p = 7 the first chain is short enough (i_1 = 22) to reduce over the
  // whole six-variable family; setting the non-superelliptic variables to
  // zero must reproduce the long-chain result exactly.
  GenericFamily fam = GenericFamily::make(7, 2, 3);
  ResidueChoice rc = solve_jr(7, 2, 3);
  LocusReport full = locus(fam, rc, 1, 30);
  LocusReport sub = locus(fam, rc, 1);
  REQUIRE_FALSE(full.long_chain);
  REQUIRE(sub.long_chain);
  REQUIRE(full.l_d >= 1);
  REQUIRE(sub.l_d >= 1);

  const int i00 = fam.index_of(0, 0);
  const int i30 = fam.index_of(3, 0);
  MultiLaurent restricted = MultiLaurent::zero(fam.vars);
  for (const auto& [e, c] : full.g_exact.terms()) {
    bool pure = true;
    for (std::size_t k = 0; k < e.size(); ++k)
      if (e[k] != 0 && static_cast<int>(k) != i00 && static_cast<int>(k) != i30) pure = false;
    if (pure) restricted.add_term(e, c);
  }
  REQUIRE(restricted == sub.g_exact);
  REQUIRE(full.l_d >= sub.l_d);
}
