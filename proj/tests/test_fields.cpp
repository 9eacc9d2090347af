#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cabred/fp.hpp"
#include "cabred/unipoly.hpp"
#include "support.hpp"

using namespace cabred;

TEST_CASE("prime field arithmetic") {
  Fp a(3, 7), b(5, 7);
  REQUIRE((a + b).value() == 1);
  REQUIRE((a - b).value() == 5);
  REQUIRE((a * b).value() == 1);
  REQUIRE((a.inverse() * a) == Fp::one(7));
  REQUIRE(Fp(-1, 7).value() == 6);
  Int big("-123456789012345678901");
  Fp reduced = Fp::from_int(big, 7);
  REQUIRE(reduced.value() >= 0);
  REQUIRE(reduced.value() < 7);
  REQUIRE((big - reduced.value()) % 7 == 0);
  REQUIRE(a.pow(Int(6)) == Fp::one(7));
  REQUIRE_THROWS_AS(Fp::zero(7).inverse(), invalid_input);
}

TEST_CASE("extension field F_25") {
  // t^2 + 2 is irreducible mod 5 since -2 = 3 is not a square
  ExtFieldPtr F = make_ext_field(5, UniPoly<Fp>(std::vector<Fp>{Fp(2, 5), Fp(0, 5), Fp(1, 5)}));
  REQUIRE(F->degree() == 2);
  REQUIRE(F->order() == 25);
  FpE t = FpE::generator(F);
  REQUIRE((t * t + FpE::from_base(Fp(2, 5), F)).is_zero());
  FpE x = t + FpE::from_base(Fp(3, 5), F);
  REQUIRE((x * x.inverse()) == x.one_like());
  REQUIRE(x.pow(Int(24)) == x.one_like());
  std::size_t count = testsupport::all_field_elements(F).size();
  REQUIRE(count == 25);
}

TEST_CASE("univariate division and gcd over F_p") {
  std::mt19937_64 rng(4401);
  for (int trial = 0; trial < 60; ++trial) {
    UniPoly<Fp> a = testsupport::random_fp_poly(7, 9, rng);
    UniPoly<Fp> b = testsupport::random_fp_poly(7, 5, rng);
    if (b.is_zero()) continue;
    auto [q, r] = UniPoly<Fp>::divrem(a, b);
    REQUIRE(q * b + r == a);
    REQUIRE(r.degree() < b.degree());

    if (!a.is_zero()) {
      UniPoly<Fp> g = UniPoly<Fp>::gcd(a, b);
      REQUIRE((a % g).is_zero());
      REQUIRE((b % g).is_zero());
    }
  }
}

TEST_CASE("univariate arithmetic over Q") {
  std::mt19937_64 rng(4402);
  UniPoly<Rat> f(std::vector<Rat>{Rat(1), Rat(0), Rat(-2, 3)});
  UniPoly<Rat> g(std::vector<Rat>{Rat(1, 2), Rat(1)});
  REQUIRE((f * g).degree() == 3);
  REQUIRE(f.eval(Rat(3)) == Rat(1) + Rat(-2, 3) * Rat(9));
  REQUIRE(f.derivative() == UniPoly<Rat>(std::vector<Rat>{Rat(0), Rat(-4, 3)}));
  auto [q, r] = UniPoly<Rat>::divrem(f, g);
  REQUIRE(q * g + r == f);
  (void)rng;
}

TEST_CASE("modular exponentiation of polynomials") {
  // x^(p) mod (x^2+2) over F_5 equals the Frobenius image of x
  UniPoly<Fp> m(std::vector<Fp>{Fp(2, 5), Fp(0, 5), Fp(1, 5)});
  UniPoly<Fp> x = UniPoly<Fp>::monomial(Fp::one(5), 1);
  UniPoly<Fp> frob = UniPoly<Fp>::pow_mod(x, Int(5), m);
  // t^5 = t * (t^2)^2 = t * 4 = 4t  (since t^2 = -2 = 3)
  REQUIRE(frob == UniPoly<Fp>(std::vector<Fp>{Fp(0, 5), Fp(4, 5)}));
}
