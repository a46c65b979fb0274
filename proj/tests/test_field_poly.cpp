#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace mumcl;
namespace ts = mumcl::testsupport;

TEST_CASE("PrimeField construction validates input") {
  CHECK_THROWS_AS(PrimeField(1), input_error);
  CHECK_THROWS_AS(PrimeField(2), input_error);
  CHECK_THROWS_AS(PrimeField(4), input_error);
  CHECK_THROWS_AS(PrimeField(9), input_error);
  CHECK_THROWS_AS(PrimeField(-5), input_error);
  CHECK_THROWS_AS(PrimeField(i64(1) << 31), input_error);
  CHECK_NOTHROW(PrimeField(3));
  CHECK_NOTHROW(PrimeField(2147483647));  // largest prime below 2^31
}

TEST_CASE("smallest primitive roots") {
  // reference values from standard tables
  const std::pair<i64, i64> cases[] = {{3, 2},  {5, 2},  {7, 3},  {11, 2},
                                       {13, 2}, {17, 3}, {23, 5}, {41, 6},
                                       {43, 3}, {101, 2}};
  for (auto [p, g] : cases) {
    PrimeField F(p);
    CAPTURE(p);
    CHECK(F.generator() == g);
    CHECK(F.order(g) == p - 1);
  }
}

TEST_CASE("field arithmetic basics") {
  PrimeField F(101);
  CHECK(F.normalize(-1) == 100);
  CHECK(F.normalize(202) == 0);
  CHECK(F.add(100, 5) == 4);
  CHECK(F.sub(3, 7) == 97);
  CHECK(F.neg(0) == 0);
  CHECK(F.mul(51, 2) == 1);
  for (i64 a = 1; a < 101; ++a) {
    CHECK(F.mul(a, F.inv(a)) == 1);
    CHECK(F.pow(a, 100) == 1);
  }
  CHECK_THROWS_AS(F.inv(0), input_error);
}

TEST_CASE("discrete logarithm") {
  SECTION("small field table") {
    PrimeField F5(5);
    CHECK(F5.discrete_log(4) == 2);  // 2^2 = 4
    PrimeField F7(7);
    CHECK(F7.discrete_log(6) == 3);  // 3^3 = 27 = 6
    for (i64 x = 1; x < 7; ++x) CHECK(F7.pow(3, F7.discrete_log(x)) == x);
    CHECK_THROWS_AS(F7.discrete_log(0), input_error);
  }
  SECTION("baby-step giant-step path") {
    PrimeField F(2147483647);
    i64 g = F.generator();
    for (i64 k : {i64(0), i64(1), i64(1234567), i64(2147483645)}) {
      CHECK(F.discrete_log(F.pow(g, k)) == k % (F.p() - 1));
    }
  }
}

TEST_CASE("multiplicative order") {
  PrimeField F(7);
  CHECK(F.order(1) == 1);
  CHECK(F.order(6) == 2);
  CHECK(F.order(2) == 3);
  CHECK(F.order(3) == 6);
}

TEST_CASE("polynomial arithmetic properties") {
  PrimeField F(13);
  std::mt19937_64 rng(1001);
  for (int iter = 0; iter < 200; ++iter) {
    Poly a = ts::random_poly(F, rng, 6);
    Poly b = ts::random_poly(F, rng, 5, true);
    auto [q, r] = poly_divmod(F, a, b);
    CHECK(poly_add(F, poly_mul(F, q, b), r) == a);
    CHECK(r.degree() < b.degree());

    Poly c = ts::random_poly(F, rng, 4);
    // derivative is a derivation
    Poly lhs = poly_derivative(F, poly_mul(F, a, c));
    Poly rhs = poly_add(F, poly_mul(F, poly_derivative(F, a), c),
                        poly_mul(F, a, poly_derivative(F, c)));
    CHECK(lhs == rhs);

    // evaluation is a ring map
    i64 x = ts::random_element(F, rng);
    CHECK(poly_eval(F, poly_mul(F, a, c), x) ==
          F.mul(poly_eval(F, a, x), poly_eval(F, c, x)));
  }
}

TEST_CASE("polynomial gcd") {
  PrimeField F(7);
  std::mt19937_64 rng(1002);
  for (int iter = 0; iter < 100; ++iter) {
    Poly a = ts::random_poly(F, rng, 5, true);
    Poly b = ts::random_poly(F, rng, 5, true);
    Poly g = poly_gcd(F, a, b);
    CHECK(g.leading() == 1);
    CHECK(poly_mod(F, a, g).is_zero());
    CHECK(poly_mod(F, b, g).is_zero());
  }
  CHECK(poly_gcd(F, Poly(), poly_make(F, {3, 1})) == poly_make(F, {3, 1}));
}

TEST_CASE("composition helpers") {
  PrimeField F(7);
  Poly f = poly_make(F, {1, 2, 3});  // 3t^2 + 2t + 1
  CHECK(poly_compose_scale(F, f, 2) == poly_make(F, {1, 4, 12}));
  CHECK(poly_compose_power(f, 3) == poly_make(F, {1, 0, 0, 2, 0, 0, 3}));
  i64 x = 4;
  CHECK(poly_eval(F, poly_compose_scale(F, f, 2), x) ==
        poly_eval(F, f, F.mul(2, x)));
  CHECK(poly_eval(F, poly_compose_power(f, 3), x) ==
        poly_eval(F, f, F.pow(x, 3)));
}

TEST_CASE("factorization of pinned inputs") {
  SECTION("t^2 - 1 over F_5 splits") {
    PrimeField F(5);
    Factorization fac = poly_factor(F, poly_make(F, {-1, 0, 1}));
    REQUIRE(fac.factors.size() == 2);
    CHECK(fac.unit == 1);
    CHECK(fac.factors[0].factor == poly_make(F, {1, 1}));  // t + 1
    CHECK(fac.factors[0].multiplicity == 1);
    CHECK(fac.factors[1].factor == poly_make(F, {4, 1}));  // t - 1
    CHECK(fac.factors[1].multiplicity == 1);
  }
  SECTION("t^2 + 2 over F_5 is irreducible") {
    PrimeField F(5);
    Poly f = poly_make(F, {2, 0, 1});
    Factorization fac = poly_factor(F, f);
    REQUIRE(fac.factors.size() == 1);
    CHECK(fac.factors[0].factor == f);
    CHECK(fac.factors[0].multiplicity == 1);
    CHECK(poly_is_irreducible(F, f));
  }
  SECTION("3t^3 over F_7 keeps its unit") {
    PrimeField F(7);
    Factorization fac = poly_factor(F, poly_make(F, {0, 0, 0, 3}));
    CHECK(fac.unit == 3);
    REQUIRE(fac.factors.size() == 1);
    CHECK(fac.factors[0].factor == poly_t());
    CHECK(fac.factors[0].multiplicity == 3);
  }
  SECTION("p-th powers exercise the zero-derivative path") {
    PrimeField F(5);
    Factorization fac = poly_factor(F, poly_make(F, {0, 0, 0, 0, 0, 1}));
    REQUIRE(fac.factors.size() == 1);
    CHECK(fac.factors[0].factor == poly_t());
    CHECK(fac.factors[0].multiplicity == 5);

    // t^10 + t^5 = (t(t+1))^5
    Factorization fac2 = poly_factor(
        F, poly_make(F, {0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1}));
    REQUIRE(fac2.factors.size() == 2);
    CHECK(fac2.factors[0].factor == poly_t());
    CHECK(fac2.factors[0].multiplicity == 5);
    CHECK(fac2.factors[1].factor == poly_make(F, {1, 1}));
    CHECK(fac2.factors[1].multiplicity == 5);
  }
}

TEST_CASE("factorization agrees with trial division") {
  SECTION("exhaustive low degrees over F_5") {
    PrimeField F(5);
    for (int d = 1; d <= 4; ++d) {
      for (const Poly& f : ts::all_monic_polys(F, d)) {
        Factorization fast = poly_factor(F, f);
        Factorization slow = ts::oracle_factor(F, f);
        CAPTURE(f.c);
        CHECK(ts::same_factorization(fast, slow));
      }
    }
  }
  SECTION("random degree six over F_7") {
    PrimeField F(7);
    std::mt19937_64 rng(1003);
    for (int iter = 0; iter < 100; ++iter) {
      Poly f = ts::random_poly(F, rng, 6, true);
      if (f.degree() < 1) continue;
      Factorization fast = poly_factor(F, f);
      Factorization slow = ts::oracle_factor(F, f);
      CAPTURE(f.c);
      CHECK(ts::same_factorization(fast, slow));
    }
  }
}

TEST_CASE("factorization reconstructs its input") {
  std::mt19937_64 rng(1004);
  for (i64 p : {i64(5), i64(7), i64(13)}) {
    PrimeField F(p);
    for (int iter = 0; iter < 100; ++iter) {
      Poly f = ts::random_poly(F, rng, 8, true);
      Factorization fac = poly_factor(F, f);
      Poly prod = poly_const(F, fac.unit);
      for (auto& pf : fac.factors) {
        CHECK(pf.factor.leading() == 1);
        for (int i = 0; i < pf.multiplicity; ++i)
          prod = poly_mul(F, prod, pf.factor);
      }
      CHECK(prod == f);
      for (size_t i = 1; i < fac.factors.size(); ++i)
        CHECK(fac.factors[i - 1].factor < fac.factors[i].factor);
    }
  }
}

TEST_CASE("factorization is deterministic across calls") {
  PrimeField F(31);
  std::mt19937_64 rng(1005);
  for (int iter = 0; iter < 20; ++iter) {
    Poly f = ts::random_poly(F, rng, 8, true);
    Factorization a = poly_factor(F, f);
    Factorization b = poly_factor(F, f);
    CHECK(ts::same_factorization(a, b));
  }
}

TEST_CASE("rational function canonical form") {
  PrimeField F(5);
  SECTION("scalars fold into the leading coefficients") {
    // 2t * 3t = 6t^2 = t^2
    RatFunc f = ratfunc_make(F, poly_make(F, {0, 2}), poly_one());
    RatFunc g = ratfunc_make(F, poly_make(F, {0, 3}), poly_one());
    RatFunc prod = ratfunc_mul(F, f, g);
    CHECK(prod.scalar == 1);
    CHECK(prod.num == poly_make(F, {0, 0, 1}));
    CHECK(prod.den == poly_one());
  }
  SECTION("common factors cancel") {
    // (t^2 - 1)/(t - 1) = t + 1
    RatFunc f =
        ratfunc_make(F, poly_make(F, {-1, 0, 1}), poly_make(F, {-1, 1}));
    CHECK(f.num == poly_make(F, {1, 1}));
    CHECK(f.den == poly_one());
    CHECK(f.scalar == 1);
  }
  SECTION("inverse and product") {
    std::mt19937_64 rng(1006);
    for (int iter = 0; iter < 100; ++iter) {
      RatFunc f = ts::random_ratfunc(F, rng, 3);
      CHECK(ratfunc_mul(F, f, ratfunc_inv(F, f)).is_one());
      RatFunc g = ts::random_ratfunc(F, rng, 3);
      CHECK(ratfunc_mul(F, f, g) == ratfunc_mul(F, g, f));
      CHECK(ratfunc_div(F, ratfunc_mul(F, f, g), g) == f);
    }
  }
  SECTION("rejects zero data") {
    CHECK_THROWS_AS(ratfunc_make(F, Poly(), poly_one()), input_error);
    CHECK_THROWS_AS(ratfunc_make(F, poly_one(), Poly()), input_error);
    CHECK_THROWS_AS(ratfunc_make(F, poly_one(), poly_one(), 5), input_error);
  }
}

TEST_CASE("rational function evaluation") {
  PrimeField F(7);
  RatFunc f = ratfunc_make(F, poly_make(F, {1, 1}), poly_make(F, {2, 1}), 3);
  CHECK(ratfunc_eval(F, f, 0) == F.mul(3, F.div(1, 2)));
  CHECK(ratfunc_eval_infinity(F, f) == 3);
  CHECK_THROWS_AS(ratfunc_eval(F, f, 5), input_error);   // den(5) = 0
  CHECK_THROWS_AS(ratfunc_eval(F, f, 6), input_error);   // num(6) = 0
  RatFunc g = ratfunc_make(F, poly_make(F, {1, 1}), poly_one());
  CHECK_THROWS_AS(ratfunc_eval_infinity(F, g), input_error);
}

TEST_CASE("rational function powers and composition") {
  PrimeField F(7);
  std::mt19937_64 rng(1007);
  for (int iter = 0; iter < 50; ++iter) {
    RatFunc f = ts::random_ratfunc(F, rng, 2);
    CHECK(ratfunc_pow(F, f, 3) ==
          ratfunc_mul(F, f, ratfunc_mul(F, f, f)));
    CHECK(ratfunc_pow(F, f, -2) ==
          ratfunc_inv(F, ratfunc_mul(F, f, f)));
    CHECK(ratfunc_pow(F, f, 0).is_one());

    i64 x = 1 + ts::random_element(F, rng) % 6;
    RatFunc scaled = ratfunc_compose_scale(F, f, x);
    RatFunc powered = ratfunc_compose_power(F, f, 2);
    i64 at = ts::random_element(F, rng);
    bool ok_num = poly_eval(F, f.num, F.mul(x, at)) != 0 &&
                  poly_eval(F, f.den, F.mul(x, at)) != 0;
    if (ok_num)
      CHECK(ratfunc_eval(F, scaled, at) == ratfunc_eval(F, f, F.mul(x, at)));
    i64 sq = F.mul(at, at);
    if (poly_eval(F, f.num, sq) != 0 && poly_eval(F, f.den, sq) != 0)
      CHECK(ratfunc_eval(F, powered, at) == ratfunc_eval(F, f, sq));
  }
}
