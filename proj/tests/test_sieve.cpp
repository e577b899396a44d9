#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "zetarel/error.hpp"
#include "zetarel/sievecalc.hpp"

using namespace zetarel;

TEST_CASE("constant C") {
  CHECK(constant_C(2, 1, 5) == 24576);  // 24 * 2 * 8^3
  CHECK(constant_C(1, 1, 1) == 384);    // 12 * 2 * 4^2
  CHECK_THROWS_AS(constant_C(0, 1, 1), Error);
}

TEST_CASE("gamma exponents") {
  CHECK(exponent_gamma(GammaMethod::Prop1, 1) == 10);
  CHECK(exponent_gamma(GammaMethod::Th2, 2, 1) == 116);
  CHECK(exponent_gamma(GammaMethod::Tori, 2, 1) == 50);
  CHECK(gamma_method_from("prop1") == GammaMethod::Prop1);
  CHECK_THROWS_AS(gamma_method_from("nope"), Error);
}

TEST_CASE("choose_L") {
  CHECK(choose_L(25, 1, 1) == doctest::Approx(5.0));
  // sub-threshold case: the bound goes trivial since L < 2
  // (independently: (390625 / 24576^2)^(1/116) = 0.93866)
  double L = choose_L(std::pow(5.0, 8), 24576, 58);
  CHECK(L == doctest::Approx(0.9386557803874904).epsilon(1e-12));
  CHECK(L < 2.0);
  CHECK(choose_L(100, 2, 3) < choose_L(1000, 2, 3));  // monotone in q
}

TEST_CASE("sieve bound") {
  double v = sieve_bound(std::pow(5.0, 8), 1, 10);
  CHECK(v == doctest::Approx(std::pow(5.0, 8.0 - 0.8) * std::log(std::pow(5.0, 8))));
  CHECK(v == doctest::Approx(1387868.266).epsilon(1e-6));
  // monotone increasing in gamma for q > e
  CHECK(sieve_bound(100, 1, 5) < sieve_bound(100, 1, 10));
  // gamma -> infinity limit approaches q^d log q
  CHECK(sieve_bound(100, 1, 1e9) == doctest::Approx(100 * std::log(100.0)).epsilon(1e-6));
}
