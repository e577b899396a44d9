#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "zetarel/curve.hpp"
#include "zetarel/error.hpp"

using namespace zetarel;

TEST_CASE("point counts for y^2 = x^3 + x over F_5") {
  // h = x(x^2+1): f = x^2 + 1, t = 0
  auto spec = make_curve({Int(1), Int(0), Int(1)}, 5, 1, 0);
  CHECK(curve_count(spec, 1) == 4);
  auto L = lpolynomial(spec);
  CHECK(L.c == std::vector<Int>({Int(1), Int(-2), Int(5)}));
}

TEST_CASE("count where h vanishes identically on F_3") {
  // h = x^3 - x = (x^2-1) x: f = x^2 - 1, t = 0
  auto spec = make_curve({Int(-1), Int(0), Int(1)}, 3, 1, 0);
  CHECK(curve_count(spec, 1) == 4);
}

TEST_CASE("singular inputs rejected") {
  // f(t) = 0: x^2+1 has root 2 mod 5
  CHECK_THROWS_AS(make_curve({Int(1), Int(0), Int(1)}, 5, 1, 2), Error);
  // disc(f) = 0 mod p: x^2+6x-1 has discriminant 40, divisible by 5
  try {
    make_curve({Int(-1), Int(6), Int(1)}, 5, 1, 0);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Err::SingularCurve);
  }
  // same f is fine over p = 7
  auto spec = make_curve({Int(-1), Int(6), Int(1)}, 7, 1, 0);
  CHECK(spec.g == 1);
}

TEST_CASE("oracle equivalence and Weil bound on sampled curves") {
  std::mt19937_64 rng(31);
  int done = 0;
  while (done < 12) {
    int64_t p = (rng() % 2) ? 5 : 7;
    int g = 1 + static_cast<int>(rng() % 2);
    ZPoly f(2 * g + 1);
    for (int i = 0; i < 2 * g; ++i) f[i] = Int(static_cast<long>(rng() % 9)) - 4;
    f[2 * g] = 1;
    CurveSpec spec;
    try {
      auto params = curve_parameters(f, p, 1);
      if (params.empty()) continue;
      spec = make_curve(f, p, 1, params[rng() % params.size()]);
    } catch (const Error&) {
      continue;
    }
    auto L = lpolynomial(spec);
    CHECK(rh_check(L));
    auto s = power_sums(L, 2 * spec.g);
    for (int n = 1; n <= 2 * spec.g; ++n) {
      Int qn = pow_int(spec.q(), n);
      Int predicted = qn + 1 - s[n - 1];
      CHECK(predicted == curve_count(spec, n));
      // Weil bound
      Int margin = 2 * spec.g * (isqrt(qn) + 1);
      CHECK(curve_count(spec, n) >= qn + 1 - margin);
      CHECK(curve_count(spec, n) <= qn + 1 + margin);
    }
    ++done;
  }
}

TEST_CASE("counts independent of the modulus choice") {
  // F_25 with the default modulus x^2+2 vs the next irreducible x^2+3
  auto spec = make_curve({Int(1), Int(0), Int(1)}, 5, 1, 1);  // t = 1, f(1) = 2
  Int n2_default = curve_count(spec, 2);
  Fq alt = Fq::create_with_modulus(5, {3, 0});
  Int n2_alt = curve_count(spec, 2, &alt);
  CHECK(n2_default == n2_alt);

  // extension base field: t in F_25, counts over F_625
  auto spec2 = make_curve({Int(1), Int(0), Int(1)}, 5, 2, 5);  // t = x in F_25
  Int c1 = curve_count(spec2, 1);
  auto L = lpolynomial(spec2);
  CHECK(pow_int(Int(25), 1) + 1 - power_sums(L, 1)[0] == c1);
}

TEST_CASE("newton rejects inconsistent sums") {
  CHECK_THROWS_AS(newton_reconstruct({Int(1), Int(2)}, 5, 2), Error);
}

TEST_CASE("parameter enumeration excludes zeros of f") {
  auto params = curve_parameters({Int(1), Int(0), Int(1)}, 5, 1);
  // x^2+1 = (x-2)(x-3) mod 5: zeros at 2 and 3
  CHECK(params == std::vector<uint64_t>({0, 1, 4}));
}
