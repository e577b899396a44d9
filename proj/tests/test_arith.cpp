#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "zetarel/ball.hpp"
#include "zetarel/error.hpp"
#include "zetarel/fq.hpp"
#include "zetarel/intmat.hpp"
#include "zetarel/qpoly.hpp"
#include "zetarel/zpoly.hpp"

using namespace zetarel;

TEST_CASE("field creation") {
  Fq F5 = Fq::create(5, 1);
  CHECK(F5.q() == 5);
  CHECK_THROWS_WITH_AS(Fq::create(4, 1), doctest::Contains("NotPrime"), Error);
  CHECK_THROWS_AS(Fq::create(2, 3), Error);

  // F_25 gets modulus x^2 + 2: -2 = 3 is a non-square mod 5 (squares are 1,4)
  Fq F25 = Fq::create(5, 2);
  CHECK(F25.modulus() == std::vector<int64_t>({2, 0}));
  CHECK(F25.q() == 25);
}

TEST_CASE("field axioms on random triples") {
  for (auto [p, n] : {std::pair<int64_t, int>{5, 2}, {7, 1}, {3, 3}, {11, 2}}) {
    Fq F = Fq::create(p, n);
    std::mt19937_64 rng(42);
    for (int it = 0; it < 1200; ++it) {
      auto a = F.from_index(rng() % F.q_u64());
      auto b = F.from_index(rng() % F.q_u64());
      auto c = F.from_index(rng() % F.q_u64());
      CHECK(F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c));
      CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
      if (!F.is_zero(a)) CHECK(F.mul(a, F.inv(a)) == F.one());
    }
    // multiplicative group is cyclic of order q-1
    auto gen = F.generator();
    CHECK(F.element_order(gen) == F.q() - 1);
  }
}

TEST_CASE("quadratic character") {
  Fq F5 = Fq::create(5, 1);
  CHECK(F5.quad_char(F5.from_int(0)) == 0);
  CHECK(F5.quad_char(F5.from_int(4)) == 1);
  CHECK(F5.quad_char(F5.from_int(2)) == -1);
  // counts balance: sum over nonzero is 0
  int s = 0;
  for (int i = 0; i < 5; ++i) s += F5.quad_char(F5.from_int(i));
  CHECK(s == 0);
}

TEST_CASE("poly factorization examples") {
  Fq F5 = Fq::create(5, 1);
  // T^2 + 1 = (T+2)(T+3) mod 5
  auto f = fqp::from_coeffs(F5, {Int(1), Int(0), Int(1)});
  auto fac = fqp::factor(F5, f, 7);
  REQUIRE(fac.factors.size() == 2);
  CHECK(fqp::deg(fac.factors[0].first) == 1);
  CHECK(fqp::deg(fac.factors[1].first) == 1);
  auto r = fqp::roots(F5, f);
  REQUIRE(r.size() == 2);
  CHECK(F5.index(r[0]) == 2);  // roots 2 and 3
  CHECK(F5.index(r[1]) == 3);

  Fq F3 = Fq::create(3, 1);
  auto g = fqp::from_coeffs(F3, {Int(1), Int(0), Int(1)});
  auto gf = fqp::factor(F3, g);
  REQUIRE(gf.factors.size() == 1);
  CHECK(fqp::deg(gf.factors[0].first) == 2);

  auto h = fqp::from_coeffs(F3, {Int(0), Int(0), Int(1)});  // T^2
  auto hf = fqp::factor(F3, h);
  REQUIRE(hf.factors.size() == 1);
  CHECK(fqp::deg(hf.factors[0].first) == 1);
  CHECK(hf.factors[0].second == 2);

  CHECK_THROWS_AS(fqp::factor(F3, fqp::zero()), Error);
}

TEST_CASE("random factorization round-trips") {
  std::mt19937_64 rng(2024);
  for (int64_t ell : {3, 5, 13, 97}) {
    Fq F = Fq::create(ell, 1);
    for (int it = 0; it < 30; ++it) {
      int d = 1 + static_cast<int>(rng() % 8);
      FqPoly f(d + 1);
      for (int i = 0; i <= d; ++i) f[i] = F.from_index(rng() % F.q_u64());
      f[d] = F.one();
      f = fqp::normalize(F, std::move(f));
      if (fqp::deg(f) < 1) continue;
      auto fac = fqp::factor(F, f, it);
      FqPoly prod = {fac.unit};
      for (auto& [g, m] : fac.factors)
        for (int i = 0; i < m; ++i) prod = fqp::mul(F, prod, g);
      CHECK(fqp::eq(prod, f));
      for (auto& [g, m] : fac.factors) CHECK(fqp::is_irreducible(F, g));
    }
  }
}

TEST_CASE("integer kernel") {
  // single row (1,1) -> basis {(1,-1)}
  IntMat m = {{Int(1), Int(1)}};
  auto k = integer_kernel(m);
  REQUIRE(k.size() == 1);
  CHECK(((k[0] == IntVec{Int(1), Int(-1)}) || (k[0] == IntVec{Int(-1), Int(1)})));

  // identity -> empty
  IntMat id = {{Int(1), Int(0)}, {Int(0), Int(1)}};
  CHECK(integer_kernel(id).empty());

  // kernel vectors annihilate and ranks add up
  std::mt19937_64 rng(5);
  for (int it = 0; it < 40; ++it) {
    size_t r = 1 + rng() % 4, c = 1 + rng() % 5;
    IntMat a(r, IntVec(c));
    for (auto& row : a)
      for (auto& x : row) x = Int(static_cast<long>(rng() % 11)) - 5;
    auto ker = integer_kernel(a);
    for (const auto& v : ker) {
      auto img = mat_apply(a, v);
      for (const auto& x : img) CHECK(x == 0);
    }
    CHECK(static_cast<long>(ker.size()) + rank(a) == static_cast<long>(c));
  }
}

TEST_CASE("lll preserves lattice and finds short vectors") {
  IntMat b = {{Int(1), Int(1)}, {Int(2), Int(1)}};
  auto r = lll_reduce(b);
  CHECK(hnf_rows(r) == hnf_rows(b));
  Int best = r[0][0] * r[0][0] + r[0][1] * r[0][1];
  Int alt = r[1][0] * r[1][0] + r[1][1] * r[1][1];
  CHECK(std::min(best, alt) == 1);  // exhaustive minimum over small combos is 1

  IntMat id = {{Int(1), Int(0)}, {Int(0), Int(1)}};
  auto rid = lll_reduce(id);
  CHECK(hnf_rows(rid) == hnf_rows(id));

  IntMat big = {{Int(201), Int(37)}, {Int(1648), Int(297)}};
  auto rb = lll_reduce(big);
  CHECK(hnf_rows(rb) == hnf_rows(big));

  IntMat dep = {{Int(1), Int(2)}, {Int(2), Int(4)}};
  CHECK_THROWS_AS(lll_reduce(dep), Error);

  std::mt19937_64 rng(99);
  for (int it = 0; it < 25; ++it) {
    IntMat m(3, IntVec(3));
    for (auto& row : m)
      for (auto& x : row) x = Int(static_cast<long>(rng() % 41)) - 20;
    if (rank(m) < 3) continue;
    auto red = lll_reduce(m);
    CHECK(hnf_rows(red) == hnf_rows(m));
  }
}

TEST_CASE("q-symplectic checks") {
  CHECK(is_q_symplectic({Int(1), Int(-2), Int(5)}, 5));
  CHECK_FALSE(is_q_symplectic({Int(1), Int(0), Int(3)}, 5));
  CHECK(is_q_symplectic({Int(1), Int(-1), Int(8), Int(-5), Int(25)}, 5));
  CHECK_THROWS_AS(is_q_symplectic({Int(1), Int(2)}, Int(5)), Error);  // odd degree
}

TEST_CASE("real weil transform") {
  auto p1 = make_qsymplectic({Int(1), Int(-2), Int(5)}, 5);
  CHECK(real_weil_transform(p1) == ZPoly({Int(-2), Int(1)}));
  auto p2 = make_qsymplectic({Int(1), Int(-1), Int(8), Int(-5), Int(25)}, 5);
  CHECK(real_weil_transform(p2) == ZPoly({Int(-2), Int(-1), Int(1)}));
  CHECK_THROWS_AS(make_qsymplectic({Int(1), Int(0), Int(3)}, 5), Error);
}

TEST_CASE("rh check") {
  CHECK(rh_check(make_qsymplectic({Int(1), Int(-2), Int(5)}, 5)));
  CHECK_FALSE(rh_check(make_qsymplectic({Int(1), Int(-5), Int(5)}, 5)));
  // boundary: (1 - 5T)^2 over q=25 has the double inverse root 5 = sqrt(q)
  CHECK(rh_check(make_qsymplectic({Int(1), Int(-10), Int(25)}, 25)));
  // repeated non-real roots
  auto sq = qs_mul(make_qsymplectic({Int(1), Int(-2), Int(5)}, 5),
                   make_qsymplectic({Int(1), Int(-2), Int(5)}, 5));
  CHECK(rh_check(sq));
}

TEST_CASE("newton reconstruction") {
  CHECK(newton_reconstruct({Int(2)}, 5, 1) == std::vector<Int>({Int(1), Int(-2), Int(5)}));
  CHECK(newton_reconstruct({Int(1), Int(-15)}, 5, 2) ==
        std::vector<Int>({Int(1), Int(-1), Int(8), Int(-5), Int(25)}));
  // power sums of the reconstruction fold back
  auto p = make_qsymplectic(newton_reconstruct({Int(1), Int(-15)}, 5, 2), 5);
  auto s = power_sums(p, 4);
  CHECK(s[0] == 1);
  CHECK(s[1] == -15);
}

TEST_CASE("ball arithmetic sanity") {
  auto two = RealBall::exact_int(2, 128);
  auto r2 = RealBall::sqrt_int(2, 128);
  auto sq = mul(r2, r2);
  auto diff = sub(sq, two);
  CHECK(diff.contains_zero());
  CHECK(diff.rad_exp2() < -100);

  auto z = ComplexBall::root_of_unity(1, 6, 256);
  auto z6 = pow_ui(z, 6);
  auto one = ComplexBall::exact_int(1, 256);
  auto d = dist(z6, one);
  CHECK(mpfr_sgn(d.upper().get()) >= 0);
  CHECK(!surely_disjoint(z6, one));
  CHECK(d.rad_exp2() < -200);

  auto th = z.angle_frac();
  CHECK(th.to_double() == doctest::Approx(1.0 / 6).epsilon(1e-12));
}

TEST_CASE("embedding maps subfield consistently") {
  Fq F25 = Fq::create(5, 2);
  Fq F625 = Fq::create(5, 4);
  Embedding e(F25, F625);
  std::mt19937_64 rng(3);
  for (int it = 0; it < 50; ++it) {
    auto a = F25.from_index(rng() % 25);
    auto b = F25.from_index(rng() % 25);
    CHECK(e.map(F25.mul(a, b)) == F625.mul(e.map(a), e.map(b)));
    CHECK(e.map(F25.add(a, b)) == F625.add(e.map(a), e.map(b)));
  }
}

TEST_CASE("squarefree decomposition over Z") {
  // (x-1)^2 (x+2)
  ZPoly f = zp::mul(zp::mul({Int(-1), Int(1)}, {Int(-1), Int(1)}), {Int(2), Int(1)});
  auto dec = zp::squarefree_decomposition(f);
  REQUIRE(dec.size() == 2);
  bool saw1 = false, saw2 = false;
  for (auto& [part, m] : dec) {
    if (m == 1) { saw1 = true; CHECK(part == ZPoly({Int(2), Int(1)})); }
    if (m == 2) { saw2 = true; CHECK(part == ZPoly({Int(-1), Int(1)})); }
  }
  CHECK(saw1);
  CHECK(saw2);
}
