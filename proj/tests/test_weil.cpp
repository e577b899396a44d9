#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "zetarel/error.hpp"
#include "zetarel/roots.hpp"

using namespace zetarel;

namespace {

QSymplecticPoly from_traces(const std::vector<long>& a, long q) {
  QSymplecticPoly acc = make_qsymplectic({Int(1), Int(-a[0]), Int(q)}, q);
  for (size_t i = 1; i < a.size(); ++i)
    acc = qs_mul(acc, make_qsymplectic({Int(1), Int(-a[i]), Int(q)}, q));
  return acc;
}

}  // namespace

TEST_CASE("certified roots of an elliptic L-polynomial") {
  auto p = make_qsymplectic({Int(1), Int(-2), Int(5)}, 5);
  auto rs = certified_roots(p, 128);
  REQUIRE(rs.pair_count() == 1);
  REQUIRE(rs.root_count() == 2);
  const auto& rep = rs.roots[rs.rep_flat[0]];
  CHECK(rep.re_double() == doctest::Approx(1.0).epsilon(1e-20));
  CHECK(rep.im_double() == doctest::Approx(2.0).epsilon(1e-20));
  CHECK(rs.theta[0].to_double() == doctest::Approx(0.1762081911747833).epsilon(1e-12));
  CHECK(rs.theta[0].rad_double() < 1e-30);

  // pairing: product of partners is q
  auto prod = mul(rs.roots[0], rs.roots[1]);
  auto d = dist(prod, ComplexBall::exact_int(5, 128));
  CHECK(mpfr_sgn(d.lower().get()) <= 0);
  CHECK(d.rad_exp2() < -100);
}

TEST_CASE("repeated roots rejected strictly, deflated builder accepts") {
  auto p = make_qsymplectic({Int(1), Int(-2), Int(5)}, 5);
  auto sq = qs_mul(p, p);
  CHECK_THROWS_AS(certified_roots(sq, 128), Error);
  auto rs = root_system({sq}, 128);
  CHECK(rs.pair_count() == 2);
  CHECK(rs.theta[0].to_double() == doctest::Approx(rs.theta[1].to_double()));
}

TEST_CASE("root sums and products match coefficients") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 20; ++it) {
    long q = (it % 2) ? 7 : 13;
    int g = 1 + static_cast<int>(rng() % 3);
    std::vector<long> tr(g);
    long bound = static_cast<long>(2 * std::sqrt(static_cast<double>(q)));
    for (auto& a : tr) a = static_cast<long>(rng() % (2 * bound + 1)) - bound;
    auto p = from_traces(tr, q);
    auto rs = root_system({p}, 192);
    REQUIRE(static_cast<int>(rs.pair_count()) == g);

    auto sum = ComplexBall::exact_int(0, 256);
    auto prod = ComplexBall::exact_int(1, 256);
    for (const auto& r : rs.roots) {
      sum = add(sum, r);
      prod = mul(prod, r);
    }
    // self-paired real roots appear once in the flat list; double them
    for (size_t k = 0; k < rs.root_count(); ++k)
      if (rs.partner[k] == static_cast<int>(k)) {
        sum = add(sum, rs.roots[k]);
        prod = mul(prod, rs.roots[k]);
      }
    auto dsum = dist(sum, ComplexBall::exact_int(-p.c[1], 256));
    CHECK(mpfr_sgn(dsum.lower().get()) <= 0);
    auto dprod = dist(prod, ComplexBall::exact_int(pow_int(Int(q), g), 256));
    CHECK(mpfr_sgn(dprod.lower().get()) <= 0);
  }
}

TEST_CASE("real roots at +-sqrt(q) self-pair") {
  // (1 - 5T)^2 over q = 25: double inverse root at +5 = sqrt(q)
  auto p = make_qsymplectic({Int(1), Int(-10), Int(25)}, 25);
  auto rs = root_system({p}, 128);
  REQUIRE(rs.pair_count() == 2);
  for (size_t k = 0; k < rs.root_count(); ++k) CHECK(rs.partner[k] == static_cast<int>(k));
  CHECK(rs.theta[0].to_double() == 0.0);
  CHECK(rs.roots[0].re_double() == doctest::Approx(5.0));
}

TEST_CASE("refine preserves order") {
  auto p1 = make_qsymplectic({Int(1), Int(-2), Int(5)}, 5);
  auto p2 = make_qsymplectic({Int(1), Int(1), Int(5)}, 5);
  auto rs = root_system({p1, p2}, 128);
  auto fine = refine(rs, 512);
  REQUIRE(fine.pair_count() == rs.pair_count());
  for (size_t k = 0; k < rs.pair_count(); ++k) {
    CHECK(fine.source_of_pair[k] == rs.source_of_pair[k]);
    CHECK(fine.theta[k].to_double() == doctest::Approx(rs.theta[k].to_double()));
    CHECK(fine.theta[k].rad_exp2() < rs.theta[k].rad_exp2());
  }
}

TEST_CASE("rh agreement with the numeric criterion") {
  std::mt19937_64 rng(7);
  int checked = 0;
  for (int it = 0; it < 100; ++it) {
    long q = 11;
    int g = 1 + static_cast<int>(rng() % 2);
    std::vector<long> tr(g);
    for (auto& a : tr) a = static_cast<long>(rng() % 13) - 6;
    auto p = from_traces(tr, q);
    REQUIRE(rh_check(p));  // construction forces |alpha| = sqrt(q)
    auto rs = root_system({p}, 128);
    for (const auto& r : rs.roots) {
      auto m2 = mul(r, r.conj());
      auto d = dist(m2, ComplexBall::exact_int(q, 128));
      CHECK(mpfr_sgn(d.lower().get()) <= 0);
    }
    ++checked;
  }
  CHECK(checked == 100);
}
