#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zetarel/constructions.hpp"
#include "zetarel/error.hpp"
#include "zetarel/relations.hpp"

using namespace zetarel;

namespace {

// exponent slot of the construction root in the flat layout
int slot_of(const RootSystem& rs, const ComplexBall& target) {
  int hit = -1;
  for (size_t i = 0; i < rs.root_count(); ++i) {
    if (possibly_overlap(rs.roots[i], target)) {
      REQUIRE(hit == -1);
      hit = static_cast<int>(i);
    }
  }
  REQUIRE(hit >= 0);
  return hit;
}

// brute-force angle relations: all |n|_inf <= h with n.theta + n0 = 0,
// each candidate confirmed by the exact verifier
IntMat brute_force_angle_relations(const RootSystem& rs, int h) {
  size_t pairs = rs.pair_count();
  std::vector<double> th(pairs);
  for (size_t j = 0; j < pairs; ++j) th[j] = rs.theta[j].to_double();
  IntMat found;
  std::vector<int> n(pairs, -h);
  while (true) {
    double s = 0;
    bool all0 = true;
    for (size_t j = 0; j < pairs; ++j) {
      s += n[j] * th[j];
      if (n[j]) all0 = false;
    }
    if (!all0 && std::abs(s - std::round(s)) < 1e-9) {
      IntVec v(rs.root_count(), 0);
      for (size_t j = 0; j < pairs; ++j)
        v[static_cast<size_t>(rs.rep_flat[j])] = n[j];
      if (verify_multiplicative_exact(rs, v).proven_true) {
        IntVec ang(pairs);
        for (size_t j = 0; j < pairs; ++j) ang[j] = n[j];
        found.push_back(ang);
      }
    }
    size_t k = 0;
    while (k < pairs && n[k] == h) n[k++] = -h;
    if (k == pairs) break;
    ++n[k];
  }
  return hnf_rows(std::move(found));
}

}  // namespace

TEST_CASE("verify additive: exact traces") {
  auto p1 = make_qsymplectic({Int(1), Int(-2), Int(5)}, 5);
  auto p2 = make_qsymplectic({Int(1), Int(1), Int(5)}, 5);
  auto rs = root_system({p1, p2}, 256);
  // (alpha1 + conj) + 2 (alpha2 + conj) = 2 + 2(-1) = 0; source order is kept
  IntVec n(4, 0);
  REQUIRE(rs.pair_count() == 2);
  for (size_t j = 0; j < 2; ++j) {
    int c = rs.source_of_pair[j] == 0 ? 1 : 2;
    n[static_cast<size_t>(rs.rep_flat[j])] = c;
    n[static_cast<size_t>(rs.partner[rs.rep_flat[j]])] = c;
  }
  CHECK(verify_additive_exact(rs, n).proven_true);

  // a single root is never zero
  IntVec single(4, 0);
  single[0] = 1;
  CHECK_FALSE(verify_additive_exact(rs, single).proven_true);
}

TEST_CASE("verify multiplicative: pair product and refutation") {
  auto p = make_qsymplectic({Int(1), Int(-2), Int(5)}, 5);
  auto rs = root_system({p}, 256);
  IntVec both(2, 1);  // alpha * (q/alpha) = q: trivial relation
  CHECK(verify_multiplicative_exact(rs, both).proven_true);
  IntVec ratio(2, 0);  // alpha / conj(alpha) != 1
  ratio[0] = 1;
  ratio[1] = -1;
  CHECK_FALSE(verify_multiplicative_exact(rs, ratio).proven_true);
}

TEST_CASE("detect additive finds the trace combination") {
  auto p1 = make_qsymplectic({Int(1), Int(-2), Int(5)}, 5);
  auto p2 = make_qsymplectic({Int(1), Int(1), Int(5)}, 5);
  auto rs = root_system({p1, p2}, 256);
  auto lat = detect_additive(rs, 256);
  REQUIRE(lat.rank() == 1);
  IntVec expected(4, 0);
  for (size_t j = 0; j < 2; ++j) {
    int c = rs.source_of_pair[j] == 0 ? 1 : 2;
    expected[static_cast<size_t>(rs.rep_flat[j])] = c;
    expected[static_cast<size_t>(rs.partner[rs.rep_flat[j]])] = c;
  }
  CHECK(lattice_contains(lat.basis, expected));
}

TEST_CASE("duplicated factor: identical-root relations") {
  auto p = make_qsymplectic({Int(1), Int(-2), Int(5)}, 5);
  auto sq = qs_mul(p, p);
  auto rs = root_system({sq}, 256);
  auto add = detect_additive(rs, 256);
  // alpha - alpha' = 0 and conj - conj' = 0
  CHECK(add.rank() == 2);
  auto mul_lat = detect_multiplicative(rs, 256);
  CHECK(mul_lat.nontrivial_rank >= 1);  // theta_1 = theta_2
}

TEST_CASE("elliptic curve alone: no spurious relations") {
  auto p = make_qsymplectic({Int(1), Int(-2), Int(5)}, 5);
  auto rs = root_system({p}, 256);
  auto add = detect_additive(rs, 256);
  CHECK(add.rank() == 0);
  auto mult = detect_multiplicative(rs, 256);
  CHECK(mult.nontrivial_rank == 0);
  CHECK(static_cast<long>(mult.trivial_basis.size()) == 1);
  // exhaustive check at small height agrees
  auto brute = brute_force_angle_relations(rs, 3);
  CHECK(brute.empty());
}

TEST_CASE("honda-tate d=3 at p=541: planted relation proven") {
  auto sys = honda_tate_d3(541);
  CHECK(sys.traces == std::vector<Int>({Int(17), Int(29), Int(46)}));
  CHECK(sys.fourp_minus == std::vector<Int>({Int(1875), Int(1323), Int(48)}));
  auto P = sys.assembled();
  auto rs = root_system({P}, 256);
  auto w = sys.weil_numbers(256);

  // exponents (2, -4, 2) on the construction-branch roots
  IntVec n(rs.root_count(), 0);
  n[static_cast<size_t>(slot_of(rs, w[0]))] = 2;
  n[static_cast<size_t>(slot_of(rs, w[1]))] = -4;
  n[static_cast<size_t>(slot_of(rs, w[2]))] = 2;
  auto rep = verify_multiplicative_exact(rs, n);
  CHECK(rep.proven_true);

  // detector view: nontrivial quotient rank is 2 for the unit-orbit triple
  auto lat = detect_multiplicative(rs, 256);
  CHECK(lat.nontrivial_rank == 2);

  // the (2, -4, 2) class lies in the detected angle lattice
  auto angles = angle_quotient_basis(lat, rs);
  IntVec target(rs.pair_count(), 0);
  for (int j = 0; j < 3; ++j) {
    int slot = slot_of(rs, w[j]);
    int pair = rs.pair_of[static_cast<size_t>(slot)];
    int coeff = (j == 1) ? -4 : 2;
    // exponent on the partner flips the angle sign
    if (rs.rep_flat[pair] != slot) coeff = -coeff;
    target[static_cast<size_t>(pair)] = coeff;
  }
  CHECK(lattice_contains(angles, target));

  // bounded-height brute force matches the detected lattice
  auto brute = brute_force_angle_relations(rs, 3);
  for (const auto& v : brute) CHECK(lattice_contains(angles, v));
}

TEST_CASE("honda-tate d=1 systems") {
  auto s13 = honda_tate_d1(13);
  CHECK(s13.traces == std::vector<Int>({Int(4), Int(6)}));
  auto s5 = honda_tate_d1(5);
  CHECK(s5.traces == std::vector<Int>({Int(2), Int(4)}));
  CHECK_THROWS_AS(honda_tate_d1(7), Error);

  // planted relation: (alpha1 alpha2)^4 = q^4 i^4, i.e. angle vector (4,4)
  auto P = s13.assembled();
  auto rs = root_system({P}, 256);
  auto lat = detect_multiplicative(rs, 256);
  CHECK(lat.nontrivial_rank == 1);
  auto angles = angle_quotient_basis(lat, rs);
  IntVec target(rs.pair_count(), Int(4));
  CHECK(lattice_contains(angles, target));
}

TEST_CASE("honda-tate d=3 small cases") {
  auto s7 = honda_tate_d3(7);
  CHECK(s7.traces == std::vector<Int>({Int(1), Int(4), Int(5)}));
  CHECK_THROWS_AS(honda_tate_d3(5), Error);
  // z = x + y for every p = 1 mod 3 below 10^4
  for (int64_t p = 7; p < 10000; ++p) {
    if (!is_prime(p) || p % 3 != 1) continue;
    auto s = honda_tate_d3(p);
    CHECK(s.traces[2] == s.traces[0] + s.traces[1]);
    for (const auto& v : s.fourp_minus)
      CHECK(squarefree_part(v.get_si()) == 3);
  }
}

TEST_CASE("assemble_from_traces validates the Weil bound") {
  auto P = assemble_from_traces({Int(2)}, 5);
  CHECK(P.c == std::vector<Int>({Int(1), Int(-2), Int(5)}));
  CHECK_THROWS_AS(assemble_from_traces({Int(50)}, 5), Error);
  auto sys = honda_tate_d3(541);
  auto big = sys.assembled();
  CHECK(big.g == 3);
  CHECK(rh_check(big));
  CHECK(is_q_symplectic(big.c, big.q));
}

TEST_CASE("independence report paths") {
  auto p = make_qsymplectic({Int(1), Int(-2), Int(5)}, 5);
  auto rep = independence_report({p});
  CHECK(rep.by_certificate);
  CHECK(rep.verdict_label() == "independent");

  auto sys = honda_tate_d3(541);
  auto rep541 = independence_report({sys.assembled()});
  CHECK(rep541.verdict_label() == "has-relations");
  CHECK(rep541.multiplicative_lattice.nontrivial_rank == 2);

  auto dup = independence_report({p, p});
  CHECK(dup.verdict_label() == "has-relations");

  // genus-1 torsion escape over square q: trace 5 over q = 25 has a sixth
  // root of unity as normalized root; certificate path must stand aside
  auto tors = make_qsymplectic({Int(1), Int(-5), Int(25)}, 25);
  auto rept = independence_report({tors});
  CHECK_FALSE(rept.by_certificate);
  CHECK(rept.verdict_label() == "has-relations");
  CHECK(rept.multiplicative_lattice.nontrivial_rank == 1);
}

TEST_CASE("trivial lattice is always multiplicatively valid") {
  for (auto coeffs : {std::vector<Int>{Int(1), Int(-2), Int(5)},
                      std::vector<Int>{Int(1), Int(-1), Int(8), Int(-5), Int(25)}}) {
    auto p = make_qsymplectic(coeffs, 5);
    auto rs = root_system({p}, 256);
    auto lat = detect_multiplicative(rs, 256);
    for (const auto& v : lat.trivial_basis)
      CHECK(verify_multiplicative_exact(rs, v).proven_true);
  }
}

TEST_CASE("re-verification at doubled precision never flips") {
  auto sys = honda_tate_d3(541);
  auto P = sys.assembled();
  auto lo = root_system({P}, 192);
  auto hi = root_system({P}, 768);
  // nontrivial true relation (2,4,2) on representatives, plus a refuted one
  IntVec good(lo.root_count(), 0), bad(lo.root_count(), 0);
  for (size_t j = 0; j < lo.pair_count(); ++j)
    good[static_cast<size_t>(lo.rep_flat[j])] = j == 1 ? 4 : 2;
  bad[static_cast<size_t>(lo.rep_flat[0])] = 1;
  for (auto* n : {&good, &bad}) {
    bool v1 = verify_multiplicative_exact(lo, *n).proven_true;
    bool v2 = verify_multiplicative_exact(hi, *n).proven_true;
    CHECK(v1 == v2);
  }
  CHECK(verify_multiplicative_exact(lo, good).proven_true);
  CHECK_FALSE(verify_multiplicative_exact(lo, bad).proven_true);
}

TEST_CASE("bounded-height completeness for single polynomials, g <= 2") {
  std::vector<QSymplecticPoly> samples;
  samples.push_back(make_qsymplectic({Int(1), Int(-2), Int(5)}, 5));
  samples.push_back(make_qsymplectic({Int(1), Int(-5), Int(25)}, 25));  // zeta_6 torsion
  samples.push_back(make_qsymplectic(newton_reconstruct({Int(1), Int(-13)}, 7, 2), 7));
  samples.push_back(assemble_from_traces({Int(2), Int(-3)}, 13));
  for (const auto& p : samples) {
    auto rs = root_system({p}, 256);
    auto mul_lat = detect_multiplicative(rs, 256);
    auto angles = angle_quotient_basis(mul_lat, rs);
    // brute force over the angle box
    size_t pairs = rs.pair_count();
    std::vector<int> n(pairs, -3);
    while (true) {
      bool all0 = true;
      double s = 0;
      for (size_t j = 0; j < pairs; ++j) {
        s += n[j] * rs.theta[j].to_double();
        if (n[j]) all0 = false;
      }
      if (!all0 && std::abs(s - std::round(s)) < 1e-9) {
        IntVec v(rs.root_count(), 0);
        for (size_t j = 0; j < pairs; ++j)
          v[static_cast<size_t>(rs.rep_flat[j])] = n[j];
        if (verify_multiplicative_exact(rs, v).proven_true) {
          IntVec ang(pairs);
          for (size_t j = 0; j < pairs; ++j) ang[j] = n[j];
          CHECK(lattice_contains(angles, ang));
        }
      }
      size_t k = 0;
      while (k < pairs && n[k] == 3) n[k++] = -3;
      if (k == pairs) break;
      ++n[k];
    }
    // additive side: brute force over the root box
    auto add = detect_additive(rs, 256);
    size_t m = rs.root_count();
    std::vector<int> a(m, -3);
    while (true) {
      bool all0 = true;
      double sr = 0, si = 0;
      for (size_t i = 0; i < m; ++i) {
        sr += a[i] * rs.roots[i].re_double();
        si += a[i] * rs.roots[i].im_double();
        if (a[i]) all0 = false;
      }
      if (!all0 && std::abs(sr) < 1e-9 && std::abs(si) < 1e-9) {
        IntVec v(m);
        for (size_t i = 0; i < m; ++i) v[i] = a[i];
        if (verify_additive_exact(rs, v).proven_true) CHECK(lattice_contains(add.basis, v));
      }
      size_t k = 0;
      while (k < m && a[k] == 3) a[k++] = -3;
      if (k == m) break;
      ++a[k];
    }
  }
}
