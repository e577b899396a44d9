#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <map>
#include <set>

#include "zetarel/error.hpp"
#include "zetarel/w2g.hpp"

using namespace zetarel;

TEST_CASE("group orders 2^g g!") {
  CHECK(W2gGroup(1).order() == 2);
  CHECK(W2gGroup(2).order() == 8);
  CHECK(W2gGroup(3).order() == 48);
  CHECK(W2gGroup(4).order() == 384);
}

TEST_CASE("short exact sequence: sign-forgetting kernel has order 2^g") {
  for (int g = 1; g <= 3; ++g) {
    W2gGroup W(g);
    int kernel = 0;
    for (const auto& e : W.elements()) {
      bool forgets_to_identity = true;
      for (int i = 0; i < g; ++i)
        if (std::abs(e[i]) != i + 1) forgets_to_identity = false;
      if (forgets_to_identity) ++kernel;
    }
    CHECK(kernel == (1 << g));
  }
}

TEST_CASE("cycle types match brute-force conjugacy") {
  for (int g = 2; g <= 3; ++g) {
    W2gGroup W(g);
    const TableGroup& T = W.table();
    // brute-force partition by conjugation
    std::vector<int> brute(T.order, -1);
    int nclasses = 0;
    for (int a = 0; a < T.order; ++a) {
      if (brute[a] >= 0) continue;
      for (int x = 0; x < T.order; ++x) brute[T.at(T.at(x, a), T.inv[x])] = nclasses;
      ++nclasses;
    }
    CHECK(nclasses == T.num_classes());
    // the two partitions coincide
    std::map<int, std::set<int>> by_brute;
    for (int a = 0; a < T.order; ++a) by_brute[brute[a]].insert(T.class_of[a]);
    for (auto& [b, s] : by_brute) CHECK(s.size() == 1);
  }
}

TEST_CASE("orbit counts") {
  CHECK(orbit_count(1) == 2);
  CHECK(orbit_count(2) == 3);
  CHECK(orbit_count(3) == 3);
  CHECK(orbit_count(4) == 3);
}

TEST_CASE("representation decomposition") {
  for (int g = 2; g <= 4; ++g) {
    auto rep = decomposition_check(g);
    CHECK(rep.dim_ones == 1);
    CHECK(rep.dim_sym0 == g - 1);
    CHECK(rep.dim_anti == g);
    CHECK(rep.chi_inner == 3);
    CHECK(rep.invariant);
    CHECK(rep.ok(g));
  }
}

TEST_CASE("frobenius cycle types of 1 - 2T + 5T^2") {
  auto p = make_qsymplectic({Int(1), Int(-2), Int(5)}, 5);
  // mod 3: irreducible and self-dual -> one negative 1-cycle
  auto r3 = frobenius_cycle_type(p, 3);
  REQUIRE(std::holds_alternative<SignedCycleType>(r3));
  CHECK(std::get<SignedCycleType>(r3).label() == "1-");
  // mod 13: (T-4)(T-11), a dual pair since 4*11 = 5 -> one positive 1-cycle
  auto r13 = frobenius_cycle_type(p, 13);
  REQUIRE(std::holds_alternative<SignedCycleType>(r13));
  CHECK(std::get<SignedCycleType>(r13).label() == "1+");
  // ell = 5 divides q
  auto r5 = frobenius_cycle_type(p, 5);
  REQUIRE(std::holds_alternative<CycleTypeRejection>(r5));
  CHECK(std::get<CycleTypeRejection>(r5).str() == "DividesQ");
}

TEST_CASE("cycle type parts sum to g and match factor degrees") {
  std::vector<QSymplecticPoly> samples;
  samples.push_back(make_qsymplectic({Int(1), Int(-1), Int(8), Int(-5), Int(25)}, 5));
  samples.push_back(make_qsymplectic({Int(1), Int(0), Int(-6), Int(0), Int(49)}, 7));
  samples.push_back(make_qsymplectic({Int(1), Int(3), Int(11), Int(21), Int(49)}, 7));
  for (const auto& p : samples) {
    for (int64_t ell : {3, 11, 13, 17, 19}) {
      if (p.q % ell == 0) continue;
      auto r = frobenius_cycle_type(p, ell);
      if (!std::holds_alternative<SignedCycleType>(r)) continue;
      int total = 0;
      for (auto& [len, sg] : std::get<SignedCycleType>(r).parts) total += len;
      CHECK(total == p.g);
    }
  }
}

TEST_CASE("maximality certificate for an elliptic curve poly") {
  auto p = make_qsymplectic({Int(1), Int(-2), Int(5)}, 5);
  auto cert = maximality_certificate(p);
  CHECK(cert.proven());
  // witnesses must include the nontrivial class
  bool has_minus = false;
  for (auto& [ell, lbl] : cert.witnesses)
    if (lbl == "1-") has_minus = true;
  CHECK(has_minus);
}

TEST_CASE("reducible products never certify") {
  auto p1 = make_qsymplectic({Int(1), Int(-2), Int(5)}, 5);
  auto p2 = make_qsymplectic({Int(1), Int(1), Int(5)}, 5);
  auto prod = qs_mul(p1, p2);
  auto cert = maximality_certificate(prod, 400);
  CHECK_FALSE(cert.proven());
}

TEST_CASE("certificate soundness vs all-subgroup brute force (g <= 3)") {
  // whenever Proven, no proper subgroup of W_{2g} meets every witnessed class
  std::vector<QSymplecticPoly> samples;
  samples.push_back(make_qsymplectic({Int(1), Int(-1), Int(0), Int(-5), Int(25)}, 5));
  samples.push_back(make_qsymplectic(
      {Int(1), Int(-2), Int(5), Int(-16), Int(25), Int(-50), Int(125)}, 5));
  samples.push_back(make_qsymplectic(
      {Int(1), Int(2), Int(2), Int(2), Int(10), Int(50), Int(125)}, 5));
  samples.push_back(make_qsymplectic(newton_reconstruct({Int(1), Int(-13)}, 7, 2), 7));
  int proven_seen = 0;
  for (const auto& p : samples) {
    if (!is_separable(p)) continue;
    auto cert = maximality_certificate(p, 300);
    if (!cert.proven()) continue;
    ++proven_seen;
    W2gGroup W(p.g);
    const TableGroup& T = W.table();
    uint64_t witnessed = 0;
    for (auto& [ell, lbl] : cert.witnesses) witnessed |= 1ull << T.class_index(lbl);
    for (const auto& H : all_subgroups(T, true)) {
      if (static_cast<int>(H.size()) == T.order) continue;
      uint64_t met = 0;
      for (auto h : H) met |= 1ull << T.class_of[h];
      CHECK((witnessed & ~met) != 0);
    }
  }
  CHECK(proven_seen >= 2);
}

TEST_CASE("tuple certificates") {
  auto p1 = make_qsymplectic({Int(1), Int(-2), Int(5)}, 5);
  auto p2 = make_qsymplectic({Int(1), Int(1), Int(5)}, 5);
  auto cert = tuple_certificate({p1, p2}, 200);
  CHECK(cert.proven());

  CHECK_THROWS_AS(tuple_certificate({p1, p1}, 200), Error);  // shared roots

  auto g2a = make_qsymplectic(newton_reconstruct({Int(1), Int(-13)}, 7, 2), 7);
  auto g2b = make_qsymplectic(newton_reconstruct({Int(2), Int(-8)}, 7, 2), 7);
  auto big = tuple_certificate({g2a, g2b}, 200);
  CHECK_FALSE(big.proven());
  CHECK(big.note.find("TooLarge") != std::string::npos);
}

TEST_CASE("monotone in the prime budget") {
  auto p = make_qsymplectic({Int(1), Int(-2), Int(5)}, 5);
  auto small = maximality_certificate(p, 20);
  auto large = maximality_certificate(p, 200);
  if (small.proven()) CHECK(large.proven());
}

TEST_CASE("subgroup lattice counts for tiny groups") {
  W2gGroup W1(1);
  auto L1 = subgroup_lattice(W1.table(), "");
  CHECK(L1.classes.size() == 2);  // trivial and full in Z/2

  W2gGroup W2x(2);
  auto subs = all_subgroups(W2x.table());
  // W_4 is the dihedral group of order 8: 10 subgroups total
  CHECK(subs.size() == 10);
}

TEST_CASE("element-only enumeration for larger g") {
  CHECK(W2gGroup(5).order() == 3840);
  CHECK(W2gGroup(5).elements().size() == 3840);
  CHECK(W2gGroup(6).order() == 46080);
  CHECK_THROWS_AS(W2gGroup(7), Error);
  CHECK_THROWS_AS(W2gGroup(5).table(), Error);
}

TEST_CASE("subgroup lattice disk cache round trip") {
  std::string dir = "/tmp/zetarel_lattice_cache_test";
  std::filesystem::create_directories(dir);
  std::string file = dir + "/subgroup_lattice_W6.json";
  std::filesystem::remove(file);

  clear_lattice_memo();
  W2gGroup W(3);
  SubgroupLattice computed = subgroup_lattice(W.table(), dir);  // copy before memo reset
  size_t n_classes = computed.classes.size();
  CHECK(std::filesystem::exists(file));

  // force a reload from disk and compare
  clear_lattice_memo();
  const SubgroupLattice& reloaded = subgroup_lattice(W.table(), dir);
  REQUIRE(reloaded.classes.size() == n_classes);
  for (size_t i = 0; i < n_classes; ++i) {
    CHECK(reloaded.classes[i].order == computed.classes[i].order);
    CHECK(reloaded.classes[i].conjugates == computed.classes[i].conjugates);
    CHECK(reloaded.classes[i].met_mask == computed.classes[i].met_mask);
  }
  clear_lattice_memo();
  std::filesystem::remove(file);
}

TEST_CASE("W_8 subgroup enumeration structural audit") {
  W2gGroup W(4);
  const TableGroup& T = W.table();
  auto subs = all_subgroups(T, true);
  CHECK(subs.size() == 1659);
  long inv = 0;
  for (int a = 1; a < T.order; ++a)
    if (T.at(a, a) == 0) ++inv;
  long s2 = 0, s3 = 0, syl2 = 0;
  long el3 = 0;
  for (int a = 1; a < T.order; ++a)
    if (T.at(a, a) != 0 && T.at(T.at(a, a), a) == 0) ++el3;
  for (auto& H : subs) {
    CHECK(T.order % static_cast<int>(H.size()) == 0);
    if (H.size() == 2) ++s2;
    if (H.size() == 3) ++s3;
    if (H.size() == 128) ++syl2;
  }
  CHECK(s2 == inv);       // one order-2 subgroup per involution
  CHECK(s3 == el3 / 2);   // order-3 subgroups pair up their generators
  CHECK(syl2 % 2 == 1);   // Sylow count
  CHECK(3 % syl2 == 0);

  // sampled 2-generated completeness: every closure <x, y> must be listed
  std::set<std::vector<uint16_t>> ms(subs.begin(), subs.end());
  bool in[384];
  uint16_t members[384], work[384];
  for (int x = 1; x < T.order; x += 7)
    for (int y = x; y < T.order; y += 11) {
      int nm = 0, nw = 0;
      std::fill(in, in + 384, false);
      auto push = [&](uint16_t z) {
        if (!in[z]) {
          in[z] = true;
          members[nm++] = z;
          work[nw++] = z;
        }
      };
      push(0);
      push(static_cast<uint16_t>(x));
      push(static_cast<uint16_t>(y));
      while (nw) {
        uint16_t a = work[--nw];
        for (int i = 0; i < nm; ++i) {
          push(T.at(a, members[i]));
          push(T.at(members[i], a));
        }
        push(T.inv[a]);
      }
      std::vector<uint16_t> K(members, members + nm);
      std::sort(K.begin(), K.end());
      CHECK(ms.count(K) == 1);
    }
}

TEST_CASE("genus-4 certificate proves with the default budget") {
  // L-polynomial of y^2 = (x^8+x+1)(x-1) over F_5
  auto L = make_qsymplectic({Int(1), Int(1), Int(-1), Int(1), Int(20), Int(5),
                             Int(-25), Int(125), Int(625)}, 5);
  auto cert = maximality_certificate(L);
  CHECK(cert.proven());
}
