#include "zetarel/w2g.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "zetarel/bigint.hpp"
#include "zetarel/error.hpp"
#include "zetarel/fq.hpp"
#include "zetarel/intmat.hpp"

namespace zetarel {

namespace {
using json = nlohmann::json;

std::string g_cache_dir;
std::mutex g_cache_mutex;

}  // namespace

void set_lattice_cache_dir(const std::string& dir) {
  std::lock_guard<std::mutex> lk(g_cache_mutex);
  g_cache_dir = dir;
}

std::string SignedCycleType::label() const {
  std::string s;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(parts[i].first);
    s += parts[i].second > 0 ? '+' : '-';
  }
  return s;
}

int TableGroup::class_index(const std::string& lbl) const {
  for (int i = 0; i < num_classes(); ++i)
    if (class_labels[i] == lbl) return i;
  return -1;
}

// ---------------------------------------------------------------------------
// W_{2g} construction

namespace {

// apply signed permutation: value of e at signed point v (v in +-1..+-g)
int apply_signed(const W2gGroup::Elem& e, int v) {
  if (v > 0) return e[v - 1];
  return -e[-v - 1];
}

W2gGroup::Elem compose(const W2gGroup::Elem& a, const W2gGroup::Elem& b) {
  // (a*b)(i) = a(b(i))
  W2gGroup::Elem r(a.size());
  for (size_t i = 0; i < a.size(); ++i)
    r[i] = static_cast<int8_t>(apply_signed(a, b[i]));
  return r;
}

W2gGroup::Elem invert(const W2gGroup::Elem& a) {
  W2gGroup::Elem r(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    int img = a[i];
    if (img > 0) r[img - 1] = static_cast<int8_t>(i + 1);
    else r[-img - 1] = static_cast<int8_t>(-(static_cast<int>(i) + 1));
  }
  return r;
}

}  // namespace

SignedCycleType W2gGroup::cycle_type(const Elem& e) {
  int g = static_cast<int>(e.size());
  std::vector<bool> seen(g, false);
  SignedCycleType t;
  for (int i = 0; i < g; ++i) {
    if (seen[i]) continue;
    int len = 0;
    int cur = i + 1;
    do {
      seen[std::abs(cur) - 1] = true;
      cur = apply_signed(e, cur);
      ++len;
    } while (std::abs(cur) != i + 1);
    t.parts.emplace_back(len, cur == i + 1 ? +1 : -1);
  }
  std::sort(t.parts.begin(), t.parts.end());
  return t;
}

W2gGroup::W2gGroup(int g) : g_(g) {
  if (g < 1 || g > 6) fail(Err::TooLarge, "W_{2g} supported for 1 <= g <= 6");
  order_ = 1;
  for (int i = 1; i <= g; ++i) order_ *= 2 * i;

  std::vector<int> perm(g);
  std::iota(perm.begin(), perm.end(), 1);
  do {
    for (int s = 0; s < (1 << g); ++s) {
      Elem e(g);
      for (int i = 0; i < g; ++i)
        e[i] = static_cast<int8_t>((s >> i) & 1 ? -perm[i] : perm[i]);
      elems_.push_back(std::move(e));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (static_cast<long>(elems_.size()) != order_)
    fail(Err::InvalidInput, "W_{2g} enumeration inconsistent");

  if (order_ <= 1024) {
    table_.label = "W" + std::to_string(2 * g);
    table_.order = static_cast<int>(order_);
    std::map<Elem, uint16_t> index;
    for (size_t i = 0; i < elems_.size(); ++i) index[elems_[i]] = static_cast<uint16_t>(i);
    table_.mul.resize(order_ * order_);
    table_.inv.resize(order_);
    for (int a = 0; a < order_; ++a) {
      table_.inv[a] = index.at(invert(elems_[a]));
      for (int b = 0; b < order_; ++b)
        table_.mul[static_cast<size_t>(a) * order_ + b] = index.at(compose(elems_[a], elems_[b]));
    }
    // classes by signed cycle type
    std::map<std::string, int> lbl_to_class;
    table_.class_of.resize(order_);
    for (int a = 0; a < order_; ++a) {
      std::string lbl = cycle_type(elems_[a]).label();
      auto it = lbl_to_class.find(lbl);
      int ci;
      if (it == lbl_to_class.end()) {
        ci = static_cast<int>(table_.class_labels.size());
        lbl_to_class.emplace(lbl, ci);
        table_.class_labels.push_back(lbl);
        table_.class_sizes.push_back(0);
      } else {
        ci = it->second;
      }
      table_.class_of[a] = ci;
      table_.class_sizes[ci]++;
    }
  }
}

const TableGroup& W2gGroup::table() const {
  if (table_.order == 0) fail(Err::TooLarge, "no multiplication table at this size");
  return table_;
}

TableGroup product_group(const std::vector<const TableGroup*>& parts) {
  TableGroup P;
  P.order = 1;
  for (auto* t : parts) {
    P.order *= t->order;
    if (!P.label.empty()) P.label += "x";
    P.label += t->label;
  }
  if (P.order > 4096) fail(Err::TooLarge, "product group too large");
  int k = static_cast<int>(parts.size());
  auto decode = [&](int idx, std::vector<int>& tup) {
    for (int i = k - 1; i >= 0; --i) {
      tup[i] = idx % parts[i]->order;
      idx /= parts[i]->order;
    }
  };
  auto encode = [&](const std::vector<int>& tup) {
    int idx = 0;
    for (int i = 0; i < k; ++i) idx = idx * parts[i]->order + tup[i];
    return idx;
  };
  P.mul.resize(static_cast<size_t>(P.order) * P.order);
  P.inv.resize(P.order);
  P.class_of.resize(P.order);
  std::map<std::string, int> lbl_to_class;
  std::vector<int> ta(k), tb(k), tc(k);
  for (int a = 0; a < P.order; ++a) {
    decode(a, ta);
    for (int i = 0; i < k; ++i) tc[i] = parts[i]->inv[ta[i]];
    P.inv[a] = static_cast<uint16_t>(encode(tc));
    std::string lbl;
    for (int i = 0; i < k; ++i) {
      if (i) lbl += '|';
      lbl += parts[i]->class_labels[parts[i]->class_of[ta[i]]];
    }
    auto it = lbl_to_class.find(lbl);
    int ci;
    if (it == lbl_to_class.end()) {
      ci = static_cast<int>(P.class_labels.size());
      lbl_to_class.emplace(lbl, ci);
      P.class_labels.push_back(lbl);
      P.class_sizes.push_back(0);
    } else {
      ci = it->second;
    }
    P.class_of[a] = ci;
    P.class_sizes[ci]++;
    for (int b = 0; b < P.order; ++b) {
      decode(b, tb);
      for (int i = 0; i < k; ++i) tc[i] = parts[i]->at(ta[i], tb[i]);
      P.mul[static_cast<size_t>(a) * P.order + b] = static_cast<uint16_t>(encode(tc));
    }
  }
  return P;
}

// ---------------------------------------------------------------------------
// orbit count and representation decomposition

int orbit_count(int g) {
  W2gGroup W(g);
  int m = 2 * g;
  auto point_index = [&](int v) { return v > 0 ? v - 1 : g + (-v) - 1; };
  auto point_value = [&](int idx) { return idx < g ? idx + 1 : -(idx - g + 1); };
  std::vector<int> parent(m * m);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : W.elements()) {
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        int ia = point_index(apply_signed(e, point_value(a)));
        int ib = point_index(apply_signed(e, point_value(b)));
        int x = find(a * m + b), y = find(ia * m + ib);
        if (x != y) parent[x] = y;
      }
  }
  std::unordered_set<int> reps;
  for (int i = 0; i < m * m; ++i) reps.insert(find(i));
  return static_cast<int>(reps.size());
}

DecompositionReport decomposition_check(int g) {
  if (g < 2 || g > 4) fail(Err::InvalidInput, "decomposition_check needs 2 <= g <= 4");
  W2gGroup W(g);
  int m = 2 * g;  // coordinates: [alpha_1..alpha_g, bar alpha_1..bar alpha_g]
  auto point_index = [&](int v) { return v > 0 ? v - 1 : g + (-v) - 1; };
  auto point_value = [&](int idx) { return idx < g ? idx + 1 : -(idx - g + 1); };

  IntMat ones = {IntVec(m, 1)};
  IntMat sym0;  // (e_{a_i}+e_{abar_i}) - (e_{a_{i+1}}+e_{abar_{i+1}})
  for (int i = 0; i + 1 < g; ++i) {
    IntVec v(m, 0);
    v[i] = v[g + i] = 1;
    v[i + 1] = v[g + i + 1] = -1;
    sym0.push_back(v);
  }
  IntMat anti;  // e_{a_i} - e_{abar_i}
  for (int i = 0; i < g; ++i) {
    IntVec v(m, 0);
    v[i] = 1;
    v[g + i] = -1;
    anti.push_back(v);
  }

  DecompositionReport rep;
  rep.dim_ones = static_cast<int>(rank(ones));
  rep.dim_sym0 = sym0.empty() ? 0 : static_cast<int>(rank(sym0));
  rep.dim_anti = static_cast<int>(rank(anti));

  // invariance under the whole group: permuting coordinates keeps each span
  auto act = [&](const W2gGroup::Elem& e, const IntVec& v) {
    IntVec w(m, 0);
    for (int idx = 0; idx < m; ++idx) {
      int img = point_index(apply_signed(e, point_value(idx)));
      w[img] = v[idx];
    }
    return w;
  };
  auto invariant_span = [&](const IntMat& basis) {
    long r0 = rank(basis);
    for (const auto& e : W.elements()) {
      IntMat ext = basis;
      for (const auto& v : basis) ext.push_back(act(e, v));
      if (rank(ext) != r0) return false;
    }
    return true;
  };
  rep.invariant = invariant_span(ones) && (sym0.empty() || invariant_span(sym0)) &&
                  invariant_span(anti);

  // <chi,chi> for the permutation character = average of fix(w)^2
  long total = 0;
  for (const auto& e : W.elements()) {
    long fix = 0;
    for (int idx = 0; idx < m; ++idx)
      if (point_index(apply_signed(e, point_value(idx))) == idx) ++fix;
    total += fix * fix;
  }
  rep.chi_inner = total / W.order();
  return rep;
}

// ---------------------------------------------------------------------------
// subgroup lattice

namespace {

struct Bits {
  std::array<uint64_t, 6> w{};
  bool operator==(const Bits& o) const { return w == o.w; }
  bool operator<(const Bits& o) const { return w < o.w; }
  void set(int i) { w[i >> 6] |= 1ull << (i & 63); }
  bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
  int count() const {
    int c = 0;
    for (auto x : w) c += __builtin_popcountll(x);
    return c;
  }
};

struct BitsHash {
  size_t operator()(const Bits& b) const {
    size_t h = 1469598103934665603ull;
    for (auto x : b.w) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

std::vector<Bits> enumerate_subgroups(const TableGroup& G) {
  const int n = G.order;
  // conjugation table c[g][h] = g h g^-1
  std::vector<uint16_t> conj(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int h = 0; h < n; ++h)
      conj[static_cast<size_t>(a) * n + h] = G.at(G.at(a, h), G.inv[a]);

  std::vector<int64_t> primes_of_n;
  {
    int m = n;
    for (int p = 2; p * p <= m; ++p)
      if (m % p == 0) {
        primes_of_n.push_back(p);
        while (m % p == 0) m /= p;
      }
    if (m > 1) primes_of_n.push_back(m);
  }

  std::unordered_set<Bits, BitsHash> seen;
  std::vector<Bits> all;
  std::vector<int> order_of;
  Bits triv;
  triv.set(0);  // identity must be element 0
  if (G.at(0, 0) != 0) fail(Err::InvalidInput, "element 0 is not the identity");
  seen.insert(triv);
  all.push_back(triv);
  order_of.push_back(1);

  // cyclic extension: every subgroup of a solvable group arises from a
  // normal subgroup of prime index inside it
  for (size_t head = 0; head < all.size(); ++head) {
    Bits H = all[head];
    int hord = order_of[head];
    if (hord == n) continue;
    std::vector<uint16_t> members;
    members.reserve(hord);
    for (int i = 0; i < n; ++i)
      if (H.test(i)) members.push_back(static_cast<uint16_t>(i));
    // normalizer of H
    std::vector<uint16_t> normalizer;
    for (int a = 0; a < n; ++a) {
      bool ok = true;
      for (auto h : members)
        if (!H.test(conj[static_cast<size_t>(a) * n + h])) {
          ok = false;
          break;
        }
      if (ok) normalizer.push_back(static_cast<uint16_t>(a));
    }
    for (int64_t p : primes_of_n) {
      if ((n / hord) % p != 0) continue;
      for (auto x : normalizer) {
        if (H.test(x)) continue;
        // x^p in H?
        int xp = x;
        for (int64_t i = 1; i < p; ++i) xp = G.at(xp, x);
        if (!H.test(xp)) continue;
        // K = H u Hx u ... u Hx^{p-1}
        Bits K = H;
        int xpow = x;
        for (int64_t i = 1; i < p; ++i) {
          for (auto h : members) K.set(G.at(h, xpow));
          xpow = G.at(xpow, x);
        }
        if (seen.insert(K).second) {
          all.push_back(K);
          order_of.push_back(static_cast<int>(hord * p));
        }
      }
    }
  }
  return all;
}

SubgroupLattice build_lattice(const TableGroup& G) {
  const int n = G.order;
  auto subs = enumerate_subgroups(G);
  std::vector<uint16_t> conj(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int h = 0; h < n; ++h)
      conj[static_cast<size_t>(a) * n + h] = G.at(G.at(a, h), G.inv[a]);

  std::unordered_map<Bits, int, BitsHash> pos;
  for (size_t i = 0; i < subs.size(); ++i) pos[subs[i]] = static_cast<int>(i);

  SubgroupLattice L;
  L.group_label = G.label;
  L.group_order = n;
  L.num_element_classes = G.num_classes();
  std::vector<bool> done(subs.size(), false);
  for (size_t i = 0; i < subs.size(); ++i) {
    if (done[i]) continue;
    // orbit under conjugation
    std::vector<int> orbit;
    std::unordered_set<Bits, BitsHash> orb_seen;
    for (int a = 0; a < n; ++a) {
      Bits img;
      for (int h = 0; h < n; ++h)
        if (subs[i].test(h)) img.set(conj[static_cast<size_t>(a) * n + h]);
      if (orb_seen.insert(img).second) orbit.push_back(pos.at(img));
    }
    SubgroupClassInfo info;
    info.order = subs[i].count();
    info.conjugates = static_cast<int>(orbit.size());
    for (int h = 0; h < n; ++h)
      if (subs[i].test(h)) info.met_mask |= 1ull << G.class_of[h];
    L.classes.push_back(info);
    for (int idx : orbit) done[static_cast<size_t>(idx)] = true;
  }
  std::sort(L.classes.begin(), L.classes.end(), [](const auto& a, const auto& b) {
    if (a.order != b.order) return a.order < b.order;
    if (a.conjugates != b.conjugates) return a.conjugates < b.conjugates;
    return a.met_mask < b.met_mask;
  });
  return L;
}

std::mutex g_lat_mutex;
std::map<std::string, SubgroupLattice> g_lat_memo;

}  // namespace

void clear_lattice_memo() {
  std::lock_guard<std::mutex> lk(g_lat_mutex);
  g_lat_memo.clear();
}

std::vector<std::vector<uint16_t>> all_subgroups(const TableGroup& G, bool force) {
  if (!force && G.order > 64) fail(Err::TooLarge, "all_subgroups is a small-case oracle");
  auto subs = enumerate_subgroups(G);
  std::vector<std::vector<uint16_t>> out;
  out.reserve(subs.size());
  for (const auto& b : subs) {
    std::vector<uint16_t> members;
    for (int i = 0; i < G.order; ++i)
      if (b.test(i)) members.push_back(static_cast<uint16_t>(i));
    out.push_back(std::move(members));
  }
  std::sort(out.begin(), out.end());
  return out;
}

const SubgroupLattice& subgroup_lattice(const TableGroup& G, const std::string& cache_dir) {
  std::lock_guard<std::mutex> lk(g_lat_mutex);
  auto it = g_lat_memo.find(G.label);
  if (it != g_lat_memo.end()) return it->second;

  std::string path;
  if (!cache_dir.empty()) {
    path = cache_dir + "/subgroup_lattice_" + G.label + ".json";
    std::ifstream in(path);
    if (in) {
      json j;
      in >> j;
      if (j.value("version", 0) == 1 && j.value("order", -1) == G.order &&
          j.value("num_element_classes", -1) == G.num_classes()) {
        SubgroupLattice L;
        L.group_label = G.label;
        L.group_order = G.order;
        L.num_element_classes = G.num_classes();
        for (const auto& c : j["classes"]) {
          SubgroupClassInfo info;
          info.order = c["order"].get<int>();
          info.conjugates = c["conjugates"].get<int>();
          for (int b : c["met"]) info.met_mask |= 1ull << b;
          L.classes.push_back(info);
        }
        return g_lat_memo.emplace(G.label, std::move(L)).first->second;
      }
    }
  }

  SubgroupLattice L = build_lattice(G);
  if (!path.empty()) {
    json j;
    j["version"] = 1;
    j["group"] = G.label;
    j["order"] = G.order;
    j["num_element_classes"] = G.num_classes();
    j["element_classes"] = G.class_labels;
    json cls = json::array();
    for (const auto& c : L.classes) {
      json jc;
      jc["order"] = c.order;
      jc["conjugates"] = c.conjugates;
      std::vector<int> met;
      for (int b = 0; b < 64; ++b)
        if (c.met_mask & (1ull << b)) met.push_back(b);
      jc["met"] = met;
      cls.push_back(jc);
    }
    j["classes"] = cls;
    std::ofstream out(path);
    if (out) out << j.dump(1) << "\n";
  }
  return g_lat_memo.emplace(G.label, std::move(L)).first->second;
}

// ---------------------------------------------------------------------------
// Frobenius cycle types and certificates

std::string CycleTypeRejection::str() const {
  switch (reason) {
    case Reason::DividesQ: return "DividesQ";
    case Reason::NotSquarefree: return "NotSquarefree";
    case Reason::DegreeDrop: return "DegreeDrop";
    case Reason::UnpairableFixedRoot: return "UnpairableFixedRoot";
  }
  return "?";
}

CycleTypeResult frobenius_cycle_type(const QSymplecticPoly& p, int64_t ell) {
  if (ell < 3 || ell % 2 == 0 || !is_prime(ell))
    fail(Err::InvalidInput, "ell must be an odd prime");
  if (p.q % ell == 0) return CycleTypeRejection{CycleTypeRejection::Reason::DividesQ};
  Fq F = Fq::create(ell, 1);
  ZPoly star = reversed_monic(p);
  FqPoly fbar = fqp::from_coeffs(F, star);
  if (fqp::deg(fbar) != 2 * p.g)
    return CycleTypeRejection{CycleTypeRejection::Reason::DegreeDrop};
  FqPoly gc = fqp::gcd(F, fbar, fqp::derivative(F, fbar));
  if (fqp::deg(gc) != 0)
    return CycleTypeRejection{CycleTypeRejection::Reason::NotSquarefree};

  auto fac = fqp::factor(F, fbar, 1);
  // involution h(T) -> monic(T^deg h * h(q/T)); self-paired even-degree
  // factors give negative cycles, dual pairs positive ones
  Fq::Elem qb = F.from_int(p.q);
  auto dual = [&](const FqPoly& h) {
    int d = fqp::deg(h);
    FqPoly img(d + 1, F.zero());
    Fq::Elem qpow = F.one();
    for (int j = d; j >= 0; --j) {
      img[j] = F.mul(h[d - j], qpow);
      qpow = F.mul(qpow, qb);
    }
    return fqp::make_monic(F, img);
  };
  std::vector<FqPoly> factors;
  for (auto& [h, mult] : fac.factors)
    for (int i = 0; i < mult; ++i) factors.push_back(h);
  std::vector<bool> used(factors.size(), false);
  SignedCycleType t;
  for (size_t i = 0; i < factors.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    FqPoly img = dual(factors[i]);
    if (fqp::eq(img, factors[i])) {
      int d = fqp::deg(factors[i]);
      if (d % 2 != 0)
        return CycleTypeRejection{CycleTypeRejection::Reason::UnpairableFixedRoot};
      t.parts.emplace_back(d / 2, -1);
      continue;
    }
    bool matched = false;
    for (size_t j = i + 1; j < factors.size(); ++j) {
      if (used[j]) continue;
      if (fqp::eq(img, factors[j])) {
        used[j] = true;
        t.parts.emplace_back(fqp::deg(factors[i]), +1);
        matched = true;
        break;
      }
    }
    if (!matched)
      return CycleTypeRejection{CycleTypeRejection::Reason::UnpairableFixedRoot};
  }
  std::sort(t.parts.begin(), t.parts.end());
  int total = 0;
  for (auto& [len, sg] : t.parts) total += len;
  if (total != p.g) fail(Err::InvalidInput, "cycle type does not sum to g");
  return t;
}

namespace {

bool lattice_proves(const SubgroupLattice& L, uint64_t witness_mask) {
  if (witness_mask == 0) return false;
  for (const auto& cls : L.classes) {
    if (cls.order == L.group_order) continue;  // the full group
    if ((witness_mask & ~cls.met_mask) == 0) return false;  // survivor
  }
  return true;
}

GaloisCertificate certify_over_group(const std::vector<QSymplecticPoly>& ps,
                                     const TableGroup& G, int64_t ell_budget) {
  GaloisCertificate cert;
  const SubgroupLattice& L = subgroup_lattice(G, g_cache_dir);
  uint64_t witnessed = 0;
  for (int64_t ell : odd_primes_upto(ell_budget)) {
    bool rejected = false;
    std::string lbl;
    for (size_t j = 0; j < ps.size(); ++j) {
      auto res = frobenius_cycle_type(ps[j], ell);
      if (auto* rej = std::get_if<CycleTypeRejection>(&res)) {
        cert.rejected.emplace_back(ell, rej->str());
        rejected = true;
        break;
      }
      if (j) lbl += '|';
      lbl += std::get<SignedCycleType>(res).label();
    }
    if (rejected) continue;
    int ci = G.class_index(lbl);
    if (ci < 0) fail(Err::InvalidInput, "unknown class label " + lbl);
    uint64_t bit = 1ull << ci;
    if (!(witnessed & bit)) {
      witnessed |= bit;
      cert.witnesses.emplace_back(ell, lbl);
      if (lattice_proves(L, witnessed)) {
        cert.verdict = GaloisCertificate::Verdict::Proven;
        return cert;
      }
    }
  }
  cert.verdict = GaloisCertificate::Verdict::Undetermined;
  cert.note = "witnessed classes leave a proper subgroup alive";
  return cert;
}

std::mutex g_w2g_mutex;
std::map<int, std::shared_ptr<W2gGroup>> g_w2g_memo;

std::shared_ptr<W2gGroup> w2g_cached(int g) {
  std::lock_guard<std::mutex> lk(g_w2g_mutex);
  auto it = g_w2g_memo.find(g);
  if (it != g_w2g_memo.end()) return it->second;
  auto W = std::make_shared<W2gGroup>(g);
  g_w2g_memo.emplace(g, W);
  return W;
}

}  // namespace

GaloisCertificate maximality_certificate(const QSymplecticPoly& p, int64_t ell_budget) {
  if (p.g > 4) fail(Err::TooLarge, "lattice certificates ship for g <= 4");
  if (!is_separable(p)) fail(Err::NotSeparable, "P has repeated inverse roots");
  auto W = w2g_cached(p.g);
  return certify_over_group({p}, W->table(), ell_budget);
}

GaloisCertificate tuple_certificate(const std::vector<QSymplecticPoly>& ps,
                                    int64_t ell_budget) {
  if (ps.empty()) fail(Err::InvalidInput, "no polynomials");
  for (const auto& p : ps)
    if (p.q != ps.front().q) fail(Err::MismatchedField, "common q required");
  for (const auto& p : ps)
    if (!is_separable(p)) fail(Err::NotSeparable, "P has repeated inverse roots");
  // pairwise shared roots: common factor of the reversed polynomials
  for (size_t i = 0; i < ps.size(); ++i)
    for (size_t j = i + 1; j < ps.size(); ++j) {
      ZPoly g = zp::gcd_q(reversed_monic(ps[i]), reversed_monic(ps[j]));
      if (zp::deg(g) > 0) fail(Err::SharedRoots, "factors share inverse roots");
    }
  if (ps.size() == 1) return maximality_certificate(ps[0], ell_budget);

  int g = ps[0].g;
  bool same_g = true;
  for (const auto& p : ps) same_g = same_g && p.g == g;
  size_t k = ps.size();
  if (!same_g || g != 1 || k > 4) {
    GaloisCertificate cert;
    cert.verdict = GaloisCertificate::Verdict::Undetermined;
    cert.note = "TooLarge: exhaustive product lattice ships for g = 1, k <= 4";
    return cert;
  }
  auto W = w2g_cached(1);
  std::vector<const TableGroup*> parts(k, &W->table());
  static std::mutex prod_mutex;
  static std::map<std::string, TableGroup> prod_memo;
  {
    std::lock_guard<std::mutex> lk(prod_mutex);
    std::string key = "W2^" + std::to_string(k);
    auto it = prod_memo.find(key);
    if (it == prod_memo.end()) {
      TableGroup P = product_group(parts);
      P.label = key;
      it = prod_memo.emplace(key, std::move(P)).first;
    }
    return certify_over_group(ps, it->second, ell_budget);
  }
}

}  // namespace zetarel
