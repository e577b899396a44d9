#include "zetarel/qpoly.hpp"

#include <algorithm>

#include "zetarel/error.hpp"

namespace zetarel {

bool is_q_symplectic(const std::vector<Int>& c, const Int& q) {
  if (c.empty() || c[0] != 1) fail(Err::InvalidInput, "need c0 == 1");
  if (c.size() % 2 == 0) fail(Err::OddDegree, "degree must be even");
  int g = static_cast<int>(c.size() - 1) / 2;
  for (int i = 0; i <= g; ++i) {
    if (c[2 * g - i] != pow_int(q, g - i) * c[i]) return false;
  }
  return true;
}

QSymplecticPoly make_qsymplectic(std::vector<Int> c, Int q) {
  if (!is_q_symplectic(c, q)) fail(Err::NotSymplectic, "coefficient identity fails");
  QSymplecticPoly p;
  p.g = static_cast<int>(c.size() - 1) / 2;
  p.c = std::move(c);
  p.q = std::move(q);
  return p;
}

QSymplecticPoly qs_mul(const QSymplecticPoly& a, const QSymplecticPoly& b) {
  if (a.q != b.q) fail(Err::MismatchedField, "products need a common q");
  return make_qsymplectic(zp::mul(a.c, b.c), a.q);
}

ZPoly reversed_monic(const QSymplecticPoly& p) {
  ZPoly r(p.c.rbegin(), p.c.rend());
  return r;
}

bool is_separable(const QSymplecticPoly& p) {
  ZPoly star = reversed_monic(p);
  return zp::is_squarefree(star);
}

std::vector<Int> power_sums(const QSymplecticPoly& p, int N) {
  // Newton forward: s_n = -n c_n - sum_{i=1}^{n-1} c_i s_{n-i}, with c_i = 0
  // beyond degree 2g.
  std::vector<Int> s(N + 1);
  s[0] = 2 * p.g;
  for (int n = 1; n <= N; ++n) {
    Int acc = 0;
    if (n < static_cast<int>(p.c.size())) acc = Int(n) * p.c[n];
    for (int i = 1; i < n; ++i) {
      if (i >= static_cast<int>(p.c.size())) break;
      acc += p.c[i] * s[n - i];
    }
    s[n] = -acc;
  }
  s.erase(s.begin());
  return s;
}

ZPoly real_weil_transform(const QSymplecticPoly& p) {
  if (!is_q_symplectic(p.c, p.q)) fail(Err::NotSymplectic, "not q-symplectic");
  int g = p.g;
  // In the variable u = T + q/T (on inverse roots: u_j = alpha_j + q/alpha_j),
  // T^m + q^m T^{-m} = psi_m(u) with psi_0 = 2, psi_1 = u,
  // psi_{m+1} = u psi_m - q psi_{m-1}. Then
  // h(u) = c_g + sum_{m=1..g} c_{g-m} psi_m(u).
  ZPoly psi_prev = {Int(2)};        // psi_0
  ZPoly psi_cur = {Int(0), Int(1)};  // psi_1 = u
  ZPoly h = {p.c[g]};
  for (int m = 1; m <= g; ++m) {
    h = zp::add(h, zp::mul({p.c[g - m]}, psi_cur));
    if (m < g) {
      ZPoly next = zp::sub(zp::mul({Int(0), Int(1)}, psi_cur), zp::mul({p.q}, psi_prev));
      psi_prev = std::move(psi_cur);
      psi_cur = std::move(next);
    }
  }
  return h;
}

bool trace_is_zero(const QSymplecticPoly& p) { return p.c[1] == 0; }

namespace {

using QPolyV = std::vector<Rat>;

QPolyV qnorm(QPolyV f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

QPolyV to_q(const ZPoly& f) {
  QPolyV r(f.size());
  for (size_t i = 0; i < f.size(); ++i) r[i] = Rat(f[i]);
  return r;
}

QPolyV q_derivative(const QPolyV& f) {
  if (f.size() <= 1) return {};
  QPolyV r(f.size() - 1);
  for (size_t i = 1; i < f.size(); ++i) r[i - 1] = Rat(static_cast<long>(i)) * f[i];
  return qnorm(std::move(r));
}

QPolyV q_neg_rem(const QPolyV& a, const QPolyV& b) {
  QPolyV r = a;
  while (r.size() >= b.size() && !r.empty()) {
    Rat c = r.back() / b.back();
    size_t shift = r.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
    r = qnorm(std::move(r));
  }
  for (auto& c : r) c = -c;
  return r;
}

int sgn_rat(const Rat& x) { return mpq_sgn(x.get_mpq_t()); }

// Sign of f(sgn * 2 sqrt(q)) for rational-coefficient f, exact.
// Split into even/odd parts: f(x) = E(x^2) + x O(x^2), x^2 = 4q.
int sign_at_endpoint(const QPolyV& f, const Int& q, int sgn) {
  Rat a = 0, b = 0;  // value = a + (2 sqrt q) * sgn * b
  Rat fourq = Rat(4 * q);
  Rat pw = 1;
  for (size_t i = 0; i < f.size(); i += 2) {
    a += f[i] * pw;
    if (i + 1 < f.size()) b += f[i + 1] * pw;
    pw *= fourq;
  }
  b *= sgn;
  int sa = sgn_rat(a), sb = sgn_rat(b);
  if (sa == 0 && sb == 0) return 0;
  if (sa == 0) return sb;
  if (sb == 0) return sa;
  if (sa == sb) return sa;
  // compare |a| vs 2 sqrt(q) |b| via a^2 vs 4 q b^2
  Rat a2 = a * a, qb2 = fourq * b * b;
  if (a2 > qb2) return sa;
  if (a2 < qb2) return sb;
  return 0;
}

}  // namespace

int sturm_count_open(const ZPoly& f0, const Int& q) {
  QPolyV f = to_q(f0);
  if (f.size() <= 1) return 0;
  std::vector<QPolyV> chain;
  chain.push_back(f);
  chain.push_back(q_derivative(f));
  while (!chain.back().empty() && chain.back().size() > 1) {
    QPolyV r = q_neg_rem(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    chain.push_back(std::move(r));
  }
  auto variations = [&](int sgn) {
    int v = 0, last = 0;
    for (const auto& s : chain) {
      if (s.empty()) continue;
      int sg = sign_at_endpoint(s, q, sgn);
      if (sg == 0) continue;
      if (last != 0 && sg != last) ++v;
      last = sg;
    }
    return v;
  };
  return variations(-1) - variations(+1);
}

bool rh_check(const QSymplecticPoly& p) {
  ZPoly h = real_weil_transform(p);
  // distinct roots only
  ZPoly hsf = zp::primitive_part(h);
  {
    ZPoly g = zp::gcd_q(h, zp::derivative(h));
    if (zp::deg(g) > 0) {
      ZPoly quo;
      if (!zp::divide_exact(hsf, g, quo))
        fail(Err::InvalidInput, "rh_check: inexact squarefree division");
      hsf = quo;
    }
  }
  // strip exact endpoint roots x = +-2 sqrt(q)
  if (is_square(p.q)) {
    Int s = isqrt(p.q);
    for (Int e : {2 * s, -2 * s}) {
      while (zp::deg(hsf) > 0 && zp::eval(hsf, e) == 0) {
        ZPoly quo;
        ZPoly lin = {-e, Int(1)};
        if (!zp::divide_exact(hsf, lin, quo)) break;
        hsf = quo;
      }
    }
  } else {
    ZPoly quad = {-4 * p.q, Int(0), Int(1)};  // x^2 - 4q
    while (zp::deg(hsf) >= 2) {
      ZPoly quo;
      if (!zp::divide_exact(hsf, quad, quo)) break;
      hsf = quo;
    }
  }
  int d = zp::deg(hsf);
  if (d <= 0) return true;
  return sturm_count_open(hsf, p.q) == d;
}

std::vector<Int> newton_reconstruct(const std::vector<Int>& s, const Int& q, int g) {
  if (static_cast<int>(s.size()) < g) fail(Err::InvalidInput, "need g power sums");
  std::vector<Int> e(g + 1);
  e[0] = 1;
  for (int k = 1; k <= g; ++k) {
    Int acc = 0;
    for (int i = 1; i <= k; ++i) {
      Int term = e[k - i] * s[i - 1];
      if (i % 2 == 0) acc -= term;
      else acc += term;
    }
    if (acc % k != 0)
      fail(Err::NonIntegralCoefficient, "inconsistent power sums at k=" + std::to_string(k));
    e[k] = acc / k;
  }
  std::vector<Int> c(2 * g + 1);
  for (int i = 0; i <= g; ++i) c[i] = (i % 2 == 0) ? e[i] : -e[i];
  for (int i = 0; i < g; ++i) c[2 * g - i] = pow_int(q, g - i) * c[i];
  return c;
}

}  // namespace zetarel
