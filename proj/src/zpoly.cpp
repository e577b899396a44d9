#include "zetarel/zpoly.hpp"

#include "zetarel/error.hpp"

namespace zetarel {
namespace zp {

ZPoly normalize(ZPoly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

int deg(const ZPoly& f) { return static_cast<int>(f.size()) - 1; }

ZPoly add(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return normalize(std::move(r));
}

ZPoly sub(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return normalize(std::move(r));
}

ZPoly neg(const ZPoly& a) {
  ZPoly r = a;
  for (auto& c : r) c = -c;
  return r;
}

ZPoly mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return normalize(std::move(r));
}

ZPoly derivative(const ZPoly& a) {
  if (a.size() <= 1) return {};
  ZPoly r(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) r[i - 1] = Int(static_cast<long>(i)) * a[i];
  return normalize(std::move(r));
}

Int eval(const ZPoly& a, const Int& x) {
  Int acc = 0;
  for (size_t i = a.size(); i-- > 0;) acc = acc * x + a[i];
  return acc;
}

Int content(const ZPoly& a) {
  Int g = 0;
  for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

ZPoly primitive_part(const ZPoly& a) {
  if (a.empty()) return a;
  Int g = content(a);
  if (a.back() < 0) g = -g;
  ZPoly r = a;
  for (auto& c : r) c /= g;
  return r;
}

bool divide_exact(const ZPoly& a, const ZPoly& b, ZPoly& q) {
  if (b.empty()) fail(Err::ZeroPolynomial, "divide by zero polynomial");
  ZPoly r = a;
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 1, 0);
  while (r.size() >= b.size() && !r.empty()) {
    if (r.back() % b.back() != 0) return false;
    Int c = r.back() / b.back();
    size_t shift = r.size() - b.size();
    q[shift] = c;
    for (size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
    r = normalize(std::move(r));
    if (r.size() < b.size()) break;
  }
  q = normalize(std::move(q));
  return r.empty();
}

ZPoly gcd_q(const ZPoly& a0, const ZPoly& b0) {
  // rational Euclid on primitive parts; degrees here are small
  ZPoly a = normalize(a0), b = normalize(b0);
  if (a.empty()) return primitive_part(b);
  if (b.empty()) return primitive_part(a);
  std::vector<Rat> ra(a.size()), rb(b.size());
  for (size_t i = 0; i < a.size(); ++i) ra[i] = Rat(a[i]);
  for (size_t i = 0; i < b.size(); ++i) rb[i] = Rat(b[i]);
  auto rnorm = [](std::vector<Rat> f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
  };
  while (!rb.empty()) {
    // remainder of ra by rb
    std::vector<Rat> r = ra;
    while (r.size() >= rb.size() && !r.empty()) {
      Rat c = r.back() / rb.back();
      size_t shift = r.size() - rb.size();
      for (size_t i = 0; i < rb.size(); ++i) r[shift + i] -= c * rb[i];
      r = rnorm(std::move(r));
    }
    ra = std::move(rb);
    rb = std::move(r);
  }
  // clear denominators of ra -> primitive integer
  Int den = 1;
  for (auto& c : ra) {
    Int d = c.get_den();
    Int g;
    mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
    den = den / g * d;
  }
  ZPoly out(ra.size());
  for (size_t i = 0; i < ra.size(); ++i) {
    Rat v = ra[i] * den;
    out[i] = v.get_num();
  }
  return primitive_part(normalize(std::move(out)));
}

bool is_squarefree(const ZPoly& a) {
  ZPoly g = gcd_q(a, derivative(a));
  return deg(g) <= 0;
}

std::vector<std::pair<ZPoly, int>> squarefree_decomposition(const ZPoly& a0) {
  std::vector<std::pair<ZPoly, int>> out;
  ZPoly a = primitive_part(normalize(a0));
  if (deg(a) <= 0) return out;
  ZPoly g = gcd_q(a, derivative(a));
  if (deg(g) == 0) {
    out.emplace_back(a, 1);
    return out;
  }
  // Yun over Q on primitive parts
  ZPoly w;
  if (!divide_exact(a, g, w)) {
    // gcd was computed up to a unit; retry with rational division fallback
    fail(Err::InvalidInput, "squarefree decomposition: inexact division");
  }
  int i = 1;
  ZPoly c = g;
  while (deg(w) > 0) {
    ZPoly y = gcd_q(w, c);
    ZPoly part, tmp;
    if (!divide_exact(w, y, part)) fail(Err::InvalidInput, "sqfree: division");
    if (deg(part) > 0) out.emplace_back(primitive_part(part), i);
    if (!divide_exact(c, y, tmp)) fail(Err::InvalidInput, "sqfree: division");
    c = tmp;
    w = std::move(y);
    ++i;
  }
  return out;
}

}  // namespace zp
}  // namespace zetarel
