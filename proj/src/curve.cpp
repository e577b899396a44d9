#include "zetarel/curve.hpp"

#include <map>
#include <mutex>

#include "zetarel/error.hpp"

namespace zetarel {

namespace {

constexpr uint64_t kChiTableCap = 1ull << 22;

struct CountingField {
  Fq F;
  std::vector<int8_t> chi;  // quadratic character by element index, if tabled
  explicit CountingField(Fq f) : F(std::move(f)) {}
};

std::mutex g_field_mutex;
std::map<std::pair<int64_t, int>, std::shared_ptr<CountingField>> g_field_cache;

std::shared_ptr<CountingField> counting_field(int64_t p, int nn) {
  std::lock_guard<std::mutex> lock(g_field_mutex);
  auto key = std::make_pair(p, nn);
  auto it = g_field_cache.find(key);
  if (it != g_field_cache.end()) return it->second;
  auto cf = std::make_shared<CountingField>(Fq::create(p, nn, kCountCap));
  if (cf->F.q_u64() && cf->F.q_u64() <= kChiTableCap) {
    uint64_t q = cf->F.q_u64();
    cf->chi.assign(q, -1);
    cf->chi[0] = 0;
    for (uint64_t i = 1; i < q; ++i) {
      auto x = cf->F.from_index(i);
      cf->chi[cf->F.index(cf->F.mul(x, x))] = 1;
    }
  }
  g_field_cache[key] = cf;
  return cf;
}

int chi2(const CountingField& cf, const Fq::Elem& x) {
  if (!cf.chi.empty()) return cf.chi[cf.F.index(x)];
  return cf.F.quad_char(x);
}

bool f_squarefree_mod_p(const ZPoly& f, int64_t p) {
  Fq Fp = Fq::create(p, 1);
  FqPoly fb = fqp::from_coeffs(Fp, f);
  if (fqp::deg(fb) != zp::deg(f)) return false;  // monic, cannot happen
  FqPoly g = fqp::gcd(Fp, fb, fqp::derivative(Fp, fb));
  return fqp::deg(g) == 0;
}

}  // namespace

CurveSpec make_curve(ZPoly f, int64_t p, int e, uint64_t t_index) {
  f = zp::normalize(std::move(f));
  int d = zp::deg(f);
  if (d < 2 || d % 2 != 0) fail(Err::ConfigInvalid, "f must have even degree 2g >= 2");
  if (f.back() != 1) fail(Err::ConfigInvalid, "f must be monic");
  if (!zp::is_squarefree(f)) fail(Err::ConfigInvalid, "f must be squarefree over Z");
  if (p < 3 || !is_prime(p)) fail(Err::ConfigInvalid, "p must be an odd prime");
  if (e < 1) fail(Err::ConfigInvalid, "e must be >= 1");
  if (!f_squarefree_mod_p(f, p))
    fail(Err::SingularCurve, "disc(f) vanishes mod p");
  CurveSpec spec;
  spec.f = std::move(f);
  spec.g = d / 2;
  spec.p = p;
  spec.e = e;
  spec.base = std::make_shared<Fq>(Fq::create(p, e, kCountCap));
  spec.t = spec.base->from_index(t_index);
  // f(t) != 0 in F_q
  FqPoly fb = fqp::from_coeffs(*spec.base, spec.f);
  if (spec.base->is_zero(fqp::eval(*spec.base, fb, spec.t)))
    fail(Err::SingularCurve, "f(t) = 0");
  return spec;
}

Int curve_count(const CurveSpec& spec, int n, const Fq* field_override) {
  if (n < 1) fail(Err::InvalidInput, "n >= 1");
  int nn = spec.e * n;
  Int qn = pow_int(Int(spec.p), nn);
  if (qn > Int(static_cast<unsigned long>(kCountCap)))
    fail(Err::TooLarge, "q^n exceeds the counting cap");

  std::shared_ptr<CountingField> cf_holder;
  const Fq* big = field_override;
  const std::vector<int8_t>* chi_table = nullptr;
  if (!big) {
    cf_holder = counting_field(spec.p, nn);
    big = &cf_holder->F;
    if (!cf_holder->chi.empty()) chi_table = &cf_holder->chi;
  }

  // h(x) = f(x) (x - t) with coefficients mapped into F_{q^n}
  Embedding emb(*spec.base, *big);
  Fq::Elem tbig = emb.map(spec.t);
  FqPoly fbig = fqp::from_coeffs(*big, spec.f);
  FqPoly h = fqp::mul(*big, fbig, {big->neg(tbig), big->one()});

  uint64_t q_u = big->q_u64();
  Int total = 0;
  long s = 0;
  for (uint64_t idx = 0; idx < q_u; ++idx) {
    Fq::Elem x = big->from_index(idx);
    Fq::Elem hx = fqp::eval(*big, h, x);
    int c;
    if (chi_table) c = (*chi_table)[big->index(hx)];
    else c = big->quad_char(hx);
    s += c;
    if ((idx & 0xffff) == 0xffff) {
      total += s;
      s = 0;
    }
  }
  total += s;
  return qn + 1 + total;
}

QSymplecticPoly lpolynomial(const CurveSpec& spec) {
  Int qg = pow_int(Int(spec.p), spec.e * spec.g);
  if (qg > Int(static_cast<unsigned long>(kCountCap)))
    fail(Err::TooLarge, "q^g exceeds the counting cap");
  std::vector<Int> s(spec.g);
  Int q = spec.q();
  for (int n = 1; n <= spec.g; ++n) {
    Int qn = pow_int(q, n);
    s[n - 1] = qn + 1 - curve_count(spec, n);
  }
  return make_qsymplectic(newton_reconstruct(s, q, spec.g), q);
}

std::vector<uint64_t> curve_parameters(const ZPoly& f, int64_t p, int e) {
  Fq F = Fq::create(p, e, kCountCap);
  FqPoly fb = fqp::from_coeffs(F, f);
  std::vector<uint64_t> out;
  for (uint64_t idx = 0; idx < F.q_u64(); ++idx) {
    if (!F.is_zero(fqp::eval(F, fb, F.from_index(idx)))) out.push_back(idx);
  }
  return out;
}

}  // namespace zetarel
