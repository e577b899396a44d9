#include "zetarel/fq.hpp"

#include <algorithm>
#include <random>

#include "zetarel/error.hpp"

namespace zetarel {

namespace {

int64_t mod_inv_i64(int64_t a, int64_t p) {
  int64_t t = 0, newt = 1, r = p, newr = ((a % p) + p) % p;
  while (newr != 0) {
    int64_t qq = r / newr;
    std::swap(t -= qq * newt, newt);
    std::swap(r -= qq * newr, newr);
  }
  if (r != 1) fail(Err::InvalidInput, "not invertible");
  return ((t % p) + p) % p;
}

}  // namespace

Fq Fq::create_with_modulus(int64_t p, std::vector<int64_t> modulus) {
  Fq F;
  F.p_ = p;
  F.n_ = static_cast<int>(modulus.size());
  F.modulus_ = std::move(modulus);
  for (auto& c : F.modulus_) c = ((c % p) + p) % p;
  F.q_ = pow_int(Int(p), F.n_);
  F.q_u64_ = F.q_.fits_ulong_p() ? F.q_.get_ui() : 0;
  return F;
}

Fq Fq::create(int64_t p, int n, uint64_t cap) {
  if (p < 2 || !is_prime(p)) fail(Err::NotPrime, "p = " + std::to_string(p));
  if (p == 2) fail(Err::EvenCharacteristic, "p = 2 not supported");
  if (n < 1) fail(Err::InvalidInput, "n must be >= 1");
  Int q = pow_int(Int(p), n);
  if (cap > 0 && q > Int(static_cast<unsigned long>(cap)))
    fail(Err::TooLarge, "p^n exceeds enumeration cap");

  if (n == 1) return create_with_modulus(p, {0});

  // Smallest irreducible monic x^n + c_{n-1}x^{n-1}+...+c_0 with the
  // non-leading coefficients encoded as k = sum c_i p^i.
  Fq Fp = create_with_modulus(p, {0});
  Int bound = pow_int(Int(p), n);
  for (Int k = 1; k < bound; ++k) {
    std::vector<int64_t> coeffs(n);
    Int t = k;
    for (int i = 0; i < n; ++i) {
      Int r = t % p;
      coeffs[i] = r.get_si();
      t /= p;
    }
    FqPoly f(n + 1);
    for (int i = 0; i < n; ++i) f[i] = {coeffs[i]};
    f[n] = {1};
    if (fqp::is_irreducible(Fp, f)) return create_with_modulus(p, coeffs);
  }
  fail(Err::InvalidInput, "no irreducible modulus found");
}

Fq::Elem Fq::one() const {
  Elem e(n_, 0);
  e[0] = 1;
  return e;
}

Fq::Elem Fq::from_int(const Int& k) const {
  Elem e(n_, 0);
  Int r = k % p_;
  if (r < 0) r += p_;
  e[0] = r.get_si();
  return e;
}

Fq::Elem Fq::x() const {
  if (n_ < 2) fail(Err::InvalidInput, "x() needs n >= 2");
  Elem e(n_, 0);
  e[1] = 1;
  return e;
}

bool Fq::is_zero(const Elem& a) const {
  for (auto c : a)
    if (c) return false;
  return true;
}

Fq::Elem Fq::add(const Elem& a, const Elem& b) const {
  Elem r(n_);
  for (int i = 0; i < n_; ++i) {
    r[i] = a[i] + b[i];
    if (r[i] >= p_) r[i] -= p_;
  }
  return r;
}

Fq::Elem Fq::sub(const Elem& a, const Elem& b) const {
  Elem r(n_);
  for (int i = 0; i < n_; ++i) {
    r[i] = a[i] - b[i];
    if (r[i] < 0) r[i] += p_;
  }
  return r;
}

Fq::Elem Fq::neg(const Elem& a) const {
  Elem r(n_);
  for (int i = 0; i < n_; ++i) r[i] = a[i] ? p_ - a[i] : 0;
  return r;
}

Fq::Elem Fq::mul(const Elem& a, const Elem& b) const {
  if (n_ == 1) return {static_cast<int64_t>((static_cast<__int128>(a[0]) * b[0]) % p_)};
  // schoolbook product then reduction by the monic modulus
  std::vector<__int128> t(2 * n_ - 1, 0);
  for (int i = 0; i < n_; ++i) {
    if (!a[i]) continue;
    for (int j = 0; j < n_; ++j) t[i + j] += static_cast<__int128>(a[i]) * b[j];
  }
  for (int i = 0; i < 2 * n_ - 1; ++i) t[i] %= p_;
  for (int d = 2 * n_ - 2; d >= n_; --d) {
    __int128 c = t[d] % p_;
    if (!c) continue;
    t[d] = 0;
    // x^d = x^{d-n} * x^n = -x^{d-n} * (m_{n-1}x^{n-1}+...+m_0)
    for (int i = 0; i < n_; ++i) {
      if (!modulus_[i]) continue;
      t[d - n_ + i] -= c * modulus_[i];
    }
    for (int i = 0; i <= d - 1; ++i) t[i] %= p_;
  }
  Elem r(n_);
  for (int i = 0; i < n_; ++i) {
    int64_t v = static_cast<int64_t>(t[i] % p_);
    if (v < 0) v += p_;
    r[i] = v;
  }
  return r;
}

Fq::Elem Fq::pow(const Elem& a, Int e) const {
  if (e < 0) {
    Elem ia = inv(a);
    return pow(ia, -e);
  }
  Elem r = one(), base = a;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = mul(r, base);
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return r;
}

Fq::Elem Fq::inv(const Elem& a) const {
  if (is_zero(a)) fail(Err::InvalidInput, "inverse of zero");
  if (n_ == 1) return {mod_inv_i64(a[0], p_)};
  return pow(a, q_ - 2);
}

int Fq::quad_char(const Elem& a) const {
  if (is_zero(a)) return 0;
  Elem r = pow(a, (q_ - 1) / 2);
  if (r == one()) return 1;
  return -1;
}

uint64_t Fq::index(const Elem& a) const {
  uint64_t idx = 0, mult = 1;
  for (int i = 0; i < n_; ++i) {
    idx += static_cast<uint64_t>(a[i]) * mult;
    mult *= static_cast<uint64_t>(p_);
  }
  return idx;
}

Fq::Elem Fq::from_index(uint64_t idx) const {
  Elem e(n_);
  for (int i = 0; i < n_; ++i) {
    e[i] = static_cast<int64_t>(idx % static_cast<uint64_t>(p_));
    idx /= static_cast<uint64_t>(p_);
  }
  return e;
}

Int Fq::element_order(const Elem& a) const {
  if (is_zero(a)) fail(Err::InvalidInput, "order of zero");
  Int m = q_ - 1;
  std::vector<Int> primes;
  Int rem = m;
  for (Int f = 2; f * f <= rem; ++f) {
    if (rem % f == 0) {
      primes.push_back(f);
      while (rem % f == 0) rem /= f;
    }
  }
  if (rem > 1) primes.push_back(rem);
  Int ord = m;
  for (const Int& pr : primes) {
    while (ord % pr == 0 && pow(a, ord / pr) == one()) ord /= pr;
  }
  return ord;
}

Fq::Elem Fq::generator() const {
  for (uint64_t idx = 1; idx < q_u64_; ++idx) {
    Elem a = from_index(idx);
    if (element_order(a) == q_ - 1) return a;
  }
  fail(Err::InvalidInput, "no generator found");
}

int64_t Fq::abs_trace(const Elem& a) const {
  // Tr(a) = a + a^p + ... + a^{p^{n-1}}
  Elem s = a, f = a;
  for (int i = 1; i < n_; ++i) {
    f = pow(f, Int(p_));
    s = add(s, f);
  }
  for (int i = 1; i < n_; ++i)
    if (s[i] != 0) fail(Err::InvalidInput, "trace not in prime field");
  return s[0];
}

// ---------------------------------------------------------------------------

namespace fqp {

FqPoly normalize(const Fq& F, FqPoly f) {
  while (!f.empty() && F.is_zero(f.back())) f.pop_back();
  return f;
}

int deg(const FqPoly& f) { return static_cast<int>(f.size()) - 1; }

bool is_zero(const FqPoly& f) { return f.empty(); }

FqPoly zero() { return {}; }

FqPoly one(const Fq& F) { return {F.one()}; }

FqPoly from_coeffs(const Fq& F, const std::vector<Int>& c) {
  FqPoly f(c.size());
  for (size_t i = 0; i < c.size(); ++i) f[i] = F.from_int(c[i]);
  return normalize(F, std::move(f));
}

FqPoly add(const Fq& F, const FqPoly& a, const FqPoly& b) {
  FqPoly r(std::max(a.size(), b.size()), F.zero());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = F.add(r[i], b[i]);
  return normalize(F, std::move(r));
}

FqPoly sub(const Fq& F, const FqPoly& a, const FqPoly& b) {
  FqPoly r(std::max(a.size(), b.size()), F.zero());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
  return normalize(F, std::move(r));
}

FqPoly mul(const Fq& F, const FqPoly& a, const FqPoly& b) {
  if (a.empty() || b.empty()) return {};
  FqPoly r(a.size() + b.size() - 1, F.zero());
  for (size_t i = 0; i < a.size(); ++i) {
    if (F.is_zero(a[i])) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  return normalize(F, std::move(r));
}

FqPoly scale(const Fq& F, const FqPoly& a, const Fq::Elem& c) {
  FqPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
  return normalize(F, std::move(r));
}

FqPoly make_monic(const Fq& F, const FqPoly& a) {
  if (a.empty()) return a;
  return scale(F, a, F.inv(a.back()));
}

void divmod(const Fq& F, const FqPoly& a, const FqPoly& b, FqPoly& q, FqPoly& r) {
  if (b.empty()) fail(Err::ZeroPolynomial, "division by zero polynomial");
  r = a;
  q.assign(a.size() > b.size() ? a.size() - b.size() + 1 : 1, F.zero());
  Fq::Elem lead_inv = F.inv(b.back());
  while (r.size() >= b.size() && !r.empty()) {
    Fq::Elem c = F.mul(r.back(), lead_inv);
    size_t shift = r.size() - b.size();
    q[shift] = F.add(q[shift], c);
    for (size_t i = 0; i < b.size(); ++i)
      r[shift + i] = F.sub(r[shift + i], F.mul(c, b[i]));
    r = normalize(F, std::move(r));
    if (r.size() < b.size()) break;
  }
  q = normalize(F, std::move(q));
}

FqPoly mod(const Fq& F, const FqPoly& a, const FqPoly& b) {
  FqPoly q, r;
  divmod(F, a, b, q, r);
  return r;
}

FqPoly gcd(const Fq& F, FqPoly a, FqPoly b) {
  while (!b.empty()) {
    FqPoly r = mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(F, a);
}

FqPoly derivative(const Fq& F, const FqPoly& a) {
  if (a.size() <= 1) return {};
  FqPoly r(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) {
    Int k(static_cast<long>(i));
    r[i - 1] = F.mul(a[i], F.from_int(k));
  }
  return normalize(F, std::move(r));
}

FqPoly pow_mod(const Fq& F, const FqPoly& base, const Int& e, const FqPoly& m) {
  FqPoly r = one(F);
  FqPoly b = mod(F, base, m);
  Int k = e;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) r = mod(F, mul(F, r, b), m);
    k >>= 1;
    if (k > 0) b = mod(F, mul(F, b, b), m);
  }
  return r;
}

Fq::Elem eval(const Fq& F, const FqPoly& f, const Fq::Elem& x) {
  Fq::Elem acc = F.zero();
  for (size_t i = f.size(); i-- > 0;) acc = F.add(F.mul(acc, x), f[i]);
  return acc;
}

bool eq(const FqPoly& a, const FqPoly& b) { return a == b; }

bool is_irreducible(const Fq& F, const FqPoly& f) {
  int d = deg(f);
  if (d <= 0) return false;
  if (d == 1) return true;
  FqPoly fm = make_monic(F, f);
  // x^{q^d} == x mod f, and gcd(x^{q^{d/r}} - x, f) == 1 for prime r | d
  FqPoly X = {F.zero(), F.one()};
  FqPoly xp = pow_mod(F, X, F.q(), fm);  // x^q
  // iterate Frobenius: frob[i] = x^{q^{i+1}}
  std::vector<FqPoly> frob(d);
  frob[0] = xp;
  for (int i = 1; i < d; ++i) {
    // compose: x^{q^{i+1}} = (x^{q^i}) evaluated at x^q  == powmod of frob[i-1]
    frob[i] = pow_mod(F, frob[i - 1], F.q(), fm);
  }
  if (!eq(frob[d - 1], mod(F, X, fm))) return false;
  for (int r = 2; r <= d; ++r) {
    if (d % r) continue;
    bool rp = true;
    for (int s = 2; s * s <= r; ++s)
      if (r % s == 0) { rp = false; break; }
    if (!rp) continue;
    FqPoly g = gcd(F, sub(F, frob[d / r - 1], X), fm);
    if (deg(g) != 0) return false;
  }
  return true;
}

namespace {

FqPoly random_poly(const Fq& F, int max_deg, std::mt19937_64& rng) {
  FqPoly f(max_deg + 1, F.zero());
  for (int i = 0; i <= max_deg; ++i) {
    uint64_t idx = rng() % F.q_u64();
    f[i] = F.from_index(idx);
  }
  return normalize(F, std::move(f));
}

// Equal-degree splitting of a squarefree product of degree-d irreducibles.
void edf(const Fq& F, const FqPoly& f, int d, std::mt19937_64& rng,
         std::vector<FqPoly>& out) {
  int k = deg(f) / d;
  if (k == 1) {
    out.push_back(make_monic(F, f));
    return;
  }
  // Cantor-Zassenhaus for odd q: gcd(r^{(q^d-1)/2} - 1, f)
  Int e = (pow_int(F.q(), d) - 1) / 2;
  while (true) {
    FqPoly r = random_poly(F, deg(f) - 1, rng);
    if (deg(r) < 1) continue;
    FqPoly g = gcd(F, r, f);
    if (deg(g) > 0 && deg(g) < deg(f)) {
      edf(F, g, d, rng, out);
      FqPoly q, rem;
      divmod(F, f, g, q, rem);
      edf(F, q, d, rng, out);
      return;
    }
    FqPoly h = pow_mod(F, r, e, f);
    h = sub(F, h, one(F));
    g = gcd(F, h, f);
    if (deg(g) > 0 && deg(g) < deg(f)) {
      edf(F, g, d, rng, out);
      FqPoly q, rem;
      divmod(F, f, g, q, rem);
      edf(F, q, d, rng, out);
      return;
    }
  }
}

// Squarefree decomposition in characteristic p; returns (g_i, mult_i).
void squarefree_decompose(const Fq& F, const FqPoly& f, int mult,
                          std::vector<std::pair<FqPoly, int>>& out) {
  FqPoly fp = derivative(F, f);
  if (is_zero(fp)) {
    // f = h(x^p): take p-th root coefficientwise (coeff^{q/p... } in F_p case
    // coefficients are in F_q; c^{p^{n-1}} hmm -- use c^(q/p) which is the
    // inverse of the p-power Frobenius)
    int d = deg(f);
    FqPoly h(d / F.p() + 1, F.zero());
    Int e = F.q() / F.p();
    for (int i = 0; i * F.p() <= d; ++i) h[i] = F.pow(f[i * F.p()], e);
    squarefree_decompose(F, normalize(F, std::move(h)),
                         mult * static_cast<int>(F.p()), out);
    return;
  }
  FqPoly c = gcd(F, f, fp);
  FqPoly w, rem;
  divmod(F, f, c, w, rem);
  int i = 1;
  while (deg(w) > 0) {
    FqPoly y = gcd(F, w, c);
    FqPoly part, r2;
    divmod(F, w, y, part, r2);
    if (deg(part) > 0) out.emplace_back(make_monic(F, part), mult * i);
    FqPoly cq;
    divmod(F, c, y, cq, r2);
    c = cq;
    w = std::move(y);
    ++i;
  }
  if (deg(c) > 0) squarefree_decompose(F, c, mult, out);
}

}  // namespace

Factorization factor(const Fq& F, const FqPoly& f0, uint64_t seed) {
  FqPoly f = f0;
  if (is_zero(f)) fail(Err::ZeroPolynomial, "factor of zero polynomial");
  Factorization out;
  out.unit = f.back();
  f = make_monic(F, f);
  if (deg(f) == 0) return out;

  uint64_t mix = seed;
  for (const auto& c : f)
    for (auto v : c) mix = mix * 1000003811ull + static_cast<uint64_t>(v) + 17;
  std::mt19937_64 rng(mix);

  std::vector<std::pair<FqPoly, int>> sqfree;
  squarefree_decompose(F, f, 1, sqfree);

  for (auto& [part, mult] : sqfree) {
    // distinct-degree on the squarefree part
    FqPoly rest = part;
    FqPoly X = {F.zero(), F.one()};
    FqPoly h = X;
    int d = 0;
    while (deg(rest) > 0) {
      ++d;
      if (2 * d > deg(rest)) {
        out.factors.emplace_back(make_monic(F, rest), mult);
        break;
      }
      h = pow_mod(F, h, F.q(), rest);
      FqPoly g = gcd(F, sub(F, h, X), rest);
      if (deg(g) > 0) {
        std::vector<FqPoly> pieces;
        edf(F, g, d, rng, pieces);
        for (auto& pc : pieces) out.factors.emplace_back(pc, mult);
        FqPoly q, rem;
        divmod(F, rest, g, q, rem);
        rest = q;
        h = mod(F, h, rest);
      }
    }
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [&](const auto& a, const auto& b) {
              if (deg(a.first) != deg(b.first)) return deg(a.first) < deg(b.first);
              for (size_t i = a.first.size(); i-- > 0;) {
                uint64_t ia = F.index(a.first[i]), ib = F.index(b.first[i]);
                if (ia != ib) return ia < ib;
              }
              return a.second < b.second;
            });
  return out;
}

std::vector<Fq::Elem> roots(const Fq& F, const FqPoly& f, uint64_t seed) {
  std::vector<Fq::Elem> out;
  if (is_zero(f)) fail(Err::ZeroPolynomial, "roots of zero polynomial");
  // gcd with x^q - x isolates the split part
  FqPoly X = {F.zero(), F.one()};
  FqPoly fm = make_monic(F, f);
  FqPoly xq = pow_mod(F, X, F.q(), fm);
  FqPoly split = gcd(F, sub(F, xq, X), fm);
  if (deg(split) <= 0) return out;
  auto fac = factor(F, split, seed);
  for (auto& [g, mult] : fac.factors) {
    if (deg(g) == 1) out.push_back(F.neg(g[0]));
  }
  std::sort(out.begin(), out.end(), [&](const Fq::Elem& a, const Fq::Elem& b) {
    return F.index(a) < F.index(b);
  });
  return out;
}

}  // namespace fqp

Embedding::Embedding(const Fq& sub, const Fq& big, uint64_t seed)
    : sub_(&sub), big_(&big) {
  if (big.p() != sub.p() || big.n() % sub.n() != 0)
    fail(Err::MismatchedField, "no embedding");
  if (sub.n() == 1) {
    root_ = big.zero();
    return;
  }
  // image of the subfield generator x = smallest-index root of the subfield
  // modulus in the big field
  FqPoly m(sub.n() + 1);
  for (int i = 0; i < sub.n(); ++i) m[i] = big.from_int(Int(sub.modulus()[i]));
  m[sub.n()] = big.one();
  auto rts = fqp::roots(big, m, seed);
  if (rts.empty()) fail(Err::MismatchedField, "modulus has no root upstairs");
  root_ = rts.front();
}

Fq::Elem Embedding::map(const Fq::Elem& a) const {
  if (sub_->n() == 1) return big_->from_int(Int(a[0]));
  Fq::Elem acc = big_->zero();
  for (size_t i = a.size(); i-- > 0;) {
    acc = big_->mul(acc, root_);
    acc = big_->add(acc, big_->from_int(Int(a[i])));
  }
  return acc;
}

}  // namespace zetarel
