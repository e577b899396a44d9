#include "zetarel/ball.hpp"

#include <mpfr.h>

#include <cstdio>

#include "zetarel/error.hpp"

namespace zetarel {

namespace {

// After a correctly-rounded midpoint operation (MPFR_RNDN), the rounding
// error is at most one ulp of the result: 2^(exp - prec).
void add_round_slack(BigFloat& rad, mpfr_srcptr mid) {
  if (mpfr_zero_p(mid)) return;  // exact zero results are exact
  mpfr_exp_t e = mpfr_get_exp(mid);
  mpfr_prec_t p = mpfr_get_prec(mid);
  mpfr_t ulp;
  mpfr_init2(ulp, kRadPrec);
  mpfr_set_ui_2exp(ulp, 1, e - p, MPFR_RNDU);
  mpfr_add(rad.get(), rad.get(), ulp, MPFR_RNDU);
  mpfr_clear(ulp);
}

void add_2exp(BigFloat& rad, long e) {
  mpfr_t t;
  mpfr_init2(t, kRadPrec);
  mpfr_set_ui_2exp(t, 1, e, MPFR_RNDU);
  mpfr_add(rad.get(), rad.get(), t, MPFR_RNDU);
  mpfr_clear(t);
}

// rad += |x| * r  (all upward)
void add_absmul(BigFloat& rad, mpfr_srcptr x, mpfr_srcptr r) {
  mpfr_t t;
  mpfr_init2(t, kRadPrec);
  mpfr_abs(t, x, MPFR_RNDU);
  mpfr_mul(t, t, r, MPFR_RNDU);
  mpfr_add(rad.get(), rad.get(), t, MPFR_RNDU);
  mpfr_clear(t);
}

}  // namespace

RealBall RealBall::exact_int(const Int& n, mpfr_prec_t prec) {
  RealBall r(prec);
  int inex = mpfr_set_z(r.mid_.get(), n.get_mpz_t(), MPFR_RNDN);
  if (inex != 0) add_round_slack(r.rad_, r.mid_.get());
  return r;
}

RealBall RealBall::exact_ratio(const Int& num, const Int& den, mpfr_prec_t prec) {
  RealBall r(prec);
  Rat q(num, den);
  q.canonicalize();
  int inex = mpfr_set_q(r.mid_.get(), q.get_mpq_t(), MPFR_RNDN);
  if (inex != 0) add_round_slack(r.rad_, r.mid_.get());
  return r;
}

RealBall RealBall::sqrt_int(const Int& n, mpfr_prec_t prec) {
  RealBall r(prec);
  BigFloat t(prec + 32);
  mpfr_set_z(t.get(), n.get_mpz_t(), MPFR_RNDN);
  mpfr_sqrt(t.get(), t.get(), MPFR_RNDN);
  mpfr_set(r.mid_.get(), t.get(), MPFR_RNDN);
  // two roundings at prec+32 plus one at prec
  add_round_slack(r.rad_, r.mid_.get());
  if (!r.mid_.is_zero()) add_2exp(r.rad_, mpfr_get_exp(r.mid_.get()) - prec - 28);
  return r;
}

RealBall RealBall::pi(mpfr_prec_t prec) {
  RealBall r(prec);
  mpfr_const_pi(r.mid_.get(), MPFR_RNDN);
  add_round_slack(r.rad_, r.mid_.get());
  return r;
}

BigFloat RealBall::upper() const {
  BigFloat u(prec());
  mpfr_add(u.get(), mid_.get(), rad_.get(), MPFR_RNDU);
  return u;
}

BigFloat RealBall::lower() const {
  BigFloat l(prec());
  mpfr_sub(l.get(), mid_.get(), rad_.get(), MPFR_RNDD);
  return l;
}

bool RealBall::contains_zero() const {
  BigFloat a(kRadPrec);
  mpfr_abs(a.get(), mid_.get(), MPFR_RNDD);
  return mpfr_cmp(a.get(), rad_.get()) <= 0;
}

long RealBall::rad_exp2() const {
  if (rad_.is_zero()) return -(1L << 30);
  return static_cast<long>(mpfr_get_exp(rad_.get()));
}

RealBall add(const RealBall& a, const RealBall& b) {
  RealBall r(std::max(a.prec(), b.prec()));
  mpfr_add(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
  mpfr_add(r.rad_.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
  add_round_slack(r.rad_, r.mid_.get());
  return r;
}

RealBall sub(const RealBall& a, const RealBall& b) {
  RealBall r(std::max(a.prec(), b.prec()));
  mpfr_sub(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
  mpfr_add(r.rad_.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
  add_round_slack(r.rad_, r.mid_.get());
  return r;
}

RealBall neg(const RealBall& a) {
  RealBall r(a.prec());
  mpfr_neg(r.mid_.get(), a.mid_.get(), MPFR_RNDN);
  mpfr_set(r.rad_.get(), a.rad_.get(), MPFR_RNDU);
  return r;
}

RealBall mul(const RealBall& a, const RealBall& b) {
  RealBall r(std::max(a.prec(), b.prec()));
  mpfr_mul(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
  add_absmul(r.rad_, a.mid_.get(), b.rad_.get());
  add_absmul(r.rad_, b.mid_.get(), a.rad_.get());
  mpfr_t t;
  mpfr_init2(t, kRadPrec);
  mpfr_mul(t, a.rad_.get(), b.rad_.get(), MPFR_RNDU);
  mpfr_add(r.rad_.get(), r.rad_.get(), t, MPFR_RNDU);
  mpfr_clear(t);
  add_round_slack(r.rad_, r.mid_.get());
  return r;
}

RealBall div(const RealBall& a, const RealBall& b) {
  // |a/b - am/bm| <= (|bm| ra + |am| rb) / (|bm| (|bm| - rb))
  BigFloat babs(kRadPrec);
  mpfr_abs(babs.get(), b.mid_.get(), MPFR_RNDD);
  mpfr_t den;
  mpfr_init2(den, kRadPrec);
  mpfr_sub(den, babs.get(), b.rad_.get(), MPFR_RNDD);
  if (mpfr_sgn(den) <= 0) {
    mpfr_clear(den);
    fail(Err::PrecisionExhausted, "division by ball containing zero");
  }
  RealBall r(std::max(a.prec(), b.prec()));
  mpfr_div(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
  mpfr_t num, t;
  mpfr_init2(num, kRadPrec);
  mpfr_init2(t, kRadPrec);
  mpfr_abs(num, b.mid_.get(), MPFR_RNDU);
  mpfr_mul(num, num, a.rad_.get(), MPFR_RNDU);
  mpfr_abs(t, a.mid_.get(), MPFR_RNDU);
  mpfr_mul(t, t, b.rad_.get(), MPFR_RNDU);
  mpfr_add(num, num, t, MPFR_RNDU);
  mpfr_mul(t, babs.get(), den, MPFR_RNDD);
  mpfr_div(num, num, t, MPFR_RNDU);
  mpfr_add(r.rad_.get(), r.rad_.get(), num, MPFR_RNDU);
  add_round_slack(r.rad_, r.mid_.get());
  mpfr_clears(den, num, t, nullptr);
  return r;
}

RealBall RealBall::abs() const {
  RealBall r(prec());
  mpfr_abs(r.mid_.get(), mid_.get(), MPFR_RNDN);
  mpfr_set(r.rad_.get(), rad_.get(), MPFR_RNDU);
  return r;
}

std::string RealBall::str(int digits) const {
  char buf[256];
  mpfr_snprintf(buf, sizeof buf, "%.*Rg", digits, mid_.get());
  char rbuf[64];
  mpfr_snprintf(rbuf, sizeof rbuf, "%.3Rg", rad_.get());
  return std::string(buf) + " +/- " + rbuf;
}

// ---------------------------------------------------------------------------

ComplexBall ComplexBall::from_real(const RealBall& r, mpfr_prec_t prec) {
  ComplexBall z(prec);
  mpfr_set(z.re_.get(), r.mid().get(), MPFR_RNDN);
  mpfr_set_zero(z.im_.get(), 1);
  mpfr_set(z.rad_.get(), r.rad().get(), MPFR_RNDU);
  add_round_slack(z.rad_, z.re_.get());
  return z;
}

ComplexBall ComplexBall::from_parts(const RealBall& re, const RealBall& im, mpfr_prec_t prec) {
  ComplexBall z(prec);
  mpfr_set(z.re_.get(), re.mid().get(), MPFR_RNDN);
  mpfr_set(z.im_.get(), im.mid().get(), MPFR_RNDN);
  mpfr_add(z.rad_.get(), re.rad().get(), im.rad().get(), MPFR_RNDU);
  add_round_slack(z.rad_, z.re_.get());
  add_round_slack(z.rad_, z.im_.get());
  return z;
}

ComplexBall ComplexBall::exact_int(const Int& n, mpfr_prec_t prec) {
  return from_real(RealBall::exact_int(n, prec), prec);
}

ComplexBall ComplexBall::root_of_unity(const Int& num, const Int& den, mpfr_prec_t prec) {
  if (den == 0) fail(Err::InvalidInput, "root_of_unity: zero denominator");
  Int n = num % den;
  if (n < 0) n += ::abs(den);
  mpfr_prec_t wp = prec + 32;
  BigFloat t(wp);
  mpfr_const_pi(t.get(), MPFR_RNDN);
  mpfr_mul_ui(t.get(), t.get(), 2, MPFR_RNDN);
  mpfr_mul_z(t.get(), t.get(), n.get_mpz_t(), MPFR_RNDN);
  mpfr_div_z(t.get(), t.get(), den.get_mpz_t(), MPFR_RNDN);
  ComplexBall z(prec);
  BigFloat s(wp), c(wp);
  mpfr_sin_cos(s.get(), c.get(), t.get(), MPFR_RNDN);
  mpfr_set(z.re_.get(), c.get(), MPFR_RNDN);
  mpfr_set(z.im_.get(), s.get(), MPFR_RNDN);
  // t carries ~4 roundings at wp of a value <= 2*pi*|n/den| < 2*pi; sin/cos
  // contract error (derivative bounded by 1), plus final roundings at prec.
  add_2exp(z.rad_, 8 - static_cast<long>(wp));
  add_2exp(z.rad_, 2 - static_cast<long>(prec));
  return z;
}

BigFloat ComplexBall::abs_upper() const {
  BigFloat h(kRadPrec);
  mpfr_hypot(h.get(), re_.get(), im_.get(), MPFR_RNDU);
  mpfr_add(h.get(), h.get(), rad_.get(), MPFR_RNDU);
  return h;
}

BigFloat ComplexBall::abs_lower() const {
  BigFloat h(kRadPrec);
  mpfr_hypot(h.get(), re_.get(), im_.get(), MPFR_RNDD);
  mpfr_sub(h.get(), h.get(), rad_.get(), MPFR_RNDD);
  if (mpfr_sgn(h.get()) < 0) mpfr_set_zero(h.get(), 1);
  return h;
}

long ComplexBall::rad_exp2() const {
  if (rad_.is_zero()) return -(1L << 30);
  return static_cast<long>(mpfr_get_exp(rad_.get()));
}

ComplexBall ComplexBall::conj() const {
  ComplexBall z(*this);
  mpfr_neg(z.im_.get(), z.im_.get(), MPFR_RNDN);
  return z;
}

ComplexBall ComplexBall::neg() const {
  ComplexBall z(*this);
  mpfr_neg(z.re_.get(), z.re_.get(), MPFR_RNDN);
  mpfr_neg(z.im_.get(), z.im_.get(), MPFR_RNDN);
  return z;
}

ComplexBall add(const ComplexBall& a, const ComplexBall& b) {
  ComplexBall z(std::max(a.prec(), b.prec()));
  mpfr_add(z.re_.get(), a.re_.get(), b.re_.get(), MPFR_RNDN);
  mpfr_add(z.im_.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
  mpfr_add(z.rad_.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
  add_round_slack(z.rad_, z.re_.get());
  add_round_slack(z.rad_, z.im_.get());
  return z;
}

ComplexBall sub(const ComplexBall& a, const ComplexBall& b) {
  return add(a, b.neg());
}

ComplexBall mul(const ComplexBall& a, const ComplexBall& b) {
  ComplexBall z(std::max(a.prec(), b.prec()));
  // fmms/fmma give one correctly-rounded result per component
  mpfr_fmms(z.re_.get(), a.re_.get(), b.re_.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
  mpfr_fmma(z.im_.get(), a.re_.get(), b.im_.get(), a.im_.get(), b.re_.get(), MPFR_RNDN);
  // rad <= |a| rb + |b| ra + ra rb + rounding
  BigFloat aa = a.abs_upper(), bb = b.abs_upper();
  mpfr_t t;
  mpfr_init2(t, kRadPrec);
  mpfr_mul(t, aa.get(), b.rad_.get(), MPFR_RNDU);
  mpfr_add(z.rad_.get(), z.rad_.get(), t, MPFR_RNDU);
  mpfr_mul(t, bb.get(), a.rad_.get(), MPFR_RNDU);
  mpfr_add(z.rad_.get(), z.rad_.get(), t, MPFR_RNDU);
  mpfr_mul(t, a.rad_.get(), b.rad_.get(), MPFR_RNDU);
  mpfr_add(z.rad_.get(), z.rad_.get(), t, MPFR_RNDU);
  mpfr_clear(t);
  add_round_slack(z.rad_, z.re_.get());
  add_round_slack(z.rad_, z.im_.get());
  return z;
}

ComplexBall mul_int(const ComplexBall& a, const Int& k) {
  ComplexBall z(a.prec());
  mpfr_mul_z(z.re_.get(), a.re_.get(), k.get_mpz_t(), MPFR_RNDN);
  mpfr_mul_z(z.im_.get(), a.im_.get(), k.get_mpz_t(), MPFR_RNDN);
  mpfr_t t;
  mpfr_init2(t, kRadPrec);
  mpfr_set_z(t, k.get_mpz_t(), MPFR_RNDU);
  mpfr_abs(t, t, MPFR_RNDU);
  mpfr_mul(t, t, a.rad_.get(), MPFR_RNDU);
  mpfr_set(z.rad_.get(), t, MPFR_RNDU);
  mpfr_clear(t);
  add_round_slack(z.rad_, z.re_.get());
  add_round_slack(z.rad_, z.im_.get());
  return z;
}

ComplexBall div_real(const ComplexBall& a, const RealBall& b) {
  BigFloat blo = b.lower();
  if (mpfr_sgn(blo.get()) <= 0)
    fail(Err::PrecisionExhausted, "div_real: divisor ball not positive");
  ComplexBall z(std::max(a.prec(), b.prec()));
  mpfr_div(z.re_.get(), a.re_.get(), b.mid().get(), MPFR_RNDN);
  mpfr_div(z.im_.get(), a.im_.get(), b.mid().get(), MPFR_RNDN);
  // |a/b - am/bm| <= (|bm| ra + |am| rb) / (bm * blo)
  BigFloat aa = a.abs_upper();
  mpfr_t num, t, den;
  mpfr_init2(num, kRadPrec);
  mpfr_init2(t, kRadPrec);
  mpfr_init2(den, kRadPrec);
  mpfr_abs(num, b.mid().get(), MPFR_RNDU);
  mpfr_mul(num, num, a.rad_.get(), MPFR_RNDU);
  mpfr_mul(t, aa.get(), b.rad().get(), MPFR_RNDU);
  mpfr_add(num, num, t, MPFR_RNDU);
  mpfr_abs(den, b.mid().get(), MPFR_RNDD);
  mpfr_mul(den, den, blo.get(), MPFR_RNDD);
  mpfr_div(num, num, den, MPFR_RNDU);
  mpfr_add(z.rad_.get(), z.rad_.get(), num, MPFR_RNDU);
  mpfr_clears(num, t, den, nullptr);
  add_round_slack(z.rad_, z.re_.get());
  add_round_slack(z.rad_, z.im_.get());
  return z;
}

ComplexBall pow_ui(const ComplexBall& a, unsigned long e) {
  ComplexBall r = ComplexBall::exact_int(1, a.prec());
  if (e == 0) return r;
  ComplexBall base = a;
  while (true) {
    if (e & 1) r = mul(r, base);
    e >>= 1;
    if (e == 0) break;
    base = mul(base, base);
  }
  return r;
}

RealBall dist(const ComplexBall& a, const ComplexBall& b) {
  RealBall d(std::max(a.prec(), b.prec()));
  BigFloat dre(d.prec()), dim(d.prec());
  mpfr_sub(dre.get(), a.re_.get(), b.re_.get(), MPFR_RNDN);
  mpfr_sub(dim.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
  mpfr_hypot(d.mid().get(), dre.get(), dim.get(), MPFR_RNDN);
  mpfr_add(d.rad().get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
  add_round_slack(d.rad(), dre.get());
  add_round_slack(d.rad(), dim.get());
  add_round_slack(d.rad(), d.mid().get());
  return d;
}

bool surely_disjoint(const ComplexBall& a, const ComplexBall& b) {
  RealBall d = dist(a, b);
  BigFloat lo = d.lower();
  return mpfr_sgn(lo.get()) > 0;
}

bool possibly_overlap(const ComplexBall& a, const ComplexBall& b) {
  return !surely_disjoint(a, b);
}

RealBall ComplexBall::angle_frac() const {
  BigFloat lo = abs_lower();
  if (mpfr_sgn(lo.get()) <= 0)
    fail(Err::PrecisionExhausted, "angle_frac: ball contains zero");
  mpfr_prec_t p = prec();
  RealBall th(p);
  BigFloat a(p);
  mpfr_atan2(a.get(), im_.get(), re_.get(), MPFR_RNDN);
  BigFloat twopi(p);
  mpfr_const_pi(twopi.get(), MPFR_RNDN);
  mpfr_mul_ui(twopi.get(), twopi.get(), 2, MPFR_RNDN);
  mpfr_div(th.mid().get(), a.get(), twopi.get(), MPFR_RNDN);
  if (mpfr_sgn(th.mid().get()) < 0) mpfr_add_ui(th.mid().get(), th.mid().get(), 1, MPFR_RNDN);
  // |d atan2| <= rad / |z|_lo ; divide by 2*pi (>6), keep it simple and bound
  // by rad / (6 |z|_lo), then account for a few roundings at precision p.
  mpfr_t t;
  mpfr_init2(t, kRadPrec);
  mpfr_div(t, rad_.get(), lo.get(), MPFR_RNDU);
  mpfr_div_ui(t, t, 6, MPFR_RNDU);
  mpfr_add(th.rad().get(), th.rad().get(), t, MPFR_RNDU);
  mpfr_clear(t);
  add_2exp(th.rad(), 4 - static_cast<long>(p));
  return th;
}

std::string ComplexBall::str(int digits) const {
  char buf[512];
  mpfr_snprintf(buf, sizeof buf, "%.*Rg %+.*Rg*i", digits, re_.get(), digits, im_.get());
  char rbuf[64];
  mpfr_snprintf(rbuf, sizeof rbuf, "%.3Rg", rad_.get());
  return std::string(buf) + " +/- " + rbuf;
}

}  // namespace zetarel
