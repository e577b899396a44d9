#include "zetarel/roots.hpp"

#include <algorithm>
#include <optional>

#include "zetarel/error.hpp"

namespace zetarel {

namespace {

constexpr long kMaxPrec = 1L << 22;

// midpoint-only complex arithmetic for the Aberth iteration
struct CF {
  BigFloat re, im;
  explicit CF(mpfr_prec_t p) : re(p), im(p) {}
};

void cf_add(CF& r, const CF& a, const CF& b) {
  mpfr_add(r.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(r.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
}
void cf_sub(CF& r, const CF& a, const CF& b) {
  mpfr_sub(r.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_sub(r.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
}
void cf_mul(CF& r, const CF& a, const CF& b) {
  BigFloat t1(mpfr_get_prec(r.re.get())), t2(mpfr_get_prec(r.re.get()));
  mpfr_fmms(t1.get(), a.re.get(), b.re.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_fmma(t2.get(), a.re.get(), b.im.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_set(r.re.get(), t1.get(), MPFR_RNDN);
  mpfr_set(r.im.get(), t2.get(), MPFR_RNDN);
}
void cf_div(CF& r, const CF& a, const CF& b) {
  mpfr_prec_t p = mpfr_get_prec(r.re.get());
  BigFloat n2(p), t1(p), t2(p);
  mpfr_fmma(n2.get(), b.re.get(), b.re.get(), b.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_fmma(t1.get(), a.re.get(), b.re.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_fmms(t2.get(), a.im.get(), b.re.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_div(r.re.get(), t1.get(), n2.get(), MPFR_RNDN);
  mpfr_div(r.im.get(), t2.get(), n2.get(), MPFR_RNDN);
}
void cf_abs(BigFloat& out, const CF& a) {
  mpfr_hypot(out.get(), a.re.get(), a.im.get(), MPFR_RNDN);
}

// Horner evaluation of an integer polynomial at a midpoint
void cf_eval(CF& out, const ZPoly& f, const CF& z, mpfr_prec_t prec) {
  CF acc(prec), t(prec);
  mpfr_set_zero(acc.re.get(), 1);
  mpfr_set_zero(acc.im.get(), 1);
  for (size_t i = f.size(); i-- > 0;) {
    cf_mul(t, acc, z);
    mpfr_add_z(acc.re.get(), t.re.get(), f[i].get_mpz_t(), MPFR_RNDN);
    mpfr_set(acc.im.get(), t.im.get(), MPFR_RNDN);
  }
  out = acc;
}

ComplexBall ball_eval(const ZPoly& f, const ComplexBall& z) {
  ComplexBall acc = ComplexBall::exact_int(0, z.prec());
  for (size_t i = f.size(); i-- > 0;) {
    acc = mul(acc, z);
    acc = add(acc, ComplexBall::exact_int(f[i], z.prec()));
  }
  return acc;
}

ComplexBall exact_point(const CF& z, mpfr_prec_t prec) {
  ComplexBall b(prec);
  mpfr_set(b.re().get(), z.re.get(), MPFR_RNDN);
  mpfr_set(b.im().get(), z.im.get(), MPFR_RNDN);
  return b;  // zero radius: the midpoint itself is the point
}

// One certification attempt at working precision wp. Returns enclosures or
// nothing if the disks fail to certify.
std::optional<std::vector<ComplexBall>> try_isolate(const ZPoly& f, const Int& q,
                                                    int bits, mpfr_prec_t wp) {
  const int d = zp::deg(f);
  ZPoly fp = zp::derivative(f);

  // initial points on the circle |z| = sqrt(q), angles spread with an
  // irrational-ish offset so no starting point sits on a symmetry axis
  BigFloat r0(wp);
  mpfr_set_z(r0.get(), q.get_mpz_t(), MPFR_RNDN);
  mpfr_sqrt(r0.get(), r0.get(), MPFR_RNDN);
  std::vector<CF> z(d, CF(wp));
  for (int j = 0; j < d; ++j) {
    BigFloat ang(wp);
    mpfr_const_pi(ang.get(), MPFR_RNDN);
    mpfr_mul_d(ang.get(), ang.get(), 2.0 * (j + 0.5 + 0.318309886 * (j + 1)) / d, MPFR_RNDN);
    BigFloat s(wp), c(wp);
    mpfr_sin_cos(s.get(), c.get(), ang.get(), MPFR_RNDN);
    mpfr_mul(z[j].re.get(), c.get(), r0.get(), MPFR_RNDN);
    mpfr_mul(z[j].im.get(), s.get(), r0.get(), MPFR_RNDN);
  }

  const int max_iter = 120 + 8 * d;
  BigFloat tol(wp);
  mpfr_set_ui_2exp(tol.get(), 1, -(static_cast<long>(wp) - 24), MPFR_RNDU);
  mpfr_mul(tol.get(), tol.get(), r0.get(), MPFR_RNDU);

  CF fz(wp), fpz(wp), w(wp), ssum(wp), diff(wp), invd(wp), denom(wp), corr(wp);
  CF one(wp);
  mpfr_set_ui(one.re.get(), 1, MPFR_RNDN);
  mpfr_set_zero(one.im.get(), 1);
  BigFloat mag(wp), worst(wp);

  for (int it = 0; it < max_iter; ++it) {
    mpfr_set_zero(worst.get(), 1);
    for (int j = 0; j < d; ++j) {
      cf_eval(fz, f, z[j], wp);
      cf_eval(fpz, fp, z[j], wp);
      if (mpfr_zero_p(fpz.re.get()) && mpfr_zero_p(fpz.im.get())) continue;
      cf_div(w, fz, fpz);
      mpfr_set_zero(ssum.re.get(), 1);
      mpfr_set_zero(ssum.im.get(), 1);
      for (int k = 0; k < d; ++k) {
        if (k == j) continue;
        cf_sub(diff, z[j], z[k]);
        if (mpfr_zero_p(diff.re.get()) && mpfr_zero_p(diff.im.get())) continue;
        cf_div(invd, one, diff);
        cf_add(ssum, ssum, invd);
      }
      cf_mul(denom, w, ssum);
      cf_sub(denom, one, denom);
      if (mpfr_zero_p(denom.re.get()) && mpfr_zero_p(denom.im.get())) continue;
      cf_div(corr, w, denom);
      cf_sub(z[j], z[j], corr);
      cf_abs(mag, corr);
      if (mpfr_cmp(mag.get(), worst.get()) > 0) mpfr_set(worst.get(), mag.get(), MPFR_RNDN);
    }
    if (mpfr_cmp(worst.get(), tol.get()) < 0) break;
  }

  // certification: the disk around z_j of radius d*|f(z_j)/f'(z_j)| contains
  // a root; d pairwise disjoint disks therefore contain one root each
  std::vector<ComplexBall> disks;
  disks.reserve(d);
  BigFloat target(kRadPrec);
  mpfr_set_ui_2exp(target.get(), 1, -static_cast<long>(bits), MPFR_RNDU);
  mpfr_mul(target.get(), target.get(), r0.get(), MPFR_RNDU);
  for (int j = 0; j < d; ++j) {
    ComplexBall zb = exact_point(z[j], wp);
    ComplexBall fzb = ball_eval(f, zb);
    ComplexBall fpzb = ball_eval(fp, zb);
    BigFloat num = fzb.abs_upper();
    BigFloat den = fpzb.abs_lower();
    if (mpfr_sgn(den.get()) <= 0) return std::nullopt;
    BigFloat rad(kRadPrec);
    mpfr_div(rad.get(), num.get(), den.get(), MPFR_RNDU);
    mpfr_mul_ui(rad.get(), rad.get(), d, MPFR_RNDU);
    if (mpfr_cmp(rad.get(), target.get()) > 0) return std::nullopt;
    mpfr_set(zb.rad().get(), rad.get(), MPFR_RNDU);
    disks.push_back(std::move(zb));
  }
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (!surely_disjoint(disks[i], disks[j])) return std::nullopt;
  return disks;
}

}  // namespace

std::vector<ComplexBall> isolate_on_circle(const ZPoly& monic, const Int& q, int bits) {
  if (zp::deg(monic) < 1) return {};
  if (monic.back() != 1) fail(Err::InvalidInput, "isolate_on_circle needs a monic input");
  for (mpfr_prec_t wp = std::max(128, bits + 64); wp <= kMaxPrec; wp *= 2) {
    auto r = try_isolate(monic, q, bits, wp);
    if (r) return std::move(*r);
  }
  fail(Err::PrecisionExhausted, "root certification did not converge");
}

namespace {

struct PairRec {
  ComplexBall rep, partner;
  RealBall theta;
  bool self = false;
  int source = 0;
  int copy = 0;
};

// enclosures of a squarefree factor, grouped into conjugate pairs
void pair_up(const ZPoly& part, const Int& q, int bits, int source, int mult,
             std::vector<PairRec>& out) {
  ZPoly f = part;
  int real_plus = 0, real_minus = 0;
  // roots of modulus sqrt(q) that are real are exactly +-sqrt(q)
  if (is_square(q)) {
    Int s = isqrt(q);
    ZPoly quo;
    while (zp::deg(f) > 0 && zp::eval(f, s) == 0 && zp::divide_exact(f, {-s, Int(1)}, quo)) {
      f = quo;
      ++real_plus;
    }
    while (zp::deg(f) > 0 && zp::eval(f, -s) == 0 && zp::divide_exact(f, {s, Int(1)}, quo)) {
      f = quo;
      ++real_minus;
    }
  } else {
    ZPoly quad = {-q, Int(0), Int(1)};
    ZPoly quo;
    while (zp::deg(f) >= 2 && zp::divide_exact(f, quad, quo)) {
      f = quo;
      ++real_plus;
      ++real_minus;
    }
  }
  int prec = std::max(128, bits + 32);
  for (int sgn : {+1, -1}) {
    int cnt = sgn > 0 ? real_plus : real_minus;
    for (int c = 0; c < cnt; ++c) {
      PairRec pr;
      RealBall s = RealBall::sqrt_int(q, prec);
      if (sgn < 0) s = neg(s);
      pr.rep = ComplexBall::from_real(s, prec);
      pr.partner = pr.rep;
      pr.self = true;
      pr.theta = RealBall(prec);
      if (sgn < 0) mpfr_set_d(pr.theta.mid().get(), 0.5, MPFR_RNDN);
      pr.source = source;
      for (int m = 0; m < mult; ++m) {
        pr.copy = m;
        out.push_back(pr);
      }
    }
  }
  if (zp::deg(f) < 1) return;

  auto disks = isolate_on_circle(f, q, bits);
  const int d = static_cast<int>(disks.size());
  // all remaining roots are strictly non-real; insist the disks say so
  for (const auto& disk : disks) {
    BigFloat im_abs(kRadPrec);
    mpfr_abs(im_abs.get(), disk.im().get(), MPFR_RNDD);
    if (mpfr_cmp(im_abs.get(), disk.rad().get()) <= 0)
      fail(Err::PrecisionExhausted, "enclosure touches the real axis");
  }
  // conjugate pairing: since |alpha|^2 = q exactly, q/alpha is the complex
  // conjugate, so the partner enclosure is the one meeting the mirrored disk
  std::vector<int> partner(d, -1);
  for (int i = 0; i < d; ++i) {
    ComplexBall mirror = disks[i].conj();
    int hit = -1;
    for (int j = 0; j < d; ++j) {
      if (possibly_overlap(mirror, disks[j])) {
        if (hit >= 0) fail(Err::PrecisionExhausted, "ambiguous pairing");
        hit = j;
      }
    }
    if (hit < 0 || hit == i) fail(Err::PrecisionExhausted, "pairing failed");
    partner[i] = hit;
  }
  std::vector<bool> used(d, false);
  for (int i = 0; i < d; ++i) {
    if (used[i]) continue;
    int j = partner[i];
    if (partner[j] != i) fail(Err::PrecisionExhausted, "pairing not involutive");
    used[i] = used[j] = true;
    int rep = mpfr_sgn(disks[i].im().get()) > 0 ? i : j;
    int other = rep == i ? j : i;
    PairRec pr;
    pr.rep = disks[rep];
    pr.partner = disks[other];
    pr.theta = pr.rep.angle_frac();
    pr.self = false;
    pr.source = source;
    for (int m = 0; m < mult; ++m) {
      pr.copy = m;
      out.push_back(pr);
    }
  }
}

RootSystem assemble(const std::vector<QSymplecticPoly>& polys, std::vector<PairRec> recs,
                    int bits) {
  std::stable_sort(recs.begin(), recs.end(), [](const PairRec& a, const PairRec& b) {
    int c = mpfr_cmp(a.theta.mid().get(), b.theta.mid().get());
    if (c != 0) return c < 0;
    if (a.source != b.source) return a.source < b.source;
    return a.copy < b.copy;
  });
  RootSystem rs;
  rs.q = polys.front().q;
  rs.bits = bits;
  rs.sources = polys;
  for (const auto& pr : recs) {
    int pair_idx = static_cast<int>(rs.rep_flat.size());
    int base = static_cast<int>(rs.roots.size());
    rs.rep_flat.push_back(base);
    rs.theta.push_back(pr.theta);
    rs.source_of_pair.push_back(pr.source);
    if (pr.self) {
      rs.roots.push_back(pr.rep);
      rs.partner.push_back(base);
      rs.pair_of.push_back(pair_idx);
    } else {
      rs.roots.push_back(pr.rep);
      rs.roots.push_back(pr.partner);
      rs.partner.push_back(base + 1);
      rs.partner.push_back(base);
      rs.pair_of.push_back(pair_idx);
      rs.pair_of.push_back(pair_idx);
    }
  }
  return rs;
}

std::vector<PairRec> build_recs(const std::vector<QSymplecticPoly>& polys, int bits,
                                bool allow_repeated) {
  std::vector<PairRec> recs;
  for (size_t s = 0; s < polys.size(); ++s) {
    const auto& p = polys[s];
    if (p.q != polys.front().q) fail(Err::MismatchedField, "mixed q in root system");
    ZPoly star = reversed_monic(p);
    auto dec = zp::squarefree_decomposition(star);
    if (!allow_repeated) {
      for (auto& [part, m] : dec)
        if (m > 1)
          fail(Err::PrecisionExhausted,
               "repeated roots; deflate repeated factors first");
    }
    for (auto& [part, m] : dec) pair_up(part, p.q, bits, static_cast<int>(s), m, recs);
  }
  return recs;
}

}  // namespace

int RootSystem::genus_total() const {
  int g = 0;
  for (const auto& p : sources) g += p.g;
  return g;
}

RootSystem certified_roots(const QSymplecticPoly& p, int bits) {
  if (bits < 64) fail(Err::InvalidInput, "need bits >= 64");
  if (!rh_check(p)) fail(Err::NotSymplectic, "roots not on the sqrt(q) circle");
  auto recs = build_recs({p}, bits, false);
  return assemble({p}, std::move(recs), bits);
}

RootSystem root_system(const std::vector<QSymplecticPoly>& polys, int bits) {
  if (polys.empty()) fail(Err::InvalidInput, "no polynomials");
  if (bits < 64) fail(Err::InvalidInput, "need bits >= 64");
  for (const auto& p : polys)
    if (!rh_check(p)) fail(Err::NotSymplectic, "roots not on the sqrt(q) circle");
  auto recs = build_recs(polys, bits, true);
  return assemble(polys, std::move(recs), bits);
}

RootSystem refine(const RootSystem& base, int bits) {
  RootSystem fresh = root_system(base.sources, bits);
  if (fresh.pair_count() != base.pair_count())
    fail(Err::PrecisionExhausted, "refinement changed the pair structure");
  // permute fresh pairs into base order: each refined representative must sit
  // inside exactly one old representative disk (or be an identical duplicate)
  std::vector<int> perm(base.pair_count(), -1);
  std::vector<bool> taken(base.pair_count(), false);
  for (size_t bi = 0; bi < base.pair_count(); ++bi) {
    const ComplexBall& old_rep = base.roots[base.rep_flat[bi]];
    std::vector<size_t> cands;
    for (size_t fi = 0; fi < fresh.pair_count(); ++fi) {
      if (taken[fi]) continue;
      if (base.source_of_pair[bi] != fresh.source_of_pair[fi]) continue;
      if (possibly_overlap(old_rep, fresh.roots[fresh.rep_flat[fi]])) cands.push_back(fi);
    }
    if (cands.empty()) fail(Err::PrecisionExhausted, "refinement lost a root");
    // several candidates are fine only when they are duplicates of one root
    for (size_t k = 1; k < cands.size(); ++k)
      if (!possibly_overlap(fresh.roots[fresh.rep_flat[cands[0]]],
                            fresh.roots[fresh.rep_flat[cands[k]]]))
        fail(Err::PrecisionExhausted, "ambiguous refinement match");
    perm[bi] = static_cast<int>(cands[0]);
    taken[cands[0]] = true;
  }
  RootSystem out;
  out.q = fresh.q;
  out.bits = bits;
  out.sources = fresh.sources;
  for (size_t bi = 0; bi < base.pair_count(); ++bi) {
    size_t fi = static_cast<size_t>(perm[bi]);
    int frep = fresh.rep_flat[fi];
    int pair_idx = static_cast<int>(out.rep_flat.size());
    int basepos = static_cast<int>(out.roots.size());
    out.rep_flat.push_back(basepos);
    out.theta.push_back(fresh.theta[fi]);
    out.source_of_pair.push_back(fresh.source_of_pair[fi]);
    bool self = fresh.partner[frep] == frep;
    if (self) {
      out.roots.push_back(fresh.roots[frep]);
      out.partner.push_back(basepos);
      out.pair_of.push_back(pair_idx);
    } else {
      out.roots.push_back(fresh.roots[frep]);
      out.roots.push_back(fresh.roots[fresh.partner[frep]]);
      out.partner.push_back(basepos + 1);
      out.partner.push_back(basepos);
      out.pair_of.push_back(pair_idx);
      out.pair_of.push_back(pair_idx);
    }
  }
  return out;
}

}  // namespace zetarel
