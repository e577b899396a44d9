#include "zetarel/relations.hpp"

#include <algorithm>

#include "zetarel/error.hpp"

namespace zetarel {

namespace {

constexpr long kPrecCeiling = 1L << 22;

Int worst_case_degree(const RootSystem& rs) {
  Int d = 1;
  for (const auto& p : rs.sources) {
    Int w = pow_int(Int(2), p.g);
    for (int i = 2; i <= p.g; ++i) w *= i;
    d *= w;
  }
  return d;
}

// upper bound of |ball| * M as an mpfr comparison against 1
bool product_below_one(const BigFloat& value_up, const Int& m) {
  BigFloat t(64);
  mpfr_mul_z(t.get(), value_up.get(), m.get_mpz_t(), MPFR_RNDU);
  return mpfr_cmp_ui(t.get(), 1) < 0;
}

ComplexBall eval_monomial(const RootSystem& rs, const IntVec& k, int bits) {
  ComplexBall acc = ComplexBall::exact_int(1, bits);
  for (size_t i = 0; i < k.size(); ++i) {
    if (k[i] == 0) continue;
    acc = mul(acc, pow_ui(rs.roots[i], k[i].get_ui()));
  }
  return acc;
}

}  // namespace

VerifyReport verify_additive_exact(const RootSystem& rs, const IntVec& n) {
  if (n.size() != rs.root_count()) fail(Err::InvalidInput, "bad exponent length");
  VerifyReport rep;
  rep.degree_bound = worst_case_degree(rs);
  Int s = 0;
  for (const auto& x : n) s += abs(x);
  if (s == 0) {
    rep.proven_true = true;
    return rep;
  }
  // B >= sqrt(q) * sum |n_i| bounds every conjugate of delta = sum n_i alpha_i
  Int b = isqrt(rs.q * s * s) + 1;
  rep.bound_b_floor = b;
  Int bd;  // B^(D-1)
  mpz_pow_ui(bd.get_mpz_t(), b.get_mpz_t(),
             static_cast<unsigned long>(rep.degree_bound.get_ui()) - 1);

  long bits = std::max<long>(rs.bits, 64);
  long need = static_cast<long>(mpz_sizeinbase(bd.get_mpz_t(), 2)) + 64;
  bits = std::max(bits, need);
  while (true) {
    if (bits > kPrecCeiling) fail(Err::PrecisionExhausted, "additive verification");
    RootSystem cur = rs.bits >= bits ? rs : refine(rs, static_cast<int>(bits));
    ComplexBall delta = ComplexBall::exact_int(0, static_cast<int>(bits));
    for (size_t i = 0; i < n.size(); ++i) {
      if (n[i] == 0) continue;
      delta = add(delta, mul_int(cur.roots[i], n[i]));
    }
    BigFloat rad(64);
    mpfr_mul_ui(rad.get(), delta.rad().get(), 2, MPFR_RNDU);
    if (!product_below_one(rad, bd)) {
      bits *= 2;
      continue;
    }
    rep.precision_used = bits;
    rep.proven_true = product_below_one(delta.abs_upper(), bd);
    return rep;
  }
}

VerifyReport verify_multiplicative_exact(const RootSystem& rs, const IntVec& n) {
  if (n.size() != rs.root_count()) fail(Err::InvalidInput, "bad exponent length");
  VerifyReport rep;
  rep.degree_bound = worst_case_degree(rs);

  // rewrite negative exponents through the partner: alpha^-1 = (q/alpha)/q,
  // so -(m) on slot i becomes +m on partner(i) and the relation
  // prod alpha~^n = 1 turns into prod alpha^k = q^(K/2), k >= 0, K = sum k.
  IntVec k(n.size(), 0);
  for (size_t i = 0; i < n.size(); ++i) {
    if (n[i] >= 0) k[i] += n[i];
    else k[static_cast<size_t>(rs.partner[i])] += -n[i];
  }
  Int bigk = 0;
  for (const auto& x : k) bigk += x;
  if (bigk == 0) {
    rep.proven_true = true;
    return rep;
  }
  bool squared = false;
  if (mpz_odd_p(bigk.get_mpz_t())) {
    // half-integral q-power: verify the squared relation, then pin the sign
    squared = true;
    for (auto& x : k) x *= 2;
    bigk *= 2;
  }
  rep.squared = squared;
  Int t = bigk / 2;
  Int qt = pow_int(rs.q, static_cast<unsigned long>(t.get_ui()));
  Int b = 2 * qt + 1;  // q^{K/2} + q^t + 1 with t = K/2
  rep.bound_b_floor = b;
  Int bd;
  mpz_pow_ui(bd.get_mpz_t(), b.get_mpz_t(),
             static_cast<unsigned long>(rep.degree_bound.get_ui()) - 1);

  long bits = std::max<long>(rs.bits, 64);
  long need = static_cast<long>(mpz_sizeinbase(bd.get_mpz_t(), 2)) +
              static_cast<long>(mpz_sizeinbase(qt.get_mpz_t(), 2)) + 64;
  bits = std::max(bits, need);
  while (true) {
    if (bits > kPrecCeiling) fail(Err::PrecisionExhausted, "multiplicative verification");
    RootSystem cur = rs.bits >= bits ? rs : refine(rs, static_cast<int>(bits));
    ComplexBall prod = eval_monomial(cur, k, static_cast<int>(bits));
    ComplexBall delta = sub(prod, ComplexBall::exact_int(qt, static_cast<int>(bits)));
    BigFloat rad(64);
    mpfr_mul_ui(rad.get(), delta.rad().get(), 2, MPFR_RNDU);
    if (!product_below_one(rad, bd)) {
      bits *= 2;
      continue;
    }
    rep.precision_used = bits;
    bool zero = product_below_one(delta.abs_upper(), bd);
    if (!zero) {
      rep.proven_true = false;
      return rep;
    }
    if (!squared) {
      rep.proven_true = true;
      return rep;
    }
    // squared relation holds, so prod alpha~^n = +-1; decide the sign from
    // the unsquared monomial (its value is exactly real)
    IntVec half = k;
    for (auto& x : half) x /= 2;
    ComplexBall w = eval_monomial(cur, half, static_cast<int>(bits));
    int sign = mpfr_sgn(w.re().get());
    BigFloat margin(64);
    mpfr_abs(margin.get(), w.re().get(), MPFR_RNDD);
    if (mpfr_cmp(margin.get(), w.rad().get()) <= 0) {
      bits *= 2;  // sign not yet certified
      continue;
    }
    rep.proven_true = sign > 0;
    return rep;
  }
}

// ---------------------------------------------------------------------------

namespace {

Int scaled_mpz(const BigFloat& x, const Int& scale) {
  BigFloat t(mpfr_get_prec(x.get()) + 64);
  mpfr_mul_z(t.get(), x.get(), scale.get_mpz_t(), MPFR_RNDN);
  Int r;
  mpfr_get_z(r.get_mpz_t(), t.get(), MPFR_RNDN);
  return r;
}

bool small_residual(const IntVec& row, size_t first_aux, const Int& threshold) {
  for (size_t i = first_aux; i < row.size(); ++i)
    if (abs(row[i]) >= threshold) return false;
  return true;
}

bool height_ok(const IntVec& v, size_t upto) {
  for (size_t i = 0; i < upto; ++i)
    if (abs(v[i]) > kVerifierHeightCap) return false;
  return true;
}

}  // namespace

RelationLattice detect_additive(const RootSystem& rs0, int bits) {
  RootSystem rs = rs0.bits >= bits ? rs0 : refine(rs0, bits);
  const size_t m = rs.root_count();
  Int big = pow_int(Int(2), bits - 32);
  Int threshold = pow_int(Int(2), bits / 2 - 32);

  IntMat rows(m, IntVec(m + 2, 0));
  for (size_t i = 0; i < m; ++i) {
    rows[i][i] = 1;
    rows[i][m] = scaled_mpz(rs.roots[i].re(), big);
    rows[i][m + 1] = scaled_mpz(rs.roots[i].im(), big);
  }
  IntMat reduced = lll_reduce(rows);

  RelationLattice lat;
  lat.ambient = RelationLattice::Ambient::Roots;
  lat.dim = m;
  IntMat verified;
  for (const auto& row : reduced) {
    if (!small_residual(row, m, threshold)) continue;
    IntVec n(row.begin(), row.begin() + m);
    bool zero = std::all_of(n.begin(), n.end(), [](const Int& x) { return x == 0; });
    if (zero || !height_ok(n, m)) continue;
    if (verify_additive_exact(rs, n).proven_true) verified.push_back(std::move(n));
  }
  lat.basis = hnf_rows(std::move(verified));
  lat.nontrivial_rank = lat.rank();
  return lat;
}

RelationLattice detect_multiplicative(const RootSystem& rs0, int bits) {
  RootSystem rs = rs0.bits >= bits ? rs0 : refine(rs0, bits);
  const size_t pairs = rs.pair_count();
  const size_t m = rs.root_count();
  Int big = pow_int(Int(2), bits - 32);
  Int threshold = pow_int(Int(2), bits / 2 - 32);

  IntMat rows(pairs + 1, IntVec(pairs + 2, 0));
  for (size_t j = 0; j < pairs; ++j) {
    rows[j][j] = 1;
    rows[j][pairs + 1] = scaled_mpz(rs.theta[j].mid(), big);
  }
  rows[pairs][pairs] = 1;
  rows[pairs][pairs + 1] = big;  // the constant coordinate 1
  IntMat reduced = lll_reduce(rows);

  RelationLattice lat;
  lat.ambient = RelationLattice::Ambient::Roots;
  lat.dim = m;
  IntMat verified;
  for (const auto& row : reduced) {
    if (!small_residual(row, pairs + 1, threshold)) continue;
    IntVec ang(row.begin(), row.begin() + pairs);
    bool zero = std::all_of(ang.begin(), ang.end(), [](const Int& x) { return x == 0; });
    if (zero || !height_ok(ang, pairs)) continue;
    IntVec n(m, 0);
    for (size_t j = 0; j < pairs; ++j) n[static_cast<size_t>(rs.rep_flat[j])] = ang[j];
    if (verify_multiplicative_exact(rs, n).proven_true) verified.push_back(std::move(n));
  }
  // pairing-forced part: equal exponents on the two partners multiply to 1;
  // a self-paired root is +-1 after normalization, so its generator is the
  // slot itself (doubled on the -sqrt(q) side).
  for (size_t j = 0; j < pairs; ++j) {
    IntVec v(m, 0);
    int repi = rs.rep_flat[j];
    if (rs.partner[repi] == repi) {
      bool negative = mpfr_sgn(rs.roots[repi].re().get()) < 0;
      v[static_cast<size_t>(repi)] = negative ? 2 : 1;
    } else {
      v[static_cast<size_t>(repi)] = 1;
      v[static_cast<size_t>(rs.partner[repi])] = 1;
    }
    verified.push_back(std::move(v));
  }
  lat.basis = hnf_rows(std::move(verified));
  return classify_trivial(std::move(lat), rs);
}

RelationLattice classify_trivial(RelationLattice lat, const RootSystem& rs) {
  if (lat.ambient != RelationLattice::Ambient::Roots)
    fail(Err::InvalidInput, "classify_trivial expects a Roots-ambient lattice");
  const size_t pairs = rs.pair_count();
  // projection d_j(v) = v_rep - v_partner per pair (0 for self-paired slots)
  IntMat proj;
  for (const auto& v : lat.basis) {
    IntVec d(pairs, 0);
    for (size_t j = 0; j < pairs; ++j) {
      int repi = rs.rep_flat[j];
      if (rs.partner[repi] == repi) continue;
      d[j] = v[static_cast<size_t>(repi)] - v[static_cast<size_t>(rs.partner[repi])];
    }
    proj.push_back(std::move(d));
  }
  lat.nontrivial_rank = proj.empty() ? 0 : rank(proj);
  // trivial part: integer combinations x of basis rows with proj(x B) = 0
  lat.trivial_basis.clear();
  if (!lat.basis.empty()) {
    // kernel of proj^T applied to combination coefficients: rows combos
    IntMat combo_matrix(proj.size(), IntVec(pairs));
    for (size_t i = 0; i < proj.size(); ++i) combo_matrix[i] = proj[i];
    // solve x * combo_matrix = 0 over Z: kernel of the transpose
    IntMat tr(pairs, IntVec(proj.size()));
    for (size_t i = 0; i < proj.size(); ++i)
      for (size_t j = 0; j < pairs; ++j) tr[j][i] = combo_matrix[i][j];
    IntMat ker = integer_kernel(tr);
    for (const auto& x : ker) {
      IntVec v(lat.dim, 0);
      for (size_t i = 0; i < lat.basis.size(); ++i)
        for (size_t c = 0; c < lat.dim; ++c) v[c] += x[i] * lat.basis[i][c];
      lat.trivial_basis.push_back(std::move(v));
    }
    lat.trivial_basis = hnf_rows(std::move(lat.trivial_basis));
  }
  return lat;
}

IntMat angle_quotient_basis(const RelationLattice& lat, const RootSystem& rs) {
  const size_t pairs = rs.pair_count();
  IntMat proj;
  for (const auto& v : lat.basis) {
    IntVec d(pairs, 0);
    bool nonzero = false;
    for (size_t j = 0; j < pairs; ++j) {
      int repi = rs.rep_flat[j];
      if (rs.partner[repi] == repi) continue;
      d[j] = v[static_cast<size_t>(repi)] - v[static_cast<size_t>(rs.partner[repi])];
      if (d[j] != 0) nonzero = true;
    }
    if (nonzero) proj.push_back(std::move(d));
  }
  return hnf_rows(std::move(proj));
}

// ---------------------------------------------------------------------------

std::string IndependenceReport::verdict_label() const {
  if (additive == Additive::HasRelations || multiplicative == Multiplicative::HasRelations)
    return "has-relations";
  if (additive == Additive::Free && multiplicative == Multiplicative::TrivialOnly)
    return "independent";
  return "undetermined";
}

namespace {

// Exact torsion screen for a genus-1 factor with trace a over q: the
// normalized root is a root of unity iff a^2 is one of 0, q, 2q, 3q, 4q;
// 2q cannot be a square times..., and a = 0 / a^2 = 4q are handled
// elsewhere, so the live cases are a^2 = q and a^2 = 3q.
bool genus1_torsion_with_nonzero_trace(const QSymplecticPoly& p) {
  if (p.g != 1) return false;
  Int a = -p.c[1];
  Int a2 = a * a;
  return a2 == p.q || a2 == 3 * p.q;
}

}  // namespace

IndependenceReport independence_report(const std::vector<QSymplecticPoly>& ps,
                                       const ReportOptions& opt) {
  if (ps.empty()) fail(Err::InvalidInput, "no polynomials");
  for (const auto& p : ps)
    if (!rh_check(p)) fail(Err::NotSymplectic, "inputs must satisfy the root bound");

  IndependenceReport rep;
  bool cert_applicable = true;
  try {
    rep.certificate = tuple_certificate(ps, opt.ell_budget);
  } catch (const Error& e) {
    if (e.code() == Err::SharedRoots || e.code() == Err::NotSeparable) {
      cert_applicable = false;
      rep.note = std::string("certificate unavailable: ") + e.what();
    } else {
      throw;
    }
  }
  bool traces_nonzero = true;
  bool torsion_free = true;
  for (const auto& p : ps) {
    if (trace_is_zero(p)) traces_nonzero = false;
    if (genus1_torsion_with_nonzero_trace(p)) torsion_free = false;
  }
  if (cert_applicable && rep.certificate.proven() && traces_nonzero && torsion_free) {
    rep.by_certificate = true;
    rep.additive = IndependenceReport::Additive::Free;
    rep.multiplicative = IndependenceReport::Multiplicative::TrivialOnly;
    if (ps.size() > 1)
      rep.note =
          "per-factor freeness; rational combinations among the k trace sums "
          "are inherent for tuples and not counted";
    if (!opt.force_detectors) return rep;
  }

  rep.detectors_ran = true;
  RootSystem rs = root_system(ps, opt.bits);
  rep.additive_lattice = detect_additive(rs, opt.bits);
  rep.multiplicative_lattice = detect_multiplicative(rs, opt.bits);
  if (!rep.by_certificate) {
    rep.additive = rep.additive_lattice.rank() > 0
                       ? IndependenceReport::Additive::HasRelations
                       : IndependenceReport::Additive::Undetermined;
    rep.multiplicative = rep.multiplicative_lattice.nontrivial_rank > 0
                             ? IndependenceReport::Multiplicative::HasRelations
                             : IndependenceReport::Multiplicative::Undetermined;
  }
  return rep;
}

}  // namespace zetarel
