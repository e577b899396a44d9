#include "zetarel/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "zetarel/error.hpp"

namespace zetarel {

QSymplecticPoly HondaTateSystem::assembled() const { return assemble_from_traces(traces, p); }

std::vector<ComplexBall> HondaTateSystem::weil_numbers(int bits) const {
  std::vector<ComplexBall> out;
  RealBall sqrtd = RealBall::sqrt_int(d, bits);
  RealBall half = RealBall::exact_ratio(1, 2, bits);
  for (size_t j = 0; j < traces.size(); ++j) {
    RealBall re = mul(RealBall::exact_int(traces[j], bits), half);
    RealBall im = mul(mul(RealBall::exact_int(fpart[j], bits), sqrtd), half);
    out.push_back(ComplexBall::from_parts(re, im, bits));
  }
  return out;
}

HondaTateSystem honda_tate_d1(int64_t p) {
  if (!is_prime(p) || p % 4 != 1)
    fail(Err::NotCongruent, "two-squares decomposition needs p = 1 mod 4");
  // 4p = (2u)^2 + (2v)^2 from p = u^2 + v^2, u < v
  int64_t u = 0, v = 0;
  for (int64_t a = 1; a * a * 2 <= p; ++a) {
    int64_t rest = p - a * a;
    int64_t r = static_cast<int64_t>(std::sqrt(static_cast<double>(rest)));
    while (r * r < rest) ++r;
    while (r * r > rest) --r;
    if (r * r == rest) {
      u = a;
      v = r;
      break;
    }
  }
  if (u == 0) fail(Err::NotCongruent, "no two-squares decomposition found");
  if (u > v) std::swap(u, v);
  HondaTateSystem sys;
  sys.p = p;
  sys.d = 1;
  // alpha_1 = u + vi (trace 2u), alpha_2 = i conj(alpha_1) = v + ui (trace 2v)
  sys.traces = {Int(2 * u), Int(2 * v)};
  sys.fpart = {Int(2 * v), Int(2 * u)};
  for (const auto& a : sys.traces) sys.fourp_minus.push_back(Int(4 * p) - a * a);
  return sys;
}

HondaTateSystem honda_tate_d3(int64_t p) {
  if (!is_prime(p) || p % 3 != 1)
    fail(Err::NotCongruent, "4p = a^2 + 3b^2 needs p = 1 mod 3");
  int64_t a0 = 0, b0 = 0;
  for (int64_t a = 1; a * a < 4 * p; ++a) {
    int64_t rest = 4 * p - a * a;
    if (rest % 3) continue;
    int64_t bb = rest / 3;
    int64_t r = static_cast<int64_t>(std::sqrt(static_cast<double>(bb)));
    while (r * r < bb) ++r;
    while (r * r > bb) --r;
    if (r * r == bb && r >= 1) {
      a0 = a;
      b0 = r;
      break;
    }
  }
  if (a0 == 0) fail(Err::NotCongruent, "no 4p = a^2 + 3b^2 decomposition found");

  // unit orbit of w = (a + b i sqrt 3)/2 under multiplication by
  // omega = (-1 + i sqrt 3)/2: coefficient pairs (a, b) map to
  // ((-a-3b)/2, (a-b)/2); keep the representative with positive trace.
  auto advance = [](std::pair<int64_t, int64_t> w) {
    return std::make_pair((-w.first - 3 * w.second) / 2, (w.first - w.second) / 2);
  };
  std::vector<std::pair<int64_t, int64_t>> orbit;
  auto cur = std::make_pair(a0, b0);
  for (int i = 0; i < 3; ++i) {
    if (cur.first < 0) cur = {-cur.first, -cur.second};
    orbit.push_back(cur);
    cur = advance(cur);
  }
  std::sort(orbit.begin(), orbit.end());
  HondaTateSystem sys;
  sys.p = p;
  sys.d = 3;
  for (auto& [a, b] : orbit) {
    sys.traces.push_back(Int(a));
    sys.fpart.push_back(Int(b));
    sys.fourp_minus.push_back(Int(4 * p - a * a));
  }
  if (sys.traces.size() != 3 || sys.traces[0] == sys.traces[1] ||
      sys.traces[1] == sys.traces[2])
    fail(Err::InvalidInput, "unit orbit did not give three distinct traces");
  if (sys.traces[2] != sys.traces[0] + sys.traces[1])
    fail(Err::InvalidInput, "z = x + y failed");
  return sys;
}

QSymplecticPoly assemble_from_traces(const std::vector<Int>& traces, const Int& q) {
  if (traces.empty()) fail(Err::InvalidInput, "no traces");
  QSymplecticPoly acc;
  bool first = true;
  for (const auto& a : traces) {
    if (a * a >= 4 * q) fail(Err::WeilBoundViolated, "|trace| must stay below 2 sqrt(q)");
    auto factor = make_qsymplectic({Int(1), -a, q}, q);
    acc = first ? factor : qs_mul(acc, factor);
    first = false;
  }
  return acc;
}

// ---------------------------------------------------------------------------

FermatRelationSystem fermat_relation_system(int m) {
  if (m < 3) fail(Err::TooSmall, "need m >= 3");
  FermatRelationSystem sys;
  sys.m = m;

  std::map<std::array<int, 3>, int> rep_col;  // orbit representative -> column
  std::vector<std::array<int, 3>> all_triples;
  for (int i = 1; i < m; ++i)
    for (int j = 1; j < m; ++j)
      for (int k = 1; k < m; ++k) {
        if ((i + j + k) % m) continue;
        ++sys.a_size;
        all_triples.push_back({i, j, k});
      }
  auto canon = [&](std::array<int, 3> t) {
    std::sort(t.begin(), t.end());
    std::array<int, 3> inv = {m - t[0], m - t[1], m - t[2]};
    std::sort(inv.begin(), inv.end());
    return std::min(t, inv);
  };
  for (auto& t : all_triples) {
    std::array<int, 3> c = canon(t);
    if (!rep_col.count(c)) rep_col[c] = 0;  // numbered below
  }
  for (auto& [c, col] : rep_col) {
    col = static_cast<int>(sys.b_reps.size());
    sys.b_reps.push_back(c);
  }

  // rows: U(n) = sum of coordinates, then for each nontrivial character
  // omega^i the antisymmetrized exponent count count_i - count_{m-i}
  // (conjugates eliminated through g(chi) g(chi-bar) = chi(-1) q).
  size_t cols = sys.b_reps.size();
  sys.matrix.assign(m, IntVec(cols, 0));
  for (size_t c = 0; c < cols; ++c) sys.matrix[0][c] = 1;
  auto count_in = [&](int i, const std::array<int, 3>& t) {
    return static_cast<int>(std::count(t.begin(), t.end(), i));
  };
  for (int i = 1; i < m; ++i)
    for (size_t c = 0; c < cols; ++c)
      sys.matrix[static_cast<size_t>(i)][c] =
          count_in(i, sys.b_reps[c]) - count_in(m - i, sys.b_reps[c]);

  sys.kernel = integer_kernel(sys.matrix);
  return sys;
}

ComplexBall gauss_sum(int j, int m, const Fq& F, const Fq::Elem& gen, int bits) {
  if ((F.q() - 1) % m != 0) fail(Err::BadOrder, "need q = 1 mod m");
  j = ((j % m) + m) % m;
  Int den = Int(m) * F.p();
  ComplexBall acc = ComplexBall::exact_int(0, bits);
  Fq::Elem x = F.one();
  uint64_t order = F.q_u64() - 1;
  for (uint64_t k = 0; k < order; ++k) {
    // chi(gen^k) psi(gen^k) = e(jk/m) e(Tr(x)/p) = e((jkp + m Tr(x)) / (mp))
    int64_t tr = F.abs_trace(x);
    Int num = Int(j) * Int(static_cast<unsigned long>(k)) * F.p() + Int(m) * tr;
    acc = add(acc, ComplexBall::root_of_unity(num, den, bits));
    x = F.mul(x, gen);
  }
  return acc;
}

FermatVerifyReport fermat_verify_kernel(int m, int64_t q, int bits) {
  FermatVerifyReport rep;
  rep.m = m;
  rep.q = q;
  if (q < 3) fail(Err::InvalidInput, "q too small");
  if ((q - 1) % m != 0) fail(Err::BadCongruence, "need q = 1 mod m");
  int64_t p = 0;
  int e = 0;
  {
    int64_t r = q;
    for (int64_t f = 2; f * f <= r; ++f)
      if (r % f == 0) {
        p = f;
        break;
      }
    if (p == 0) p = q;
    int64_t t = q;
    while (t % p == 0) {
      t /= p;
      ++e;
    }
    if (t != 1) fail(Err::InvalidInput, "q must be a prime power");
  }
  auto sys = fermat_relation_system(m);
  rep.vacuous = sys.kernel.empty();

  Fq F = Fq::create(p, e);
  Fq::Elem gen = F.generator();
  std::vector<ComplexBall> g(m);  // g[j] for j = 1..m-1
  for (int j = 1; j < m; ++j) {
    g[j] = gauss_sum(j, m, F, gen, bits);
    // classical modulus: |g(chi)|^2 = q for nontrivial chi
    ComplexBall norm = mul(g[j], g[j].conj());
    RealBall dev = dist(norm, ComplexBall::exact_int(Int(q), bits));
    rep.gauss_modulus_deviation.push_back(mpfr_get_d(dev.upper().get(), MPFR_RNDU));
  }
  if (rep.vacuous) return rep;

  RealBall q32 = mul(RealBall::exact_int(Int(q), bits), RealBall::sqrt_int(Int(q), bits));
  std::vector<ComplexBall> rho;
  for (const auto& t : sys.b_reps) {
    ComplexBall prod = mul(mul(g[t[0]], g[t[1]]), g[t[2]]);
    rho.push_back(div_real(prod, q32));
  }
  for (const auto& n : sys.kernel) {
    ComplexBall prod = ComplexBall::exact_int(1, bits);
    for (size_t c = 0; c < n.size(); ++c) {
      if (n[c] == 0) continue;
      Int mag = abs(n[c]);
      unsigned long e_abs = mag.get_ui();
      // |rho| = 1 exactly, so the inverse is the conjugate
      ComplexBall base = n[c] > 0 ? rho[c] : rho[c].conj();
      prod = mul(prod, pow_ui(base, e_abs));
    }
    RealBall dev = dist(prod, ComplexBall::exact_int(1, bits));
    rep.kernel_deviation.push_back(mpfr_get_d(dev.upper().get(), MPFR_RNDU));
  }
  return rep;
}

}  // namespace zetarel
