#include "zetarel/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "zetarel/error.hpp"

namespace zetarel {

std::vector<double> deviation_sequence(const RootSystem& rs, int N) {
  const mpfr_prec_t prec = 128;
  const size_t pairs = rs.pair_count();
  BigFloat sqrtq(prec);
  mpfr_set_z(sqrtq.get(), rs.q.get_mpz_t(), MPFR_RNDN);
  mpfr_sqrt(sqrtq.get(), sqrtq.get(), MPFR_RNDN);

  std::vector<BigFloat> ure(pairs, BigFloat(prec)), uim(pairs, BigFloat(prec));
  std::vector<BigFloat> wre(pairs, BigFloat(prec)), wim(pairs, BigFloat(prec));
  for (size_t j = 0; j < pairs; ++j) {
    const ComplexBall& rep = rs.roots[static_cast<size_t>(rs.rep_flat[j])];
    mpfr_div(ure[j].get(), rep.re().get(), sqrtq.get(), MPFR_RNDN);
    mpfr_div(uim[j].get(), rep.im().get(), sqrtq.get(), MPFR_RNDN);
    mpfr_set_ui(wre[j].get(), 1, MPFR_RNDN);
    mpfr_set_zero(wim[j].get(), 1);
  }
  std::vector<double> d(N);
  BigFloat t1(prec), t2(prec), norm(prec);
  for (int n = 1; n <= N; ++n) {
    double acc = 0;
    for (size_t j = 0; j < pairs; ++j) {
      mpfr_fmms(t1.get(), wre[j].get(), ure[j].get(), wim[j].get(), uim[j].get(), MPFR_RNDN);
      mpfr_fmma(t2.get(), wre[j].get(), uim[j].get(), wim[j].get(), ure[j].get(), MPFR_RNDN);
      mpfr_set(wre[j].get(), t1.get(), MPFR_RNDN);
      mpfr_set(wim[j].get(), t2.get(), MPFR_RNDN);
      if ((n & 63) == 0) {
        mpfr_hypot(norm.get(), wre[j].get(), wim[j].get(), MPFR_RNDN);
        mpfr_div(wre[j].get(), wre[j].get(), norm.get(), MPFR_RNDN);
        mpfr_div(wim[j].get(), wim[j].get(), norm.get(), MPFR_RNDN);
      }
      acc += mpfr_get_d(wre[j].get(), MPFR_RNDN);
    }
    d[static_cast<size_t>(n - 1)] = 2 * acc;
  }
  return d;
}

std::vector<double> diff_sequence(const RootSystem& rs1, const RootSystem& rs2, int N) {
  if (rs1.q != rs2.q) fail(Err::MismatchedField, "sequences need a common q");
  auto d1 = deviation_sequence(rs1, N);
  auto d2 = deviation_sequence(rs2, N);
  std::vector<double> out(d1.size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = d2[i] - d1[i];
  return out;
}

std::vector<double> mu_g_sample(int g, size_t count, uint64_t seed) {
  if (g < 1 || count < 1) fail(Err::InvalidInput, "need g >= 1, count >= 1");
  std::mt19937_64 rng(seed);
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  std::vector<double> out(count);
  for (size_t i = 0; i < count; ++i) {
    double y = 0;
    for (int j = 0; j < 2 * g; ++j) {
      double u = static_cast<double>(rng() >> 11) * 0x1p-53;
      y += 2.0 * std::cos(kTwoPi * u);
    }
    out[i] = y;
  }
  return out;
}

double bessel_j0(double x) {
  // mpfr's correctly rounded j0; well below the 1e-12 contract everywhere
  BigFloat t(128);
  mpfr_set_d(t.get(), x, MPFR_RNDN);
  mpfr_j0(t.get(), t.get(), MPFR_RNDN);
  return t.to_double();
}

double mu_g_charfn(int g, double t) {
  return std::pow(bessel_j0(2 * t), 2 * g);
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) fail(Err::EmptySequence, "KS needs nonempty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  size_t i = 0, j = 0;
  double d = 0;
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j]) ++i;
    else ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_compare(const std::vector<double>& seq, int g, size_t reference_size,
                  uint64_t seed) {
  if (seq.empty()) fail(Err::EmptySequence, "empty sequence");
  return ks_statistic(seq, mu_g_sample(g, reference_size, seed));
}

double sign_bias(const RootSystem& rs1, const RootSystem& rs2, int N) {
  auto d = diff_sequence(rs1, rs2, N);
  long neg = 0;
  for (double x : d)
    if (x < 0) ++neg;
  return static_cast<double>(neg) / static_cast<double>(N);
}

std::vector<HistogramRow> histogram(const std::vector<double>& data, int bins,
                                    double lo, double hi) {
  std::vector<HistogramRow> rows(static_cast<size_t>(bins));
  double w = (hi - lo) / bins;
  for (int b = 0; b < bins; ++b)
    rows[static_cast<size_t>(b)] = {lo + b * w, lo + (b + 1) * w, 0};
  for (double x : data) {
    if (x < lo || x >= hi) continue;
    int b = static_cast<int>((x - lo) / w);
    if (b >= 0 && b < bins) rows[static_cast<size_t>(b)].count++;
  }
  return rows;
}

}  // namespace zetarel
