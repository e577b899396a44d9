#pragma once
#include <cstdint>
#include <vector>

#include "zetarel/roots.hpp"

namespace zetarel {

// d_n = 2 sum_j cos(2 pi n theta_j), n = 1..N, computed by complex powers of
// the unit-normalized certified roots with periodic renormalization (never by
// re-counting points).
std::vector<double> deviation_sequence(const RootSystem& rs, int N);

// 2 sum_j (cos 2 pi n theta_{2,j} - cos 2 pi n theta_{1,j}): the normalized
// point-count difference sequence of the pair (rs1, rs2), equal to
// deviation(rs2) - deviation(rs1) pointwise. Fields must share q.
std::vector<double> diff_sequence(const RootSystem& rs1, const RootSystem& rs2, int N);

// count independent draws of Y_g = sum_{i=1}^{2g} 2 cos(2 pi U_i), U_i
// uniform on [0,1); driven by std::mt19937_64 seeded as given, uniforms via
// (x >> 11) * 2^-53.
std::vector<double> mu_g_sample(int g, size_t count, uint64_t seed);

double bessel_j0(double x);

// characteristic function of Y_g: J_0(2t)^{2g}
double mu_g_charfn(int g, double t);

// two-sample Kolmogorov-Smirnov statistic
double ks_statistic(std::vector<double> a, std::vector<double> b);

// KS of the sequence against a Monte-Carlo reference sample of Y_g
double ks_compare(const std::vector<double>& seq, int g, size_t reference_size,
                  uint64_t seed);

// fraction of n <= N with diff_sequence value strictly negative
double sign_bias(const RootSystem& rs1, const RootSystem& rs2, int N);

// CSV histogram rows (bin_left, bin_right, count)
struct HistogramRow {
  double left, right;
  long count;
};
std::vector<HistogramRow> histogram(const std::vector<double>& data, int bins,
                                    double lo, double hi);

}  // namespace zetarel
