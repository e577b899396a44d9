#include "zetarel/intmat.hpp"

#include <algorithm>

#include "zetarel/error.hpp"

namespace zetarel {

namespace {

void row_axpy(IntVec& dst, const Int& c, const IntVec& src) {
  for (size_t i = 0; i < dst.size(); ++i) dst[i] += c * src[i];
}

}  // namespace

IntMat hnf_rows(IntMat m) {
  if (m.empty()) return m;
  size_t rows = m.size(), cols = m[0].size();
  size_t t = 0;
  for (size_t j = 0; j < cols && t < rows; ++j) {
    size_t pivot = SIZE_MAX;
    for (size_t i = t; i < rows; ++i) {
      if (m[i][j] == 0) continue;
      if (pivot == SIZE_MAX) {
        pivot = i;
        continue;
      }
      // combine rows pivot and i so that column j has gcd at pivot, 0 at i
      Int g, xa, xb;
      mpz_gcdext(g.get_mpz_t(), xa.get_mpz_t(), xb.get_mpz_t(),
                 m[pivot][j].get_mpz_t(), m[i][j].get_mpz_t());
      Int a = m[pivot][j] / g, b = m[i][j] / g;
      IntVec np(cols), ni(cols);
      for (size_t kk = 0; kk < cols; ++kk) {
        np[kk] = xa * m[pivot][kk] + xb * m[i][kk];
        ni[kk] = a * m[i][kk] - b * m[pivot][kk];
      }
      m[pivot] = std::move(np);
      m[i] = std::move(ni);
    }
    if (pivot == SIZE_MAX) continue;
    std::swap(m[t], m[pivot]);
    if (m[t][j] < 0)
      for (auto& v : m[t]) v = -v;
    for (size_t i = 0; i < t; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), m[i][j].get_mpz_t(), m[t][j].get_mpz_t());
      if (q != 0) row_axpy(m[i], -q, m[t]);
    }
    ++t;
  }
  m.resize(t);
  return m;
}

long rank(IntMat m) { return static_cast<long>(hnf_rows(std::move(m)).size()); }

IntMat integer_kernel(const IntMat& m) {
  if (m.empty()) return {};
  size_t rows = m.size(), cols = m[0].size();
  IntMat a = m;
  // unimodular column tracker, u[j] = current j-th column as a length-cols vector
  IntMat u(cols, IntVec(cols, 0));
  for (size_t j = 0; j < cols; ++j) u[j][j] = 1;

  auto col_combine = [&](size_t i, size_t jp, size_t jq) {
    // gcd-combine columns jp (pivot) and jq at row i
    Int g, xa, xb;
    mpz_gcdext(g.get_mpz_t(), xa.get_mpz_t(), xb.get_mpz_t(),
               a[i][jp].get_mpz_t(), a[i][jq].get_mpz_t());
    Int pa = a[i][jp] / g, pb = a[i][jq] / g;
    for (size_t r = 0; r < rows; ++r) {
      Int np = xa * a[r][jp] + xb * a[r][jq];
      Int nq = pa * a[r][jq] - pb * a[r][jp];
      a[r][jp] = np;
      a[r][jq] = nq;
    }
    for (size_t r = 0; r < cols; ++r) {
      Int np = xa * u[jp][r] + xb * u[jq][r];
      Int nq = pa * u[jq][r] - pb * u[jp][r];
      u[jp][r] = np;
      u[jq][r] = nq;
    }
  };

  size_t t = 0;
  for (size_t i = 0; i < rows && t < cols; ++i) {
    size_t pivot = SIZE_MAX;
    for (size_t j = t; j < cols; ++j) {
      if (a[i][j] == 0) continue;
      if (pivot == SIZE_MAX) {
        pivot = j;
        continue;
      }
      col_combine(i, pivot, j);
    }
    if (pivot == SIZE_MAX) continue;
    if (pivot != t) {
      for (size_t r = 0; r < rows; ++r) std::swap(a[r][pivot], a[r][t]);
      std::swap(u[pivot], u[t]);
    }
    ++t;
  }
  IntMat kernel;
  for (size_t j = t; j < cols; ++j) kernel.push_back(u[j]);
  return hnf_rows(std::move(kernel));
}

bool lattice_contains(const IntMat& basis, const IntVec& v) {
  IntMat h = hnf_rows(basis);
  IntVec w = v;
  size_t cols = w.size();
  for (const auto& row : h) {
    size_t j = 0;
    while (j < cols && row[j] == 0) ++j;
    if (j == cols) continue;
    if (w[j] % row[j] != 0) continue;  // cannot reduce; will fail below if needed
    Int q = w[j] / row[j];
    if (q != 0)
      for (size_t k = 0; k < cols; ++k) w[k] -= q * row[k];
  }
  for (const auto& x : w)
    if (x != 0) return false;
  return true;
}

IntMat mat_mul(const IntMat& a, const IntMat& b) {
  size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), k = b.size();
  IntMat r(n, IntVec(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (size_t j = 0; j < m; ++j) r[i][j] += a[i][t] * b[t][j];
    }
  return r;
}

IntVec mat_apply(const IntMat& m, const IntVec& v) {
  IntVec r(m.size(), 0);
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j) r[i] += m[i][j] * v[j];
  return r;
}

// All-integer LLL with delta = 99/100 (Gram determinants d_k and scaled
// Gram-Schmidt coefficients lambda_{k,l} = mu_{k,l} * d_l stay integral).
IntMat lll_reduce(IntMat basis) {
  const long n = static_cast<long>(basis.size());
  if (n == 0) return basis;
  const size_t cols = basis[0].size();

  auto dot = [&](long i, long j) {
    Int s = 0;
    for (size_t c = 0; c < cols; ++c) s += basis[i][c] * basis[j][c];
    return s;
  };

  // 1-indexed bookkeeping arrays
  std::vector<Int> d(n + 1);
  std::vector<std::vector<Int>> lam(n + 1, std::vector<Int>(n + 1, 0));
  d[0] = 1;
  d[1] = dot(0, 0);
  if (n >= 1 && d[1] == 0) fail(Err::DependentRows, "zero row in lattice basis");

  long k = 2, kmax = 1;

  auto redi = [&](long kk, long l) {
    Int two_lam = 2 * lam[kk][l];
    if (two_lam > d[l] || -two_lam > d[l]) {
      // q = nearest integer to lam/d
      Int num = 2 * lam[kk][l] + d[l];
      Int den = 2 * d[l];
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      if (q != 0) {
        row_axpy(basis[kk - 1], -q, basis[l - 1]);
        lam[kk][l] -= q * d[l];
        for (long i = 1; i < l; ++i) lam[kk][i] -= q * lam[l][i];
      }
    }
  };

  auto swapi = [&](long kk) {
    std::swap(basis[kk - 1], basis[kk - 2]);
    for (long j = 1; j <= kk - 2; ++j) std::swap(lam[kk][j], lam[kk - 1][j]);
    Int l = lam[kk][kk - 1];
    Int b = (d[kk - 2] * d[kk] + l * l) / d[kk - 1];
    for (long i = kk + 1; i <= kmax; ++i) {
      Int t = lam[i][kk];
      lam[i][kk] = (d[kk] * lam[i][kk - 1] - l * t) / d[kk - 1];
      lam[i][kk - 1] = (b * t + l * lam[i][kk]) / d[kk];
    }
    d[kk - 1] = b;
  };

  while (k <= n) {
    if (k > kmax) {
      kmax = k;
      for (long j = 1; j <= k; ++j) {
        Int u = dot(k - 1, j - 1);
        for (long i = 1; i < j; ++i) u = (d[i] * u - lam[k][i] * lam[j][i]) / d[i - 1];
        if (j < k)
          lam[k][j] = u;
        else {
          d[k] = u;
          if (d[k] == 0) fail(Err::DependentRows, "linearly dependent rows");
        }
      }
    }
    while (true) {
      redi(k, k - 1);
      // swap when 100 d_k d_{k-2} < 99 d_{k-1}^2 - 100 lambda^2
      Int lhs = 100 * d[k] * d[k - 2];
      Int rhs = 99 * d[k - 1] * d[k - 1] - 100 * lam[k][k - 1] * lam[k][k - 1];
      if (lhs < rhs) {
        swapi(k);
        k = std::max(2L, k - 1);
      } else {
        break;
      }
    }
    for (long l = k - 2; l >= 1; --l) redi(k, l);
    ++k;
  }
  return basis;
}

}  // namespace zetarel
