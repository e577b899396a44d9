#pragma once
#include <vector>

#include "zetarel/bigint.hpp"
#include "zetarel/zpoly.hpp"

namespace zetarel {

// Integer polynomial P of even degree 2g with P(0)=1 satisfying the
// functional-equation identity c_{2g-i} = q^{g-i} c_i. Inverse roots come in
// pairs multiplying to q.
struct QSymplecticPoly {
  std::vector<Int> c;  // size 2g+1, c[0] == 1
  Int q;
  int g = 0;

  const Int& trace_coeff() const { return c[1]; }
};

// Coefficient identity check; requires c0 == 1 and even degree (OddDegree).
bool is_q_symplectic(const std::vector<Int>& c, const Int& q);

// Validating constructor (NotSymplectic on failure).
QSymplecticPoly make_qsymplectic(std::vector<Int> c, Int q);

// Product of two q-symplectic polynomials over the same q.
QSymplecticPoly qs_mul(const QSymplecticPoly& a, const QSymplecticPoly& b);

// P*(T) = T^{2g} P(1/T): the monic integer polynomial whose roots are the
// inverse roots of P. Coefficients ascending.
ZPoly reversed_monic(const QSymplecticPoly& p);

// True iff gcd(P*, P*') is constant (distinct inverse roots).
bool is_separable(const QSymplecticPoly& p);

// Sum alpha_j^n for n = 1..N via the Newton forward recurrence, exact.
std::vector<Int> power_sums(const QSymplecticPoly& p, int N);

// h(x) = prod_{j<=g} (x - x_j) where P(T) = prod (1 - x_j T + q T^2);
// integer coefficients, monic of degree g. Throws NotSymplectic.
ZPoly real_weil_transform(const QSymplecticPoly& p);

// Exact Riemann-hypothesis check: all roots of the real Weil transform are
// real and lie in [-2 sqrt(q), 2 sqrt(q)], decided by Sturm sequences over Q
// with the endpoints compared through the identity (2 sqrt q)^2 = 4q.
bool rh_check(const QSymplecticPoly& p);

bool trace_is_zero(const QSymplecticPoly& p);

// Newton reconstruction of the full coefficient vector from power sums
// s_1..s_g; upper half filled by the functional equation. Throws
// NonIntegralCoefficient when the sums are inconsistent.
std::vector<Int> newton_reconstruct(const std::vector<Int>& s, const Int& q, int g);

// Number of distinct real roots of f in the open interval
// (-2 sqrt(q), 2 sqrt(q)); f must not vanish at the endpoints.
int sturm_count_open(const ZPoly& f, const Int& q);

}  // namespace zetarel
