#pragma once
#include <array>
#include <cstdint>
#include <vector>

#include "zetarel/ball.hpp"
#include "zetarel/fq.hpp"
#include "zetarel/intmat.hpp"
#include "zetarel/qpoly.hpp"

namespace zetarel {

// Trace systems with all Weil numbers in one imaginary quadratic field
// Q(sqrt(-d)), d in {1,3}: the unit orbit of one element produces several
// distinct traces, which plants multiplicative relations.
struct HondaTateSystem {
  int64_t p = 0;
  int d = 0;
  std::vector<Int> traces;      // sorted ascending, pairwise distinct
  std::vector<Int> fourp_minus; // 4p - a_j^2
  std::vector<Int> fpart;       // alpha_j = (a_j + fpart_j i sqrt(d)) / 2, sign kept
  QSymplecticPoly assembled() const;
  // the construction-branch Weil numbers (fpart sign preserved)
  std::vector<ComplexBall> weil_numbers(int bits) const;
};

HondaTateSystem honda_tate_d1(int64_t p);  // needs p = 1 mod 4
HondaTateSystem honda_tate_d3(int64_t p);  // needs p = 1 mod 3; traces satisfy z = x + y

// prod_j (1 - a_j T + q T^2); every |a_j| must beat the Weil bound strictly.
QSymplecticPoly assemble_from_traces(const std::vector<Int>& traces, const Int& q);

// Character-triple bookkeeping for the degree-m Fermat curve: A_m is the set
// of triples of nontrivial characters with trivial product, B_m its quotient
// by permutations and inversion. The matrix rows are the total-exponent form
// U(n) = 0 plus one antisymmetrized Gauss-sum exponent row per nontrivial
// character; its integer kernel indexes the planted relations.
struct FermatRelationSystem {
  int m = 0;
  long a_size = 0;  // |A_m| = ((m-1)^3 - (m-1)) / m
  std::vector<std::array<int, 3>> b_reps;
  IntMat matrix;  // m rows, |B_m| columns
  IntMat kernel;
};

FermatRelationSystem fermat_relation_system(int m);

// g(chi) = sum_x chi(x) e(Tr(x)/p) for chi = omega^j of order dividing m,
// omega(gen) = e(1/m). j = 0 gives the trivial character (value -1).
ComplexBall gauss_sum(int j, int m, const Fq& F, const Fq::Elem& gen, int bits);

struct FermatVerifyReport {
  int m = 0;
  Int q;
  bool vacuous = false;
  // |prod_b rho_b^{n_b} - 1| upper bound per kernel vector
  std::vector<double> kernel_deviation;
  // | |g(chi)|^2 - q | upper bound per nontrivial character (self-check)
  std::vector<double> gauss_modulus_deviation;
};

// Numeric consistency check of the kernel relations against actual Gauss
// sums over F_q, q = 1 mod m (exact verification would need cyclotomic
// arithmetic, which is out of scope here).
FermatVerifyReport fermat_verify_kernel(int m, int64_t q, int bits);

}  // namespace zetarel
