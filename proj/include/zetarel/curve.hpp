#pragma once
#include <cstdint>
#include <memory>
#include <vector>

#include "zetarel/fq.hpp"
#include "zetarel/qpoly.hpp"
#include "zetarel/zpoly.hpp"

namespace zetarel {

// Hyperelliptic curve y^2 = f(x)(x - t) in the odd-degree model: f monic
// squarefree of degree 2g over Z with disc(f) nonzero mod p, t in F_q with
// f(t) != 0, q = p^e.
struct CurveSpec {
  ZPoly f;
  int g = 0;
  int64_t p = 0;
  int e = 1;
  std::shared_ptr<Fq> base;  // F_q
  Fq::Elem t;

  Int q() const { return base->q(); }
};

inline constexpr uint64_t kCountCap = 200000000;  // q^n per character sum

// Validates all invariants; throws SingularCurve / ConfigInvalid / TooLarge.
CurveSpec make_curve(ZPoly f, int64_t p, int e, uint64_t t_index);

// |C(F_{q^n})| = q^n + 1 + sum_x chi2(h(x)) with h = f(x)(x-t); the sum runs
// over x in F_{q^n} and chi2 is the quadratic character of that field.
// An explicit field with a different modulus may be supplied for cross-checks.
Int curve_count(const CurveSpec& spec, int n, const Fq* field_override = nullptr);

// Degree-2g L-polynomial from the counts n = 1..g via Newton's identities
// and the functional equation.
QSymplecticPoly lpolynomial(const CurveSpec& spec);

// Parameter values t with f(t) != 0 in F_q, in index order.
std::vector<uint64_t> curve_parameters(const ZPoly& f, int64_t p, int e);

}  // namespace zetarel
