#pragma once
#include <vector>

#include "zetarel/bigint.hpp"

namespace zetarel {

// Dense integer polynomials, coefficients ascending, no trailing zeros.
using ZPoly = std::vector<Int>;

namespace zp {

ZPoly normalize(ZPoly f);
int deg(const ZPoly& f);
ZPoly add(const ZPoly& a, const ZPoly& b);
ZPoly sub(const ZPoly& a, const ZPoly& b);
ZPoly mul(const ZPoly& a, const ZPoly& b);
ZPoly neg(const ZPoly& a);
ZPoly derivative(const ZPoly& a);
Int eval(const ZPoly& a, const Int& x);
Int content(const ZPoly& a);
ZPoly primitive_part(const ZPoly& a);  // positive leading coefficient

// Exact division; returns false if it does not divide.
bool divide_exact(const ZPoly& a, const ZPoly& b, ZPoly& q);

// gcd over Q, returned as the primitive integer polynomial.
ZPoly gcd_q(const ZPoly& a, const ZPoly& b);

bool is_squarefree(const ZPoly& a);

// Squarefree decomposition over Q (Yun): a = lc * prod part_i^{m_i} up to a
// rational unit; parts primitive with positive lead, multiplicities distinct.
std::vector<std::pair<ZPoly, int>> squarefree_decomposition(const ZPoly& a);

}  // namespace zp

}  // namespace zetarel
