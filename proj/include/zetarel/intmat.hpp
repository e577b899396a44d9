#pragma once
#include <vector>

#include "zetarel/bigint.hpp"

namespace zetarel {

using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;  // row-major

// Canonical row Hermite normal form of the lattice spanned by the rows:
// pivots positive, entries above a pivot reduced into [0, pivot), zero rows
// dropped. Two row sets span the same lattice iff their HNFs are identical.
IntMat hnf_rows(IntMat m);

long rank(IntMat m);

// Z-basis of { n in Z^c : M n = 0 } for an r x c matrix, in HNF-canonical
// form. Empty when the kernel is trivial.
IntMat integer_kernel(const IntMat& m);

// Membership of v in the lattice spanned by the rows of basis.
bool lattice_contains(const IntMat& basis, const IntVec& v);

// LLL reduction (delta = 99/100) using exact integer arithmetic.
// Preserves the spanned lattice; throws DependentRows if rows are dependent.
IntMat lll_reduce(IntMat basis);

IntMat mat_mul(const IntMat& a, const IntMat& b);
IntVec mat_apply(const IntMat& m, const IntVec& v);  // M v

}  // namespace zetarel
