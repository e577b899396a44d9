#pragma once
#include <vector>

#include "zetarel/ball.hpp"
#include "zetarel/qpoly.hpp"

namespace zetarel {

// Certified enclosures for the inverse roots of one or more q-symplectic
// polynomials over a common q, with the pairing alpha <-> q/alpha and the
// normalized angles theta in [0,1).
//
// Flat layout: for each pair, the representative (Im > 0, or the real root
// itself when self-paired) is followed by its partner. Self-paired roots
// (+-sqrt q, only possible inside non-separable inputs) occupy one slot.
struct RootSystem {
  Int q;
  int bits = 0;
  std::vector<QSymplecticPoly> sources;

  std::vector<ComplexBall> roots;  // size = total degree
  std::vector<int> partner;        // involution on flat indices (i if self-paired)
  std::vector<int> pair_of;        // flat index -> pair index
  std::vector<int> rep_flat;       // pair index -> flat index of representative
  std::vector<RealBall> theta;     // per pair, in [0,1)
  std::vector<int> source_of_pair;

  size_t pair_count() const { return rep_flat.size(); }
  size_t root_count() const { return roots.size(); }
  int genus_total() const;
};

// Certified disjoint enclosures for a squarefree monic integer polynomial
// whose roots all have modulus sqrt(q). Enclosure radii are below
// sqrt(q) * 2^-bits. Throws PrecisionExhausted when that cannot be achieved.
std::vector<ComplexBall> isolate_on_circle(const ZPoly& monic, const Int& q, int bits);

// Strict per-operation entry: requires distinct inverse roots; repeated
// factors must be deflated by the caller (use root_system for that).
RootSystem certified_roots(const QSymplecticPoly& p, int bits);

// Deflating builder: exact squarefree decomposition first, multiplicities
// re-attached as duplicate pairs. Accepts products with repeated factors.
RootSystem root_system(const std::vector<QSymplecticPoly>& polys, int bits);

// Recompute the same system at higher precision, preserving pair order by
// matching the new enclosures into the old ones.
RootSystem refine(const RootSystem& base, int bits);

}  // namespace zetarel
