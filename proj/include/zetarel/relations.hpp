#pragma once
#include <string>
#include <vector>

#include "zetarel/intmat.hpp"
#include "zetarel/roots.hpp"
#include "zetarel/w2g.hpp"

namespace zetarel {

// Outcome of the exact norm-bound verification: an algebraic integer delta
// with conjugates bounded by B and degree bounded by D is zero iff
// |delta| < B^(1-D), since a nonzero algebraic integer has norm >= 1.
struct VerifyReport {
  bool proven_true = false;
  long precision_used = 0;
  Int degree_bound;       // D
  Int bound_b_floor;      // integer upper bound used for B
  bool squared = false;   // multiplicative relation verified after squaring
};

// Exponent vectors are indexed by the flat root layout of the RootSystem.
VerifyReport verify_additive_exact(const RootSystem& rs, const IntVec& n);
VerifyReport verify_multiplicative_exact(const RootSystem& rs, const IntVec& n);

struct RelationLattice {
  enum class Ambient { Roots, Angles };
  Ambient ambient = Ambient::Roots;
  size_t dim = 0;
  IntMat basis;          // verified relations (HNF rows)
  IntMat trivial_basis;  // multiplicative: the pairing-forced part
  long nontrivial_rank = 0;
  bool verified = true;  // every basis vector passed the exact verifier

  long rank() const { return static_cast<long>(basis.size()); }
};

inline constexpr int kDefaultBits = 256;
inline constexpr int kVerifierHeightCap = 50;  // |n|_inf accepted for verification

// Candidate additive relations by lattice reduction on
// [ I | K Re(alpha) | K Im(alpha) ], K = 2^(bits-32); only exactly verified
// vectors enter the lattice. Ambient: Roots.
RelationLattice detect_additive(const RootSystem& rs, int bits = kDefaultBits);

// Candidate relations among (theta_1..theta_P, 1); verified vectors are
// lifted to exponent vectors on M (representative slots). The returned
// lattice lives on Roots and includes the pairing-forced trivial part.
RelationLattice detect_multiplicative(const RootSystem& rs, int bits = kDefaultBits);

// Split a verified Roots-ambient multiplicative lattice into its trivial part
// (equal exponents on partners) and the nontrivial quotient rank.
RelationLattice classify_trivial(RelationLattice lat, const RootSystem& rs);

// Exponent vectors on the angle coordinates of the nontrivial quotient
// (theta per pair), one row per independent verified nontrivial relation.
IntMat angle_quotient_basis(const RelationLattice& lat, const RootSystem& rs);

struct IndependenceReport {
  enum class Additive { Free, HasRelations, Undetermined };
  enum class Multiplicative { TrivialOnly, HasRelations, Undetermined };
  Additive additive = Additive::Undetermined;
  Multiplicative multiplicative = Multiplicative::Undetermined;
  bool by_certificate = false;
  GaloisCertificate certificate;
  bool detectors_ran = false;
  RelationLattice additive_lattice;
  RelationLattice multiplicative_lattice;
  std::string note;

  // "independent" / "has-relations" / "undetermined"
  std::string verdict_label() const;
};

struct ReportOptions {
  int64_t ell_budget = kDefaultEllBudget;
  int bits = kDefaultBits;
  bool force_detectors = false;  // run detectors even when the certificate decides
};

// Certificate-first independence report. When the product Galois group is
// certified maximal, every factor has nonzero trace, and no genus-1 factor
// carries a torsion normalized root (over square q the traces +-sqrt(q) give
// sixth/third roots of unity), additive freeness and multiplicative
// triviality follow rigorously. Otherwise detection plus exact verification
// decides HasRelations, or Undetermined when nothing is found.
IndependenceReport independence_report(const std::vector<QSymplecticPoly>& ps,
                                       const ReportOptions& opt = {});

}  // namespace zetarel
