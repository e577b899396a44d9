#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "zetarel/qpoly.hpp"

namespace zetarel {

// Conjugacy invariant of a signed permutation: multiset of (length, sign)
// parts, lengths summing to the number of coordinate pairs.
struct SignedCycleType {
  std::vector<std::pair<int, int>> parts;  // (length, sign in {+1,-1}), sorted
  std::string label() const;
  bool operator==(const SignedCycleType&) const = default;
};

// Finite group with a full multiplication table (used for the signed
// permutation groups W_{2g}, g <= 4, and small products of them).
struct TableGroup {
  std::string label;
  int order = 0;
  std::vector<uint16_t> mul;  // order x order
  std::vector<uint16_t> inv;
  std::vector<int> class_of;           // element -> class
  std::vector<std::string> class_labels;
  std::vector<int> class_sizes;

  uint16_t at(int a, int b) const { return mul[static_cast<size_t>(a) * order + b]; }
  int num_classes() const { return static_cast<int>(class_labels.size()); }
  int class_index(const std::string& lbl) const;  // -1 when absent
};

// The group of signed permutations of g coordinate pairs, order 2^g g!.
class W2gGroup {
 public:
  explicit W2gGroup(int g);  // full element list for g <= 6; tables for g <= 4

  int g() const { return g_; }
  long order() const { return order_; }
  bool has_table() const { return table_.order > 0; }
  const TableGroup& table() const;

  // img[i] = +-(j+1): the image of pair-coordinate i, sign tracked.
  using Elem = std::vector<int8_t>;
  const std::vector<Elem>& elements() const { return elems_; }
  static SignedCycleType cycle_type(const Elem& e);

 private:
  int g_;
  long order_;
  std::vector<Elem> elems_;
  TableGroup table_;
};

// Direct product with componentwise classes (labels joined by '|').
TableGroup product_group(const std::vector<const TableGroup*>& parts);

// Count of W_{2g} orbits on M x M, M the 2g signed points, by brute force.
int orbit_count(int g);

// Explicit linear algebra over Q: the all-ones line, the trace-zero
// pair-symmetric space, and the pair-antisymmetric space are invariant of
// dimensions (1, g-1, g), and the permutation character chi has <chi,chi> = 3.
struct DecompositionReport {
  int dim_ones = 0;
  int dim_sym0 = 0;
  int dim_anti = 0;
  long chi_inner = 0;
  bool invariant = false;
  bool ok(int g) const {
    return invariant && dim_ones == 1 && dim_sym0 == g - 1 && dim_anti == g &&
           chi_inner == 3;
  }
};
DecompositionReport decomposition_check(int g);

// Subgroup lattice up to conjugacy, with the set of element classes each
// subgroup class meets. Cached on disk as JSON keyed by the group label.
struct SubgroupClassInfo {
  int order = 0;
  int conjugates = 0;
  uint64_t met_mask = 0;  // bit i: meets element class i
};
struct SubgroupLattice {
  std::string group_label;
  int group_order = 0;
  int num_element_classes = 0;
  std::vector<SubgroupClassInfo> classes;
};

// cache_dir may be empty (memory-only memoization).
const SubgroupLattice& subgroup_lattice(const TableGroup& G, const std::string& cache_dir);
void set_lattice_cache_dir(const std::string& dir);  // process-wide default
void clear_lattice_memo();                           // test hook for cache reloads

// All subgroups, each as a sorted element list (test oracle; order <= 64
// unless force is set).
std::vector<std::vector<uint16_t>> all_subgroups(const TableGroup& G, bool force = false);

// Frobenius cycle type of P at an odd prime ell not dividing q, read from the
// factor pairing of the reversed polynomial mod ell.
struct CycleTypeRejection {
  enum class Reason { DividesQ, NotSquarefree, DegreeDrop, UnpairableFixedRoot };
  Reason reason;
  std::string str() const;
};
using CycleTypeResult = std::variant<SignedCycleType, CycleTypeRejection>;
CycleTypeResult frobenius_cycle_type(const QSymplecticPoly& p, int64_t ell);

struct GaloisCertificate {
  enum class Verdict { Proven, Undetermined };
  Verdict verdict = Verdict::Undetermined;
  std::vector<std::pair<int64_t, std::string>> witnesses;  // (ell, class label)
  std::vector<std::pair<int64_t, std::string>> rejected;   // (ell, reason)
  std::string note;  // obstruction / scope note when undetermined

  bool proven() const { return verdict == Verdict::Proven; }
};

inline constexpr int64_t kDefaultEllBudget = 200;

// One-sided certificate that the splitting-field Galois group of P is the
// full signed permutation group W_{2g}: witnesses pin conjugacy classes via
// factorization patterns; Proven means no proper subgroup (up to conjugacy)
// meets every witnessed class. Requires a separable P with g <= 4.
GaloisCertificate maximality_certificate(const QSymplecticPoly& p,
                                         int64_t ell_budget = kDefaultEllBudget);

// Product version for k polynomials over a common q inside W_{2g}^k.
// The exhaustive product lattice ships for g = 1, k <= 4; anything larger is
// reported Undetermined with a scope note.
GaloisCertificate tuple_certificate(const std::vector<QSymplecticPoly>& ps,
                                    int64_t ell_budget = kDefaultEllBudget);

}  // namespace zetarel
