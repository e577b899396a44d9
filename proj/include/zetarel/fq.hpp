#pragma once
#include <cstdint>
#include <vector>

#include "zetarel/bigint.hpp"

namespace zetarel {

// Finite field F_{p^n}, p an odd prime. Elements are coefficient vectors of
// length n over F_p with respect to a monic irreducible modulus; the modulus
// is the irreducible polynomial x^n + m_{n-1}x^{n-1} + ... + m_0 whose
// non-leading coefficient vector, read as the base-p integer sum m_i p^i, is
// smallest. That makes field tables reproducible across runs.
class Fq {
 public:
  using Elem = std::vector<int64_t>;

  static constexpr uint64_t kDefaultCap = 200000000;  // 2*10^8 elements

  static Fq create(int64_t p, int n, uint64_t cap = kDefaultCap);
  static Fq create_with_modulus(int64_t p, std::vector<int64_t> modulus);

  int64_t p() const { return p_; }
  int n() const { return n_; }
  const Int& q() const { return q_; }
  uint64_t q_u64() const { return q_u64_; }
  const std::vector<int64_t>& modulus() const { return modulus_; }

  Elem zero() const { return Elem(n_, 0); }
  Elem one() const;
  Elem from_int(const Int& k) const;
  Elem x() const;  // the class of x (generator of the basis), n >= 2

  bool is_zero(const Elem& a) const;
  bool eq(const Elem& a, const Elem& b) const { return a == b; }

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;
  Elem pow(const Elem& a, Int e) const;

  // x^{(q-1)/2} interpreted in {-1,0,+1}.
  int quad_char(const Elem& a) const;

  uint64_t index(const Elem& a) const;   // sum a_i p^i
  Elem from_index(uint64_t idx) const;

  // Smallest-index generator of the multiplicative group.
  Elem generator() const;

  // Multiplicative order of a nonzero element.
  Int element_order(const Elem& a) const;

  // Absolute trace to F_p.
  int64_t abs_trace(const Elem& a) const;

 private:
  Fq() = default;
  int64_t p_ = 0;
  int n_ = 0;
  Int q_;
  uint64_t q_u64_ = 0;
  std::vector<int64_t> modulus_;  // size n, non-leading coefficients
};

// Dense polynomials over Fq, coefficients ascending, no trailing zeros.
using FqPoly = std::vector<Fq::Elem>;

namespace fqp {

FqPoly normalize(const Fq& F, FqPoly f);
int deg(const FqPoly& f);
bool is_zero(const FqPoly& f);
FqPoly zero();
FqPoly one(const Fq& F);
FqPoly from_coeffs(const Fq& F, const std::vector<Int>& c);  // reduces mod p
FqPoly add(const Fq& F, const FqPoly& a, const FqPoly& b);
FqPoly sub(const Fq& F, const FqPoly& a, const FqPoly& b);
FqPoly mul(const Fq& F, const FqPoly& a, const FqPoly& b);
FqPoly scale(const Fq& F, const FqPoly& a, const Fq::Elem& c);
FqPoly make_monic(const Fq& F, const FqPoly& a);
void divmod(const Fq& F, const FqPoly& a, const FqPoly& b, FqPoly& q, FqPoly& r);
FqPoly mod(const Fq& F, const FqPoly& a, const FqPoly& b);
FqPoly gcd(const Fq& F, FqPoly a, FqPoly b);  // monic
FqPoly derivative(const Fq& F, const FqPoly& a);
FqPoly pow_mod(const Fq& F, const FqPoly& base, const Int& e, const FqPoly& m);
Fq::Elem eval(const Fq& F, const FqPoly& f, const Fq::Elem& x);
bool eq(const FqPoly& a, const FqPoly& b);

// Irreducibility over F_p (coefficients in any Fq with n==1) or general Fq.
bool is_irreducible(const Fq& F, const FqPoly& f);

// Full factorization: squarefree decomposition, then distinct-degree, then
// randomized equal-degree splitting driven by the given seed. Returns monic
// irreducible factors with multiplicities, sorted by (degree, index order),
// plus the leading unit. Throws ZeroPolynomial on the zero input.
struct Factorization {
  Fq::Elem unit;
  std::vector<std::pair<FqPoly, int>> factors;
};
Factorization factor(const Fq& F, const FqPoly& f, uint64_t seed = 1);

// Roots of f in F (each once, sorted by index).
std::vector<Fq::Elem> roots(const Fq& F, const FqPoly& f, uint64_t seed = 1);

}  // namespace fqp

// Subfield embedding F_{p^m} -> F_{p^{mn}} determined by the smallest-index
// root of the subfield modulus in the big field.
class Embedding {
 public:
  Embedding(const Fq& sub, const Fq& big, uint64_t seed = 1);
  Fq::Elem map(const Fq::Elem& a) const;

 private:
  const Fq* sub_;
  const Fq* big_;
  Fq::Elem root_;
};

}  // namespace zetarel
