#pragma once
#include <mpfr.h>

#include <string>
#include <utility>

#include "zetarel/bigint.hpp"

namespace zetarel {

// RAII wrapper around mpfr_t.
class BigFloat {
 public:
  BigFloat() { mpfr_init2(v_, 64); mpfr_set_zero(v_, 1); }
  explicit BigFloat(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, 64);
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

 private:
  mpfr_t v_;
};

inline constexpr mpfr_prec_t kRadPrec = 32;

// Real ball: midpoint at working precision, radius at kRadPrec rounded up.
// All radius updates are conservative (directed rounding), so the true value
// is always contained in [mid - rad, mid + rad].
class RealBall {
 public:
  RealBall() : mid_(64), rad_(kRadPrec) {}
  explicit RealBall(mpfr_prec_t prec) : mid_(prec), rad_(kRadPrec) {}

  static RealBall exact_int(const Int& n, mpfr_prec_t prec);
  static RealBall exact_ratio(const Int& num, const Int& den, mpfr_prec_t prec);
  static RealBall sqrt_int(const Int& n, mpfr_prec_t prec);  // n >= 0
  static RealBall pi(mpfr_prec_t prec);

  const BigFloat& mid() const { return mid_; }
  const BigFloat& rad() const { return rad_; }
  BigFloat& mid() { return mid_; }
  BigFloat& rad() { return rad_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(mid_.get()); }

  double to_double() const { return mid_.to_double(); }
  double rad_double() const { return mpfr_get_d(rad_.get(), MPFR_RNDU); }

  BigFloat upper() const;  // mid + rad, rounded up
  BigFloat lower() const;  // mid - rad, rounded down
  bool contains_zero() const;
  // log2 of radius (huge negative when tiny); +inf-free: returns very negative for 0.
  long rad_exp2() const;

  friend RealBall add(const RealBall& a, const RealBall& b);
  friend RealBall sub(const RealBall& a, const RealBall& b);
  friend RealBall mul(const RealBall& a, const RealBall& b);
  friend RealBall div(const RealBall& a, const RealBall& b);  // b must exclude 0
  friend RealBall neg(const RealBall& a);
  RealBall abs() const;

  std::string str(int digits = 20) const;

 private:
  BigFloat mid_;
  BigFloat rad_;
};

// Complex ball: complex midpoint plus one radius bounding |true - mid|.
class ComplexBall {
 public:
  ComplexBall() : re_(64), im_(64), rad_(kRadPrec) {}
  explicit ComplexBall(mpfr_prec_t prec) : re_(prec), im_(prec), rad_(kRadPrec) {}

  static ComplexBall from_real(const RealBall& r, mpfr_prec_t prec);
  static ComplexBall from_parts(const RealBall& re, const RealBall& im, mpfr_prec_t prec);
  static ComplexBall exact_int(const Int& n, mpfr_prec_t prec);
  // e(num/den) = exp(2*pi*i*num/den)
  static ComplexBall root_of_unity(const Int& num, const Int& den, mpfr_prec_t prec);

  const BigFloat& re() const { return re_; }
  const BigFloat& im() const { return im_; }
  BigFloat& re() { return re_; }
  BigFloat& im() { return im_; }
  const BigFloat& rad() const { return rad_; }
  BigFloat& rad() { return rad_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(re_.get()); }

  double re_double() const { return re_.to_double(); }
  double im_double() const { return im_.to_double(); }
  double rad_double() const { return mpfr_get_d(rad_.get(), MPFR_RNDU); }
  long rad_exp2() const;

  BigFloat abs_upper() const;  // upper bound for |true value|
  BigFloat abs_lower() const;  // lower bound (clamped at 0)

  ComplexBall conj() const;
  ComplexBall neg() const;

  friend ComplexBall add(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall sub(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall mul(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall mul_int(const ComplexBall& a, const Int& k);
  friend ComplexBall div_real(const ComplexBall& a, const RealBall& b);  // b > 0
  friend ComplexBall pow_ui(const ComplexBall& a, unsigned long e);

  // |a - b| as a real ball (distance of midpoints with radii folded in).
  friend RealBall dist(const ComplexBall& a, const ComplexBall& b);
  friend bool surely_disjoint(const ComplexBall& a, const ComplexBall& b);
  friend bool possibly_overlap(const ComplexBall& a, const ComplexBall& b);

  // Argument / (2*pi) in [0,1); requires the ball to exclude 0.
  RealBall angle_frac() const;

  std::string str(int digits = 20) const;

 private:
  BigFloat re_, im_;
  BigFloat rad_;
};

}  // namespace zetarel
