#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <compare>
#include <iosfwd>
#include <string>

namespace qqb {

// Multiprecision real over mpfr_t. Each value carries its own precision;
// binary operations round to the larger of the two operand precisions.
// Values built from integers or rationals take the calling thread's
// working precision (see PrecisionScope).
class Real {
 public:
  Real();
  Real(long v);  // NOLINT
  Real(long v, mpfr_prec_t bits);
  explicit Real(const mpq_class& q, mpfr_prec_t bits = working_bits());
  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  ~Real();

  static mpfr_prec_t working_bits();
  static void set_working_bits(mpfr_prec_t bits);

  static Real from_double(double d, mpfr_prec_t bits = working_bits());
  // 2^e at the given precision.
  static Real pow2(long e, mpfr_prec_t bits = working_bits());
  // Decimal literal such as "-1.25e-3" or "3/7".
  static Real parse(const std::string& s, mpfr_prec_t bits = working_bits());

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  Real with_precision(mpfr_prec_t bits) const;

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long exponent2() const;  // floor(log2|x|)+1, or a huge negative value for zero
  mpq_class to_rational() const;

  // Shortest decimal that round-trips at this precision ("0" for zero).
  std::string to_string() const;
  std::string to_string(int digits) const;

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator-(const Real& a);

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);

  friend std::ostream& operator<<(std::ostream& os, const Real& x);

 private:
  mpfr_t v_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real hypot(const Real& a, const Real& b);
Real ldexp(const Real& x, long e);
Real max(const Real& a, const Real& b);
Real cos(const Real& x);
Real sin(const Real& x);
Real atan2(const Real& y, const Real& x);
Real const_pi(mpfr_prec_t bits = Real::working_bits());

// Sets the calling thread's working precision for the lifetime of the scope.
class PrecisionScope {
 public:
  explicit PrecisionScope(mpfr_prec_t bits) : saved_(Real::working_bits()) {
    Real::set_working_bits(bits);
  }
  ~PrecisionScope() { Real::set_working_bits(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  mpfr_prec_t saved_;
};

}  // namespace qqb
