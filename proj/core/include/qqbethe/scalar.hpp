#pragma once

#include <gmpxx.h>

#include <string>

#include "qqbethe/complex.hpp"

namespace qqb {

using Rational = mpq_class;

// Numeric comparison thresholds, stored as binary exponents.
struct Tolerances {
  int precision_bits = 256;
  int rel_bits = 160;     // tau = 2^-rel_bits, relative equality
  int root_bits = 80;     // tau_root, root separation
  int newton_bits = 192;  // Newton residual target

  Real rel() const { return Real::pow2(-rel_bits, precision_bits); }
  Real root() const { return Real::pow2(-root_bits, precision_bits); }
  Real newton() const { return Real::pow2(-newton_bits, precision_bits); }
};

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* name = "exact";
  static Rational from_rational(const Rational& q) { return q; }
  static Rational from_long(long v) { return Rational(v); }
  static Real magnitude(const Rational& x) { return abs(Real(x)); }
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  // Exact backend ignores tolerances.
  static bool negligible(const Rational& x, const Real&, const Tolerances&) { return sgn(x) == 0; }
  static bool equal(const Rational& a, const Rational& b, const Tolerances&) { return a == b; }
  static Complex to_complex(const Rational& x) { return Complex(x); }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static constexpr const char* name = "numeric";
  static Complex from_rational(const Rational& q) { return Complex(q); }
  static Complex from_long(long v) { return Complex(v); }
  static Real magnitude(const Complex& x) { return abs(x); }
  static bool is_zero(const Complex& x) { return x.is_zero(); }
  // |x| <= tau * max(1, scale)
  static bool negligible(const Complex& x, const Real& scale, const Tolerances& t) {
    Real s = scale < Real(1L) ? Real(1L) : scale;
    return abs(x) <= t.rel() * s;
  }
  static bool equal(const Complex& a, const Complex& b, const Tolerances& t) {
    return negligible(a - b, max(abs(a), abs(b)), t);
  }
  static Complex to_complex(const Complex& x) { return x; }
};

template <class S>
inline constexpr bool is_exact_v = ScalarTraits<S>::exact;

// Exact literal: integer, "p/q", or decimal with optional exponent.
Rational parse_rational(const std::string& s);
std::string format_rational(const Rational& q);

}  // namespace qqb
