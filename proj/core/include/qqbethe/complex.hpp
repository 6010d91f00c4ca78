#pragma once

#include <algorithm>
#include <iosfwd>
#include <utility>

#include "qqbethe/real.hpp"

namespace qqb {

struct Complex {
  Real re;
  Real im;

  Complex() = default;
  Complex(long v) : re(v), im(0L) {}  // NOLINT
  Complex(Real r) : re(std::move(r)), im(0L, re.precision()) {}  // NOLINT
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  explicit Complex(const mpq_class& q) : re(q), im(0L) {}

  mpfr_prec_t precision() const { return std::max(re.precision(), im.precision()); }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) { return *this = *this * o; }
  Complex& operator/=(const Complex& o) { return *this = *this / o; }

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator/(const Complex& a, const Complex& b);

  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
  friend std::ostream& operator<<(std::ostream& os, const Complex& z);
};

Real abs(const Complex& z);
Real norm(const Complex& z);  // |z|^2
Complex conj(const Complex& z);
Complex polar(const Real& r, const Real& theta);

// Lexicographic order by real part, then imaginary part.
bool lex_less(const Complex& a, const Complex& b);

}  // namespace qqb
