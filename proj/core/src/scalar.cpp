#include "qqbethe/scalar.hpp"

#include <cctype>
#include <ostream>

#include "qqbethe/error.hpp"

namespace qqb {

Complex operator/(const Complex& a, const Complex& b) {
  // Smith's algorithm keeps intermediate magnitudes bounded.
  if (abs(b.re) >= abs(b.im)) {
    Real r = b.im / b.re;
    Real d = b.re + b.im * r;
    return {(a.re + a.im * r) / d, (a.im - a.re * r) / d};
  }
  Real r = b.re / b.im;
  Real d = b.re * r + b.im;
  return {(a.re * r + a.im) / d, (a.im * r - a.re) / d};
}

std::ostream& operator<<(std::ostream& os, const Complex& z) {
  return os << "(" << z.re << ", " << z.im << ")";
}

Real abs(const Complex& z) { return hypot(z.re, z.im); }
Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
Complex conj(const Complex& z) { return {z.re, -z.im}; }
Complex polar(const Real& r, const Real& theta) { return {r * cos(theta), r * sin(theta)}; }

bool lex_less(const Complex& a, const Complex& b) {
  if (a.re < b.re) return true;
  if (b.re < a.re) return false;
  return a.im < b.im;
}

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw ParseError("empty scalar literal");
  if (s.find('/') != std::string::npos) {
    Rational q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw ParseError("bad rational literal: " + s);
    q.canonicalize();
    return q;
  }
  size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
  std::string digits;
  long frac = 0;
  bool dot = false, any = false;
  for (; i < s.size() && s[i] != 'e' && s[i] != 'E'; ++i) {
    char c = s[i];
    if (c == '.' && !dot) {
      dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      any = true;
      if (dot) ++frac;
    } else {
      throw ParseError("bad scalar literal: " + s);
    }
  }
  if (!any) throw ParseError("bad scalar literal: " + s);
  long ex = 0;
  if (i < s.size()) {
    std::string e = s.substr(i + 1);
    if (e.empty()) throw ParseError("bad exponent: " + s);
    size_t pos = 0;
    try {
      ex = std::stol(e, &pos);
    } catch (const std::exception&) {
      throw ParseError("bad exponent: " + s);
    }
    if (pos != e.size() || ex > 100000 || ex < -100000) throw ParseError("bad exponent: " + s);
  }
  mpz_class num(digits, 10);
  long shift = ex - frac;
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rational q = shift >= 0 ? Rational(num * p10) : Rational(num, p10);
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

std::string format_rational(const Rational& q) { return q.get_str(10); }

}  // namespace qqb
