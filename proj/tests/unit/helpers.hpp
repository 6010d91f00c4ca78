#pragma once

#include <string>
#include <vector>

#include "qqbethe/opermat.hpp"

namespace qqt {

using qqb::Complex;
using qqb::Poly;
using qqb::Rational;

inline Rational R(const std::string& s) { return qqb::parse_rational(s); }
inline Rational R(long p, long q = 1) { return Rational(p, q); }

// Low-first coefficients.
inline Poly<Rational> P(std::initializer_list<Rational> c) { return Poly<Rational>(std::vector<Rational>(c)); }

inline Complex C(double re, double im = 0) { return {qqb::Real::from_double(re), qqb::Real::from_double(im)}; }

inline qqb::SingularPoint<Rational> pt(Rational z, std::vector<int> w) { return {std::move(z), std::move(w)}; }

// A1 with one point z=0, zeta=1/2.
inline qqb::QQInstance<Rational> a1_standard() {
  return qqb::make_instance<Rational>(qqb::make_type('A', 1), {pt(R(0), {1})}, {R(1, 2)});
}

inline qqb::QQSolution<Rational> a1_standard_solution() { return {{P({1, 1})}, {P({1})}}; }

inline qqb::QQInstance<Rational> a2_fixture() {
  return qqb::make_instance<Rational>(qqb::make_type('A', 2), {pt(R(-3), {1, 0}), pt(R(13, 7), {0, 1})},
                                      {R(1, 2), R(1, 3)});
}

inline qqb::QQSolution<Rational> a2_fixture_solution() {
  return {{P({0, 1}), P({-1, 1})}, {P({3, R(3, 2)}), P({R(-36, 7), 6})}};
}

inline qqb::QQInstance<Rational> b2_fixture() {
  return qqb::make_instance<Rational>(qqb::make_type('B', 2), {pt(R(-2), {1, 0}), pt(R(3), {0, 1})}, {R(1), R(1, 4)});
}

inline qqb::QQSolution<Rational> b2_fixture_solution() {
  return {{P({0, 1}), P({-1, 1})}, {P({-2, R(-4, 9), R(2, 3)}), P({4, -2})}};
}

// Independent Wronskian relation: coefficients of p m' - p' m + xi p m - rhs
// computed from scratch by convolution.
inline std::vector<Rational> naive_qq(const std::vector<Rational>& p, const std::vector<Rational>& m, const Rational& xi,
                                      const std::vector<Rational>& rhs) {
  size_t n = std::max({p.size() + m.size(), rhs.size()}) + 1;
  std::vector<Rational> out(n, Rational(0));
  for (size_t a = 0; a < p.size(); ++a)
    for (size_t b = 0; b < m.size(); ++b) {
      out[a + b] += xi * p[a] * m[b];
      if (b > 0) out[a + b - 1] += p[a] * m[b] * Rational(long(b));
      if (a > 0) out[a + b - 1] -= p[a] * m[b] * Rational(long(a));
    }
  for (size_t k = 0; k < rhs.size(); ++k) out[k] -= rhs[k];
  return out;
}

inline bool all_zero(const std::vector<Rational>& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace qqt
