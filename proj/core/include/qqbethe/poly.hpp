#pragma once

#include <spdlog/spdlog.h>

#include <algorithm>
#include <utility>
#include <vector>

#include "qqbethe/error.hpp"
#include "qqbethe/scalar.hpp"

namespace qqb {

// Dense univariate polynomial, lowest degree first. The zero polynomial is
// the empty vector and has degree -1. Only exact zeros are stripped from the
// top; tolerance-based trimming is explicit (see trimmed()).
template <class S>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<S> c) : c_(std::move(c)) { strip(); }
  Poly(std::initializer_list<S> c) : c_(c) { strip(); }

  static Poly constant(const S& a) { return Poly(std::vector<S>{a}); }
  static Poly monomial(const S& a, int k) {
    std::vector<S> c(k + 1, S(0L));
    c[k] = a;
    return Poly(std::move(c));
  }
  // z - r
  static Poly linear_factor(const S& r) { return Poly(std::vector<S>{-r, S(1L)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<S>& coeffs() const { return c_; }
  S coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : S(0L); }
  const S& lead() const {
    if (c_.empty()) throw Error("leading coefficient of zero polynomial");
    return c_.back();
  }

  S operator()(const S& x) const {
    S acc(0L);
    for (size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
    return acc;
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), S(0L));
    for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    strip();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), S(0L));
    for (size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    strip();
    return *this;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly& operator*=(const S& a) {
    for (auto& x : c_) x *= a;
    strip();
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<S> c(a.c_.size() + b.c_.size() - 1, S(0L));
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(c));
  }
  friend Poly operator*(const S& s, Poly a) { return a *= s; }
  friend Poly operator*(Poly a, const S& s) { return a *= s; }

  // Coefficient-wise identity (exact comparison of stored values).
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

 private:
  void strip() {
    while (!c_.empty() && ScalarTraits<S>::is_zero(c_.back())) c_.pop_back();
  }
  std::vector<S> c_;
};

template <class S>
Poly<S> derivative(const Poly<S>& p) {
  if (p.degree() < 1) return {};
  std::vector<S> c;
  c.reserve(p.degree());
  for (int k = 1; k <= p.degree(); ++k) c.push_back(S(long(k)) * p.coeffs()[k]);
  return Poly<S>(std::move(c));
}

// Antiderivative with zero constant term.
template <class S>
Poly<S> antiderivative(const Poly<S>& p) {
  if (p.is_zero()) return {};
  std::vector<S> c(p.coeffs().size() + 1, S(0L));
  for (int k = 0; k <= p.degree(); ++k) c[k + 1] = p.coeffs()[k] / S(long(k + 1));
  return Poly<S>(std::move(c));
}

template <class S>
Poly<S> pow(const Poly<S>& p, int e) {
  if (e < 0) throw Error("negative polynomial power");
  Poly<S> r = Poly<S>::constant(S(1L)), b = p;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

// p q' - q p'
template <class S>
Poly<S> wronskian(const Poly<S>& p, const Poly<S>& q) {
  return p * derivative(q) - q * derivative(p);
}

// The polynomial h with h' + xi h = p. For xi = 0 this is the antiderivative
// with zero constant term.
template <class S>
Poly<S> solve_linear_ode(const S& xi, const Poly<S>& p) {
  if (ScalarTraits<S>::is_zero(xi)) return antiderivative(p);
  const int n = p.degree();
  if (n < 0) return {};
  std::vector<S> h(n + 1, S(0L));
  h[n] = p.coeffs()[n] / xi;
  for (int k = n - 1; k >= 0; --k) h[k] = (p.coeffs()[k] - S(long(k + 1)) * h[k + 1]) / xi;
  return Poly<S>(std::move(h));
}

template <class S>
Poly<S> poly_from_roots(const std::vector<S>& roots, const S& lead = S(1L)) {
  Poly<S> p = Poly<S>::constant(lead);
  for (const auto& r : roots) p *= Poly<S>::linear_factor(r);
  return p;
}

template <class S>
Real coeff_norm(const Poly<S>& p) {
  Real m(0L);
  for (const auto& c : p.coeffs()) {
    Real a = ScalarTraits<S>::magnitude(c);
    if (m < a) m = a;
  }
  return m;
}

// Zero test: exact for rationals, |c| <= tau*max(1, scale) for numerics.
template <class S>
bool negligible(const Poly<S>& p, const Real& scale, const Tolerances& t) {
  for (const auto& c : p.coeffs())
    if (!ScalarTraits<S>::negligible(c, scale, t)) return false;
  return true;
}

// Drops top coefficients that are negligible relative to the coefficient norm.
template <class S>
Poly<S> trimmed(const Poly<S>& p, const Tolerances& t) {
  if constexpr (is_exact_v<S>) {
    return p;
  } else {
    Real scale = coeff_norm(p);
    std::vector<S> c = p.coeffs();
    size_t before = c.size();
    while (!c.empty() && ScalarTraits<S>::negligible(c.back(), scale, t)) c.pop_back();
    if (c.size() != before)
      spdlog::warn("trimmed {} negligible top coefficient(s) from degree-{} polynomial",
                   before - c.size(), static_cast<int>(before) - 1);
    return Poly<S>(std::move(c));
  }
}

template <class S>
Poly<S> monic(const Poly<S>& p) {
  if (p.is_zero()) throw Error("monic of zero polynomial");
  return p * (S(1L) / p.lead());
}

template <class S>
bool is_monic(const Poly<S>& p, const Tolerances& t) {
  if (p.is_zero()) return false;
  return ScalarTraits<S>::equal(p.lead(), S(1L), t);
}

template <class S>
std::pair<Poly<S>, Poly<S>> divmod(const Poly<S>& a, const Poly<S>& b) {
  if (b.is_zero()) throw ZeroDenominator("polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly<S>{}, a};
  std::vector<S> r = a.coeffs();
  const int db = b.degree();
  std::vector<S> q(a.degree() - db + 1, S(0L));
  const S inv = S(1L) / b.lead();
  for (int k = a.degree(); k >= db; --k) {
    S f = r[k] * inv;
    q[k - db] = f;
    for (int j = 0; j <= db; ++j) r[k - db + j] -= f * b.coeffs()[j];
  }
  r.resize(db);
  return {Poly<S>(std::move(q)), Poly<S>(std::move(r))};
}

// Monic gcd over the rationals.
inline Poly<Rational> gcd(Poly<Rational> a, Poly<Rational> b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : monic(a);
}

inline Poly<Complex> to_complex(const Poly<Rational>& p) {
  std::vector<Complex> c;
  c.reserve(p.coeffs().size());
  for (const auto& x : p.coeffs()) c.emplace_back(x);
  return Poly<Complex>(std::move(c));
}
inline Poly<Complex> to_complex(const Poly<Complex>& p) { return p; }

}  // namespace qqb
