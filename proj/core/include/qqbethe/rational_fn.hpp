#pragma once

#include <vector>

#include "qqbethe/poly.hpp"

namespace qqb {

// num/den. Exact backend keeps gcd(num, den) = 1 with monic den; numeric
// backend only makes den monic.
template <class S>
class RationalFn {
 public:
  RationalFn() : den_(Poly<S>::constant(S(1L))) {}
  RationalFn(Poly<S> num) : num_(std::move(num)), den_(Poly<S>::constant(S(1L))) {}  // NOLINT
  RationalFn(Poly<S> num, Poly<S> den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }
  static RationalFn constant(const S& a) { return RationalFn(Poly<S>::constant(a)); }

  const Poly<S>& num() const { return num_; }
  const Poly<S>& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  S operator()(const S& x) const {
    S d = den_(x);
    if (ScalarTraits<S>::is_zero(d)) throw ZeroDenominator("rational function evaluated at a pole");
    return num_(x) / d;
  }

  friend RationalFn operator+(const RationalFn& a, const RationalFn& b) {
    if (a.den_ == b.den_) return RationalFn(a.num_ + b.num_, a.den_);
    return RationalFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFn operator-(const RationalFn& a, const RationalFn& b) {
    if (a.den_ == b.den_) return RationalFn(a.num_ - b.num_, a.den_);
    return RationalFn(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFn operator-(const RationalFn& a) { return RationalFn(-a.num_, a.den_, raw_tag{}); }
  friend RationalFn operator*(const RationalFn& a, const RationalFn& b) {
    return RationalFn(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFn operator/(const RationalFn& a, const RationalFn& b) {
    if (b.is_zero()) throw ZeroDenominator("division by zero rational function");
    return RationalFn(a.num_ * b.den_, a.den_ * b.num_);
  }
  RationalFn& operator+=(const RationalFn& o) { return *this = *this + o; }
  RationalFn& operator-=(const RationalFn& o) { return *this = *this - o; }
  RationalFn& operator*=(const RationalFn& o) { return *this = *this * o; }

 private:
  struct raw_tag {};
  RationalFn(Poly<S> num, Poly<S> den, raw_tag) : num_(std::move(num)), den_(std::move(den)) {}

  void normalize() {
    if (den_.is_zero()) throw ZeroDenominator("rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = Poly<S>::constant(S(1L));
      return;
    }
    if constexpr (is_exact_v<S>) {
      Poly<S> g = gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = divmod(num_, g).first;
        den_ = divmod(den_, g).first;
      }
    }
    S l = den_.lead();
    if (!(l == S(1L))) {
      S inv = S(1L) / l;
      num_ *= inv;
      den_ *= inv;
    }
  }

  Poly<S> num_;
  Poly<S> den_;
};

template <class S>
RationalFn<S> derivative(const RationalFn<S>& f) {
  return RationalFn<S>(derivative(f.num()) * f.den() - f.num() * derivative(f.den()), f.den() * f.den());
}

// Logarithmic derivative p'/p.
template <class S>
RationalFn<S> log_derivative(const Poly<S>& p) {
  if (p.is_zero()) throw ZeroDenominator("log derivative of zero");
  return RationalFn<S>(derivative(p), p);
}

// Square matrix of rational functions.
template <class S>
struct RMatrix {
  int n = 0;
  std::vector<RationalFn<S>> a;

  RMatrix() = default;
  explicit RMatrix(int size) : n(size), a(static_cast<size_t>(size) * size) {}
  static RMatrix identity(int size) {
    RMatrix m(size);
    for (int i = 0; i < size; ++i) m(i, i) = RationalFn<S>::constant(S(1L));
    return m;
  }

  RationalFn<S>& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  const RationalFn<S>& operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

  friend RMatrix operator*(const RMatrix& x, const RMatrix& y) {
    RMatrix r(x.n);
    for (int i = 0; i < x.n; ++i)
      for (int k = 0; k < x.n; ++k) {
        if (x(i, k).is_zero()) continue;
        for (int j = 0; j < x.n; ++j)
          if (!y(k, j).is_zero()) r(i, j) += x(i, k) * y(k, j);
      }
    return r;
  }
  friend RMatrix operator+(const RMatrix& x, const RMatrix& y) {
    RMatrix r(x.n);
    for (size_t k = 0; k < x.a.size(); ++k) r.a[k] = x.a[k] + y.a[k];
    return r;
  }
  friend RMatrix operator-(const RMatrix& x, const RMatrix& y) {
    RMatrix r(x.n);
    for (size_t k = 0; k < x.a.size(); ++k) r.a[k] = x.a[k] - y.a[k];
    return r;
  }
};

template <class S>
RMatrix<S> derivative(const RMatrix<S>& m) {
  RMatrix<S> r(m.n);
  for (size_t k = 0; k < m.a.size(); ++k) r.a[k] = derivative(m.a[k]);
  return r;
}

// Largest numerator coefficient after bringing every entry over its own
// denominator; zero iff the matrix is identically zero.
template <class S>
Real residual_norm(const RMatrix<S>& m) {
  Real worst(0L);
  for (const auto& e : m.a) {
    Real v = coeff_norm(e.num());
    if (worst < v) worst = v;
  }
  return worst;
}

// Gauss-Jordan over the field of rational functions. Exact backend only in
// practice: numeric entries are never reduced and degrees grow quickly.
template <class S>
RMatrix<S> inverse(RMatrix<S> m) {
  const int n = m.n;
  RMatrix<S> inv = RMatrix<S>::identity(n);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n && piv < 0; ++r)
      if (!m(r, c).is_zero()) piv = r;
    if (piv < 0) throw ZeroDenominator("singular matrix");
    if (piv != c)
      for (int j = 0; j < n; ++j) {
        std::swap(m(piv, j), m(c, j));
        std::swap(inv(piv, j), inv(c, j));
      }
    RationalFn<S> p = m(c, c);
    for (int j = 0; j < n; ++j) {
      m(c, j) = m(c, j) / p;
      inv(c, j) = inv(c, j) / p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || m(r, c).is_zero()) continue;
      RationalFn<S> f = m(r, c);
      for (int j = 0; j < n; ++j) {
        m(r, j) -= f * m(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

}  // namespace qqb
