#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "qqbethe/poly.hpp"

namespace qqb {

// All complex roots by Aberth-Ehrlich iteration, each polished by one
// Newton step on the input polynomial.
inline std::vector<Complex> roots(const Poly<Complex>& p, int max_iter = 4000) {
  if (p.is_zero()) throw Error("roots of zero polynomial");
  const int n = p.degree();
  std::vector<Complex> z;
  if (n == 0) return z;
  const mpfr_prec_t bits = p.lead().precision();
  PrecisionScope scope(bits);
  Poly<Complex> m = monic(p);
  Poly<Complex> dm = derivative(m);
  if (n == 1) {
    z.push_back(-m.coeff(0));
    return z;
  }

  double a0 = abs(m.coeff(0)).to_double();
  double r0 = a0 > 0 ? std::pow(a0, 1.0 / n) : 1.0;
  if (!(r0 > 1e-30) || !std::isfinite(r0)) r0 = 1.0;
  for (int k = 0; k < n; ++k) {
    double th = 2 * M_PI * k / n + 0.4;
    z.emplace_back(Real::from_double(r0 * std::cos(th), bits), Real::from_double(r0 * std::sin(th), bits));
  }

  const Real stop = Real::pow2(-static_cast<long>(bits) + 8, bits);
  for (int it = 0; it < max_iter; ++it) {
    Real worst(0L);
    for (int k = 0; k < n; ++k) {
      Complex pv = m(z[k]);
      if (pv.is_zero()) continue;
      Complex ratio = pv / dm(z[k]);
      Complex s(0L);
      for (int j = 0; j < n; ++j)
        if (j != k) s += Complex(1L) / (z[k] - z[j]);
      Complex w = ratio / (Complex(1L) - ratio * s);
      if (!w.re.is_finite() || !w.im.is_finite()) continue;
      z[k] -= w;
      Real rel = abs(w) / max(Real(1L), abs(z[k]));
      if (worst < rel) worst = rel;
    }
    if (worst <= stop) break;
  }
  for (auto& r : z) {
    Complex d = dm(r);
    if (!d.is_zero()) {
      Complex step = m(r) / d;
      if (step.re.is_finite() && step.im.is_finite()) r -= step;
    }
  }
  return z;
}

inline Real min_separation(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  Real best(-1L);
  for (const auto& x : a)
    for (const auto& y : b) {
      Real d = abs(x - y);
      if (best.sign() < 0 || d < best) best = d;
    }
  return best;
}

template <class S>
bool distinct_roots_check(const Poly<S>& p, const Tolerances& t) {
  if (p.is_zero()) throw Error("distinct_roots_check on zero polynomial");
  if constexpr (is_exact_v<S>) {
    return gcd(p, derivative(p)).degree() == 0;
  } else {
    auto r = roots(p);
    for (size_t i = 0; i < r.size(); ++i)
      for (size_t j = i + 1; j < r.size(); ++j)
        if (abs(r[i] - r[j]) <= t.root()) return false;
    return true;
  }
}

template <class S>
bool coprime_check(const Poly<S>& p, const Poly<S>& q, const Tolerances& t) {
  if (p.is_zero() || q.is_zero()) throw Error("coprime_check on zero polynomial");
  if constexpr (is_exact_v<S>) {
    return gcd(p, q).degree() == 0;
  } else {
    if (p.degree() == 0 || q.degree() == 0) return true;
    return min_separation(roots(p), roots(q)) > t.root();
  }
}

// Rational roots with multiplicity, or nullopt if p does not split over Q.
inline std::optional<std::vector<Rational>> rational_roots(const Poly<Rational>& p) {
  if (p.is_zero()) throw Error("roots of zero polynomial");
  std::vector<Rational> out;
  Poly<Rational> cur = monic(p);
  PrecisionScope scope(256 + 32 * cur.degree());
  while (cur.degree() > 0) {
    bool found = false;
    for (const auto& z : roots(to_complex(cur))) {
      if (abs(z.im) > Real::pow2(-40)) continue;
      // Continued-fraction convergents of the real part.
      Real x = z.re;
      mpz_class h0 = 1, h1 = 0, k0 = 0, k1 = 1;
      for (int step = 0; step < 200 && !found; ++step) {
        Real fl(0L);
        mpfr_floor(fl.get(), x.get());
        mpz_class a;
        mpfr_get_z(a.get_mpz_t(), fl.get(), MPFR_RNDN);
        mpz_class h2 = a * h0 + h1, k2 = a * k0 + k1;
        h1 = h0;
        h0 = h2;
        k1 = k0;
        k0 = k2;
        Rational cand(h0, k0);
        cand.canonicalize();
        if (sgn(cur(cand)) == 0) {
          out.push_back(cand);
          cur = divmod(cur, Poly<Rational>::linear_factor(cand)).first;
          found = true;
          break;
        }
        Real frac = x - fl;
        if (frac <= Real::pow2(-200)) break;
        x = Real(1L) / frac;
      }
      if (found) break;
    }
    if (!found) return std::nullopt;
  }
  return out;
}

}  // namespace qqb
