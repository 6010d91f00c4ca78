#pragma once

#include <map>
#include <random>
#include <utility>
#include <vector>

#include "qqbethe/backlund.hpp"
#include "qqbethe/bethe.hpp"
#include "qqbethe/rational_fn.hpp"

namespace qqb {

// g_i = zeta_i - (q+_i)'/q+_i, connection d/dz + sum g_i coroot_i + sum Lambda_i e_i.
template <class S>
struct MiuraConnection {
  Twist<S> twist;
  std::vector<RationalFn<S>> g;
  std::vector<Poly<S>> lambdas;
};

template <class S>
MiuraConnection<S> build_connection(const QQInstance<S>& inst, const std::vector<Poly<S>>& q_plus) {
  MiuraConnection<S> c{inst.twist, {}, build_lambdas(inst)};
  for (int i = 0; i < inst.rank(); ++i)
    c.g.push_back(RationalFn<S>::constant(inst.twist.zeta[i]) - log_derivative(q_plus[i]));
  return c;
}

template <class S>
using Matrix2 = RMatrix<S>;

template <class S>
struct Gl2Oper {
  Matrix2<S> raw;
  Matrix2<S> tilde;
  RationalFn<S> rho;
};

// Gauge action g(d + M)g^{-1} = d + g M g^{-1} - g' g^{-1}.
template <class S>
RMatrix<S> gauge(const RMatrix<S>& g, const RMatrix<S>& M) {
  RMatrix<S> gi = inverse(g);
  return g * M * gi - derivative(g) * gi;
}

template <class S>
Gl2Oper<S> gl2_oper(const MiuraConnection<S>& conn, const CartanMatrix& c, const std::vector<Poly<S>>& q_plus, int i) {
  Gl2Oper<S> out;
  out.raw = Matrix2<S>(2);
  out.raw(0, 0) = conn.g[i];
  out.raw(0, 1) = RationalFn<S>(conn.lambdas[i]);
  RationalFn<S> low = -conn.g[i];
  for (int k = 0; k < c.rank; ++k)
    if (k != i && c(k, i) != 0) low -= RationalFn<S>::constant(S(long(c(k, i)))) * conn.g[k];
  out.raw(1, 1) = low;

  // u = diag(1, prod_{j != i} y_j^{a_ji})
  RationalFn<S> y = RationalFn<S>::constant(S(1L));
  Poly<S> rho = conn.lambdas[i];
  for (int j = 0; j < c.rank; ++j) {
    if (j == i || c(j, i) == 0) continue;
    y = y / RationalFn<S>(pow(q_plus[j], -c(j, i)));
    rho *= pow(q_plus[j], -c(j, i));
  }
  Matrix2<S> u(2);
  u(0, 0) = RationalFn<S>::constant(S(1L));
  u(1, 1) = y;
  out.tilde = gauge(u, out.raw);
  out.rho = RationalFn<S>(rho);
  return out;
}

// Residual of nabla_i = v_i (d + Z_i) v_i^{-1}, measured as the largest
// coefficient of nabla_i v_i - v_i Z_i + v_i' after clearing denominators.
template <class S>
Real verify_mp_twist(const QQInstance<S>& inst, const QQSolution<S>& sol, int i) {
  const auto& c = inst.cartan;
  const Poly<S>& q = sol.q_plus[i];
  if (q.is_zero()) throw ZeroDenominator("verify_mp_twist: q+ is zero");
  auto conn = build_connection(inst, sol.q_plus);
  auto op = gl2_oper(conn, c, sol.q_plus, i);
  Poly<S> P = Poly<S>::constant(S(1L));
  for (int j = 0; j < c.rank; ++j)
    if (j != i && c(j, i) != 0) P *= pow(sol.q_plus[j], -c(j, i));
  Matrix2<S> v(2);
  v(0, 0) = RationalFn<S>(q);
  v(0, 1) = RationalFn<S>(-sol.q_minus[i]);
  v(1, 1) = RationalFn<S>(P, q);
  S z22 = -inst.twist.zeta[i];
  for (int j = 0; j < c.rank; ++j)
    if (j != i && c(j, i) != 0) z22 -= S(long(c(j, i))) * inst.twist.zeta[j];
  Matrix2<S> Z(2);
  Z(0, 0) = RationalFn<S>::constant(inst.twist.zeta[i]);
  Z(1, 1) = RationalFn<S>::constant(z22);
  Matrix2<S> res = op.raw * v - v * Z + derivative(v);
  Real worst(0L);
  for (const auto& e : res.a) worst = max(worst, coeff_norm(e.num()));
  return worst;
}

// Finite part at each Bethe root of 2/(z-w) + <alpha_i, A^H(z)> + (log Lambda_i)'.
template <class S>
std::map<std::pair<int, int>, S> regularity_residues(const QQInstance<S>& inst, const QQSolution<S>& sol,
                                                     const BetheRoots<S>& br) {
  std::map<std::pair<int, int>, S> out;
  const auto& c = inst.cartan;
  for (int i = 0; i < inst.rank(); ++i) {
    Poly<S> L = lambda(inst, i);
    for (int l = 0; l < static_cast<int>(br.roots[i].size()); ++l) {
      const S& w = br.roots[i][l];
      auto [D1, rem] = divmod(sol.q_plus[i], Poly<S>::linear_factor(w));
      if (!negligible(rem, coeff_norm(sol.q_plus[i]), inst.tol))
        throw PoleCollision("regularity_residues: point is not a root of q+");
      S lv = L(w), dv = D1(w);
      if (ScalarTraits<S>::is_zero(lv) || ScalarTraits<S>::is_zero(dv))
        throw PoleCollision("regularity_residues: degenerate q+ at a Bethe root");
      S acc = inst.xi(i) + derivative(L)(w) / lv - S(2L) * derivative(D1)(w) / dv;
      for (int j = 0; j < c.rank; ++j) {
        if (j == i || c(j, i) == 0) continue;
        S qv = sol.q_plus[j](w);
        if (ScalarTraits<S>::is_zero(qv)) throw PoleCollision("regularity_residues: adjacent q+ vanishes at a Bethe root");
        acc -= S(long(c(j, i))) * derivative(sol.q_plus[j])(w) / qv;
      }
      out[{i, l}] = acc;
    }
  }
  return out;
}

// Constant matrix helpers for the type A defining representation.
template <class S>
RMatrix<S> constant_matrix(const std::vector<std::vector<S>>& m) {
  RMatrix<S> r(static_cast<int>(m.size()));
  for (int i = 0; i < r.n; ++i)
    for (int j = 0; j < r.n; ++j)
      if (!ScalarTraits<S>::is_zero(m[i][j])) r(i, j) = RationalFn<S>::constant(m[i][j]);
  return r;
}

template <class S>
struct TwistReduction {
  RMatrix<S> u;        // u (d + Z) u^{-1} = d + diag
  Twist<S> zh;         // diagonal as coroot coefficients
  RMatrix<S> reduced;  // the conjugated connection matrix
};

// Clears the strictly upper part of a constant upper triangular traceless Z,
// one diagonal at a time, by unipotent polynomial gauges I + s E_ab with
// s' + (Z_aa - Z_bb) s = current entry.
template <class S>
TwistReduction<S> reduce_twist_type_a(const std::vector<std::vector<S>>& Z) {
  const int n = static_cast<int>(Z.size());
  S tr(0L);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(Z[i].size()) != n) throw Error("reduce_twist_type_a: matrix is not square");
    for (int j = 0; j < i; ++j)
      if (!ScalarTraits<S>::is_zero(Z[i][j])) throw Error("reduce_twist_type_a: matrix is not upper triangular");
    tr += Z[i][i];
  }
  Real scale(1L);
  for (int i = 0; i < n; ++i) scale = max(scale, ScalarTraits<S>::magnitude(Z[i][i]));
  if (!ScalarTraits<S>::negligible(tr, scale, Tolerances{})) throw Error("reduce_twist_type_a: twist must be traceless");

  // Entries are polynomials throughout; track them directly.
  std::vector<std::vector<Poly<S>>> M(n, std::vector<Poly<S>>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) M[i][j] = Poly<S>::constant(Z[i][j]);
  std::vector<std::vector<Poly<S>>> U(n, std::vector<Poly<S>>(n));
  for (int i = 0; i < n; ++i) U[i][i] = Poly<S>::constant(S(1L));

  for (int off = 1; off < n; ++off)
    for (int a = 0; a + off < n; ++a) {
      const int b = a + off;
      if (M[a][b].is_zero()) continue;
      S xi = Z[a][a] - Z[b][b];
      if (ScalarTraits<S>::negligible(xi, scale, Tolerances{})) xi = S(0L);
      Poly<S> s = solve_linear_ode(xi, M[a][b]);
      // M <- g M g^{-1} - g' g^{-1}, g = I + s E_ab
      for (int j = b; j < n; ++j) M[a][j] += s * M[b][j];
      for (int i = 0; i <= a; ++i) M[i][b] -= s * M[i][a];
      M[a][b] -= derivative(s);
      // U <- g U: row a += s * row b
      for (int j = 0; j < n; ++j) U[a][j] += s * U[b][j];
    }

  TwistReduction<S> out;
  out.u = RMatrix<S>(n);
  out.reduced = RMatrix<S>(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      out.u(i, j) = RationalFn<S>(U[i][j]);
      out.reduced(i, j) = RationalFn<S>(M[i][j]);
    }
  S acc(0L);
  for (int i = 0; i + 1 < n; ++i) {
    acc += Z[i][i];
    out.zh.zeta.push_back(acc);
  }
  return out;
}

// Connection matrix of d + A(z) in the defining representation of sl(n+1).
template <class S>
RMatrix<S> type_a_matrix(const MiuraConnection<S>& conn) {
  const int r = static_cast<int>(conn.g.size());
  RMatrix<S> A(r + 1);
  for (int i = 0; i < r; ++i) {
    A(i, i) += conn.g[i];
    A(i + 1, i + 1) -= conn.g[i];
    A(i, i + 1) = RationalFn<S>(conn.lambdas[i]);
  }
  return A;
}

template <class S>
RMatrix<S> twist_matrix(const Twist<S>& t) {
  const int r = static_cast<int>(t.zeta.size());
  RMatrix<S> Z(r + 1);
  for (int i = 0; i < r; ++i) {
    Z(i, i) += RationalFn<S>::constant(t.zeta[i]);
    Z(i + 1, i + 1) -= RationalFn<S>::constant(t.zeta[i]);
  }
  return Z;
}

template <class S>
struct Diagonalization {
  RMatrix<S> v;
  RMatrix<S> b_minus;
  ChainTrace<S> trace;
  Real residual;  // exact: largest coefficient; numeric: relative, at sample points
};

// Signed antidiagonal lift of w0 with determinant one.
template <class S>
RMatrix<S> w0_matrix(int n) {
  RMatrix<S> W(n);
  for (int j = 0; j < n; ++j) W(n - 1 - j, j) = RationalFn<S>::constant(S(long((n - 1 - j) % 2 ? -1 : 1)));
  return W;
}

template <class S>
Diagonalization<S> diagonalize_type_a(const QQInstance<S>& inst, const QQSolution<S>& sol, const WeylWord& word,
                                      const ChainOptions& copts = {}) {
  if (inst.type.family != Family::A) throw UnsupportedType("diagonalization is implemented for type A only");
  const int r = inst.rank(), n = r + 1;
  if (static_cast<int>(word.size()) != positive_root_count(inst.type) || !is_reduced(word, inst.cartan))
    throw Error("diagonalize_type_a needs a reduced word for w0");
  ChainOptions co = copts;
  co.throw_on_break = true;
  Diagonalization<S> out;
  out.trace = chain(inst, sol, word, co);

  // b_- = exp(-mu_1 f) ... exp(-mu_k f) prod qbar_j^{coroot_j}, in application order.
  RMatrix<S> bm = RMatrix<S>::identity(n);
  for (const auto& st : out.trace.steps) {
    RMatrix<S> e = RMatrix<S>::identity(n);
    e(st.index + 1, st.index) = -st.mu->mualt;
    bm = bm * e;
  }
  const auto& qbar = out.trace.final_sol().q_plus;
  RMatrix<S> h(n);
  for (int k = 0; k < n; ++k) {
    RationalFn<S> d = RationalFn<S>::constant(S(1L));
    if (k < r) d = d * RationalFn<S>(qbar[k]);
    if (k > 0) d = d / RationalFn<S>(qbar[k - 1]);
    h(k, k) = d;
  }
  bm = bm * h;
  out.b_minus = bm;

  // Column operations X = b_- n with n upper unipotent until X = b_+ w0.
  RMatrix<S> X = bm;
  for (int j = 0; j < n; ++j) {
    const int p = n - 1 - j;
    if (X(p, j).is_zero()) throw FactorizationFailed("b_- is not in the open Bruhat cell (zero pivot at column " +
                                                     std::to_string(j + 1) + ")");
    for (int jj = j + 1; jj < n; ++jj) {
      if (X(p, jj).is_zero()) continue;
      RationalFn<S> f = X(p, jj) / X(p, j);
      for (int i = 0; i < n; ++i)
        if (!X(i, j).is_zero()) X(i, jj) -= f * X(i, j);
    }
  }
  RMatrix<S> Winv = inverse(w0_matrix<S>(n));
  out.v = X * Winv;

  auto conn = build_connection(inst, sol.q_plus);
  RMatrix<S> A = type_a_matrix(conn);
  RMatrix<S> Z = twist_matrix(inst.twist);
  if constexpr (is_exact_v<S>) {
    out.residual = residual_norm(A * out.v - out.v * Z + derivative(out.v));
  } else {
    // Entrywise values at sample points; the assembled product has noisy
    // high-degree coefficients that do not survive monic normalization.
    RMatrix<S> dv = derivative(out.v);
    std::mt19937_64 rng(copts.seed);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    auto eval = [&](const RMatrix<S>& m, const Complex& x, std::vector<Complex>& vals, Real& size) {
      vals.assign(m.a.size(), Complex(0L));
      for (size_t k = 0; k < m.a.size(); ++k) {
        if (m.a[k].is_zero()) continue;
        Complex d = m.a[k].den()(x);
        if (abs(d) < Real::pow2(-40) * max(Real(1L), coeff_norm(m.a[k].den()))) return false;
        vals[k] = m.a[k].num()(x) / d;
        size = max(size, abs(vals[k]));
      }
      return true;
    };
    Real worst(0L);
    for (int s = 0, used = 0; s < 64 && used < 16; ++s) {
      Complex x(Real::from_double(u(rng)), Real::from_double(u(rng)));
      std::vector<Complex> a, v, d, zz;
      Real sa(1L), sv(1L), sd(1L), sz(1L);
      if (!eval(A, x, a, sa) || !eval(out.v, x, v, sv) || !eval(dv, x, d, sd) || !eval(Z, x, zz, sz)) continue;
      ++used;
      const Real scale = sa * sv + sv * sz + sd;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          Complex acc = d[i * n + j];
          for (int k = 0; k < n; ++k) acc += a[i * n + k] * v[k * n + j] - v[i * n + k] * zz[k * n + j];
          worst = max(worst, abs(acc) / scale);
        }
    }
    out.residual = worst;
  }
  return out;
}

}  // namespace qqb
