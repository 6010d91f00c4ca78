#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qqbethe/linalg.hpp"
#include "qqbethe/poly.hpp"
#include "qqbethe/roots.hpp"
#include "qqbethe/rootsys.hpp"

namespace qqb {

template <class S>
struct SingularPoint {
  S z;
  std::vector<int> weights;  // <alpha_i, coweight> per color
};

// Lambda_i = lead_i * cofactor_i * prod_k (z - z_k)^{weights_k[i]}.
// cofactor is 1 except for folded instances, whose Lambda picks up powers of
// the folded q-polynomials.
template <class S>
struct QQInstance {
  CartanType type;
  CartanMatrix cartan;
  std::vector<SingularPoint<S>> points;
  Twist<S> twist;
  std::vector<S> lead;
  std::vector<Poly<S>> cofactor;
  Tolerances tol;

  int rank() const { return cartan.rank; }
  S xi(int i) const { return pairing(i, twist, cartan); }
  bool xi_zero(int i) const { return ScalarTraits<S>::negligible(xi(i), Real(1L), tol); }
};

template <class S>
struct QQSolution {
  std::vector<Poly<S>> q_plus;
  std::vector<Poly<S>> q_minus;
};

template <class S>
QQInstance<S> make_instance(const CartanType& t, std::vector<SingularPoint<S>> points,
                            std::vector<S> zeta, const Tolerances& tol = {}) {
  QQInstance<S> inst;
  inst.type = t;
  inst.cartan = cartan_matrix(t);
  inst.points = std::move(points);
  inst.twist.zeta = std::move(zeta);
  inst.lead.assign(t.rank, S(1L));
  inst.cofactor.assign(t.rank, Poly<S>::constant(S(1L)));
  inst.tol = tol;
  return inst;
}

template <class S>
void validate_instance(const QQInstance<S>& inst) {
  const int r = inst.rank();
  if (!valid_cartan(inst.cartan) || inst.cartan != cartan_matrix(inst.type))
    throw Error("Cartan matrix does not match type " + inst.type.name());
  if (static_cast<int>(inst.twist.zeta.size()) != r) throw Error("twist has wrong length");
  if (static_cast<int>(inst.lead.size()) != r) throw Error("lead has wrong length");
  if (static_cast<int>(inst.cofactor.size()) != r) throw Error("cofactor has wrong length");
  for (int i = 0; i < r; ++i) {
    if (ScalarTraits<S>::is_zero(inst.lead[i])) throw Error("zero leading coefficient for Lambda");
    if (inst.cofactor[i].is_zero()) throw Error("zero cofactor for Lambda");
  }
  for (size_t k = 0; k < inst.points.size(); ++k) {
    const auto& p = inst.points[k];
    if (static_cast<int>(p.weights.size()) != r) throw Error("point weights have wrong length");
    for (int w : p.weights)
      if (w < 0) throw Error("negative weight at a singular point");
    for (size_t j = 0; j < k; ++j)
      if (ScalarTraits<S>::equal(inst.points[j].z, p.z, inst.tol)) throw Error("singular points coincide");
  }
}

template <class S>
Poly<S> lambda(const QQInstance<S>& inst, int i) {
  Poly<S> p = inst.cofactor[i] * inst.lead[i];
  for (const auto& pt : inst.points)
    if (pt.weights[i] > 0) p *= pow(Poly<S>::linear_factor(pt.z), pt.weights[i]);
  return p;
}

template <class S>
std::vector<Poly<S>> build_lambdas(const QQInstance<S>& inst) {
  std::vector<Poly<S>> out;
  for (int i = 0; i < inst.rank(); ++i) out.push_back(lambda(inst, i));
  return out;
}

template <class S>
int lambda_degree(const QQInstance<S>& inst, int i) {
  int d = inst.cofactor[i].degree();
  for (const auto& pt : inst.points) d += pt.weights[i];
  return d;
}

// Lambda_i * prod_{j != i} (q+_j)^{-a_ji}
template <class S>
Poly<S> qq_rhs(const QQInstance<S>& inst, const std::vector<Poly<S>>& q_plus, int i) {
  Poly<S> r = lambda(inst, i);
  for (int j = 0; j < inst.rank(); ++j)
    if (j != i && inst.cartan(j, i) != 0) r *= pow(q_plus[j], -inst.cartan(j, i));
  return r;
}

template <class S>
Poly<S> qq_residual(const QQInstance<S>& inst, const QQSolution<S>& sol, int i) {
  const auto& p = sol.q_plus[i];
  const auto& m = sol.q_minus[i];
  return wronskian(p, m) + inst.xi(i) * (p * m) - qq_rhs(inst, sol.q_plus, i);
}

// Scale against which a residual of equation i is judged.
template <class S>
Real qq_scale(const QQInstance<S>& inst, const QQSolution<S>& sol, int i) {
  Real s = coeff_norm(qq_rhs(inst, sol.q_plus, i));
  Real lhs = coeff_norm(sol.q_plus[i]) * coeff_norm(sol.q_minus[i]) *
             (Real(long(sol.q_plus[i].degree() + sol.q_minus[i].degree() + 2)) +
              ScalarTraits<S>::magnitude(inst.xi(i)));
  return max(Real(1L), max(s, lhs));
}

template <class S>
bool qq_equation_holds(const QQInstance<S>& inst, const QQSolution<S>& sol, int i) {
  return negligible(qq_residual(inst, sol, i), qq_scale(inst, sol, i), inst.tol);
}

template <class S>
bool is_qq_solution(const QQInstance<S>& inst, const QQSolution<S>& sol) {
  for (int i = 0; i < inst.rank(); ++i)
    if (!qq_equation_holds(inst, sol, i)) return false;
  return true;
}

struct PairCheck {
  int i, j;
  bool pass;
};

struct NondegReport {
  std::vector<bool> monic;
  std::vector<bool> squarefree;
  std::vector<bool> coprime_to_lambda;
  std::vector<PairCheck> pairwise_coprime;
  bool overall = true;
};

template <class S>
NondegReport check_nondegenerate(const QQInstance<S>& inst, const std::vector<Poly<S>>& q_plus) {
  NondegReport rep;
  const int r = inst.rank();
  for (int i = 0; i < r; ++i) {
    const auto& q = q_plus[i];
    if (q.is_zero()) throw Error("check_nondegenerate on zero polynomial");
    rep.monic.push_back(is_monic(q, inst.tol));
    rep.squarefree.push_back(distinct_roots_check(q, inst.tol));
    rep.coprime_to_lambda.push_back(coprime_check(q, lambda(inst, i), inst.tol));
  }
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      if (inst.cartan(i, j) != 0)
        rep.pairwise_coprime.push_back({i, j, coprime_check(q_plus[i], q_plus[j], inst.tol)});
  for (int i = 0; i < r; ++i) rep.overall = rep.overall && rep.monic[i] && rep.squarefree[i] && rep.coprime_to_lambda[i];
  for (const auto& p : rep.pairwise_coprime) rep.overall = rep.overall && p.pass;
  return rep;
}

// deg Lambda_i - d_i - sum_{j != i} a_ji d_j, plus one when xi_i = 0.
template <class S>
int expected_minus_degree(const QQInstance<S>& inst, const std::vector<int>& dplus, int i) {
  int d = lambda_degree(inst, i) - dplus[i];
  for (int j = 0; j < inst.rank(); ++j)
    if (j != i) d -= inst.cartan(j, i) * dplus[j];
  return inst.xi_zero(i) ? d + 1 : d;
}

// Solves W(q+, x) + xi q+ x = rhs for a polynomial x. When xi = 0 the
// solution is fixed by requiring the coefficient of z^{deg q+} in x to equal c.
template <class S>
Poly<S> complete_minus_color(const QQInstance<S>& inst, const std::vector<Poly<S>>& q_plus, int i,
                             const S& c = S(0L)) {
  const Poly<S>& q = q_plus[i];
  if (q.is_zero()) throw Error("complete_minus: q+ is zero for color " + std::to_string(i + 1));
  const Poly<S> rhs = qq_rhs(inst, q_plus, i);
  const bool zero_xi = inst.xi_zero(i);
  const S xi = zero_xi ? S(0L) : inst.xi(i);
  const int d = q.degree();
  int m = zero_xi ? rhs.degree() - d + 1 : rhs.degree() - d;
  if (zero_xi) m = std::max(m, d);
  if (m < 0)
    throw InconsistentSystem(i, "no polynomial q- for color " + std::to_string(i + 1) + ": degree would be negative");

  const Poly<S> dq = derivative(q);
  std::vector<Poly<S>> cols;
  int rows = rhs.degree() + 1;
  for (int j = 0; j <= m; ++j) {
    Poly<S> zj = Poly<S>::monomial(S(1L), j);
    Poly<S> col = q * derivative(zj) - dq * zj + xi * (q * zj);
    rows = std::max(rows, col.degree() + 1);
    cols.push_back(std::move(col));
  }
  const int extra = zero_xi ? 1 : 0;
  DenseMatrix<S> A(rows + extra, m + 1);
  std::vector<S> b(rows + extra, S(0L));
  for (int j = 0; j <= m; ++j)
    for (int k = 0; k <= cols[j].degree(); ++k) A(k, j) = cols[j].coeffs()[k];
  for (int k = 0; k <= rhs.degree(); ++k) b[k] = rhs.coeffs()[k];
  if (zero_xi) {
    A(rows, d) = S(1L);
    b[rows] = c;
  }
  auto x = solve_least_rows(A, b, inst.tol);
  if (!x) throw InconsistentSystem(i, "qq equation for color " + std::to_string(i + 1) + " has no polynomial solution");
  Poly<S> qm(std::move(*x));
  if constexpr (!is_exact_v<S>) {
    Poly<S> res = wronskian(q, qm) + xi * (q * qm) - rhs;
    Real scale = max(Real(1L), max(coeff_norm(rhs), coeff_norm(q) * coeff_norm(qm) * Real(long(m + d + 2))));
    if (!negligible(res, scale, inst.tol))
      throw InconsistentSystem(i, "qq equation for color " + std::to_string(i + 1) + " has no polynomial solution (residual " +
                                      coeff_norm(res).to_string(6) + ")");
    qm = trimmed(qm, inst.tol);
  }
  return qm;
}

template <class S>
QQSolution<S> complete_minus(const QQInstance<S>& inst, const std::vector<Poly<S>>& q_plus,
                             const std::vector<S>& constants = {}) {
  QQSolution<S> sol;
  sol.q_plus = q_plus;
  for (int i = 0; i < inst.rank(); ++i) {
    S c = i < static_cast<int>(constants.size()) ? constants[i] : S(0L);
    sol.q_minus.push_back(complete_minus_color(inst, q_plus, i, c));
  }
  return sol;
}

struct FoldData {
  int k;       // short simple root
  int l;       // its long neighbour
  int factor;  // -a_kl
  CartanType folded;
};

inline FoldData fold_data(const CartanType& t) {
  if (t.family == Family::B) return {t.rank - 1, t.rank - 2, 2, {Family::A, t.rank}};
  if (t.family == Family::G) return {0, 1, 3, {Family::A, 2}};
  throw UnsupportedType("folding is defined for B_n and G_2 only, got " + t.name());
}

// Twist whose pairings are the given xi in the Cartan matrix c.
template <class S>
Twist<S> twist_from_pairings(const std::vector<S>& xi, const CartanMatrix& c, const Tolerances& tol) {
  DenseMatrix<S> A(c.rank, c.rank);
  for (int i = 0; i < c.rank; ++i)
    for (int j = 0; j < c.rank; ++j) A(i, j) = S(long(c(j, i)));
  auto z = solve_least_rows(A, xi, tol);
  if (!z) throw Error("pairings are not realized by a twist");
  return {*z};
}

template <class S>
std::pair<QQInstance<S>, QQSolution<S>> fold(const QQInstance<S>& inst, const QQSolution<S>& sol) {
  const FoldData f = fold_data(inst.type);
  const int m = f.factor;
  QQInstance<S> out = inst;
  out.type = f.folded;
  out.cartan = cartan_matrix(f.folded);
  std::vector<S> xi = pairings(inst.twist, inst.cartan);
  xi[f.k] *= S(long(m));
  out.twist = twist_from_pairings(xi, out.cartan, inst.tol);
  out.lead[f.k] *= S(long(m));
  out.cofactor[f.k] *= pow(sol.q_plus[f.k] * sol.q_minus[f.k], m - 1);

  QQSolution<S> fs = sol;
  fs.q_plus[f.k] = pow(sol.q_plus[f.k], m);
  fs.q_minus[f.k] = pow(sol.q_minus[f.k], m);
  return {out, fs};
}

template <class S>
std::vector<int> degrees(const std::vector<Poly<S>>& ps) {
  std::vector<int> d;
  for (const auto& p : ps) d.push_back(p.degree());
  return d;
}

// Exact data promoted to the numeric backend at the calling thread's precision.
inline SingularPoint<Complex> to_complex(const SingularPoint<Rational>& p) { return {Complex(p.z), p.weights}; }

template <class S>
QQInstance<Complex> to_numeric(const QQInstance<S>& inst) {
  if constexpr (!is_exact_v<S>) {
    return inst;
  } else {
    QQInstance<Complex> out;
    out.type = inst.type;
    out.cartan = inst.cartan;
    for (const auto& p : inst.points) out.points.push_back(to_complex(p));
    for (const auto& z : inst.twist.zeta) out.twist.zeta.emplace_back(z);
    for (const auto& l : inst.lead) out.lead.emplace_back(l);
    for (const auto& c : inst.cofactor) out.cofactor.push_back(to_complex(c));
    out.tol = inst.tol;
    return out;
  }
}

template <class S>
QQSolution<Complex> to_numeric(const QQSolution<S>& sol) {
  QQSolution<Complex> out;
  for (const auto& p : sol.q_plus) out.q_plus.push_back(to_complex(p));
  for (const auto& p : sol.q_minus) out.q_minus.push_back(to_complex(p));
  return out;
}

}  // namespace qqb
