#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "qqbethe/qq.hpp"

namespace qqb {

template <class S>
struct BetheRoots {
  std::vector<std::vector<S>> roots;  // per color

  int total() const {
    int n = 0;
    for (const auto& r : roots) n += static_cast<int>(r.size());
    return n;
  }
};

struct IterationRecord {
  std::string phase;  // "newton" or "continuation"
  int step = 0;
  int iteration = 0;
  double log2_t = 0;
  double max_residual = 0;
  double damping = 1;
};

struct SolveOptions {
  int max_iterations = 100;
  int continuation_steps = 64;
  int log2_t_start = 40;
  int max_step_halvings = 24;
  int singular_retries = 3;
  int min_damping_log2 = -30;
  unsigned long long seed = 1;
  std::function<void(const IterationRecord&)> log;
};

namespace detail {

template <class S>
bool collides(const S& a, const S& b, const Tolerances& t) {
  if constexpr (is_exact_v<S>) {
    return a == b;
  } else {
    return abs(a - b) <= t.root();
  }
}

// ~ terms entering equation (i, l): value and sum of magnitudes.
template <class S>
std::pair<S, Real> residual_terms(const QQInstance<S>& inst, const BetheRoots<S>& br, int i, int l) {
  const S& w = br.roots[i][l];
  S acc = inst.xi(i);
  Real scale = ScalarTraits<S>::magnitude(acc);
  for (const auto& p : inst.points) {
    if (p.weights[i] == 0) continue;
    if (collides(w, p.z, inst.tol)) throw PoleCollision("Bethe root coincides with a singular point");
    S term = S(long(p.weights[i])) / (w - p.z);
    scale += ScalarTraits<S>::magnitude(term);
    acc += term;
  }
  const Poly<S>& cof = inst.cofactor[i];
  if (cof.degree() > 0) {
    S c = cof(w);
    if (ScalarTraits<S>::is_zero(c)) throw PoleCollision("Bethe root is a zero of Lambda");
    S term = derivative(cof)(w) / c;
    scale += ScalarTraits<S>::magnitude(term);
    acc += term;
  }
  for (int j = 0; j < inst.rank(); ++j) {
    const int a = inst.cartan(j, i);
    if (a == 0) continue;
    for (size_t s = 0; s < br.roots[j].size(); ++s) {
      if (j == i && static_cast<int>(s) == l) continue;
      if (collides(w, br.roots[j][s], inst.tol)) throw PoleCollision("Bethe roots collide");
      S term = S(long(a)) / (w - br.roots[j][s]);
      scale += ScalarTraits<S>::magnitude(term);
      acc -= term;
    }
  }
  return {acc, scale};
}

}  // namespace detail

// xi_i + sum_k l_k/(w - z_k) - sum_{(j,s) != (i,l)} a_ji/(w - w^j_s)
template <class S>
S bethe_residual(const QQInstance<S>& inst, const BetheRoots<S>& br, int i, int l) {
  return detail::residual_terms(inst, br, i, l).first;
}

// Same equation written as xi_i + P'/P(w) - 2 D'/D(w) with
// P = Lambda_i prod_{j != i} (q+_j)^{-a_ji} and D = prod_{s != l} (z - w^i_s).
template <class S>
S bethe_residual_log(const QQInstance<S>& inst, const BetheRoots<S>& br, int i, int l) {
  std::vector<Poly<S>> qp;
  for (const auto& r : br.roots) qp.push_back(poly_from_roots(r));
  const S& w = br.roots[i][l];
  Poly<S> P = qq_rhs(inst, qp, i);
  std::vector<S> others;
  for (size_t s = 0; s < br.roots[i].size(); ++s)
    if (static_cast<int>(s) != l) others.push_back(br.roots[i][s]);
  Poly<S> D = poly_from_roots(others);
  S pv = P(w), dv = D(w);
  if (ScalarTraits<S>::is_zero(pv) || ScalarTraits<S>::is_zero(dv)) throw PoleCollision("log form evaluated at a pole");
  return inst.xi(i) + derivative(P)(w) / pv - S(2L) * derivative(D)(w) / dv;
}

struct BetheReport {
  Real max_residual;
  int equations = 0;
  bool pass = true;
};

template <class S>
BetheReport verify_bethe(const QQInstance<S>& inst, const BetheRoots<S>& br) {
  BetheReport rep;
  for (int i = 0; i < inst.rank(); ++i)
    for (int l = 0; l < static_cast<int>(br.roots[i].size()); ++l) {
      auto [v, scale] = detail::residual_terms(inst, br, i, l);
      Real m = ScalarTraits<S>::magnitude(v);
      if (rep.max_residual < m) rep.max_residual = m;
      ++rep.equations;
      if (!ScalarTraits<S>::negligible(v, scale, inst.tol)) rep.pass = false;
    }
  return rep;
}

template <class S>
std::vector<std::pair<int, int>> equation_index(const BetheRoots<S>& br) {
  std::vector<std::pair<int, int>> idx;
  for (int i = 0; i < static_cast<int>(br.roots.size()); ++i)
    for (int l = 0; l < static_cast<int>(br.roots[i].size()); ++l) idx.emplace_back(i, l);
  return idx;
}

template <class S>
std::vector<S> bethe_residual_vector(const QQInstance<S>& inst, const BetheRoots<S>& br) {
  std::vector<S> f;
  for (auto [i, l] : equation_index(br)) f.push_back(bethe_residual(inst, br, i, l));
  return f;
}

// Analytic Jacobian in the stacked color-major ordering.
template <class S>
DenseMatrix<S> bethe_jacobian(const QQInstance<S>& inst, const BetheRoots<S>& br) {
  auto idx = equation_index(br);
  const int n = static_cast<int>(idx.size());
  std::map<std::pair<int, int>, int> pos;
  for (int k = 0; k < n; ++k) pos[idx[k]] = k;
  DenseMatrix<S> J(n, n);
  for (int row = 0; row < n; ++row) {
    auto [i, l] = idx[row];
    const S& w = br.roots[i][l];
    S diag(0L);
    for (const auto& p : inst.points) {
      if (p.weights[i] == 0) continue;
      S d = w - p.z;
      diag -= S(long(p.weights[i])) / (d * d);
    }
    const Poly<S>& cof = inst.cofactor[i];
    if (cof.degree() > 0) {
      S c = cof(w), c1 = derivative(cof)(w), c2 = derivative(derivative(cof))(w);
      diag += (c2 * c - c1 * c1) / (c * c);
    }
    for (int j = 0; j < inst.rank(); ++j) {
      const int a = inst.cartan(j, i);
      if (a == 0) continue;
      for (int s = 0; s < static_cast<int>(br.roots[j].size()); ++s) {
        if (j == i && s == l) continue;
        S d = w - br.roots[j][s];
        S t = S(long(a)) / (d * d);
        diag += t;
        J(row, pos[{j, s}]) -= t;
      }
    }
    J(row, row) = diag;
  }
  return J;
}

template <class S>
void canonicalize(BetheRoots<S>& br) {
  for (auto& r : br.roots) {
    if constexpr (is_exact_v<S>) {
      std::sort(r.begin(), r.end());
    } else {
      std::sort(r.begin(), r.end(), lex_less);
    }
  }
}

template <class S>
std::vector<Poly<S>> q_plus_from_roots(const BetheRoots<S>& br) {
  std::vector<Poly<S>> q;
  for (const auto& r : br.roots) q.push_back(poly_from_roots(r));
  return q;
}

inline BetheRoots<Complex> roots_of(const std::vector<Poly<Complex>>& q_plus) {
  BetheRoots<Complex> br;
  for (const auto& q : q_plus) br.roots.push_back(roots(q));
  canonicalize(br);
  return br;
}

// Exact roots when every q+ splits over Q.
inline std::optional<BetheRoots<Rational>> roots_of(const std::vector<Poly<Rational>>& q_plus) {
  BetheRoots<Rational> br;
  for (const auto& q : q_plus) {
    auto r = rational_roots(q);
    if (!r) return std::nullopt;
    br.roots.push_back(*r);
  }
  canonicalize(br);
  return br;
}

namespace detail {

inline Real max_norm(const std::vector<Complex>& v) {
  Real m(0L);
  for (const auto& x : v) m = max(m, abs(x));
  return m;
}

inline Real residual_scale(const QQInstance<Complex>& inst, const BetheRoots<Complex>& br) {
  Real s(1L);
  for (int i = 0; i < inst.rank(); ++i)
    for (int l = 0; l < static_cast<int>(br.roots[i].size()); ++l) s = max(s, residual_terms(inst, br, i, l).second);
  return s;
}

inline void apply_step(BetheRoots<Complex>& br, const std::vector<Complex>& delta, const Real& lambda) {
  int k = 0;
  for (auto& r : br.roots)
    for (auto& w : r) w += Complex(lambda) * delta[k++];
}

inline void perturb(BetheRoots<Complex>& br, const Real& size, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto& r : br.roots)
    for (auto& w : r) w += Complex(size * Real::from_double(u(rng)), size * Real::from_double(u(rng)));
}

}  // namespace detail

// Damped Newton on the stacked Bethe residuals.
inline BetheRoots<Complex> newton_to(const QQInstance<Complex>& inst, BetheRoots<Complex> br, const SolveOptions& opts,
                                     const Real& target, std::mt19937_64& rng, const std::string& phase = "newton",
                                     double log2_t = 0) {
  PrecisionScope scope(inst.tol.precision_bits);
  if (br.total() == 0) return br;
  int retries = 0;
  for (int it = 0; it <= opts.max_iterations; ++it) {
    auto f = bethe_residual_vector(inst, br);
    Real norm = detail::max_norm(f);
    Real scale = detail::residual_scale(inst, br);
    if (opts.log) opts.log({phase, 0, it, log2_t, norm.to_double(), 1.0});
    if (norm <= target * scale) return br;
    if (it == opts.max_iterations) break;
    std::vector<Complex> delta;
    try {
      auto J = bethe_jacobian(inst, br);
      std::vector<Complex> rhs;
      for (auto& x : f) rhs.push_back(-x);
      delta = solve_square(J, rhs, inst.tol);
    } catch (const SingularJacobian&) {
      if (retries++ >= opts.singular_retries) throw;
      detail::perturb(br, Real(10L) * target, rng);
      continue;
    }
    Real lambda(1L);
    const Real floor = Real::pow2(opts.min_damping_log2);
    for (;;) {
      BetheRoots<Complex> trial = br;
      detail::apply_step(trial, delta, lambda);
      bool ok = true;
      Real tnorm;
      try {
        tnorm = detail::max_norm(bethe_residual_vector(inst, trial));
      } catch (const PoleCollision&) {
        ok = false;
      }
      if (ok && (tnorm < norm || lambda <= floor)) {
        br = std::move(trial);
        break;
      }
      if (lambda <= floor) {
        br = std::move(trial);
        break;
      }
      lambda = lambda / Real(2L);
    }
  }
  throw NoConvergence("Newton did not converge within " + std::to_string(opts.max_iterations) + " iterations");
}

inline BetheRoots<Complex> solve_newton(const QQInstance<Complex>& inst, const BetheRoots<Complex>& init,
                                        const SolveOptions& opts = {}) {
  std::mt19937_64 rng(opts.seed);
  // Precondition: the initial point must be evaluable.
  bethe_residual_vector(inst, init);
  auto out = newton_to(inst, init, opts, inst.tol.newton(), rng);
  canonicalize(out);
  return out;
}

// Roots of q+_j at the infinite system, given as values.
template <class S>
struct InfinitePartition {
  std::vector<std::vector<S>> w;
};

template <class S>
struct SeedNode {
  int color;
  S value;
  int parent = -1;  // index into the node list, or -1 when seeded at a point
};

// Builds the root tree of a partition; throws BadPartition on violated
// containment, disjointness or multiplicity-freeness.
template <class S>
std::vector<SeedNode<S>> partition_tree(const QQInstance<S>& inst, const InfinitePartition<S>& part) {
  const int r = inst.rank();
  if (!inst.type.simply_laced()) throw UnsupportedType("infinite qq-system seeding needs a simply-laced type");
  if (static_cast<int>(part.w.size()) != r) throw BadPartition("partition has wrong number of colors");
  for (int j = 0; j < r; ++j) {
    if (inst.cofactor[j].degree() > 0) throw BadPartition("seeding needs Lambda given by points only");
    for (const auto& p : inst.points)
      if (p.weights[j] > 1) throw BadPartition("Lambda is not multiplicity-free");
  }
  auto eq = [&](const S& a, const S& b) { return ScalarTraits<S>::equal(a, b, inst.tol); };
  auto in_z = [&](int j, const S& v) {
    for (const auto& p : inst.points)
      if (p.weights[j] > 0 && eq(p.z, v)) return true;
    return false;
  };
  // Multiplicity-freeness of Lambda_j prod_{a_kj<0} q+_k.
  for (int j = 0; j < r; ++j) {
    std::vector<S> all;
    for (const auto& p : inst.points)
      if (p.weights[j] > 0) all.push_back(p.z);
    for (int k = 0; k < r; ++k)
      if (k != j && inst.cartan(k, j) < 0) all.insert(all.end(), part.w[k].begin(), part.w[k].end());
    for (size_t a = 0; a < all.size(); ++a)
      for (size_t b = a + 1; b < all.size(); ++b)
        if (eq(all[a], all[b]))
          throw BadPartition("right-hand side for color " + std::to_string(j + 1) + " is not multiplicity-free");
    for (size_t a = 0; a < part.w[j].size(); ++a)
      for (size_t b = a + 1; b < part.w[j].size(); ++b)
        if (eq(part.w[j][a], part.w[j][b])) throw BadPartition("repeated root in W_" + std::to_string(j + 1));
  }
  std::vector<SeedNode<S>> nodes;
  std::vector<std::vector<int>> node_of(r);
  for (int j = 0; j < r; ++j)
    for (const auto& v : part.w[j]) {
      node_of[j].push_back(static_cast<int>(nodes.size()));
      nodes.push_back({j, v, -1});
    }
  std::vector<bool> resolved(nodes.size(), false);
  for (size_t n = 0; n < nodes.size(); ++n) resolved[n] = in_z(nodes[n].color, nodes[n].value);
  for (bool progress = true; progress;) {
    progress = false;
    for (size_t n = 0; n < nodes.size(); ++n) {
      if (resolved[n]) continue;
      const int j = nodes[n].color;
      for (int k = 0; k < r && !resolved[n]; ++k) {
        if (k == j || inst.cartan(k, j) >= 0) continue;
        for (int m : node_of[k])
          if (resolved[m] && eq(nodes[m].value, nodes[n].value)) {
            nodes[n].parent = m;
            resolved[n] = true;
            progress = true;
            break;
          }
      }
    }
  }
  for (size_t n = 0; n < nodes.size(); ++n)
    if (!resolved[n])
      throw BadPartition("root of W_" + std::to_string(nodes[n].color + 1) +
                         " is neither a zero of Lambda nor a root of an adjacent color");
  return nodes;
}

// q+ = prod_{W_j}(z - w), q- = lead_j prod_{V_j}(z - v).
template <class S>
QQSolution<S> infinite_solution(const QQInstance<S>& inst, const InfinitePartition<S>& part) {
  partition_tree(inst, part);
  QQSolution<S> sol;
  for (int j = 0; j < inst.rank(); ++j) sol.q_plus.push_back(poly_from_roots(part.w[j]));
  for (int j = 0; j < inst.rank(); ++j) {
    Poly<S> full = qq_rhs(inst, sol.q_plus, j);
    auto [q, rem] = divmod(full, sol.q_plus[j]);
    if (!rem.is_zero()) throw BadPartition("W_" + std::to_string(j + 1) + " is not contained in the available roots");
    sol.q_minus.push_back(q);
  }
  return sol;
}

// Leading-order positions at twist t*Z: each root sits at its parent minus
// 1/(t * Xi), Xi the sum of xi over the root's subtree.
inline BetheRoots<Complex> seed_roots(const QQInstance<Complex>& inst, const std::vector<SeedNode<Complex>>& nodes,
                                      const Complex& t) {
  const int n = static_cast<int>(nodes.size());
  std::vector<Complex> xi_sub(n);
  for (int k = 0; k < n; ++k) xi_sub[k] = inst.xi(nodes[k].color);
  std::vector<Complex> acc = xi_sub;
  for (int k = 0; k < n; ++k)
    for (int p = nodes[k].parent; p >= 0; p = nodes[p].parent) acc[p] += xi_sub[k];
  std::vector<Complex> pos(n);
  std::vector<bool> done(n, false);
  std::function<const Complex&(int)> place = [&](int k) -> const Complex& {
    if (done[k]) return pos[k];
    if (ScalarTraits<Complex>::negligible(acc[k], Real(1L), inst.tol))
      throw BadPartition("partition is degenerate for this twist (vanishing subtree pairing)");
    Complex base = nodes[k].parent < 0 ? nodes[k].value : place(nodes[k].parent);
    pos[k] = base - Complex(1L) / (t * acc[k]);
    done[k] = true;
    return pos[k];
  };
  BetheRoots<Complex> br;
  br.roots.resize(inst.rank());
  for (int k = 0; k < n; ++k) br.roots[nodes[k].color].push_back(place(k));
  return br;
}

inline QQInstance<Complex> scaled_twist(const QQInstance<Complex>& inst, const Complex& t) {
  QQInstance<Complex> out = inst;
  for (auto& z : out.twist.zeta) z = t * z;
  return out;
}

// Path multiplier 2^s exp(i phi(s)), phi(0) = 0. Leaving the real ray keeps
// real data away from the points where two real roots meet and turn complex.
namespace detail {
constexpr double path_phase = 0.7;
inline double phase(double s) { return path_phase * s / (s + 1.0); }
inline Complex path_multiplier(double s) {
  Real t = s == std::floor(s) ? Real::pow2(static_cast<long>(s)) : Real::from_double(std::exp2(s));
  if (s == 0) return Complex(t);
  Real ph = Real::from_double(phase(s));
  return Complex(t * cos(ph), t * sin(ph));
}
}  // namespace detail

inline void check_path(const QQInstance<Complex>& inst, const BetheRoots<Complex>& br) {
  const Real tau = inst.tol.root();
  for (int i = 0; i < inst.rank(); ++i)
    for (size_t l = 0; l < br.roots[i].size(); ++l) {
      for (const auto& p : inst.points)
        if (p.weights[i] > 0 && abs(br.roots[i][l] - p.z) <= tau)
          throw PathCollision("tracked root merged with a singular point");
      for (int j = i; j < inst.rank(); ++j) {
        if (inst.cartan(i, j) == 0) continue;
        for (size_t s = (j == i ? l + 1 : 0); s < br.roots[j].size(); ++s)
          if (abs(br.roots[i][l] - br.roots[j][s]) <= tau) throw PathCollision("two tracked roots merged");
      }
    }
}

// Tracks the roots of the infinite system from t = 2^log2_t_start down to
// t = 1 along the twist ray t*Z.
inline BetheRoots<Complex> seed_and_continue(const QQInstance<Complex>& inst, const InfinitePartition<Complex>& part,
                                             const SolveOptions& opts = {}) {
  PrecisionScope scope(inst.tol.precision_bits);
  for (int i = 0; i < inst.rank(); ++i)
    if (inst.xi_zero(i))
      throw Error("seed_and_continue needs every pairing xi_i nonzero at the target twist (xi_" + std::to_string(i + 1) +
                  " = 0)");
  auto nodes = partition_tree(inst, part);
  std::mt19937_64 rng(opts.seed);
  BetheRoots<Complex> br;
  br.roots.resize(inst.rank());
  if (nodes.empty()) return br;

  const Real path_tol = Real::pow2(-std::min(100, inst.tol.newton_bits));
  double s = opts.log2_t_start;
  auto at = [&](double log2t) { return scaled_twist(inst, detail::path_multiplier(log2t)); };
  br = seed_roots(inst, nodes, detail::path_multiplier(s));
  br = newton_to(at(s), br, opts, path_tol, rng, "continuation", s);
  check_path(inst, br);

  const double h0 = static_cast<double>(opts.log2_t_start) / opts.continuation_steps;
  const double h_min = std::ldexp(h0, -opts.max_step_halvings);
  double h = h0;
  int step = 0;
  while (s > 0) {
    double next = std::max(0.0, s - h);
    QQInstance<Complex> cur = at(s);
    // Euler predictor: dw = -J^{-1} (tau xi) dlog tau.
    std::vector<Complex> txi;
    for (auto [i, l] : equation_index(br)) txi.push_back(-cur.xi(i));
    BetheRoots<Complex> pred = br;
    try {
      auto dw = solve_square(bethe_jacobian(cur, br), txi, inst.tol);
      Complex dlog(Real::from_double((next - s) * std::log(2.0)),
                   Real::from_double(detail::phase(next) - detail::phase(s)));
      int k = 0;
      for (auto& r : pred.roots)
        for (auto& w : r) w += dlog * dw[k++];
    } catch (const SingularJacobian&) {
    }
    try {
      SolveOptions inner = opts;
      inner.max_iterations = 30;
      auto corrected = newton_to(at(next), pred, inner, next == 0 ? inst.tol.newton() : path_tol, rng, "continuation", next);
      check_path(inst, corrected);
      br = std::move(corrected);
      s = next;
      ++step;
      if (h < h0) h = std::min(h0, 2 * h);
    } catch (const NoConvergence&) {
      if ((h /= 2) < h_min) throw NoConvergence("continuation step size underflow");
    } catch (const PoleCollision&) {
      if ((h /= 2) < h_min) throw PathCollision("continuation path hit a pole");
    } catch (const SingularJacobian&) {
      if ((h /= 2) < h_min) throw;
    }
    if (opts.log) opts.log({"continuation", step, 0, s, 0.0, h});
  }
  canonicalize(br);
  return br;
}

}  // namespace qqb
