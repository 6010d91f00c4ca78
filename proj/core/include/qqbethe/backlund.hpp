#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qqbethe/qq.hpp"
#include "qqbethe/rational_fn.hpp"

namespace qqb {

template <class S>
struct MuReport {
  RationalFn<S> mualt;    // prod_{j != i} (q+_j)^{-a_ji} / (q+_i q-_i)
  RationalFn<S> propdef;  // (W(q+,q-) + xi q+ q-) / (Lambda_i q+ q-)
  bool agree = false;
};

template <class S>
MuReport<S> mu(const QQInstance<S>& inst, const QQSolution<S>& sol, int i) {
  const Poly<S>& p = sol.q_plus[i];
  const Poly<S>& m = sol.q_minus[i];
  if (p.is_zero() || m.is_zero()) throw ZeroDenominator("mu needs nonzero q+ and q-");
  Poly<S> adj = Poly<S>::constant(S(1L));
  for (int j = 0; j < inst.rank(); ++j)
    if (j != i && inst.cartan(j, i) != 0) adj *= pow(sol.q_plus[j], -inst.cartan(j, i));
  MuReport<S> r;
  r.mualt = RationalFn<S>(adj, p * m);
  Poly<S> lhs = wronskian(p, m) + inst.xi(i) * (p * m);
  r.propdef = RationalFn<S>(lhs, lambda(inst, i) * p * m);
  // Compare by cross-multiplication.
  Poly<S> diff = r.mualt.num() * r.propdef.den() - r.propdef.num() * r.mualt.den();
  Real scale = max(Real(1L), coeff_norm(r.mualt.num() * r.propdef.den()));
  r.agree = negligible(diff, scale, inst.tol);
  return r;
}

// Swaps q+_i with the normalized q-_i and reflects the twist; the other
// q-_j are recompleted under the new twist. Lambda is unchanged.
template <class S>
std::pair<QQInstance<S>, QQSolution<S>> apply_simple(const QQInstance<S>& inst, const QQSolution<S>& sol, int i) {
  if (!qq_equation_holds(inst, sol, i))
    throw InconsistentSystem(i, "apply_simple: qq equation " + std::to_string(i + 1) + " does not hold");
  const Poly<S>& m = sol.q_minus[i];
  if (m.is_zero()) throw ZeroDenominator("apply_simple: q-_" + std::to_string(i + 1) + " is zero");
  const S lam = m.lead();
  QQInstance<S> out = inst;
  out.twist = reflect_twist(i, inst.twist, inst.cartan);
  QQSolution<S> ns;
  ns.q_plus = sol.q_plus;
  ns.q_plus[i] = m * (S(1L) / lam);
  ns.q_minus.resize(inst.rank());
  for (int j = 0; j < inst.rank(); ++j) {
    if (j == i)
      ns.q_minus[j] = sol.q_plus[i] * (-lam);
    else
      ns.q_minus[j] = complete_minus_color(out, ns.q_plus, j);
  }
  return {out, ns};
}

struct CombinatorialDatum {
  std::vector<int> d;  // deg q+_i
  std::vector<int> N;  // deg Lambda_i
  std::vector<bool> xi_zero;
  bool all_roots_vanish = false;
};

template <class S>
CombinatorialDatum datum_of(const QQInstance<S>& inst, const std::vector<Poly<S>>& q_plus) {
  CombinatorialDatum c;
  c.d = degrees(q_plus);
  bool all = true;
  for (int i = 0; i < inst.rank(); ++i) {
    c.N.push_back(lambda_degree(inst, i));
    c.xi_zero.push_back(inst.xi_zero(i));
    all = all && c.xi_zero.back();
  }
  c.all_roots_vanish = all;
  return c;
}

inline std::vector<int> degree_map(const CartanMatrix& c, const std::vector<int>& N, const std::vector<int>& d, int i) {
  std::vector<int> out = d;
  int v = N[i] - d[i];
  for (int k = 0; k < c.rank; ++k)
    if (k != i) v -= c(k, i) * d[k];
  out[i] = v;
  return out;
}

struct PrefixCheck {
  int prefix;              // number of steps applied
  std::vector<int> d;      // degrees after the steps
  std::vector<bool> hold;  // per color inequality
  bool pass;
};

struct AdmissibleReport {
  std::vector<PrefixCheck> prefixes;
  bool pass = true;
  int first_failure = -1;
};

// Checks d_j <= N_j - sum_{p != j} a_pj d_p after every right-to-left prefix.
inline AdmissibleReport check_admissible(const CartanMatrix& c, const CombinatorialDatum& datum, const WeylWord& word) {
  AdmissibleReport rep;
  std::vector<int> d = datum.d;
  const int k = static_cast<int>(word.size());
  for (int s = 0; s <= k; ++s) {
    if (s > 0) d = degree_map(c, datum.N, d, word[k - s]);
    PrefixCheck pc{s, d, {}, true};
    for (int j = 0; j < c.rank; ++j) {
      int bound = datum.N[j];
      for (int p = 0; p < c.rank; ++p)
        if (p != j) bound -= c(p, j) * d[p];
      bool ok = d[j] >= 0 && d[j] <= bound;
      pc.hold.push_back(ok);
      pc.pass = pc.pass && ok;
    }
    if (!pc.pass && rep.pass) {
      rep.pass = false;
      rep.first_failure = s;
    }
    rep.prefixes.push_back(std::move(pc));
  }
  return rep;
}

template <class S>
struct ChainStep {
  int index;  // simple reflection applied (0-based)
  QQInstance<S> inst;
  QQSolution<S> sol;
  bool composable = false;
  bool generic = false;
  std::optional<MuReport<S>> mu;  // from the solution before the step
  std::string error;
};

template <class S>
struct ChainTrace {
  QQInstance<S> initial_inst;
  QQSolution<S> initial_sol;
  WeylWord word;
  std::vector<ChainStep<S>> steps;
  int broken_step = -1;  // 1-based step number, -1 when complete

  bool complete() const { return broken_step < 0 && steps.size() == word.size(); }
  bool all_generic() const {
    if (!complete()) return false;
    for (const auto& s : steps)
      if (!s.generic) return false;
    return true;
  }
  const QQInstance<S>& final_inst() const { return steps.empty() ? initial_inst : steps.back().inst; }
  const QQSolution<S>& final_sol() const { return steps.empty() ? initial_sol : steps.back().sol; }
};

struct ChainOptions {
  bool throw_on_break = true;
  int zero_xi_retries = 8;
  unsigned long long seed = 1;
};

namespace detail {

template <class S>
S random_constant(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> u(-50, 50);
  long a = u(rng);
  if (a == 0) a = 51;
  if constexpr (is_exact_v<S>) {
    return Rational(a, 7);
  } else {
    return Complex(Real(a) / Real(7L), Real(u(rng)) / Real(11L));
  }
}

template <class S>
bool nondegenerate(const QQInstance<S>& inst, const std::vector<Poly<S>>& q_plus) {
  try {
    return check_nondegenerate(inst, q_plus).overall;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace detail

// Applies the word right to left: step 1 uses the last letter.
template <class S>
ChainTrace<S> chain(const QQInstance<S>& inst, const QQSolution<S>& sol, const WeylWord& word,
                    const ChainOptions& opts = {}) {
  ChainTrace<S> tr{inst, sol, word, {}, -1};
  std::mt19937_64 rng(opts.seed);
  QQInstance<S> cur = inst;
  QQSolution<S> cs = sol;
  const int k = static_cast<int>(word.size());
  for (int step = 1; step <= k; ++step) {
    const int i = word[k - step];
    ChainStep<S> st{i, cur, cs, false, false, std::nullopt, {}};
    try {
      st.mu = mu(cur, cs, i);
      auto [ni, ns] = apply_simple(cur, cs, i);
      bool gen = detail::nondegenerate(ni, ns.q_plus);
      // With xi_i = 0, q-_i is only fixed up to adding c q+_i.
      for (int attempt = 0; !gen && cur.xi_zero(i) && attempt < opts.zero_xi_retries; ++attempt) {
        QQSolution<S> alt = cs;
        alt.q_minus[i] = cs.q_minus[i] + detail::random_constant<S>(rng) * cs.q_plus[i];
        try {
          auto [ai, as] = apply_simple(cur, alt, i);
          if (detail::nondegenerate(ai, as.q_plus)) {
            cs = alt;
            st.mu = mu(cur, cs, i);
            ni = ai;
            ns = as;
            gen = true;
          }
        } catch (const InconsistentSystem&) {
        }
      }
      st.inst = ni;
      st.sol = ns;
      st.composable = true;
      st.generic = gen;
      cur = std::move(ni);
      cs = std::move(ns);
      tr.steps.push_back(std::move(st));
    } catch (const Error& e) {
      st.error = e.what();
      tr.steps.push_back(std::move(st));
      tr.broken_step = step;
      if (opts.throw_on_break)
        throw ChainBroken(step, "chain broken at step " + std::to_string(step) + " (s_" + std::to_string(i + 1) +
                                    "): " + e.what());
      break;
    }
  }
  return tr;
}

}  // namespace qqb
