#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qqbethe/backlund.hpp"
#include "qqbethe/bethe.hpp"
#include "qqbethe/opermat.hpp"

namespace qqb {

using json = nlohmann::ordered_json;

enum class Backend { Exact, Numeric };

Backend parse_backend(const std::string& s);
const char* backend_name(Backend b);

// Scalars are exact strings; complex values are [re, im].
json scalar_to_json(const Rational& q);
json scalar_to_json(const Complex& z);
Rational rational_from_json(const json& j);
// Uses the calling thread's working precision.
Complex complex_from_json(const json& j);

template <class S>
S scalar_from_json(const json& j) {
  if constexpr (is_exact_v<S>)
    return rational_from_json(j);
  else
    return complex_from_json(j);
}

template <class S>
json poly_to_json(const Poly<S>& p) {
  json a = json::array();
  for (const auto& c : p.coeffs()) a.push_back(scalar_to_json(c));
  return a;
}

template <class S>
Poly<S> poly_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("polynomial must be an array of coefficients");
  std::vector<S> c;
  for (const auto& x : j) c.push_back(scalar_from_json<S>(x));
  return Poly<S>(std::move(c));
}

template <class S>
json polys_to_json(const std::vector<Poly<S>>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back(poly_to_json(p));
  return a;
}

template <class S>
std::vector<Poly<S>> polys_from_json(const json& j, int rank, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != rank)
    throw ParseError(std::string(what) + " must list one polynomial per color");
  std::vector<Poly<S>> out;
  for (const auto& x : j) out.push_back(poly_from_json<S>(x));
  return out;
}

template <class S>
json rational_fn_to_json(const RationalFn<S>& f) {
  return json{{"num", poly_to_json(f.num())}, {"den", poly_to_json(f.den())}};
}

template <class S>
json matrix_to_json(const RMatrix<S>& m) {
  json rows = json::array();
  for (int i = 0; i < m.n; ++i) {
    json row = json::array();
    for (int j = 0; j < m.n; ++j) row.push_back(rational_fn_to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json tolerances_to_json(const Tolerances& t);
Tolerances tolerances_from_json(const json& j, Tolerances base);

template <class S>
json instance_to_json(const QQInstance<S>& inst) {
  json j;
  j["cartan"] = {{"family", std::string(1, family_letter(inst.type.family))}, {"rank", inst.type.rank}};
  json pts = json::array();
  for (const auto& p : inst.points) pts.push_back({{"z", scalar_to_json(p.z)}, {"weights", p.weights}});
  j["points"] = pts;
  json tw = json::array();
  for (const auto& z : inst.twist.zeta) tw.push_back(scalar_to_json(z));
  j["twist"] = tw;
  json ld = json::array();
  for (const auto& l : inst.lead) ld.push_back(scalar_to_json(l));
  j["lead"] = ld;
  bool trivial = true;
  for (const auto& c : inst.cofactor) trivial = trivial && c.degree() == 0 && c.lead() == S(1L);
  if (!trivial) j["cofactor"] = polys_to_json(inst.cofactor);
  j["backend"] = is_exact_v<S> ? "exact" : "numeric";
  if constexpr (!is_exact_v<S>) j["precision_bits"] = inst.tol.precision_bits;
  j["tolerances"] = tolerances_to_json(inst.tol);
  return j;
}

CartanType type_from_json(const json& j);
Tolerances instance_tolerances(const json& j);

// Numeric values are read at the instance's precision_bits.
template <class S>
QQInstance<S> instance_from_json(const json& j, const Tolerances* override_tol = nullptr) {
  try {
    if (!j.is_object()) throw ParseError("instance must be an object");
    Tolerances tol = override_tol ? *override_tol : instance_tolerances(j);
    PrecisionScope scope(tol.precision_bits);
    CartanType t = type_from_json(j.at("cartan"));
    std::vector<SingularPoint<S>> pts;
    for (const auto& p : j.at("points")) {
      SingularPoint<S> sp{scalar_from_json<S>(p.at("z")), p.at("weights").get<std::vector<int>>()};
      pts.push_back(std::move(sp));
    }
    std::vector<S> zeta;
    for (const auto& z : j.at("twist")) zeta.push_back(scalar_from_json<S>(z));
    auto inst = make_instance<S>(t, std::move(pts), std::move(zeta), tol);
    if (j.contains("lead")) {
      inst.lead.clear();
      for (const auto& l : j.at("lead")) inst.lead.push_back(scalar_from_json<S>(l));
    }
    if (j.contains("cofactor")) inst.cofactor = polys_from_json<S>(j.at("cofactor"), t.rank, "cofactor");
    validate_instance(inst);
    return inst;
  } catch (const json::exception& e) {
    throw ParseError(std::string("instance: ") + e.what());
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("instance: ") + e.what());
  }
}

template <class S>
json solution_to_json(const QQSolution<S>& sol) {
  return json{{"q_plus", polys_to_json(sol.q_plus)}, {"q_minus", polys_to_json(sol.q_minus)}};
}

template <class S>
QQSolution<S> solution_from_json(const json& j, int rank, int bits) {
  try {
    PrecisionScope scope(bits);
    QQSolution<S> s;
    s.q_plus = polys_from_json<S>(j.at("q_plus"), rank, "q_plus");
    s.q_minus = polys_from_json<S>(j.at("q_minus"), rank, "q_minus");
    return s;
  } catch (const json::exception& e) {
    throw ParseError(std::string("solution: ") + e.what());
  }
}

template <class S>
json roots_to_json(const BetheRoots<S>& br) {
  json a = json::array();
  for (const auto& r : br.roots) {
    json c = json::array();
    for (const auto& w : r) c.push_back(scalar_to_json(w));
    a.push_back(c);
  }
  return a;
}

template <class S>
std::vector<std::vector<S>> values_from_json(const json& j, int rank, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != rank)
    throw ParseError(std::string(what) + " must list one array per color");
  std::vector<std::vector<S>> out;
  for (const auto& c : j) {
    std::vector<S> v;
    for (const auto& x : c) v.push_back(scalar_from_json<S>(x));
    out.push_back(std::move(v));
  }
  return out;
}

inline json nondeg_to_json(const NondegReport& r) {
  json pw = json::array();
  for (const auto& p : r.pairwise_coprime) pw.push_back({{"i", p.i + 1}, {"j", p.j + 1}, {"pass", p.pass}});
  return json{{"monic", r.monic},
              {"squarefree", r.squarefree},
              {"coprime_to_lambda", r.coprime_to_lambda},
              {"pairwise_coprime", pw},
              {"overall", r.overall}};
}

template <class S>
json twist_to_json(const Twist<S>& t) {
  json a = json::array();
  for (const auto& z : t.zeta) a.push_back(scalar_to_json(z));
  return a;
}

template <class S>
json trace_to_json(const ChainTrace<S>& tr) {
  json steps = json::array();
  int n = 0;
  for (const auto& st : tr.steps) {
    json s;
    s["step"] = ++n;
    s["reflection"] = st.index + 1;
    s["composable"] = st.composable;
    s["generic"] = st.generic;
    if (st.mu) {
      s["mu"] = rational_fn_to_json(st.mu->mualt);
      s["mu_forms_agree"] = st.mu->agree;
    }
    if (st.composable) {
      s["twist"] = twist_to_json(st.inst.twist);
      s["solution"] = solution_to_json(st.sol);
    } else {
      s["error"] = st.error;
    }
    steps.push_back(s);
  }
  return json{{"word", format_word(tr.word)},
              {"complete", tr.complete()},
              {"generic", tr.all_generic()},
              {"broken_step", tr.broken_step},
              {"steps", steps}};
}

// 64-bit FNV-1a over the canonical dump.
std::uint64_t fnv1a(const std::string& s);
std::string digest_hex(const json& j);

}  // namespace qqb
