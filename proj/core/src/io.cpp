#include "qqbethe/io.hpp"

#include <cstdio>

namespace qqb {

Backend parse_backend(const std::string& s) {
  if (s == "exact") return Backend::Exact;
  if (s == "numeric") return Backend::Numeric;
  throw ParseError("backend must be \"exact\" or \"numeric\", got \"" + s + "\"");
}

const char* backend_name(Backend b) { return b == Backend::Exact ? "exact" : "numeric"; }

json scalar_to_json(const Rational& q) { return format_rational(q); }

json scalar_to_json(const Complex& z) { return json::array({z.re.to_string(), z.im.to_string()}); }

namespace {

std::string literal(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return j.dump();
  throw ParseError("scalar must be an exact string literal, got " + j.dump());
}

}  // namespace

Rational rational_from_json(const json& j) {
  if (j.is_array()) {
    if (j.size() != 2) throw ParseError("complex scalar must be [re, im]");
    Rational im = parse_rational(literal(j[1]));
    if (sgn(im) != 0) throw ParseError("exact backend takes rational scalars only, got " + j.dump());
    return parse_rational(literal(j[0]));
  }
  return parse_rational(literal(j));
}

Complex complex_from_json(const json& j) {
  const mpfr_prec_t bits = Real::working_bits();
  if (j.is_array()) {
    if (j.size() != 2) throw ParseError("complex scalar must be [re, im]");
    return {Real::parse(literal(j[0]), bits), Real::parse(literal(j[1]), bits)};
  }
  return Complex(Real::parse(literal(j), bits));
}

json tolerances_to_json(const Tolerances& t) {
  return json{{"rel_bits", t.rel_bits}, {"root_bits", t.root_bits}, {"newton_bits", t.newton_bits}};
}

Tolerances tolerances_from_json(const json& j, Tolerances base) {
  if (!j.is_object()) throw ParseError("tolerances must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    int v = it.value().get<int>();
    if (v <= 0 || v > 1 << 20) throw ParseError("tolerance exponent out of range: " + it.key());
    if (it.key() == "rel_bits")
      base.rel_bits = v;
    else if (it.key() == "root_bits")
      base.root_bits = v;
    else if (it.key() == "newton_bits")
      base.newton_bits = v;
    else
      throw ParseError("unknown tolerance key: " + it.key());
  }
  return base;
}

CartanType type_from_json(const json& j) {
  std::string fam = j.at("family").get<std::string>();
  if (fam.size() != 1) throw ParseError("family must be a single letter");
  try {
    return make_type(fam[0], j.at("rank").get<int>());
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

Tolerances instance_tolerances(const json& j) {
  Tolerances t;
  if (j.contains("precision_bits")) {
    int b = j.at("precision_bits").get<int>();
    if (b < 64 || b > 1 << 16) throw ParseError("precision_bits out of range");
    t.precision_bits = b;
  }
  if (j.contains("tolerances")) t = tolerances_from_json(j.at("tolerances"), t);
  return t;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string digest_hex(const json& j) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(j.dump())));
  return buf;
}

}  // namespace qqb
