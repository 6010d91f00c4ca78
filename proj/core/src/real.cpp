#include "qqbethe/real.hpp"

#include <algorithm>
#include <climits>
#include <ostream>
#include <vector>

#include "qqbethe/error.hpp"

namespace qqb {

namespace {
thread_local mpfr_prec_t tl_working_bits = 256;

mpfr_prec_t join(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }
}  // namespace

mpfr_prec_t Real::working_bits() { return tl_working_bits; }

void Real::set_working_bits(mpfr_prec_t bits) {
  if (bits < MPFR_PREC_MIN || bits > 1 << 20) throw Error("precision out of range");
  tl_working_bits = bits;
}

Real::Real() {
  mpfr_init2(v_, working_bits());
  mpfr_set_zero(v_, 1);
}

Real::Real(long v) : Real(v, working_bits()) {}

Real::Real(long v, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_si(v_, v, MPFR_RNDN);
}

Real::Real(const mpq_class& q, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}

Real Real::from_double(double d, mpfr_prec_t bits) {
  Real r(0L, bits);
  mpfr_set_d(r.v_, d, MPFR_RNDN);
  return r;
}

Real::Real(const Real& o) {
  mpfr_init2(v_, o.precision());
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, o.v_);
}

Real& Real::operator=(const Real& o) {
  if (this != &o) {
    mpfr_set_prec(v_, o.precision());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::pow2(long e, mpfr_prec_t bits) {
  Real r(1L, bits);
  mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN);
  return r;
}

Real Real::parse(const std::string& s, mpfr_prec_t bits) {
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    mpq_class q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw ParseError("bad rational literal: " + s);
    q.canonicalize();
    return Real(q, bits);
  }
  Real r(0L, bits);
  char* end = nullptr;
  if (s.empty()) throw ParseError("empty real literal");
  mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN);
  if (end != s.c_str() + s.size()) throw ParseError("bad real literal: " + s);
  if (!r.is_finite()) throw ParseError("non-finite literal: " + s);
  return r;
}

Real Real::with_precision(mpfr_prec_t bits) const {
  Real r(0L, bits);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

long Real::exponent2() const {
  if (is_zero()) return LONG_MIN / 2;
  return mpfr_get_exp(v_);
}

mpq_class Real::to_rational() const {
  if (!is_finite()) throw Error("non-finite value");
  mpz_class m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
  mpq_class q(m);
  if (e >= 0)
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), e);
  else
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), -e);
  q.canonicalize();
  return q;
}

std::string Real::to_string() const {
  // Shortest decimal that parses back to the same value at this precision.
  int most = static_cast<int>(mpfr_get_str_ndigits(10, precision()));
  if (!is_finite() || is_zero()) return to_string(most);
  for (int digits = 1; digits < most; ++digits) {
    std::string s = to_string(digits);
    if (parse(s, precision()) == *this) return s;
  }
  return to_string(most);
}

std::string Real::to_string(int digits) const {
  if (is_zero()) return "0";
  if (!is_finite()) return mpfr_nan_p(v_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
  mpfr_exp_t e = 0;
  char* raw = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(digits), v_, MPFR_RNDN);
  std::string m(raw);
  mpfr_free_str(raw);
  bool neg = !m.empty() && m[0] == '-';
  if (neg) m.erase(0, 1);
  while (m.size() > 1 && m.back() == '0') m.pop_back();
  // value = 0.m * 10^e  ->  m[0].m[1..] * 10^(e-1)
  std::string out = neg ? "-" : "";
  out += m[0];
  if (m.size() > 1) {
    out += '.';
    out.append(m, 1, std::string::npos);
  }
  long ex = static_cast<long>(e) - 1;
  if (ex != 0) out += "e" + std::to_string(ex);
  return out;
}

Real& Real::operator+=(const Real& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(const Real& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(const Real& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(const Real& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real operator+(const Real& a, const Real& b) {
  Real r(0L, join(a, b));
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator-(const Real& a, const Real& b) {
  Real r(0L, join(a, b));
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator*(const Real& a, const Real& b) {
  Real r(0L, join(a, b));
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator/(const Real& a, const Real& b) {
  Real r(0L, join(a, b));
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator-(const Real& a) {
  Real r(a);
  mpfr_neg(r.v_, r.v_, MPFR_RNDN);
  return r;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.v_, b.v_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

std::ostream& operator<<(std::ostream& os, const Real& x) { return os << x.to_string(); }

Real abs(const Real& x) {
  Real r(x);
  mpfr_abs(r.get(), r.get(), MPFR_RNDN);
  return r;
}

Real sqrt(const Real& x) {
  Real r(x);
  mpfr_sqrt(r.get(), r.get(), MPFR_RNDN);
  return r;
}

Real hypot(const Real& a, const Real& b) {
  Real r(0L, std::max(a.precision(), b.precision()));
  mpfr_hypot(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

Real ldexp(const Real& x, long e) {
  Real r(x);
  mpfr_mul_2si(r.get(), r.get(), e, MPFR_RNDN);
  return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }

Real cos(const Real& x) {
  Real r(x);
  mpfr_cos(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real sin(const Real& x) {
  Real r(x);
  mpfr_sin(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real atan2(const Real& y, const Real& x) {
  Real r(0L, std::max(x.precision(), y.precision()));
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}

Real const_pi(mpfr_prec_t bits) {
  Real r(0L, bits);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

}  // namespace qqb
