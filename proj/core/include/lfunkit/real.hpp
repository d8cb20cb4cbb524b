#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <string>
#include <utility>

namespace lfunkit {

// Working precision is thread-local. New Real values pick it up at
// construction; scoped changes go through PrecisionGuard so internal
// elevation cannot leak into caller results.
long working_digits();
void set_working_digits(long digits);
long prec_bits();
long digits_to_bits(long digits);

struct PrecisionGuard {
  long saved;
  explicit PrecisionGuard(long digits) : saved(working_digits()) {
    set_working_digits(digits);
  }
  PrecisionGuard(const PrecisionGuard&) = delete;
  ~PrecisionGuard() { set_working_digits(saved); }
};

class Real {
  mpfr_t v_;

 public:
  Real() {
    mpfr_init2(v_, prec_bits());
    mpfr_set_zero(v_, 1);
  }
  Real(long n) {
    mpfr_init2(v_, prec_bits());
    mpfr_set_si(v_, n, MPFR_RNDN);
  }
  Real(int n) : Real(static_cast<long>(n)) {}
  Real(unsigned long n) {
    mpfr_init2(v_, prec_bits());
    mpfr_set_ui(v_, n, MPFR_RNDN);
  }
  Real(double x) {
    mpfr_init2(v_, prec_bits());
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  Real(const mpz_class& n) {
    mpfr_init2(v_, prec_bits());
    mpfr_set_z(v_, n.get_mpz_t(), MPFR_RNDN);
  }
  Real(const mpq_class& q) {
    mpfr_init2(v_, prec_bits());
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
  }
  explicit Real(const std::string& s) {
    mpfr_init2(v_, prec_bits());
    mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN);
  }
  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, 2);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
  mpz_class to_mpz() const {  // rounds to nearest
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
    return z;
  }
  bool is_zero() const { return mpfr_zero_p(v_); }
  bool is_nan() const { return mpfr_nan_p(v_); }
  bool is_finite() const { return mpfr_number_p(v_); }
  int sign() const { return mpfr_sgn(v_); }
  long precision() const { return mpfr_get_prec(v_); }

  std::string str(long digits = -1) const;

  Real& operator+=(const Real& o) {
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator-=(const Real& o) {
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator*=(const Real& o) {
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator/=(const Real& o) {
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real operator-() const {
    Real r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
  }
};

#define LFK_REAL_BINOP(op, fn)                         \
  inline Real operator op(const Real& a, const Real& b) { \
    Real r;                                            \
    fn(r.raw(), a.raw(), b.raw(), MPFR_RNDN);          \
    return r;                                          \
  }                                                    \
  inline Real operator op(const Real& a, long b) { return a op Real(b); } \
  inline Real operator op(long a, const Real& b) { return Real(a) op b; }
LFK_REAL_BINOP(+, mpfr_add)
LFK_REAL_BINOP(-, mpfr_sub)
LFK_REAL_BINOP(*, mpfr_mul)
LFK_REAL_BINOP(/, mpfr_div)
#undef LFK_REAL_BINOP

inline bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.raw(), b.raw()) == 0; }
inline bool operator!=(const Real& a, const Real& b) { return mpfr_cmp(a.raw(), b.raw()) != 0; }
inline bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.raw(), b.raw()) < 0; }
inline bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.raw(), b.raw()) <= 0; }
inline bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.raw(), b.raw()) > 0; }
inline bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.raw(), b.raw()) >= 0; }
inline bool operator<(const Real& a, long b) { return mpfr_cmp_si(a.raw(), b) < 0; }
inline bool operator>(const Real& a, long b) { return mpfr_cmp_si(a.raw(), b) > 0; }
inline bool operator<=(const Real& a, long b) { return mpfr_cmp_si(a.raw(), b) <= 0; }
inline bool operator>=(const Real& a, long b) { return mpfr_cmp_si(a.raw(), b) >= 0; }
inline bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.raw(), b) == 0; }

#define LFK_REAL_FN1(name, fn)     \
  inline Real name(const Real& x) { \
    Real r;                        \
    fn(r.raw(), x.raw(), MPFR_RNDN); \
    return r;                      \
  }
LFK_REAL_FN1(abs, mpfr_abs)
LFK_REAL_FN1(sqrt, mpfr_sqrt)
LFK_REAL_FN1(exp, mpfr_exp)
LFK_REAL_FN1(expm1, mpfr_expm1)
LFK_REAL_FN1(log, mpfr_log)
LFK_REAL_FN1(log1p, mpfr_log1p)
LFK_REAL_FN1(sin, mpfr_sin)
LFK_REAL_FN1(cos, mpfr_cos)
LFK_REAL_FN1(tan, mpfr_tan)
LFK_REAL_FN1(asin, mpfr_asin)
LFK_REAL_FN1(acos, mpfr_acos)
LFK_REAL_FN1(atan, mpfr_atan)
LFK_REAL_FN1(sinh, mpfr_sinh)
LFK_REAL_FN1(cosh, mpfr_cosh)
LFK_REAL_FN1(tanh, mpfr_tanh)
LFK_REAL_FN1(asinh, mpfr_asinh)
LFK_REAL_FN1(acosh, mpfr_acosh)
#undef LFK_REAL_FN1

inline Real floor(const Real& x) {
  Real r;
  mpfr_floor(r.raw(), x.raw());
  return r;
}
inline Real ceil(const Real& x) {
  Real r;
  mpfr_ceil(r.raw(), x.raw());
  return r;
}
inline Real round_nearest(const Real& x) {
  Real r;
  mpfr_round(r.raw(), x.raw());
  return r;
}
inline Real atan2(const Real& y, const Real& x) {
  Real r;
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}
inline Real pow(const Real& x, const Real& y) {
  Real r;
  mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}
inline Real pow(const Real& x, long n) {
  Real r;
  mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
  return r;
}
inline Real mul_2si(const Real& x, long e) {
  Real r;
  mpfr_mul_2si(r.raw(), x.raw(), e, MPFR_RNDN);
  return r;
}
inline Real max(const Real& a, const Real& b) { return a < b ? b : a; }
inline Real min(const Real& a, const Real& b) { return a < b ? a : b; }

Real const_pi();
Real const_log2();

// Fresh copy rounded into the current working precision.
inline Real to_current_prec(const Real& x) {
  Real r;
  mpfr_set(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

// 10^-digits as a Real, handy for tolerances.
inline Real pow10(long e) {
  Real r;
  mpfr_ui_pow_ui(r.raw(), 10, static_cast<unsigned long>(e < 0 ? -e : e), MPFR_RNDN);
  if (e < 0) mpfr_ui_div(r.raw(), 1, r.raw(), MPFR_RNDN);
  return r;
}

}  // namespace lfunkit
