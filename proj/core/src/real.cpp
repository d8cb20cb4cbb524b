#include "lfunkit/real.hpp"

#include <cmath>

namespace lfunkit {

namespace {
thread_local long tl_digits = 38 + 10;  // default working digits incl. guard
}

long digits_to_bits(long digits) {
  return static_cast<long>(std::ceil(digits * 3.3219280948873626)) + 16;
}

long working_digits() { return tl_digits; }

void set_working_digits(long digits) {
  if (digits < 8) digits = 8;
  tl_digits = digits;
}

long prec_bits() { return digits_to_bits(tl_digits); }

Real const_pi() {
  Real r;
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}

Real const_log2() {
  Real r;
  mpfr_const_log2(r.raw(), MPFR_RNDN);
  return r;
}

std::string Real::str(long digits) const {
  if (digits < 0) digits = working_digits();
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  if (mpfr_zero_p(v_)) return "0";
  mpfr_exp_t e;
  char* s = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(digits), v_, MPFR_RNDN);
  std::string mant(s);
  mpfr_free_str(s);
  bool neg = !mant.empty() && mant[0] == '-';
  std::string d = neg ? mant.substr(1) : mant;
  // strip trailing zeros but keep at least one digit
  size_t last = d.find_last_not_of('0');
  d = d.substr(0, last == std::string::npos ? 1 : last + 1);
  std::string out;
  if (e < -5 || e > digits + 6) {
    out = d.substr(0, 1);
    if (d.size() > 1) out += "." + d.substr(1);
    out += "e" + std::to_string(e - 1);
  } else if (e <= 0) {
    out = "0." + std::string(static_cast<size_t>(-e), '0') + d;
  } else if (static_cast<size_t>(e) >= d.size()) {
    out = d + std::string(static_cast<size_t>(e) - d.size(), '0');
  } else {
    out = d.substr(0, static_cast<size_t>(e)) + "." + d.substr(static_cast<size_t>(e));
  }
  return neg ? "-" + out : out;
}

}  // namespace lfunkit
