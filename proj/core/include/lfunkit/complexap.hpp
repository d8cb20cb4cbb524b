#pragma once

#include "lfunkit/real.hpp"

namespace lfunkit {

// Arbitrary-precision complex scalar; precision follows the Real parts.
struct Complex {
  Real re, im;

  Complex() = default;
  Complex(Real r) : re(std::move(r)) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(long r) : re(r) {}
  Complex(long r, long i) : re(r), im(i) {}

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = r;
    return *this;
  }
  Complex& operator/=(const Complex& o);
  Complex operator-() const { return Complex(-re, -im); }

  std::string str(long digits = -1) const {
    if (im.is_zero()) return re.str(digits);
    std::string s = re.str(digits);
    s += im.sign() < 0 ? " - " : " + ";
    Real a = abs(im);
    return s + a.str(digits) + "*I";
  }
};

inline Complex operator+(Complex a, const Complex& b) { return a += b; }
inline Complex operator-(Complex a, const Complex& b) { return a -= b; }
inline Complex operator*(Complex a, const Complex& b) { return a *= b; }
inline Complex operator/(Complex a, const Complex& b) { return a /= b; }
inline Complex operator+(Complex a, const Real& b) { a.re += b; return a; }
inline Complex operator-(Complex a, const Real& b) { a.re -= b; return a; }
inline Complex operator*(const Complex& a, const Real& b) { return Complex(a.re * b, a.im * b); }
inline Complex operator*(const Real& b, const Complex& a) { return a * b; }
inline Complex operator/(const Complex& a, const Real& b) { return Complex(a.re / b, a.im / b); }
inline Complex operator+(const Real& a, Complex b) { b.re = a + b.re; return b; }
inline Complex operator-(const Real& a, const Complex& b) { return Complex(a - b.re, -b.im); }

inline Complex conj(const Complex& z) { return Complex(z.re, -z.im); }
inline Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
inline Real abs(const Complex& z) {
  Real r;
  mpfr_hypot(r.raw(), z.re.raw(), z.im.raw(), MPFR_RNDN);
  return r;
}
inline Real arg(const Complex& z) { return atan2(z.im, z.re); }

inline Complex& Complex::operator/=(const Complex& o) {
  Real n = norm(o);
  Real r = (re * o.re + im * o.im) / n;
  im = (im * o.re - re * o.im) / n;
  re = r;
  return *this;
}

inline Complex exp(const Complex& z) {
  Real e = exp(z.re);
  return Complex(e * cos(z.im), e * sin(z.im));
}
inline Complex log(const Complex& z) { return Complex(log(abs(z)), arg(z)); }
inline Complex sqrt(const Complex& z) {
  if (z.im.is_zero()) {
    if (z.re.sign() >= 0) return Complex(sqrt(z.re));
    return Complex(Real(0), sqrt(-z.re));
  }
  Real m = abs(z);
  Real u = sqrt((m + z.re) / 2);
  Real v = sqrt((m - z.re) / 2);
  if (z.im.sign() < 0) v = -v;
  return Complex(u, v);
}
// principal branch via exp(w log z)
inline Complex pow(const Complex& z, const Complex& w) { return exp(w * log(z)); }
inline Complex pow(const Complex& z, const Real& w) { return exp(Complex(w) * log(z)); }
inline Complex pow(const Complex& z, long n) {
  Complex acc(1L);
  Complex base = z;
  bool invert = n < 0;
  unsigned long k = invert ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
  while (k) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return invert ? Complex(1L) / acc : acc;
}
// x^s for x > 0 real, s complex: exp(s log x)
inline Complex pow(const Real& x, const Complex& s) {
  Real lx = log(x);
  return exp(Complex(s.re * lx, s.im * lx));
}

inline Complex sin(const Complex& z) {
  return Complex(sin(z.re) * cosh(z.im), cos(z.re) * sinh(z.im));
}
inline Complex cos(const Complex& z) {
  return Complex(cos(z.re) * cosh(z.im), -sin(z.re) * sinh(z.im));
}

inline Complex to_current_prec(const Complex& z) {
  return Complex(to_current_prec(z.re), to_current_prec(z.im));
}

// exp(2*pi*i * num/den), exact angle reduction before evaluation
inline Complex unit_root(long num, long den) {
  long m = num % den;
  if (m < 0) m += den;
  Real ang = (const_pi() * 2 * m) / den;
  return Complex(cos(ang), sin(ang));
}

}  // namespace lfunkit
