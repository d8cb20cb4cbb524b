#include <doctest.h>

#include "lfunkit/contfrac.hpp"
#include "lfunkit/numcore.hpp"
#include "test_util.hpp"

using namespace lfunkit;
using namespace lfunkit::test;

TEST_CASE("Bernoulli numbers: generating identity") {
  CHECK(bernoulli(0) == 1);
  CHECK(bernoulli(1) == mpq_class(-1, 2));
  CHECK(bernoulli(2) == mpq_class(1, 6));
  CHECK(bernoulli(4) == mpq_class(-1, 30));
  CHECK(bernoulli(3) == 0);
  // generating identity T/(e^T-1) = sum B_n T^n/n!, equivalent to
  // sum_{j<=m} C(m+1,j) B_j = 0 for m >= 1; checked to order 40
  for (long m = 1; m <= 40; ++m) {
    mpq_class acc(0);
    mpz_class binom(1);  // C(m+1, j)
    for (long j = 0; j <= m; ++j) {
      acc += mpq_class(binom) * bernoulli(j);
      binom = binom * (m + 1 - j) / (j + 1);
    }
    // sum_{j=0..m} C(m+1,j) B_j = 0 for m >= 1 holds with B_1 = -1/2
    CHECK(acc == 0);
  }
}

TEST_CASE("euler gamma vs mpfr oracle") {
  Real g = euler_gamma();
  Real ref;
  mpfr_const_euler(ref.raw(), MPFR_RNDN);
  CHECK_CLOSE(g, ref, 40);
  CHECK(g.str(11) == "0.5772156649");
}

TEST_CASE("zeta_em: special values and mpfr oracle") {
  Real pi = const_pi();
  CHECK_CLOSE(zeta_em(Complex(Real(2))).re, pi * pi / 6, 35);
  CHECK_CLOSE(zeta_em(Complex(Real(-1))).re, Real(mpq_class(-1, 12)), 35);
  for (double s : {3.0, 5.0, 0.25, -2.5, 7.5}) {
    Real ref;
    Real sr(s);
    mpfr_zeta(ref.raw(), sr.raw(), MPFR_RNDN);
    CHECK_CLOSE(zeta_em(Complex(sr)).re, ref, 40);
  }
  // zeta(1/2 + 14i), imaginary part digits from the GP session
  Complex z = zeta_em(Complex(Real(mpq_class(1, 2)), Real(14)));
  CHECK_CLOSE(z.im, Real("-0.10325812326645005790236309555257383451"), 36);
}

TEST_CASE("zeta derivative via the differentiated formula") {
  // finite difference oracle at s = 3
  Real h("1e-12");
  PrecisionGuard g(60);
  Complex d = zeta_em_with_deriv(Complex(Real(3))).second;
  Complex fd = (zeta_em(Complex(Real(3) + h)) - zeta_em(Complex(Real(3) - h))) /
               Complex(2 * h);
  CHECK_CLOSE(d.re, fd.re, 20);
}

TEST_CASE("gamma_complex: reflection, duplication, GP example") {
  Real pi = const_pi();
  // Gamma(1/4) Gamma(3/4) = pi sqrt(2)
  Complex a = gamma_complex(Complex(Real(mpq_class(1, 4))));
  Complex b = gamma_complex(Complex(Real(mpq_class(3, 4))));
  CHECK_CLOSE((a * b).re, pi * sqrt(Real(2)), 35);
  CHECK_CLOSE(gamma_complex(Complex(Real(5))).re, Real(24), 36);
  // duplication at s = 0.3 + 0.7i
  Complex s(Real("0.3"), Real("0.7"));
  Complex lhs = gamma_complex(s) * gamma_complex(s + Complex(Real(mpq_class(1, 2))));
  Complex rhs = pow(Complex(Real(2)), Complex(Real(1)) - Complex(Real(2)) * s) *
                Complex(sqrt(pi)) * gamma_complex(Complex(Real(2)) * s);
  CHECK(abs(lhs - rhs) < pow10(-30) * abs(rhs));
  // reflection property at random-ish points
  for (int i = 1; i <= 20; ++i) {
    Complex z(Real(i) / 7 + Real(mpq_class(1, 3)), Real(i) / 5 - Real(1));
    Complex prod = gamma_complex(z) * gamma_complex(Complex(Real(1)) - z);
    Complex ref = Complex(pi) / sin(Complex(pi) * z);
    CHECK(abs(prod - ref) < pow10(-(working_digits() - 4)) * abs(ref));
  }
  // real-axis oracle vs mpfr
  for (double x : {0.5, 1.25, 3.75, 10.0}) {
    Real xr(x), ref;
    mpfr_gamma(ref.raw(), xr.raw(), MPFR_RNDN);
    CHECK_CLOSE(gamma_complex(Complex(xr)).re, ref, 40);
  }
  CHECK_THROWS_AS(gamma_complex(Complex(Real(-3))), GammaPole);
}

TEST_CASE("incomplete gamma: all regimes vs mpfr oracle") {
  // mpfr_gamma_inc(s, x) = Gamma(s, x) for real arguments
  for (auto [s, x] : std::vector<std::pair<double, double>>{
           {1.0, 2.5}, {0.5, 10.0}, {3.0, 30.0}, {2.0, 60.0}, {-0.5, 4.0}, {5.5, 80.0}}) {
    Real sr(s), xr(x), ref;
    mpfr_gamma_inc(ref.raw(), sr.raw(), xr.raw(), MPFR_RNDN);
    Complex got = incgamma(Complex(sr), xr);
    CHECK(abs(got.re - ref) < pow10(-38) * (abs(ref) + pow10(-30)));
    CHECK(abs(got.im) < pow10(-38));
  }
  // Gamma(1, 5/2) = e^(-5/2)
  CHECK_CLOSE(incgamma(Complex(Real(1)), Real(mpq_class(5, 2))).re,
              exp(-Real(mpq_class(5, 2))), 38);
  // terminating asymptotic: Gamma(3, x) = e^-x (x^2 + 2x + 2)
  Real x(17);
  CHECK_CLOSE(incgamma_asymptotic(Complex(Real(3)), x).re,
              exp(-x) * (x * x + 2 * x + 2), 36);
  // series vs CF on the overlap at (s=0.5, x=10)
  Complex a = incgamma_series(Complex(Real(mpq_class(1, 2))), Real(10));
  Complex b = incgamma_cf(Complex(Real(mpq_class(1, 2))), Real(10));
  CHECK(abs(a - b) < pow10(-34));
  // nonpositive integer s: shifted variant against mpfr
  for (long m : {0L, 1L, 3L}) {
    Real sr(-m), xr(2.0), ref;
    mpfr_gamma_inc(ref.raw(), sr.raw(), xr.raw(), MPFR_RNDN);
    CHECK_CLOSE(incgamma(Complex(Real(-m)), Real(2)).re, ref, 38);
  }
  // complex s sanity: d/dx Gamma(s,x) = -x^(s-1) e^(-x)
  {
    Complex s(Real(2), Real(3));
    Real xx(7), h("1e-10");
    PrecisionGuard g(60);
    Complex num = (incgamma(s, xx + h) - incgamma(s, xx - h)) / Complex(2 * h);
    Complex ref = -exp((s - Complex(1L)) * Complex(log(xx))) * Complex(exp(-xx));
    CHECK(abs(num - ref) < pow10(-15));
  }
}

TEST_CASE("bessel K") {
  // dual-route: series vs asymptotic regime selected by x
  Real k0 = bessel_k(0, Real(3));
  // numeric derivative of K0 matches -K1 at x = 3
  {
    PrecisionGuard g(60);
    Real h("1e-15");
    Real d = (bessel_k(0, Real(3) + h) - bessel_k(0, Real(3) - h)) / (2 * h);
    CHECK(abs(d + bessel_k(1, Real(3))) < pow10(-20));
  }
  // asymptotic shape: K0(x) ~ sqrt(pi/(2x)) e^-x within 1% at x = 40
  Real x(40);
  Real ratio = bessel_k(0, x) / (sqrt(const_pi() / (2 * x)) * exp(-x));
  CHECK(abs(ratio - Real(1)) < Real("0.01"));
  // large-x regime exactness vs series route forced through precision
  Real k0_40 = bessel_k(0, x);
  {
    PrecisionGuard g(90);  // forces the series branch at x = 40
    Real k0_series = bessel_k(0, Real(40));
    PrecisionGuard back(38 + 10);
    CHECK(abs(k0_40 - to_current_prec(k0_series)) < pow10(-38));
  }
  CHECK(k0 > Real(0));
}

TEST_CASE("gamma taylor coefficients at half integers") {
  // Gamma(1 + eps): c0 = 1, c1 = -gamma
  auto c = gamma_taylor_half_integer(2, 4);
  CHECK_CLOSE(c[0], Real(1), 40);
  CHECK_CLOSE(c[1], -euler_gamma(), 40);
  // Gamma(1/2 + eps): c0 = sqrt(pi), c1 = -sqrt(pi)(gamma + 2 log 2)
  auto h = gamma_taylor_half_integer(1, 3);
  CHECK_CLOSE(h[0], sqrt(const_pi()), 40);
  CHECK_CLOSE(h[1], -sqrt(const_pi()) * (euler_gamma() + 2 * const_log2()), 38);
  // finite-difference check of Gamma(5/2 + eps) first coefficient
  {
    PrecisionGuard g(60);
    auto t = gamma_taylor_half_integer(5, 3);
    Real h1("1e-12");
    Real fd = (gamma_complex(Complex(Real(mpq_class(5, 2)) + h1)).re -
               gamma_complex(Complex(Real(mpq_class(5, 2)) - h1)).re) /
              (2 * h1);
    CHECK(abs(t[1] - fd) < pow10(-20));
    // negative half-integer: Gamma(-1/2) = -2 sqrt(pi)
    auto n = gamma_taylor_half_integer(-1, 2);
    CHECK(abs(n[0] + 2 * sqrt(const_pi())) < pow10(-40));
  }
}
