#pragma once

#include <stdexcept>
#include <vector>

#include "lfunkit/complexap.hpp"
#include "lfunkit/real.hpp"

namespace lfunkit {

struct PrecisionContext {
  long digits = 38;
  long guard = 10;
};

// B_n as exact rationals; B_0 = 1 (the generating function T/(e^T-1) forces
// this), B_1 = -1/2, odd ones vanish from B_3 on.
mpq_class bernoulli(long n);

struct GammaPole : std::domain_error {
  long n;           // pole at s = -n
  mpq_class residue;  // (-1)^n / n!
  explicit GammaPole(long n_);
};

Complex lngamma_complex(const Complex& s);
Complex gamma_complex(const Complex& s);

// Riemann zeta by Euler-MacLaurin; valid on C minus s=1, desk scale |Im s| <= ~1e3
Complex zeta_em(const Complex& s);
// (zeta(s), zeta'(s)) by the term-wise differentiated Euler-MacLaurin formula
std::pair<Complex, Complex> zeta_em_with_deriv(const Complex& s);
Real zeta_int(long n);  // cached zeta(n), n >= 2

Real euler_gamma();  // Euler-MacLaurin expansion of H_N - log N, cached

// Incomplete gamma Gamma(s,x) = int_x^inf t^(s-1) e^(-t) dt, x > 0 real.
// Regime dispatch: power series (small/moderate x, with the shifted variant
// at nonpositive integer s), continued fraction (large x). The asymptotic
// series is exposed for cross-checks only.
Complex incgamma(const Complex& s, const Real& x);
Complex incgamma_series(const Complex& s, const Real& x);
Complex incgamma_asymptotic(const Complex& s, const Real& x);

Real bessel_k(int order, const Real& x);  // K_0 or K_1, x > 0

// Taylor coefficients c_j of Gamma(a + eps) = sum c_j eps^j, j < r, for a a
// nonzero non-pole half-integer (a = num/2). Used by the residue expansions
// of inverse Mellin transforms.
std::vector<Real> gamma_taylor_half_integer(long num, int r);

}  // namespace lfunkit
