#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lfunkit/complexap.hpp"
#include "lfunkit/gammaproduct.hpp"

namespace lfunkit {

// S(z) = 1 + b0 z/(1 + b1 z/(1 + ...)); if the quotient-difference run needed
// the (1 - z/pi) remedy, the evaluators divide the compensation back out.
struct ContFracB {
  std::vector<Complex> b;
  bool pi_compensated = false;
};

// Euler rewriting, evaluated in Z = 1/z:
// S = 1 + B0/(Z + A1 + B1/(Z + A2 + B2/(Z + A3 + ...)))
struct EulerCF {
  std::vector<Complex> A;  // A[0] unused, A[1..]
  std::vector<Complex> B;  // B[0..]
  bool pi_compensated = false;
};

// quotient-difference on S(z) = 1 + sum_{n>=1} c(n) z^n; the supplier is
// re-queried at elevated precision when instability is detected
ContFracB qd(const std::function<Complex(long)>& c, long M);
ContFracB qd(const std::vector<Complex>& c);  // c[0] = c(1)

EulerCF to_euler(const ContFracB& cf);

// bottom-up evaluation using `depth` coefficients (-1: all); gauge, when
// non-null, receives |depth - (depth-2)| truncation difference
Complex eval_cf(const ContFracB& cf, const Complex& z, long depth = -1, Real* gauge = nullptr);
Complex eval_euler(const EulerCF& cf, const Complex& z, long depth = -1);

// Gamma(s,x) by the classical continued fraction, best for large x
Complex incgamma_cf(const Complex& s, const Real& x);

// ---------------------------------------------------------------- Gaussian rules

struct GaussRule {
  long n = 0;
  std::vector<Real> nodes, weights;
  std::string measure_id;
};

// nodes = roots of the reciprocal convergent denominator D_n, weights
// N_n(x_i)/D'_n(x_i); moments of a positive measure required
GaussRule gauss_from_moments(const std::function<Real(long)>& moment, long n,
                             const std::string& cache_id = "");

// Monien summation: rule for sum_{m>=1} f(m), built from the measure
// sum delta_(1/m)/m^2 with moments zeta(k+2); returns the (y_i = 1/x_i,
// w_i/x_i^2) view so that sum f(m) ~ sum W_i f(y_i)
GaussRule monien_rule(long n);
Real monien_sum(const std::function<Real(const Real&)>& f, long n);

// nodes/weights for int_0^oo g(t)/(e^(2 pi t)+1) dt (Abel-Plana kernel)
GaussRule abel_plana_kernel_rule(long n);

// ------------------------------------------------- inverse Mellin asymptotics

// W(t) = C u^B exp(-pi d u^(2/d)) Psi(w), u = t/sqrt(f), w = 1/(2 pi u^(2/d));
// Psi has rational coefficients obtained from the hypergeometric ODE
// prod_j (b_j - theta) W = (2 pi)^d / f * t^2 W
struct MellinAsymptotic {
  std::vector<mpq_class> psi;  // Psi(w) = sum psi[i] w^i, psi[0] = 1
  EulerCF cf;                  // continued fraction of Psi
  mpq_class B;                 // exponent (1 - d + sum b_j)/d
};
MellinAsymptotic mellin_cf_build(const GammaProduct& gp, long terms);

// Euler-form CF of 1 + sum_{n>=1} c(n) y^n for general coefficient streams
EulerCF cf_of_series(const std::function<Complex(long)>& c, long M);

}  // namespace lfunkit
