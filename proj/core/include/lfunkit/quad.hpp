#pragma once

#include <functional>
#include <vector>

#include "lfunkit/complexap.hpp"
#include "lfunkit/real.hpp"

namespace lfunkit {

// ------------------------------ double-exponential integration (tanh-sinh family)

enum class Decay { none, polynomial, exponential, gaussian };

// Decay annotations at infinite ends select the change of variable:
//   [a,b] finite        x = tanh(sinh t)
//   [a,oo) polynomial   x = a + exp(sinh t)
//   [a,oo) exponential  x = a + exp(t - exp(-t))/rate   (gaussian treated alike)
//   R polynomial        x = sinh(sinh t),  R exponential x = sinh(t)
struct IntervalSpec {
  Real a, b;
  bool a_finite = true, b_finite = true;
  Decay decay = Decay::none;
  Real rate = Real(1);

  static IntervalSpec finite(Real a, Real b) {
    IntervalSpec s;
    s.a = std::move(a);
    s.b = std::move(b);
    return s;
  }
  static IntervalSpec halfline(Real a, Decay d, Real rate = Real(1)) {
    IntervalSpec s;
    s.a = std::move(a);
    s.b_finite = false;
    s.decay = d;
    s.rate = std::move(rate);
    return s;
  }
  static IntervalSpec realline(Decay d, Real rate = Real(1)) {
    IntervalSpec s;
    s.a_finite = s.b_finite = false;
    s.decay = d;
    s.rate = std::move(rate);
    return s;
  }
};

struct DENodes {
  Real h;
  long N = 0;
  std::vector<Real> x, w;  // phi(nh), phi'(nh) for n = -N..N
};

DENodes build_de_nodes(const IntervalSpec& spec, long N = 0);  // N = 0: from precision
Real de_integrate_nodes(const std::function<Real(const Real&)>& f, const DENodes& nodes);
Real de_integrate(const std::function<Real(const Real&)>& f, const IntervalSpec& spec, long N = 0);

// ------------------------------ Euler-MacLaurin summation

struct EmOptions {
  long N = 0;          // cut point (0 = choose from precision)
  long K = 0;          // number of Bernoulli terms (0 = adaptive)
  Decay tail_decay = Decay::polynomial;
  Real tail_rate = Real(1);
};

// sum_{n >= a} f(n), derivatives mode: fderiv(order, x) supplies f^(order)(x)
Real em_sum_derivatives(const std::function<Real(const Real&)>& f,
                        const std::function<Real(long, const Real&)>& fderiv, long a,
                        const EmOptions& opt = {});
// discrete mode: odd derivatives replaced by powers of the symmetric
// difference (f(x+d) - f(x-d))/(2d), with the Bernoulli weights transported
// through the formal inversion of sinh(d D)/d
Real em_sum_discrete(const std::function<Real(const Real&)>& f, long a, const EmOptions& opt = {});
// Euler-MacLaurin constant z(f) = lim_N (sum_{a<=n<=N} f(n) - F(N) - f(N)/2 - tail),
// F = antiderivative with F(a) = 0
Real em_constant_derivatives(const std::function<Real(const Real&)>& f,
                             const std::function<Real(long, const Real&)>& fderiv,
                             const std::function<Real(const Real&)>& antideriv, long a,
                             const EmOptions& opt = {});

// ------------------------------ Zagier extrapolation

// u_n ~ a0 + a1/n^s + a2/n^(2s) + ... with s = 1 or 1/2 (power_step_half)
Real limit_extrapolate(const std::function<Real(long)>& u, int k = 12, long n0 = 100,
                       bool power_step_half = false);
// first `count` coefficients a_0..a_(count-1) (integer-power case) by peeling
std::vector<Real> limit_extrapolate_coeffs(const std::function<Real(long)>& u, int k, long n0,
                                           int count);

// ------------------------------ alternating sums (Cohen-Rodriguez Villegas-Zagier)

Real sumalt(const std::function<Real(long)>& f, long n = 0);  // sum (-1)^k f(k), k >= 0

// ------------------------------ numerical differentiation

enum class DiffScheme { central2, stencil3, stencil5 };
Real numdiff(const std::function<Real(const Real&)>& f, const Real& x0,
             DiffScheme scheme = DiffScheme::central2);

// ------------------------------ Abel-Plana summation

// sum_{m >= 1} f(m) = int_(1/2)^oo f - i int_0^oo (f(1/2+it) - f(1/2-it))/(e^(2 pi t)+1) dt
Real abel_plana_sum(const std::function<Complex(const Complex&)>& f,
                    Decay decay = Decay::polynomial, Real rate = Real(1));

// ------------------------------ Euler products and sums over primes

enum class EulerKind { product, sum, sum_logp };
// f is a rational function of x = 1/p given by numerator/denominator
// coefficients (ascending). product: f -> 1 at rate x^b, b > 1;
// sum kinds: f -> 0 at rate x^b, b > 1.
Real euler_prime(EulerKind kind, const std::vector<mpq_class>& num,
                 const std::vector<mpq_class>& den, long P0 = 50);

}  // namespace lfunkit
