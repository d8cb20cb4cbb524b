#include "lfunkit/quad.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "lfunkit/arith.hpp"
#include "lfunkit/contfrac.hpp"
#include "lfunkit/numcore.hpp"

namespace lfunkit {

// ----------------------------------------------------------------- DE nodes

namespace {

long de_auto_N(long digits) {
  double target = (digits + 4) * 2.302585;
  long N = 8;
  while (5.0 * N / std::log(5.0 * N) < target) N += 8;
  return N;
}

}  // namespace

DENodes build_de_nodes(const IntervalSpec& spec, long N) {
  long caller = working_digits();
  if (N == 0) {
    N = de_auto_N(caller);
    if (!(spec.a_finite && spec.b_finite)) N += N / 3;  // slack for the infinite maps
  }
  DENodes nodes;
  nodes.N = N;
  // extra headroom so nodes near finite endpoints stay distinguishable from
  // the endpoint itself until their weights are negligible
  PrecisionGuard guard(caller + 40);
  nodes.h = log(Real(5 * N)) / Real(N);
  nodes.x.reserve(2 * N + 1);
  nodes.w.reserve(2 * N + 1);
  for (long n = -N; n <= N; ++n) {
    Real t = nodes.h * Real(n);
    Real x, w;
    if (spec.a_finite && spec.b_finite) {
      // x = mid + half*tanh(sinh t)
      Real half = (spec.b - spec.a) / 2, mid = (spec.a + spec.b) / 2;
      Real sh = sinh(t);
      Real th = tanh(sh);
      x = mid + half * th;
      Real c = cosh(sh);
      w = half * cosh(t) / (c * c);
    } else if (spec.a_finite) {
      if (spec.decay == Decay::polynomial || spec.decay == Decay::none) {
        Real u = exp(sinh(t));
        x = spec.a + u;
        w = u * cosh(t);
      } else {
        Real u = exp(t - exp(-t));
        x = spec.a + u / spec.rate;
        w = u * (1 + exp(-t)) / spec.rate;
      }
    } else {
      if (spec.decay == Decay::polynomial || spec.decay == Decay::none) {
        Real sh = sinh(t);
        x = sinh(sh);
        w = cosh(sh) * cosh(t);
      } else {
        x = sinh(t);
        w = cosh(t);
      }
    }
    nodes.x.push_back(to_current_prec(x));
    nodes.w.push_back(to_current_prec(w));
  }
  return nodes;
}

Real de_integrate_nodes(const std::function<Real(const Real&)>& f, const DENodes& nodes) {
  long caller = working_digits();
  PrecisionGuard guard(caller + 10);
  Real floor_mag = pow10(-(caller + 14));
  Real acc(0);
  for (std::size_t i = 0; i < nodes.x.size(); ++i) {
    if (abs(nodes.w[i]) < floor_mag) continue;  // weight already negligible
    Real fx = f(nodes.x[i]);
    if (!fx.is_finite())
      throw std::runtime_error("de_integrate: integrand not finite at x = " + nodes.x[i].str(20));
    acc += fx * nodes.w[i];
  }
  acc *= nodes.h;
  PrecisionGuard back(caller);
  return to_current_prec(acc);
}

Real de_integrate(const std::function<Real(const Real&)>& f, const IntervalSpec& spec, long N) {
  return de_integrate_nodes(f, build_de_nodes(spec, N));
}

// --------------------------------------------------------- Euler-MacLaurin

namespace {

struct EmPlan {
  long N, Kmax;
};

EmPlan em_plan(long a, const EmOptions& opt, long digits) {
  EmPlan p;
  p.N = opt.N > 0 ? opt.N : std::max<long>(a + 8, static_cast<long>(0.62 * digits) + 10);
  p.Kmax = opt.K > 0 ? opt.K : 4 * digits;
  return p;
}

}  // namespace

Real em_sum_derivatives(const std::function<Real(const Real&)>& f,
                        const std::function<Real(long, const Real&)>& fderiv, long a,
                        const EmOptions& opt) {
  long caller = working_digits();
  PrecisionGuard guard(caller + 10);
  EmPlan plan = em_plan(a, opt, caller);
  Real N(plan.N);
  Real acc(0);
  for (long n = a; n <= plan.N; ++n) acc += f(Real(n));
  acc += de_integrate(f, IntervalSpec::halfline(N, opt.tail_decay, opt.tail_rate));
  acc -= f(N) / 2;
  Real eps = pow10(-(caller + 6));
  Real prev(-1);
  for (long k = 1; k <= plan.Kmax; ++k) {
    Real term = Real(bernoulli(2 * k)) / Real(factorial_mpz(2 * k)) * fderiv(2 * k - 1, N);
    Real mag = abs(term);
    if (prev.sign() > 0 && mag > prev) break;  // asymptotic wall
    acc -= term;
    if (mag < eps) break;
    prev = mag;
  }
  PrecisionGuard back(caller);
  return to_current_prec(acc);
}

Real em_constant_derivatives(const std::function<Real(const Real&)>& f,
                             const std::function<Real(long, const Real&)>& fderiv,
                             const std::function<Real(const Real&)>& antideriv, long a,
                             const EmOptions& opt) {
  long caller = working_digits();
  PrecisionGuard guard(caller + 10);
  EmPlan plan = em_plan(a, opt, caller);
  Real N(plan.N);
  Real acc(0);
  for (long n = a; n <= plan.N; ++n) acc += f(Real(n));
  acc -= antideriv(N) - antideriv(Real(a));
  acc -= f(N) / 2;
  Real eps = pow10(-(caller + 6));
  Real prev(-1);
  for (long k = 1; k <= plan.Kmax; ++k) {
    Real term = Real(bernoulli(2 * k)) / Real(factorial_mpz(2 * k)) * fderiv(2 * k - 1, N);
    Real mag = abs(term);
    if (prev.sign() > 0 && mag > prev) break;
    acc -= term;
    if (mag < eps) break;
    prev = mag;
  }
  PrecisionGuard back(caller);
  return to_current_prec(acc);
}

namespace {

// mpq power series helpers (dense, fixed length)
using QS = std::vector<mpq_class>;

QS qs_mul(const QS& a, const QS& b, std::size_t n) {
  QS r(n, 0);
  for (std::size_t i = 0; i < a.size() && i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < n; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

QS qs_div(const QS& a, const QS& b, std::size_t n) {
  QS r(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    mpq_class acc = i < a.size() ? a[i] : mpq_class(0);
    for (std::size_t j = 1; j <= i && j < b.size(); ++j) acc -= b[j] * r[i - j];
    r[i] = acc / b[0];
  }
  return r;
}

// Bernoulli-weight coefficients transported through D = asinh(delta T)/delta:
// returns c with sum_k B_2k/(2k)! D^(2k-1) = sum c[m] T^m (odd m only)
QS discrete_em_weights(const mpq_class& delta, long K) {
  std::size_t L = static_cast<std::size_t>(2 * K);
  QS A(L, 0);  // asinh(delta T)/delta as a series in T
  mpq_class c(1);
  for (long m = 0; 2 * static_cast<std::size_t>(m) + 1 < L; ++m) {
    // (-1)^m C(2m, m)/(4^m (2m+1)) delta^(2m)
    A[2 * m + 1] = c / (2 * m + 1);
    c *= -mpq_class((2 * m + 1) * (2 * m + 2), 4 * (m + 1) * (m + 1));
    c *= delta * delta;
  }
  QS out(L, 0);
  QS A2 = qs_mul(A, A, L);
  QS Apow = A;  // A^(2k-1)
  mpz_class fact(2);
  for (long k = 1; 2 * static_cast<std::size_t>(k) - 1 < L; ++k) {
    mpq_class w = bernoulli(2 * k) / mpq_class(fact);
    for (std::size_t i = 0; i < L; ++i) out[i] += w * Apow[i];
    Apow = qs_mul(Apow, A2, L);
    fact *= (2 * k + 1);
    fact *= (2 * k + 2);
  }
  return out;
}

}  // namespace

Real em_sum_discrete(const std::function<Real(const Real&)>& f, long a, const EmOptions& opt) {
  long caller = working_digits();
  PrecisionGuard guard(caller + 12);
  mpq_class delta(1, 4);
  long K = opt.K > 0 ? opt.K : std::min<long>(40, caller);
  long N = opt.N > 0 ? opt.N
                     : std::max<long>(a + static_cast<long>((2 * K - 1) / 4) + 4,
                                      static_cast<long>(0.62 * caller) + 10);
  Real acc(0);
  for (long n = a; n <= N; ++n) acc += f(Real(n));
  Real Nr(N);
  acc += de_integrate(f, IntervalSpec::halfline(Nr, opt.tail_decay, opt.tail_rate));
  acc -= f(Nr) / 2;
  QS c = discrete_em_weights(delta, K);
  // f at N + i*delta for odd i
  std::map<long, Real> fv;
  for (long i = 1; i <= 2 * K - 1; i += 2) {
    fv[i] = f(Nr + Real(delta) * Real(i));
    fv[-i] = f(Nr - Real(delta) * Real(i));
  }
  Real eps = pow10(-(caller + 6));
  Real prev(-1);
  Real twod = Real(delta) * 2;
  for (long k = 1; 2 * k - 1 < static_cast<long>(c.size()); ++k) {
    long m = 2 * k - 1;
    if (c[m] == 0) continue;
    // T^m f(N) = (2 delta)^(-m) sum_j (-1)^j C(m,j) f(N + (m-2j) delta)
    Real s(0);
    mpz_class binom(1);
    for (long j = 0; j <= m; ++j) {
      Real term = Real(binom) * fv[m - 2 * j];
      s += (j % 2 == 0) ? term : -term;
      binom = binom * (m - j) / (j + 1);
    }
    s = s / pow(twod, m);
    Real term = Real(c[m]) * s;
    Real mag = abs(term);
    if (prev.sign() > 0 && mag > prev * 4) break;
    acc -= term;
    if (mag < eps) break;
    prev = mag;
  }
  PrecisionGuard back(caller);
  return to_current_prec(acc);
}

// ----------------------------------------------------- Zagier extrapolation

namespace {

Real extrapolate_integer_step(const std::function<Real(long)>& u, int k, long n0) {
  // a0 = Delta^k (n^k u_n)|_(n0) / k!
  Real acc(0);
  mpz_class binom(1);
  for (int j = 0; j <= k; ++j) {
    Real term = Real(binom) * pow(Real(n0 + j), static_cast<long>(k)) * u(n0 + j);
    acc += ((k - j) % 2 == 0) ? term : -term;
    binom = binom * (k - j) / (j + 1);
  }
  mpz_class kf(1);
  for (int j = 2; j <= k; ++j) kf *= j;
  return acc / Real(kf);
}

}  // namespace

Real limit_extrapolate(const std::function<Real(long)>& u, int k, long n0, bool power_step_half) {
  long caller = working_digits();
  long guard_digits =
      static_cast<long>(k * (std::log10(static_cast<double>(n0 + k)) + 0.45)) + 15;
  PrecisionGuard guard(caller + guard_digits);
  Real r;
  if (!power_step_half) {
    r = extrapolate_integer_step(u, k, n0);
  } else {
    // first difference pass kills the half-power channel, then the integer
    // machinery applies to v(n) = n^(1/2) Delta^k(n^(k-1/2) u_n) / prod(k-1/2-i)
    Real c(1);
    for (int i = 0; i < k; ++i) c *= Real(mpq_class(2 * (k - i) - 1, 2));
    auto v = [&](long n) {
      Real acc(0);
      mpz_class binom(1);
      for (int j = 0; j <= k; ++j) {
        Real term = Real(binom) * pow(Real(n + j), Real(mpq_class(2 * k - 1, 2))) * u(n + j);
        acc += ((k - j) % 2 == 0) ? term : -term;
        binom = binom * (k - j) / (j + 1);
      }
      return sqrt(Real(n)) * acc / c;
    };
    r = extrapolate_integer_step(v, k, n0);
  }
  PrecisionGuard back(caller);
  return to_current_prec(r);
}

std::vector<Real> limit_extrapolate_coeffs(const std::function<Real(long)>& u, int k, long n0,
                                           int count) {
  std::vector<Real> coeffs;
  for (int j = 0; j < count; ++j) {
    auto v = [&](long n) {
      Real acc = u(n);
      for (int i = 0; i < j; ++i) acc -= coeffs[i] / pow(Real(n), static_cast<long>(i));
      return acc * pow(Real(n), static_cast<long>(j));
    };
    coeffs.push_back(limit_extrapolate(v, k, n0));
  }
  return coeffs;
}

// ----------------------------------------------------------------- sumalt

Real sumalt(const std::function<Real(long)>& f, long n) {
  long caller = working_digits();
  if (n <= 0) n = static_cast<long>(caller * 2.302585 / 1.762747) + 5;
  PrecisionGuard guard(caller + 8);
  Real d = pow(Real(3) + sqrt(Real(8)), n);
  d = (d + Real(1) / d) / 2;
  Real b(-1), c = -d, s(0);
  for (long k = 0; k < n; ++k) {
    c = b - c;
    s += c * f(k);
    b = Real(k + n) * Real(k - n) * b / (Real(mpq_class(2 * k + 1, 2)) * Real(k + 1));
  }
  PrecisionGuard back(caller);
  return to_current_prec(s / d);
}

// ------------------------------------------------------------------ numdiff

Real numdiff(const std::function<Real(const Real&)>& f, const Real& x0, DiffScheme scheme) {
  long D = working_digits();
  Real scale = max(Real(1), abs(x0));
  auto run = [&](long extra_digits, long hexp, auto&& kernel) {
    PrecisionGuard guard(D + extra_digits + 6);
    Real h = pow10(-hexp) * scale;
    Real r = kernel(h);
    PrecisionGuard back(D);
    return to_current_prec(r);
  };
  switch (scheme) {
    case DiffScheme::central2: {
      // eps = eta^(3/2), h ~ eta^(1/2); one refinement from the measured f'''
      auto kernel = [&](const Real& h) { return (f(x0 + h) - f(x0 - h)) / (2 * h); };
      Real first = run(D / 2, (D + 1) / 2, kernel);
      // crude third-derivative estimate at a coarse step
      long cexp = std::max<long>(2, D / 6);
      {
        PrecisionGuard guard(D + D / 2 + 6);
        Real hc = pow10(-cexp) * scale;
        Real f3 = (f(x0 + 3 * hc) - 3 * f(x0 + hc) + 3 * f(x0 - hc) - f(x0 - 3 * hc)) /
                  (8 * hc * hc * hc);
        Real fa = max(abs(f(x0)), pow10(-D));
        if (abs(f3) > fa * pow10(-3) && abs(f3) < fa * pow10(3)) {
          // h* = (3 eps |f/f'''|)^(1/3) with eps = 10^-(3D/2)
          Real hstar = pow(3 * pow10(-(D + D / 2)) * fa / abs(f3), Real(mpq_class(1, 3)));
          Real r = (f(x0 + hstar) - f(x0 - hstar)) / (2 * hstar);
          PrecisionGuard back(D);
          return to_current_prec(r);
        }
      }
      return first;
    }
    case DiffScheme::stencil3: {
      auto kernel = [&](const Real& h) {
        return (Real(-27) * f(x0 - h / 3) + Real(-5) * f(x0 + h) + Real(32) * f(x0 + h / 2)) /
               (Real(20) * h);
      };
      return run(D / 3, (D + 2) / 3, kernel);
    }
    case DiffScheme::stencil5: {
      auto kernel = [&](const Real& h) {
        return (f(x0 - 2 * h) - 8 * f(x0 - h) + 8 * f(x0 + h) - f(x0 + 2 * h)) / (12 * h);
      };
      return run(D / 4, (D + 3) / 4, kernel);
    }
  }
  throw std::logic_error("numdiff: bad scheme");
}

// --------------------------------------------------------------- Abel-Plana

Real abel_plana_sum(const std::function<Complex(const Complex&)>& f, Decay decay, Real rate) {
  long caller = working_digits();
  PrecisionGuard guard(caller + 10);
  // summing the head directly moves the singularities of typical f (at
  // Re z <= 0) far from the shifted line, which the Gaussian kernel rule
  // needs to converge fast
  long m0 = std::max<long>(6, caller / 3);
  Real head(0);
  for (long m = 1; m <= m0; ++m) head += f(Complex(Real(m))).re;
  Real a = Real(m0) + Real(mpq_class(1, 2));
  Real I1 = de_integrate([&](const Real& t) { return f(Complex(t)).re; },
                         IntervalSpec::halfline(a, decay, rate));
  // kernel integral against 1/(e^(2 pi t) + 1) by the cached Gauss rule
  GaussRule rule = abel_plana_kernel_rule(std::max<long>(24, caller));
  Real I2(0);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    Complex fp = f(Complex(a, rule.nodes[i]));
    I2 += rule.weights[i] * fp.im;
  }
  PrecisionGuard back(caller);
  return to_current_prec(head + I1 + 2 * I2);
}

// -------------------------------------------------- Euler products and sums

namespace {

// prime-zeta tail P(k) = sum_(p > P0) p^(-k) via Moebius inversion of
// log zeta_(>P0)
struct TruncatedZeta {
  std::vector<u64> primes;
  long kmax;

  Real zeta_trunc(long n) const {  // zeta(n) prod_(p <= P0)(1 - p^(-n))
    Real z = zeta_int(n);
    for (u64 p : primes) z *= (Real(1) - pow(Real(static_cast<long>(p)), -n));
    return z;
  }
  Real zeta_trunc_logderiv(long n) const {  // (zeta')/(zeta) + sum log p p^-n/(1-p^-n)
    auto [z, dz] = zeta_em_with_deriv(Complex(Real(n)));
    Real r = (dz / z).re;
    for (u64 p : primes) {
      Real pn = pow(Real(static_cast<long>(p)), -n);
      r += log(Real(static_cast<long>(p))) * pn / (1 - pn);
    }
    return r;
  }
};

int moebius(long n) {
  int mu = 1;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

}  // namespace

Real euler_prime(EulerKind kind, const std::vector<mpq_class>& num,
                 const std::vector<mpq_class>& den, long P0) {
  long caller = working_digits();
  PrecisionGuard guard(caller + 10);
  long next_p = static_cast<long>(P0) + 1;
  while (!is_prime(static_cast<u64>(next_p))) ++next_p;
  long kmax =
      static_cast<long>((caller + 10) * 2.302585 / std::log(static_cast<double>(next_p))) + 3;
  std::size_t L = static_cast<std::size_t>(kmax + 1);
  QS nq(num.begin(), num.end()), dq(den.begin(), den.end());
  if (dq.empty() || dq[0] == 0) throw std::invalid_argument("euler_prime: denominator(0) = 0");
  QS F = qs_div(nq, dq, L);  // f as a power series in x = 1/p

  TruncatedZeta tz;
  tz.kmax = kmax;
  for (auto& q : sieve_primes(static_cast<u64>(P0)).primes) tz.primes.push_back(q);

  auto f_at = [&](u64 p) {
    Real x = Real(1) / Real(static_cast<long>(p));
    Real nv(0), dv(0);
    for (std::size_t i = num.size(); i-- > 0;) nv = nv * x + Real(num[i]);
    for (std::size_t i = den.size(); i-- > 0;) dv = dv * x + Real(den[i]);
    return nv / dv;
  };

  Real head = kind == EulerKind::product ? Real(1) : Real(0);
  for (u64 p : tz.primes) {
    if (kind == EulerKind::product)
      head *= f_at(p);
    else if (kind == EulerKind::sum)
      head += f_at(p);
    else
      head += log(Real(static_cast<long>(p))) * f_at(p);
  }

  if (kind == EulerKind::product) {
    if (F[0] != 1) throw std::invalid_argument("euler_prime: product needs f(0) = 1");
    // log f = sum d_k x^k; exponents a_k = d_k - sum_{m | k, m >= 2} a_{k/m}/m
    // via (log f)' = f'/f integrated
    QS Fd(L, 0);
    for (std::size_t i = 1; i < L; ++i) Fd[i - 1] = F[i] * static_cast<long>(i);
    QS logd = qs_div(Fd, F, L);
    QS d(L, 0);
    for (std::size_t i = 1; i < L; ++i) d[i] = logd[i - 1] / static_cast<long>(i);
    if (d.size() > 1 && d[1] != 0)
      throw std::invalid_argument("euler_prime: product needs decay faster than 1/p");
    QS a(L, 0);
    for (long k = 2; k <= kmax; ++k) {
      mpq_class acc = d[k];
      for (long m = 2; m * 2 <= k * 2; ++m) {
        if (k % m) continue;
        acc -= a[k / m] / m;
      }
      a[k] = acc;
    }
    Real tail(0);
    Real eps = pow10(-(caller + 8));
    for (long k = 2; k <= kmax; ++k) {
      if (a[k] == 0) continue;
      Real zk = tz.zeta_trunc(k);
      tail += Real(a[k]) * log(zk);
      if (abs(zk - Real(1)) < eps) break;
    }
    Real r = head * exp(tail);
    PrecisionGuard back(caller);
    return to_current_prec(r);
  }

  // sums: f(0) must vanish, and also the 1/p coefficient for convergence
  if (F[0] != 0 || F[1] != 0)
    throw std::invalid_argument("euler_prime: sum needs decay faster than 1/p");
  // prime-zeta tails and their derivatives
  std::vector<Real> logz(kmax + 1, Real(0)), dlogz(kmax + 1, Real(0));
  for (long n = 2; n <= kmax; ++n) {
    logz[n] = log(tz.zeta_trunc(n));
    if (kind == EulerKind::sum_logp) dlogz[n] = tz.zeta_trunc_logderiv(n);
  }
  Real tail(0);
  for (long k = 2; k <= kmax; ++k) {
    if (F[k] == 0) continue;
    Real Pk(0);
    for (long m = 1; k * m <= kmax; ++m) {
      int mu = moebius(m);
      if (mu == 0) continue;
      if (kind == EulerKind::sum)
        Pk += Real(mpq_class(mu, m)) * logz[k * m];
      else
        Pk += Real(mu) * dlogz[k * m];  // derivative of sum mu/m log zeta(km) wrt k... in s
    }
    if (kind == EulerKind::sum_logp) Pk = -Pk;  // sum_p log p p^(-k) = -P'(k)
    tail += Real(F[k]) * Pk;
  }
  Real r = head + tail;
  PrecisionGuard back(caller);
  return to_current_prec(r);
}

}  // namespace lfunkit
