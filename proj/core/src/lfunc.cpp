#include "lfunkit/lfunc.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "lfunkit/detail/series.hpp"
#include "lfunkit/numcore.hpp"
#include "lfunkit/quad.hpp"

namespace lfunkit {

namespace {

long afe_cutoff(const GammaProduct& gp, long digits, const Real& Ascale) {
  // n beyond (D/(pi d))^(d/2) sqrt(f) / A contribute below 10^-D
  int d = gp.degree();
  double D = (digits + 8) * 2.302585;
  double n = std::pow(D / (3.14159265 * d), d / 2.0) * std::sqrt(gp.f.to_double()) /
             Ascale.to_double();
  return static_cast<long>(n) + 4;
}

}  // namespace

Complex lambda_eval(const LFunctionSpec& spec, const Complex& s, const Real& A) {
  long caller = working_digits();
  PrecisionGuard guard(caller + 8);
  Complex z = to_current_prec(s);
  Real Ar = to_current_prec(A);
  Complex ks = Complex(spec.k) - z;
  IncGammaProduct g1(spec.gp, z);
  IncGammaProduct g2(spec.gp, ks);
  Complex acc(0L);
  long M1 = afe_cutoff(spec.gp, caller, Ar);
  for (long n = 1; n <= M1; ++n) {
    Complex a = spec.an(n);
    if (a.is_zero()) continue;
    Real ln = log(Real(n));
    acc += a * exp(-z * Complex(ln)) * g1(Real(n) * Ar);
  }
  long M2 = afe_cutoff(spec.gp, caller, Real(1) / Ar);
  Complex acc2(0L);
  for (long n = 1; n <= M2; ++n) {
    Complex a = spec.an(n);
    if (a.is_zero()) continue;
    if (spec.dual_conj) a = conj(a);
    Real ln = log(Real(n));
    acc2 += a * exp(-ks * Complex(ln)) * g2(Real(n) / Ar);
  }
  acc += spec.omega * acc2;
  for (auto& [sj, Rj] : spec.poles) {
    Complex e = exp((z - sj) * Complex(log(Ar)));
    acc += Rj * e / (z - sj);
  }
  PrecisionGuard back(caller);
  return to_current_prec(acc);
}

Complex lfun_L(const LFunctionSpec& spec, const Complex& s, const Real& A) {
  return lambda_eval(spec, s, A) / gamma_product_value(spec.gp, s);
}

Real fe_residual(const LFunctionSpec& spec, const std::vector<Complex>& samples,
                 const std::vector<Real>& As) {
  LFunctionSpec dual = spec;
  if (spec.dual_conj) {
    auto an = spec.an;
    dual.an = [an](long n) { return conj(an(n)); };
    dual.poles.clear();
    for (auto& [sj, Rj] : spec.poles) dual.poles.push_back({conj(sj), conj(Rj)});
  }
  Real worst(0);
  for (auto& s : samples)
    for (auto& A : As) {
      Complex lhs = lambda_eval(spec, s, A);
      Complex rhs_inner = lambda_eval(dual, Complex(spec.k) - conj(s), A);
      Complex rhs = spec.omega * conj(rhs_inner);
      worst = max(worst, abs(lhs - rhs));
    }
  return worst;
}

RootSolveOutcome root_solve(const std::vector<LFunctionSpec>& candidates,
                            const std::vector<Complex>& samples, const std::vector<Real>& As) {
  RootSolveOutcome out;
  Real best(-1);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    Real r = fe_residual(candidates[i], samples, As);
    out.residuals.push_back(r);
    if (best.sign() < 0 || r < best) {
      best = r;
      out.best = i;
    }
  }
  out.residual = best;
  return out;
}

Complex fit_root_number(const LFunctionSpec& spec, const Complex& s0, const Real& A) {
  if (!spec.poles.empty())
    throw std::invalid_argument("fit_root_number: pole-free specs only");
  // Lambda(s; A) = S1(s; A) + w S2(s; A) is A-independent, so two nearby A
  // values determine w (the paper's a^s trick)
  auto with_omega = [&](const LFunctionSpec& base, long w) {
    LFunctionSpec s = base;
    s.omega = Complex(w);
    return s;
  };
  Real A1 = A * Real("0.9"), A2 = A * Real("1.1");
  Complex S1a = lambda_eval(with_omega(spec, 0), s0, A1);
  Complex S2a = lambda_eval(with_omega(spec, 1), s0, A1) - S1a;
  Complex S1b = lambda_eval(with_omega(spec, 0), s0, A2);
  Complex S2b = lambda_eval(with_omega(spec, 1), s0, A2) - S1b;
  return (S1a - S1b) / (S2b - S2a);
}

// ------------------------------------------------------------- Dirichlet L

Complex GenBernoulli::value() const {
  Complex acc(0L);
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j] == 0) continue;
    acc += Complex(Real(coeffs[j])) *
           unit_root(static_cast<long>(j), static_cast<long>(order));
  }
  return acc;
}

Complex GenBernoulli::conj_value() const {
  Complex acc(0L);
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j] == 0) continue;
    acc += Complex(Real(coeffs[j])) *
           unit_root(-static_cast<long>(j), static_cast<long>(order));
  }
  return acc;
}

bool GenBernoulli::is_rational() const {
  // rational iff the exponent-vector is supported on j = 0 and (for even
  // order) j = order/2
  for (std::size_t j = 1; j < coeffs.size(); ++j) {
    if (coeffs[j] == 0) continue;
    if (!(order % 2 == 0 && j == order / 2)) return false;
  }
  return true;
}

mpq_class GenBernoulli::rational() const {
  mpq_class acc = coeffs.empty() ? mpq_class(0) : coeffs[0];
  if (order % 2 == 0 && coeffs.size() > order / 2) acc -= coeffs[order / 2];
  return acc;
}

GenBernoulli gen_bernoulli(const DirichletCharacter& chi, long k) {
  if (!chi.is_primitive()) throw std::invalid_argument("gen_bernoulli: chi must be primitive");
  u64 f = chi.modulus;
  GenBernoulli out;
  out.order = std::max<u64>(1, chi.order());
  out.coeffs.assign(out.order, 0);
  // B_k(x) = sum_j C(k,j) B_j x^(k-j)
  std::vector<mpq_class> bern(k + 1);
  for (long j = 0; j <= k; ++j) bern[j] = bernoulli(j);
  mpz_class fk;  // f^(k-1)
  mpz_ui_pow_ui(fk.get_mpz_t(), f, static_cast<unsigned long>(k >= 1 ? k - 1 : 0));
  for (u64 a = 1; a <= f; ++a) {
    u64 num, den;
    if (!chi.value_exponent(static_cast<i64>(a), num, den)) continue;
    mpq_class x(a, f);
    x.canonicalize();
    // B_k(a/f)
    mpq_class bk(0);
    mpz_class binom(1);
    mpq_class xpow(1);
    // sum descending in j so x powers accumulate: use ascending j with x^(k-j)
    for (long j = 0; j <= k; ++j) {
      mpq_class term = mpq_class(binom) * bern[j];
      // multiply by x^(k-j)
      mpq_class xp;
      mpz_class pnum, pden;
      mpz_pow_ui(pnum.get_mpz_t(), x.get_num().get_mpz_t(), static_cast<unsigned long>(k - j));
      mpz_pow_ui(pden.get_mpz_t(), x.get_den().get_mpz_t(), static_cast<unsigned long>(k - j));
      xp = mpq_class(pnum) / mpq_class(pden);
      bk += term * xp;
      binom = binom * (k - j) / (j + 1);
    }
    u128 t = static_cast<u128>(num) * out.order;
    if (t % den != 0) throw std::logic_error("gen_bernoulli: character order mismatch");
    u64 idx = static_cast<u64>((t / den) % out.order);
    out.coeffs[idx] += mpq_class(fk) * bk;
  }
  return out;
}

Complex dirichlet_root_number(const DirichletCharacter& chi) {
  u64 N = chi.modulus;
  Complex g = gauss_sum(chi);
  Complex denom = Complex(sqrt(Real(static_cast<long>(N))));
  if (chi.parity() == 1) denom *= Complex(Real(0), Real(1));
  return g / denom;
}

Complex dirichlet_special_value(const DirichletCharacter& chi, long s) {
  u64 N = chi.modulus;
  int e = chi.parity();
  if (s <= 0) {
    long k = 1 - s;
    GenBernoulli B = gen_bernoulli(chi, k);
    Complex v = -B.value() / Complex(Real(k));
    if (N == 1 && k == 1) v -= Complex(1L);
    return v;
  }
  long k = s;
  if ((k - e) % 2 != 0) throw std::invalid_argument("dirichlet_special_value: k != e mod 2");
  // L(chi,k) = (-1)^(k-1+(k+e)/2) omega(chi) 2^(k-1) pi^k conj(B_k(chi)) / (N^(k-1/2) k!)
  GenBernoulli B = gen_bernoulli(chi, k);
  Complex v = dirichlet_root_number(chi) * B.conj_value();
  v *= Complex(pow(Real(2), k - 1) * pow(const_pi(), k));
  v = v / Complex(pow(Real(static_cast<long>(N)), Real(mpq_class(2 * k - 1, 2))) *
                  Real(factorial_mpz(k)));
  if ((k - 1 + (k + e) / 2) % 2 != 0) v = -v;
  return v;
}

Complex dirichlet_L(const DirichletCharacter& chi, const Complex& s, const Real& A) {
  if (!chi.is_primitive()) throw std::invalid_argument("dirichlet_L: chi must be primitive");
  long caller = working_digits();
  PrecisionGuard guard(caller + 10);
  u64 N = chi.modulus;
  int e = chi.parity();
  Complex z = to_current_prec(s);
  Real Ar = to_current_prec(A);
  Real pi = const_pi();
  if (N == 1 && z.im.is_zero() && z.re == Real(1))
    throw std::domain_error("dirichlet_L: pole at s = 1");
  Complex half_se = (z + Complex(Real(e))) / Complex(Real(2));
  Complex acc(0L);
  if (N == 1) {
    // delta term pi^(s/2) (A^((s-1)/2)/(s-1) - A^(s/2)/s)
    Complex ps = exp(z * Complex(log(pi) / 2));
    Complex t1 = exp((z - Complex(1L)) * Complex(log(Ar) / 2)) / (z - Complex(1L));
    Complex t2 = exp(z * Complex(log(Ar) / 2)) / z;
    acc += ps * (t1 - t2);
  }
  double D = (caller + 8) * 2.302585;
  long M1 = static_cast<long>(std::sqrt(static_cast<double>(N) * D /
                                        (3.14159265 * Ar.to_double()))) +
            2;
  for (long n = 1; n <= M1; ++n) {
    u64 vnum, vden;
    if (!chi.value_exponent(n, vnum, vden)) continue;
    Complex cv = unit_root(static_cast<long>(vnum), static_cast<long>(vden));
    Real x = pi * Real(n) * Real(n) * Ar / Real(static_cast<long>(N));
    acc += cv * exp(-z * Complex(log(Real(n)))) * incgamma(half_se, x);
  }
  long M2 = static_cast<long>(std::sqrt(static_cast<double>(N) * D * Ar.to_double() /
                                        3.14159265)) +
            2;
  Complex acc2(0L);
  Complex one_minus = Complex(1L) - z;
  Complex half_1se = (one_minus + Complex(Real(e))) / Complex(Real(2));
  for (long n = 1; n <= M2; ++n) {
    u64 vnum, vden;
    if (!chi.value_exponent(n, vnum, vden)) continue;
    Complex cv = unit_root(-static_cast<long>(vnum), static_cast<long>(vden));
    Real x = pi * Real(n) * Real(n) / (Ar * Real(static_cast<long>(N)));
    acc2 += cv * exp(-one_minus * Complex(log(Real(n)))) * incgamma(half_1se, x);
  }
  Complex w = dirichlet_root_number(chi);
  acc += w * exp((z - Complex(Real(mpq_class(1, 2)))) *
                 Complex(log(pi / Real(static_cast<long>(N))))) *
         acc2;
  Complex L = acc / gamma_complex(half_se);
  PrecisionGuard back(caller);
  return to_current_prec(L);
}

// ------------------------------------------------ zeros and explicit formula

namespace {

Real riemann_siegel_theta(const Real& t) {
  Complex lg = lngamma_complex(Complex(Real(mpq_class(1, 4)), t / 2));
  return lg.im - t / 2 * log(const_pi());
}

Real hardy_Z(const Real& t) {
  Real th = riemann_siegel_theta(t);
  Complex z = zeta_em(Complex(Real(mpq_class(1, 2)), t));
  Complex rot = Complex(cos(th), sin(th));
  return (rot * z).re;
}

}  // namespace

ZetaZeros zeta_zeros(double T) {
  if (T > 120) throw std::invalid_argument("zeta_zeros: desk scale is T <= ~100");
  ZetaZeros out;
  Real step("0.25");
  Real t = Real("0.5");
  Real prev = hardy_Z(t);
  Real Tr(T);
  while (t < Tr) {
    Real tn = min(t + step, Tr);
    Real cur = hardy_Z(tn);
    if (prev.sign() * cur.sign() < 0) {
      // bisect to 1e-20
      Real lo = t, hi = tn, flo = prev;
      for (int it = 0; it < 80; ++it) {
        Real mid = (lo + hi) / 2;
        Real fm = hardy_Z(mid);
        if (fm.sign() == flo.sign()) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
        if (hi - lo < pow10(-20)) break;
      }
      out.ordinates.push_back((lo + hi) / 2);
    }
    t = tn;
    prev = cur;
    if (t == Tr) break;
  }
  // Riemann-von Mangoldt count check: N(T) = theta(T)/pi + 1 + S(T) with
  // |S(T)| staying near or below 1 at desk heights
  Real expect = riemann_siegel_theta(Tr) / const_pi() + 1;
  Real diff = abs(expect - Real(static_cast<long>(out.ordinates.size())));
  out.count_consistent = diff < Real("1.3");
  return out;
}

ExplicitFormulaResult explicit_formula_check(double T) {
  long caller = working_digits();
  PrecisionGuard guard(std::max<long>(caller, 30));
  long D = working_digits();
  Real pi = const_pi();
  Real sqpi = sqrt(pi);
  // zero side: sum over rho of Phi(rho) = sqrt(pi) e^(-gamma^2/4), both signs
  ZetaZeros zz = zeta_zeros(T);
  Real lhs(0);
  for (auto& g : zz.ordinates) lhs += 2 * sqpi * exp(-g * g / 4);
  // pole term 2 int F(x) cosh(x/2) dx
  Real pole = 2 * de_integrate([&](const Real& x) { return exp(-x * x) * cosh(x / 2); },
                               IntervalSpec::realline(Decay::gaussian));
  lhs -= pole;
  // prime side
  Real prime_side(0);
  double bound = std::exp(12.0);
  PrimeSieve sieve = sieve_primes(static_cast<u64>(bound) + 1);
  for (u64 p : sieve.primes) {
    Real lp = log(Real(static_cast<long>(p)));
    double lpd = lp.to_double();
    for (long k = 1; k * lpd <= 12.0; ++k) {
      Real x = Real(k) * lp;
      prime_side += lp / exp(Real(k) * lp / 2) * 2 * exp(-x * x);
    }
  }
  // archimedean integral with the x -> 0 cancellation handled by a series
  // switch computed from the power series of the integrand
  detail::Series<Real> ser(48);
  {
    std::size_t L = 48;
    detail::Series<Real> emx(L), em4(L), den(L), Fx2(L);
    Real fac(1);
    for (std::size_t j = 0; j < L; ++j) {
      if (j > 0) fac *= Real(static_cast<long>(j));
      Real sign = (j % 2 == 0) ? Real(1) : Real(-1);
      emx[j] = sign / fac;                                         // e^-x
      em4[j] = sign / (fac * pow(Real(4), static_cast<long>(j)));  // e^-(x/4)
      // (1 - e^-x)/x = sum_j (-1)^j x^j/(j+1)!
      den[j] = sign / (fac * Real(static_cast<long>(j + 1)));
    }
    // F(x/2) = e^(-x^2/4)
    for (std::size_t j = 0; j < L; j += 2) {
      Real fac2(1);
      for (std::size_t i = 1; i <= j / 2; ++i) fac2 *= Real(static_cast<long>(i));
      Fx2[j] = ((j / 2) % 2 == 0 ? Real(1) : Real(-1)) / (fac2 * pow(Real(4), static_cast<long>(j / 2)));
    }
    detail::Series<Real> q = detail::mul(em4, Fx2, L);
    q = detail::div(q, den, L);  // e^(-x/4) F(x/2) x/(1-e^-x)
    // integrand = (e^-x - q)/x
    for (std::size_t j = 0; j + 1 < L; ++j) ser[j] = emx[j + 1] - q[j + 1];
    if (!(abs(emx[0] - q[0]) < pow10(-(D - 5))))
      throw std::logic_error("explicit_formula: 1/x term fails to cancel");
  }
  Real x0("0.05");
  auto arch_f = [&](const Real& x) {
    if (x < x0) {
      Real acc(0);
      for (std::size_t j = ser.size(); j-- > 0;) acc = acc * x + ser[j];
      return acc;
    }
    return exp(-x) / x - exp(-x / 4) / (-expm1(-x)) * exp(-x * x / 4);
  };
  Real arch = de_integrate(arch_f, IntervalSpec::halfline(Real(0), Decay::exponential));
  Real rhs = -prime_side + log(Real(1) / pi) + arch;
  ExplicitFormulaResult out;
  PrecisionGuard back(caller);
  out.lhs = to_current_prec(lhs);
  out.rhs = to_current_prec(rhs);
  out.difference = to_current_prec(lhs - rhs);
  return out;
}

// ------------------------------------------------------------------- demos

BsdDemo demo_bsd() {
  long caller = working_digits();
  PrecisionGuard guard(std::max<long>(caller, 38) + 8);
  EllipticCurveQ E{1, -1, 0, -79, 289, {}};
  E.bad = {{2, 0, ec_ap_naive(E, 2)}, {117223, 0, 0}};
  BsdDemo out;
  out.a = ec_an(E, 8000);
  Real N(234446);
  Real sqN = sqrt(N);
  Real twopi = 2 * const_pi();
  // f(x) = int_1^oo e^(-xt) log^2 t dt = (e^-x/x) int_0^oo e^-u log(1+u/x)^2 du
  DENodes nodes = build_de_nodes(IntervalSpec::halfline(Real(0), Decay::exponential), 0);
  {
    // pad the node count: log(1+u/x) has a branch point at u = -x
    long N2 = nodes.N + nodes.N / 2;
    nodes = build_de_nodes(IntervalSpec::halfline(Real(0), Decay::exponential), N2);
  }
  auto f = [&](const Real& x) {
    Real acc = de_integrate_nodes(
        [&](const Real& u) {
          Real l = log1p(u / x);
          return exp(-u) * l * l;
        },
        nodes);
    return exp(-x) / x * acc;
  };
  out.f100 = f(Real(100));
  Real S(0);
  for (long n = 1; n <= 8000; ++n) {
    if (out.a[n] == 0) continue;
    S += Real(out.a[n]) * f(twopi * Real(n) / sqN);
  }
  PrecisionGuard back(caller);
  out.S = to_current_prec(S);
  out.f100 = to_current_prec(out.f100);
  return out;
}

namespace {

LFunctionSpec curve_spec(const std::vector<i64>& an, u64 conductor, const Complex& omega) {
  LFunctionSpec spec;
  auto coeffs = std::make_shared<std::vector<i64>>(an);
  spec.an = [coeffs](long n) {
    return Complex(Real((*coeffs)[static_cast<std::size_t>(n)]));
  };
  spec.gp.f = Real(static_cast<long>(conductor));
  spec.gp.shifts = {0, 1};
  spec.k = Real(2);
  spec.omega = omega;
  return spec;
}

}  // namespace

BlochDemo demo_bloch(long u) {
  if (u < 2) throw std::invalid_argument("demo_bloch: u >= 2");
  long caller = working_digits();
  BlochDemo out;
  EllipticCurveQ E{0, u * u + 1, 0, u * u, 0, {}};
  // bad primes divide 2u(u^2-1)
  std::vector<u64> bad;
  for (auto& [p, e] : factor(static_cast<u64>(2 * u) * static_cast<u64>(u * u - 1))) {
    (void)e;
    bad.push_back(p);
  }
  std::sort(bad.begin(), bad.end());
  // candidate local data: odd p: (exp 1, ap = +-1) or (exp 2, ap = 0);
  // p = 2: exponents 1..8 with ap in {+-1} at exponent 1, 0 above
  struct Local {
    int exp;
    i64 ap;
  };
  std::vector<std::vector<Local>> options;
  for (u64 p : bad) {
    std::vector<Local> opt;
    if (p == 2) {
      opt.push_back({1, 1});
      opt.push_back({1, -1});
      for (int e = 2; e <= 8; ++e) opt.push_back({e, 0});
    } else {
      opt.push_back({1, 1});
      opt.push_back({1, -1});
      opt.push_back({2, 0});
    }
    options.push_back(opt);
  }
  std::vector<std::size_t> idx(bad.size(), 0);
  struct Candidate {
    u64 N;
    std::vector<EllipticCurveQ::BadPrime> data;
    Complex omega;
  };
  std::vector<Candidate> cands;
  while (true) {
    u64 N = 1;
    std::vector<EllipticCurveQ::BadPrime> data;
    for (std::size_t i = 0; i < bad.size(); ++i) {
      const Local& L = options[i][idx[i]];
      for (int e = 0; e < L.exp; ++e) N *= bad[i];
      data.push_back({bad[i], 0, L.ap});
    }
    cands.push_back({N, data, Complex(1L)});
    cands.push_back({N, data, Complex(-1L)});
    std::size_t i = 0;
    for (; i < idx.size(); ++i) {
      if (++idx[i] < options[i].size()) break;
      idx[i] = 0;
    }
    if (i == idx.size()) break;
  }
  // search at low precision
  std::size_t best = 0;
  Real best_res(-1);
  {
    PrecisionGuard guard(16);
    long nmax_all = 0;
    for (auto& c : cands) {
      LFunctionSpec probe;
      probe.gp.f = Real(static_cast<long>(c.N));
      probe.gp.shifts = {0, 1};
      nmax_all = std::max(nmax_all, afe_cutoff(probe.gp, 16, Real(1)));
    }
    for (std::size_t ci = 0; ci < cands.size(); ++ci) {
      EllipticCurveQ Ec = E;
      Ec.bad = cands[ci].data;
      auto an = ec_an(Ec, static_cast<u64>(nmax_all));
      LFunctionSpec spec = curve_spec(an, cands[ci].N, cands[ci].omega);
      Real r = fe_residual(spec, {Complex(Real("0.8"))}, {Real(1), Real("1.15")});
      if (best_res.sign() < 0 || r < best_res) {
        best_res = r;
        best = ci;
      }
    }
  }
  out.conductor = cands[best].N;
  out.omega = cands[best].omega;
  // full-precision evaluation
  PrecisionGuard guard(std::max<long>(caller, 38) + 6);
  EllipticCurveQ Ec = E;
  Ec.bad = cands[best].data;
  LFunctionSpec spec;
  spec.gp.f = Real(static_cast<long>(out.conductor));
  spec.gp.shifts = {0, 1};
  long nmax = afe_cutoff(spec.gp, working_digits(), Real(1));
  auto an = ec_an(Ec, static_cast<u64>(nmax));
  spec = curve_spec(an, out.conductor, out.omega);
  out.fit_residual = fe_residual(spec, {Complex(Real("0.8"))}, {Real(1)});
  Complex L2 = lfun_L(spec, Complex(Real(2)));
  // g(u) by the integral form
  Real uu(u);
  Real g1 = 2 * const_pi() *
                de_integrate(
                    [&](const Real& t) {
                      return asin(t) / (t * sqrt(Real(1) - (t / uu) * (t / uu)));
                    },
                    IntervalSpec::finite(Real(0), Real(1))) +
            const_pi() * const_pi() * acosh(uu);
  Real ratio = Real(static_cast<long>(out.conductor)) * L2.re / g1;
  PrecisionGuard back(caller);
  out.ratio = to_current_prec(ratio);
  // rational recognition by continued-fraction rounding, denominator <= 1e4
  {
    mpq_class approx;
    Real x = out.ratio;
    mpz_class p0(0), p1(1), q0(1), q1(0);
    Real cur = x;
    for (int it = 0; it < 40; ++it) {
      Real fl = floor(cur);
      mpz_class a = fl.to_mpz();
      mpz_class p2 = a * p1 + p0, q2 = a * q1 + q0;
      if (q2 > 10000) break;
      p0 = p1;
      p1 = p2;
      q0 = q1;
      q1 = q2;
      Real frac = cur - fl;
      if (abs(frac) < pow10(-(caller / 2))) break;
      cur = Real(1) / frac;
    }
    approx = mpq_class(p1) / mpq_class(q1);
    approx.canonicalize();
    Real err = abs(out.ratio - Real(approx));
    if (err < pow10(-(caller / 2))) {
      out.recognized = true;
      out.F = approx;
    }
  }
  return out;
}

MahlerDemo demo_mahler() {
  long caller = working_digits();
  PrecisionGuard guard(std::max<long>(caller, 38) + 8);
  MahlerDemo out;
  LFunctionSpec spec;
  spec.gp.f = Real(24);
  spec.gp.shifts = {0, 1};
  spec.k = Real(2);
  spec.omega = Complex(1L);
  long nmax = afe_cutoff(spec.gp, working_digits(), Real(1));
  auto coeffs = std::make_shared<std::vector<mpz_class>>(
      eta_product_coeffs({{2, 1}, {4, 1}, {6, 1}, {12, 1}}, nmax + 1));
  spec.an = [coeffs](long n) { return Complex(Real((*coeffs)[static_cast<std::size_t>(n)])); };
  Complex L3 = lfun_L(spec, Complex(Real(3)));
  Real G = sumalt([&](long k) { return Real(1) / Real((2 * k + 1) * (2 * k + 1)); }, 0);
  Real integral = de_integrate(
      [&](const Real& x) { return asin(x) * asin(Real(1) - x) / x; },
      IntervalSpec::finite(Real(0), Real(1)));
  Real pi = const_pi();
  Real rhs = pi * pi / 36 * (pi * G + integral);
  PrecisionGuard back(caller);
  out.lhs = to_current_prec(L3.re);
  out.rhs = to_current_prec(rhs);
  return out;
}

}  // namespace lfunkit
