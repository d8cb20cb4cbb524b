#include "lfunkit/numcore.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>

#include "lfunkit/detail/series.hpp"

namespace lfunkit {

// forward decl, defined in contfrac.cpp (large-x regime of incgamma)
Complex incgamma_cf(const Complex& s, const Real& x);

namespace {

std::vector<mpq_class>& bernoulli_cache() {
  static std::vector<mpq_class> cache;  // guarded by bernoulli_mutex
  return cache;
}
std::mutex bernoulli_mutex;

// decimal-string disk cache for per-precision constants, enabled by
// LFUNKIT_CACHE_DIR
std::string cache_dir() {
  const char* d = std::getenv("LFUNKIT_CACHE_DIR");
  return d ? std::string(d) : std::string();
}

bool cache_load(const std::string& key, long digits, Real& out) {
  std::string dir = cache_dir();
  if (dir.empty()) return false;
  std::ifstream in(dir + "/" + key + "_" + std::to_string(digits) + ".txt");
  std::string s;
  if (!(in >> s)) return false;
  out = Real(s);
  return true;
}

void cache_store(const std::string& key, long digits, const Real& v) {
  std::string dir = cache_dir();
  if (dir.empty()) return;
  std::ofstream out(dir + "/" + key + "_" + std::to_string(digits) + ".txt");
  out << v.str(digits + 5) << "\n";
}

}  // namespace

mpq_class bernoulli(long n) {
  std::lock_guard<std::mutex> lock(bernoulli_mutex);
  auto& cache = bernoulli_cache();
  if (cache.empty()) {
    cache.push_back(1);                  // B_0
    cache.push_back(mpq_class(-1, 2));   // B_1
  }
  // B_m = -1/(m+1) * sum_{j<m} C(m+1,j) B_j
  while (static_cast<long>(cache.size()) <= n) {
    long m = static_cast<long>(cache.size());
    if (m % 2 == 1) {
      cache.push_back(0);
      continue;
    }
    mpq_class acc(0);
    mpz_class binom(1);  // C(m+1, j)
    for (long j = 0; j < m; ++j) {
      acc += mpq_class(binom) * cache[j];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    cache.push_back(-acc / (m + 1));
  }
  return cache[n];
}

GammaPole::GammaPole(long n_)
    : std::domain_error("gamma: pole at s = -" + std::to_string(n_)), n(n_) {
  mpz_class f(1);
  for (long i = 2; i <= n_; ++i) f *= i;
  residue = mpq_class(n_ % 2 ? -1 : 1, f);
}

namespace {

bool is_nonpositive_integer(const Complex& s, long& n_out) {
  if (!s.im.is_zero()) return false;
  Real r = round_nearest(s.re);
  if (!(r == s.re)) return false;
  long n = s.re.to_long();
  if (n > 0) return false;
  n_out = -n;
  return true;
}

Complex lngamma_stirling(const Complex& w, long target_digits) {
  Real half("0.5");
  Complex lw = log(w);
  Complex acc = (w - Complex(half)) * lw - w + Complex(log(const_pi() * 2) / 2);
  Complex winv = Complex(1L) / w;
  Complex winv2 = winv * winv;
  Complex wp = winv;
  Real eps = pow10(-(target_digits + 5));
  for (long k = 1; k < 4 * target_digits; ++k) {
    Complex term = Complex(Real(bernoulli(2 * k)) / ((2 * k) * (2 * k - 1))) * wp;
    acc += term;
    if (abs(term) < eps) break;
    wp *= winv2;
  }
  return acc;
}

}  // namespace

Complex lngamma_complex(const Complex& s) {
  long n;
  if (is_nonpositive_integer(s, n)) throw GammaPole(n);
  long caller = working_digits();
  PrecisionGuard guard(caller + 10);
  Complex z = to_current_prec(s);
  long shift_to = static_cast<long>(0.7 * caller) + 8;
  long m = 0;
  if (z.re < shift_to) m = (Real(shift_to) - z.re).to_long() + 1;
  Complex w = z + Complex(Real(m));
  Complex acc = lngamma_stirling(w, caller);
  for (long j = 0; j < m; ++j) acc -= log(z + Complex(Real(j)));
  PrecisionGuard back(caller);
  return to_current_prec(acc);
}

Complex gamma_complex(const Complex& s) {
  long n;
  if (is_nonpositive_integer(s, n)) throw GammaPole(n);
  Real half("0.5");
  if (s.re < half) {
    // reflection: Gamma(s) Gamma(1-s) = pi / sin(pi s)
    long caller = working_digits();
    PrecisionGuard guard(caller + 10);
    Complex z = to_current_prec(s);
    Complex g1 = exp(lngamma_complex(Complex(Real(1)) - z));
    Complex r = Complex(const_pi()) / (sin(Complex(const_pi()) * z) * g1);
    PrecisionGuard back(caller);
    return to_current_prec(r);
  }
  return exp(lngamma_complex(s));
}

namespace {

struct ZetaAttempt {
  Complex value, deriv;
  bool converged;
};

ZetaAttempt zeta_em_attempt(const Complex& s, long N, long target_digits, bool want_deriv) {
  Complex acc(0L), dacc(0L);
  for (long n = 1; n <= N; ++n) {
    Real ln = log(Real(n));
    Complex t = exp(Complex(-s.re * ln, -s.im * ln));
    acc += t;
    if (want_deriv) dacc -= Complex(ln) * t;
  }
  Real lnN = log(Real(N));
  Complex Npow = exp(Complex(-s.re * lnN, -s.im * lnN));  // N^(-s)
  Complex sm1 = s - Complex(1L);
  Complex t1 = Complex(Real(N)) * Npow / sm1;  // N^(1-s)/(s-1)
  acc += t1 - Npow / Complex(2L);
  if (want_deriv) dacc += -Complex(lnN) * t1 - t1 / sm1 + Complex(lnN) * Npow / Complex(2L);

  // Bernoulli tail: sum_k B_2k/(2k)! (s)_(2k-1) N^(-s-2k+1)
  Complex poch(1L), dpoch(0L);
  {  // (s)_1 = s
    poch = s;
    dpoch = Complex(1L);
  }
  Complex Nfac = Complex(Real(N)) * Npow;  // N^(1-s) running power N^(-s-2k+1)
  Real Ninv2 = Real(1) / (Real(N) * Real(N));
  mpz_class fact(2);  // (2k)!
  Real eps = pow10(-(target_digits + 6));
  Real prev_mag(-1);
  for (long k = 1; k < 8 * target_digits; ++k) {
    Nfac = Nfac * Ninv2;  // now N^(1-s-2k)
    Real coef = Real(mpq_class(bernoulli(2 * k) / mpq_class(fact)));
    Complex term = Complex(coef) * poch * Nfac;
    Real mag = abs(term);
    acc += term;
    if (want_deriv) {
      // d/ds of the term: coef*(dpoch*Nfac + poch*(-ln N)*Nfac)
      dacc += Complex(coef) * (dpoch * Nfac - Complex(lnN) * poch * Nfac);
    }
    if (mag < eps * (abs(acc) + Real(1))) return {acc, dacc, true};
    if (prev_mag.sign() > 0 && mag > prev_mag) return {acc, dacc, false};
    prev_mag = mag;
    // advance pochhammer (s)_(2k-1) -> (s)_(2k+1) and (2k)! -> (2k+2)!
    Complex f1 = s + Complex(Real(2 * k - 1)), f2 = s + Complex(Real(2 * k));
    if (want_deriv) dpoch = dpoch * f1 * f2 + poch * (f1 + f2);
    poch = poch * f1 * f2;
    fact *= (2 * k + 1);
    fact *= (2 * k + 2);
  }
  return {acc, dacc, false};
}

}  // namespace

std::pair<Complex, Complex> zeta_em_with_deriv(const Complex& s) {
  if (s.im.is_zero() && s.re == Real(1)) throw std::domain_error("zeta: pole at s = 1");
  long caller = working_digits();
  PrecisionGuard guard(caller + 12);
  Complex z = to_current_prec(s);
  double ims = std::abs(z.im.to_double());
  long N = std::max<long>(16, static_cast<long>(0.4 * caller) + static_cast<long>(0.8 * ims));
  for (int attempt = 0; attempt < 6; ++attempt) {
    ZetaAttempt r = zeta_em_attempt(z, N, caller, true);
    if (r.converged) {
      PrecisionGuard back(caller);
      return {to_current_prec(r.value), to_current_prec(r.deriv)};
    }
    N *= 2;
  }
  throw std::runtime_error("zeta_em: no convergence (|Im s| too large for desk scale?)");
}

Complex zeta_em(const Complex& s) { return zeta_em_with_deriv(s).first; }

Real zeta_int(long n) {
  if (n < 2) throw std::domain_error("zeta_int: need n >= 2");
  static thread_local std::map<std::pair<long, long>, Real> cache;
  long d = working_digits();
  auto it = cache.find({d, n});
  if (it != cache.end()) return it->second;
  Real v;
  if (!cache_load("zeta" + std::to_string(n), d, v)) {
    v = zeta_em(Complex(Real(n))).re;
    cache_store("zeta" + std::to_string(n), d, v);
  }
  cache.emplace(std::make_pair(d, n), v);
  return v;
}

Real euler_gamma() {
  static thread_local std::map<long, Real> cache;
  long d = working_digits();
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;
  Real v;
  if (!cache_load("eulergamma", d, v)) {
    PrecisionGuard guard(d + 10);
    // gamma = H_N - log N - 1/(2N) + sum_k B_2k/(2k N^2k), N ~ 0.4*digits
    long N = static_cast<long>(0.4 * (d + 10)) + 8;
    Real acc(0);
    for (long n = 1; n <= N; ++n) acc += Real(1) / Real(n);
    acc -= log(Real(N));
    acc -= Real(1) / Real(2 * N);
    Real Npow(1);
    Real Ninv2 = Real(1) / (Real(N) * Real(N));
    Real eps = pow10(-(d + 8));
    for (long k = 1; k < 8 * d; ++k) {
      Npow *= Ninv2;
      Real term = Real(bernoulli(2 * k)) / (2 * k) * Npow;
      acc += term;
      if (abs(term) < eps) break;
    }
    PrecisionGuard back(d);
    v = to_current_prec(acc);
    cache_store("eulergamma", d, v);
  }
  cache.emplace(d, v);
  return v;
}

Complex incgamma_series(const Complex& s, const Real& x) {
  long caller = working_digits();
  double xd = x.to_double();
  long guard_digits = static_cast<long>(xd * 0.9) + 14;
  PrecisionGuard guard(caller + guard_digits);
  Complex z = to_current_prec(s);
  Real xx = to_current_prec(x);
  Real lx = log(xx);
  Real eps = pow10(-(caller + 8));
  // reference magnitude of the answer, x^(Re s - 1) e^(-x)
  Real ref = exp((z.re - 1) * lx - xx);

  Complex acc;
  long m;
  if (is_nonpositive_integer(z, m)) {
    // Gamma(-m, x) = (-1)^m (psi(m+1) - log x)/m! - sum_{n != m} (-1)^n x^(n-m)/(n!(n-m))
    Real Hm(0);
    mpz_class mfact(1);
    for (long i = 1; i <= m; ++i) {
      Hm += Real(1) / Real(i);
      mfact *= i;
    }
    Real psi = Hm - euler_gamma();
    Real lead = (psi - lx) / Real(mfact);
    if (m % 2) lead = -lead;
    acc = Complex(lead);
    Real xm = exp(Real(-m) * lx);  // x^(-m)
    Real u(1);                     // (-x)^n / n!
    for (long n = 0; n < 1000000; ++n) {
      if (n != m) {
        Real term = u * xm / Real(n - m);
        acc -= Complex(term);
        if (n > m && n > xd && abs(term) < eps * ref) break;
      }
      u = u * (-xx) / Real(n + 1);
    }
  } else {
    acc = gamma_complex(z);
    Complex xs = exp(z * Complex(lx));  // x^s
    Real u(1);                          // (-x)^n / n!
    for (long n = 0; n < 1000000; ++n) {
      Complex term = xs * Complex(u) / (z + Complex(Real(n)));
      acc -= term;
      if (Real(n) > xx && abs(term) < eps * ref) break;
      u = u * (-xx) / Real(n + 1);
    }
  }
  PrecisionGuard back(caller);
  return to_current_prec(acc);
}

Complex incgamma_asymptotic(const Complex& s, const Real& x) {
  long caller = working_digits();
  PrecisionGuard guard(caller + 8);
  Complex z = to_current_prec(s);
  Real xx = to_current_prec(x);
  Real lx = log(xx);
  // e^(-x) x^(s-1) (1 + (s-1)/x + (s-1)(s-2)/x^2 + ...), stop at smallest term
  Complex lead = exp((z - Complex(1L)) * Complex(lx) - Complex(xx));
  Complex acc(1L), term(1L);
  Real prev(-1);
  Real eps = pow10(-(caller + 6));
  for (long n = 1; n < 100000; ++n) {
    term = term * (z - Complex(Real(n))) / Complex(xx);
    Real mag = abs(term);
    if (prev.sign() > 0 && mag > prev) break;  // asymptotic wall
    acc += term;
    if (mag < eps) break;
    prev = mag;
  }
  PrecisionGuard back(caller);
  return to_current_prec(lead * acc);
}

Complex incgamma(const Complex& s, const Real& x) {
  if (x.sign() < 0) throw std::domain_error("incgamma: x must be >= 0");
  if (x.is_zero()) return gamma_complex(s);
  double xd = x.to_double();
  double sd = abs(s).to_double();
  if (xd >= std::max(50.0, 1.3 * sd + 10.0)) return incgamma_cf(s, x);
  return incgamma_series(s, x);
}

Real bessel_k(int order, const Real& x) {
  if (order != 0 && order != 1) throw std::domain_error("bessel_k: order must be 0 or 1");
  if (x.sign() <= 0) throw std::domain_error("bessel_k: x must be > 0");
  long caller = working_digits();
  double xd = x.to_double();
  // asymptotic min-term is ~e^(-2x) relative: usable once 2x exceeds the target
  if (2 * xd > 2.3026 * (caller + 8)) {
    PrecisionGuard guard(caller + 8);
    Real xx = to_current_prec(x);
    Real lead = sqrt(const_pi() / (2 * xx)) * exp(-xx);
    Real acc(1), term(1), prev(-1);
    Real eps = pow10(-(caller + 6));
    long nu4 = order == 0 ? 0 : 4;
    for (long k = 1; k < 100000; ++k) {
      term = term * Real(nu4 - (2 * k - 1) * (2 * k - 1)) / Real(8 * k) / xx;
      Real mag = abs(term);
      if (prev.sign() > 0 && mag > prev) break;
      acc += term;
      if (mag < eps) break;
      prev = mag;
    }
    PrecisionGuard back(caller);
    return to_current_prec(lead * acc);
  }
  // power series, with guard digits against the e^x-scale cancellation
  long guard_digits = static_cast<long>(0.9 * xd) + 12;
  PrecisionGuard guard(caller + guard_digits);
  Real xx = to_current_prec(x);
  Real lh = log(xx / 2);
  Real g = euler_gamma();
  Real q = xx * xx / 4;  // (x/2)^2
  Real eps = pow10(-(caller + 8)) * exp(-xx);  // answer scale is e^(-x)
  Real acc(0);
  if (order == 0) {
    // K_0 = sum ((x/2)^(2n)/n!^2)(H_n - gamma - log(x/2))
    Real u(1), Hn(0);
    for (long n = 0; n < 1000000; ++n) {
      Real term = u * (Hn - g - lh);
      acc += term;
      if (n > xd && abs(term) < eps) break;
      u = u * q / Real((n + 1) * (n + 1));
      Hn += Real(1) / Real(n + 1);
    }
  } else {
    // K_1 = -K_0' = (1/x) sum (x/2)^(2n)/n!^2 - sum_{n>=1} n (x/2)^(2n-1) (H_n - gamma - log(x/2))/n!^2
    Real u(1), Hn(0);
    Real s1(0), s2(0);
    for (long n = 0; n < 1000000; ++n) {
      s1 += u;
      if (n >= 1) {
        Real term = Real(n) * u * (Hn - g - lh) / (xx / 2);
        s2 += term;
        if (Real(n) > xx && abs(term) < eps && abs(u) < eps) break;
      }
      u = u * q / Real((n + 1) * (n + 1));
      Hn += Real(1) / Real(n + 1);
    }
    acc = s1 / xx - s2;
  }
  PrecisionGuard back(caller);
  return to_current_prec(acc);
}

std::vector<Real> gamma_taylor_half_integer(long num, int r) {
  if (num <= 0 && num % 2 == 0) throw std::domain_error("gamma_taylor: pole");
  long caller = working_digits();
  PrecisionGuard guard(caller + 10);
  std::size_t n = static_cast<std::size_t>(r);
  detail::Series<Real> lg(n);
  bool half = (num % 2 != 0);
  Real g = euler_gamma();
  if (half) {
    // log Gamma(1/2 + eps) = log sqrt(pi) - (gamma + 2 log 2) eps + sum_(k>=2) (-1)^k (2^k - 1) zeta(k)/k eps^k
    if (n > 1) lg[1] = -(g + 2 * const_log2());
    for (std::size_t k = 2; k < n; ++k) {
      Real zk = zeta_int(static_cast<long>(k));
      Real c = (pow(Real(2), static_cast<long>(k)) - 1) * zk / Real(static_cast<long>(k));
      lg[k] = (k % 2 == 0) ? c : -c;
    }
  } else {
    // log Gamma(1 + eps) = -gamma eps + sum_(k>=2) (-1)^k zeta(k)/k eps^k
    if (n > 1) lg[1] = -g;
    for (std::size_t k = 2; k < n; ++k) {
      Real c = zeta_int(static_cast<long>(k)) / Real(static_cast<long>(k));
      lg[k] = (k % 2 == 0) ? c : -c;
    }
  }
  Real exp0 = half ? sqrt(const_pi()) : Real(1);
  detail::Series<Real> s = detail::exp_series(lg, n, exp0);
  // shift from the base point (1 or 1/2) to num/2
  if (half) {
    long m = (num - 1) / 2;  // target = 1/2 + m
    for (long j = 0; j < m; ++j) detail::mul_linear(s, Real(mpq_class(2 * j + 1, 2)));
    for (long j = m; j < 0; ++j) detail::div_linear(s, Real(mpq_class(2 * j + 1, 2)));
  } else {
    long m = num / 2;  // target integer, >= 1
    for (long j = 1; j < m; ++j) detail::mul_linear(s, Real(j));
  }
  PrecisionGuard back(caller);
  std::vector<Real> out;
  out.reserve(n);
  for (auto& c : s.c) out.push_back(to_current_prec(c));
  return out;
}

}  // namespace lfunkit
