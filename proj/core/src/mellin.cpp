#include "lfunkit/mellin.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>

#include "lfunkit/arith.hpp"
#include "lfunkit/detail/series.hpp"
#include "lfunkit/numcore.hpp"
#include "lfunkit/quad.hpp"

namespace lfunkit {

Complex gamma_product_value(const GammaProduct& gp, const Complex& s) {
  Complex acc = exp(Complex(s.re * log(gp.f) / 2, s.im * log(gp.f) / 2));
  Real lpi = log(const_pi());
  for (long b : gp.shifts) {
    Complex h = (s + Complex(Real(b))) / Complex(Real(2));
    acc *= exp(Complex(-h.re * lpi, -h.im * lpi)) * gamma_complex(h);
  }
  return acc;
}

namespace {

// series in eps of the regularized product eps^r gamma(s0 + eps), length len
std::vector<Real> pole_series(const GammaProduct& gp, long s0, int r, std::size_t len) {
  detail::Series<Real> G(len);
  Real lpi = log(const_pi());
  Real lf = log(gp.f);
  {
    // f^((s0+eps)/2) prod_j pi^(-(s0+eps+b_j)/2)
    Real c0 = Real(s0) * lf / 2;
    Real c1 = lf / 2;
    for (long b : gp.shifts) {
      c0 -= Real(s0 + b) * lpi / 2;
      c1 -= lpi / 2;
    }
    detail::Series<Real> lin(len);
    if (len > 1) lin[1] = c1;
    G = detail::exp_series(lin, len, exp(c0));
  }
  int seen_poles = 0;
  for (long b : gp.shifts) {
    long num = s0 + b;  // Gamma(num/2 + eps/2)
    detail::Series<Real> t(len);
    if (num <= 0 && num % 2 == 0) {
      // eps * Gamma(-m + eps/2) = 2 Gamma(1 + eps/2) / prod_(i=1..m)(eps/2 - i)
      long m = -num / 2;
      std::vector<Real> g1 = gamma_taylor_half_integer(2, static_cast<int>(len));
      for (std::size_t k = 0; k < len; ++k) t[k] = g1[k] / pow(Real(2), static_cast<long>(k));
      for (long i = 1; i <= m; ++i) {
        detail::Series<Real> lin(len);
        lin[0] = Real(-i);
        if (len > 1) lin[1] = Real(mpq_class(1, 2));
        t = detail::div(t, lin, len);
      }
      for (auto& c : t.c) c *= 2;
      ++seen_poles;
    } else {
      std::vector<Real> gs = gamma_taylor_half_integer(num, static_cast<int>(len));
      for (std::size_t k = 0; k < len; ++k) t[k] = gs[k] / pow(Real(2), static_cast<long>(k));
    }
    G = detail::mul(G, t, len);
  }
  if (seen_poles != r) throw std::logic_error("pole_series: multiplicity mismatch");
  return G.c;
}

}  // namespace

InverseMellin::InverseMellin(GammaProduct gp) : gp_(std::move(gp)) {
  int d = gp_.degree();
  if (d < 1) throw std::invalid_argument("InverseMellin: empty gamma product");
  C_ = pow(Real(2), Real(mpq_class(d + 1, 2))) / sqrt(Real(d));
  B_ = Real(mpq_class(1 - d + gp_.shift_sum(), static_cast<long>(d)));
  long digits = working_digits();
  asym_ = mellin_cf_build(gp_, std::max<long>(24, digits + digits / 2));
  // crossover where the series would need ~1.2*digits guard digits:
  // 2 pi d u^(2/d) = 1.2 * digits * ln 10
  Real u2d = Real(static_cast<long>(digits)) * Real("2.7631") / (2 * const_pi() * d);
  Real u = pow(u2d, Real(mpq_class(static_cast<long>(d), 2)));
  tstar_ = max(u * sqrt(gp_.f), Real("0.5"));
}

const std::vector<InverseMellin::Pole>& InverseMellin::poles(std::size_t count, int extra) const {
  long digits = working_digits();
  if (built_digits_ != digits || built_extra_ < extra) {
    poles_.clear();
    built_digits_ = digits;
    built_extra_ = std::max(built_extra_, extra);
  }
  if (poles_.size() >= count) return poles_;
  std::set<long> locs;
  for (long b : gp_.shifts)
    for (std::size_t n = 0; n < 2 * count + 8; ++n)
      locs.insert(-b - 2 * static_cast<long>(n));
  std::vector<long> ordered(locs.rbegin(), locs.rend());  // descending s0
  for (std::size_t i = poles_.size(); i < count && i < ordered.size(); ++i) {
    long s0 = ordered[i];
    int r = 0;
    for (long b : gp_.shifts)
      if (s0 + b <= 0 && (s0 + b) % 2 == 0) ++r;
    Pole P;
    P.s0 = s0;
    P.order = r;
    P.laurent = pole_series(gp_, s0, r, static_cast<std::size_t>(r + built_extra_));
    poles_.push_back(std::move(P));
  }
  return poles_;
}

Real InverseMellin::series(const Real& t) const {
  long caller = working_digits();
  int d = gp_.degree();
  double u2d = std::pow(t.to_double() / std::sqrt(gp_.f.to_double()), 2.0 / d);
  long guard = static_cast<long>(2 * 3.1415926 * d * u2d / 2.302585) + 16;
  PrecisionGuard g(caller + guard);
  Real lt = log(t);
  // truncate relative to the answer's asymptotic magnitude, not the peak
  // term (they differ by exp(2 pi d u^(2/d)))
  Real lead = C_ * pow(t / sqrt(gp_.f), B_) * exp(Real(-3.1415926 * d * u2d)) + pow10(-(4 * caller));
  Real eps = pow10(-(caller + 8)) * lead;
  Real acc(0);
  std::size_t i = 0;
  int tiny_run = 0;
  while (tiny_run < 4 && i < 100000) {
    const auto& ps = poles(i + 8);
    if (i >= ps.size()) break;
    const Pole& P = ps[i];
    Real res(0);
    Real powlog(1);
    mpz_class fact(1);
    for (int k = P.order - 1; k >= 0; --k) {
      res += P.laurent[static_cast<std::size_t>(k)] * powlog / Real(fact);
      long j = P.order - 1 - k + 1;
      powlog *= -lt;
      fact *= j;
    }
    res *= exp(Real(-P.s0) * lt);
    acc += res;
    if (abs(res) < eps)
      ++tiny_run;
    else
      tiny_run = 0;
    ++i;
  }
  PrecisionGuard back(caller);
  return to_current_prec(acc);
}

Real InverseMellin::asymptotic(const Real& t) const {
  long caller = working_digits();
  PrecisionGuard g(caller + 10);
  int d = gp_.degree();
  Real u = t / sqrt(gp_.f);
  Real u2d = pow(u, Real(mpq_class(2, static_cast<long>(d))));
  Real w = Real(1) / (2 * const_pi() * u2d);
  Complex psi = eval_euler(asym_.cf, Complex(w));
  Real val = C_ * pow(u, B_) * exp(-const_pi() * d * u2d) * psi.re;
  PrecisionGuard back(caller);
  return to_current_prec(val);
}

Real InverseMellin::eval(const Real& t) const {
  if (t < tstar_) return series(t);
  return asymptotic(t);
}

Real w_series(const GammaProduct& gp, const Real& t) { return InverseMellin(gp).series(t); }

Real w_eval(const GammaProduct& gp, const Real& t) { return InverseMellin(gp).eval(t); }

// ----------------------------------------------------- incomplete products

IncGammaProduct::IncGammaProduct(GammaProduct gp, Complex s)
    : gp_(std::move(gp)), s_(std::move(s)), im_(gp_) {
  long digits = working_digits();
  int d = gp_.degree();
  // is s on a pole of gamma? (real integer with a matching even shift)
  if (s_.im.is_zero() && round_nearest(s_.re) == s_.re) {
    long si = s_.re.to_long();
    for (long b : gp_.shifts)
      if (si + b <= 0 && (si + b) % 2 == 0) {
        s_on_pole_ = true;
        pole_s0_ = si;
        break;
      }
  }
  if (!s_on_pole_) gamma_s_ = gamma_product_value(gp_, s_);
  Real B = Real(mpq_class(1 - d + gp_.shift_sum(), static_cast<long>(d)));
  alpha_ = Complex(Real(d)) * (s_ + Complex(B)) / Complex(Real(2));
  // asymptotic series of the incomplete product:
  // gamma(s,x) = C (d/2)(pi d)^(-alpha) f^(s/2) y^(alpha-1) e^(-y) G(1/y),
  // g_m = sum_(i+j=m) K'_i (d/2)^i prod_(l=1..j)(alpha - i - l)
  long M = std::max<long>(24, digits + digits / 2);
  MellinAsymptotic base = mellin_cf_build(gp_, M + 2);
  std::vector<Complex> gcoef(static_cast<std::size_t>(M + 1), Complex(0L));
  {
    PrecisionGuard guard(digits + 12);
    Real dh = Real(static_cast<long>(d)) / 2;
    for (long m = 0; m <= M; ++m) {
      Complex acc(0L);
      for (long i = 0; i <= m; ++i) {
        long j = m - i;
        Complex prod(1L);
        for (long l = 1; l <= j; ++l) prod *= alpha_ - Complex(Real(i + l));
        acc += Complex(Real(base.psi[static_cast<std::size_t>(i)]) * pow(dh, i)) * prod;
      }
      gcoef[static_cast<std::size_t>(m)] = acc;
    }
  }
  cf_ = cf_of_series([&](long n) { return gcoef[static_cast<std::size_t>(n)]; }, M - 1);
  ystar_ = max(Real(25), Real("1.382") * Real(digits));
}

Complex IncGammaProduct::small_x(const Real& x) const {
  long caller = working_digits();
  int d = gp_.degree();
  double u2d = std::pow(x.to_double() / std::sqrt(gp_.f.to_double()), 2.0 / d);
  long guard = static_cast<long>(2 * 3.1415926 * d * u2d / 2.302585) + 16;
  double xd = x.to_double();
  if (xd < 1)
    guard += static_cast<long>((std::abs(s_.re.to_double()) + 2) * -std::log10(xd)) + 4;
  PrecisionGuard g(caller + guard);
  Real lx = log(x);
  // truncation scale: the larger of gamma(s) and the incomplete product's
  // own asymptotic magnitude
  Real scale = pow10(-(3 * caller));
  if (!s_on_pole_) scale = scale + abs(gamma_s_);
  {
    Real y = const_pi() * d * pow(x / sqrt(gp_.f), Real(mpq_class(2, static_cast<long>(d))));
    Real mag = exp(s_.re * lx - y) * pow(y, alpha_.re - 1);
    scale = max(scale, mag);
  }
  Real eps = pow10(-(caller + 8)) * scale;
  // contour shifted left across all poles:
  // gamma(s,x) = gamma(s) + x^s sum_poles Res_(z=s0)(x^(-z) gamma(z)/(z-s)),
  // the z = s residue merging into its pole when s sits on one
  Complex acc = s_on_pole_ ? Complex(0L) : to_current_prec(gamma_s_);
  std::size_t i = 0;
  int tiny_run = 0;
  while (tiny_run < 4 && i < 100000) {
    const auto& ps = im_.poles(i + 8, 2);
    if (i >= ps.size()) break;
    const auto& P = ps[i];
    Complex contrib(0L);
    if (s_on_pole_ && P.s0 == pole_s0_) {
      // merged pole: residue of G(eps) e^(-eps log x) / eps^(r+1)
      // = [eps^r] G(eps) e^(-eps log x)
      Real powlog(1);
      mpz_class fact(1);
      Real resv(0);
      for (int k = P.order; k >= 0; --k) {
        resv += P.laurent[static_cast<std::size_t>(k)] * powlog / Real(fact);
        long j = P.order - k + 1;
        powlog *= -lx;
        fact *= j;
      }
      contrib = Complex(resv);  // times x^(s - s0) = 1 here
    } else {
      Complex alpha = s_ - Complex(Real(P.s0));
      // Res = -[eps^(r-1)] G(eps) e^(-eps log x) / (alpha - eps)... expanded:
      // contribution to gamma(s,x) is -x^alpha sum over the Laurent data of
      // the termwise integrals int_0^x t^(alpha-1) log^j t dt
      Complex xalpha = exp(alpha * Complex(lx));
      for (int k = P.order - 1; k >= 0; --k) {
        int j = P.order - 1 - k;
        Complex cj = Complex(P.laurent[static_cast<std::size_t>(k)]);
        if (j % 2) cj = -cj;
        cj = cj / Complex(Real(factorial_mpz(j)));
        Complex integral(0L);
        Real lpow(1);
        mpz_class ifact(1);
        for (int ii = 0; ii <= j; ++ii) {
          Complex term = Complex(lpow / Real(ifact)) / pow(alpha, static_cast<long>(j - ii + 1));
          if ((j - ii) % 2) term = -term;
          integral += term;
          lpow *= lx;
          ifact *= (ii + 1);
        }
        integral *= Complex(Real(factorial_mpz(j)));
        contrib -= cj * integral;
      }
      contrib *= xalpha;
    }
    acc += contrib;
    if (std::getenv("LFUNKIT_DEBUG_SMALLX"))
      fprintf(stderr, "  i=%zu s0=%ld r=%d contrib=%s\n", i, P.s0, P.order,
              contrib.str(25).c_str());
    if (abs(contrib) < eps)
      ++tiny_run;
    else
      tiny_run = 0;
    ++i;
  }
  if (std::getenv("LFUNKIT_DEBUG_SMALLX"))
    fprintf(stderr, "small_x: stopped at i=%zu eps=%s last=%s\n", i, eps.str(4).c_str(),
            abs(acc).str(4).c_str());
  PrecisionGuard back(caller);
  return to_current_prec(acc);
}

Complex IncGammaProduct::large_x(const Real& x) const {
  long caller = working_digits();
  PrecisionGuard g(caller + 10);
  int d = gp_.degree();
  Real u2d = pow(x / sqrt(gp_.f), Real(mpq_class(2, static_cast<long>(d))));
  Real y = const_pi() * d * u2d;
  Complex G = eval_euler(cf_, Complex(Real(1) / y));
  Real Cc = pow(Real(2), Real(mpq_class(d + 1, 2))) / sqrt(Real(d));
  Complex lead = Complex(Cc * Real(static_cast<long>(d)) / 2);
  lead *= exp(-alpha_ * Complex(log(const_pi() * d)));
  lead *= exp(s_ * Complex(log(gp_.f) / 2));
  lead *= exp((alpha_ - Complex(1L)) * Complex(log(y)) - Complex(y));
  PrecisionGuard back(caller);
  return to_current_prec(lead * G);
}

Complex IncGammaProduct::operator()(const Real& x) const {
  int d = gp_.degree();
  Real u2d = pow(x / sqrt(gp_.f), Real(mpq_class(2, static_cast<long>(d))));
  Real y = const_pi() * d * u2d;
  if (y < ystar_) return small_x(x);
  return large_x(x);
}

Complex incgamma_product(const GammaProduct& gp, const Complex& s, const Real& x) {
  return IncGammaProduct(gp, s)(x);
}

ContourResult contour_verify(const GammaProduct& gp, const Complex& s, const Real& x,
                             const Real& sigma, const Real& T) {
  long caller = working_digits();
  PrecisionGuard g(caller + 10);
  auto integrand = [&](const Real& tau, bool imag_part) {
    Complex z(sigma, tau);
    Complex v = exp(Complex(-sigma * log(x), -tau * log(x))) * gamma_product_value(gp, z) /
                (z - s);
    return imag_part ? v.im : v.re;
  };
  Real re = de_integrate([&](const Real& tau) { return integrand(tau, false); },
                         IntervalSpec::finite(-T, T));
  Real im = de_integrate([&](const Real& tau) { return integrand(tau, true); },
                         IntervalSpec::finite(-T, T));
  Complex xs = exp(s * Complex(log(x)));
  Complex val = xs * Complex(re, im) / Complex(2 * const_pi());
  // tail bound from |Gamma(sigma + iT)| ~ |T|^(sigma-1/2) e^(-pi |T|/2):
  // gamma decays like exp(-d pi tau / 4), so each discarded tail is at most
  // ~ |integrand(T)| * 4/(d pi)
  int d = gp.degree();
  Real mag = abs(gamma_product_value(gp, Complex(sigma, T))) * pow(x, -sigma) /
             abs(Complex(sigma, T) - s);
  Real bound = abs(xs) * mag * Real(8) / (Real(d) * const_pi()) / (2 * const_pi());
  ContourResult out;
  PrecisionGuard back(caller);
  out.value = to_current_prec(val);
  out.tail_bound = to_current_prec(bound);
  return out;
}

}  // namespace lfunkit
