#include "lfunkit/contfrac.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <stdexcept>

#include "lfunkit/arith.hpp"
#include "lfunkit/numcore.hpp"

namespace lfunkit {

namespace {

struct QdUnstable : std::runtime_error {
  QdUnstable() : std::runtime_error("qd: division by a vanishing rhombus entry") {}
};

// one QD pass at the current working precision; c(n) for n >= 1.
// A vanishing e-row means the series is rational and the fraction
// terminates there; isolated vanishing entries signal instability.
std::vector<Complex> qd_pass(const std::function<Complex(long)>& c, long M) {
  Real tiny = pow10(-(working_digits() / 2));
  Real term_tiny = pow10(-(working_digits() - 8));
  std::vector<Complex> cs(M + 2);
  for (long n = 1; n <= M + 1; ++n) cs[n] = c(n);
  auto safe_div = [&](const Complex& a, const Complex& b) {
    if (abs(b) < tiny * (abs(a) + Real(1))) throw QdUnstable();
    return a / b;
  };
  std::vector<Complex> b;
  b.reserve(M);
  if (cs[1].is_zero()) throw QdUnstable();
  b.push_back(cs[1]);
  // rolling rows: q(j,k), e(j,k)
  std::vector<Complex> q(M + 1), e(M + 1), q2(M + 1), e2(M + 1);
  for (long k = 0; k + 2 <= M + 1; ++k) q[k] = safe_div(cs[k + 2], cs[k + 1]);
  long qlen = M;  // q(1,k) defined for k < qlen
  Real qscale(0);
  for (long k = 0; k < qlen; ++k) qscale = max(qscale, abs(q[k]));
  auto row_vanishes = [&](const std::vector<Complex>& row, long len) {
    for (long k = 0; k < len; ++k)
      if (abs(row[k]) > term_tiny * (qscale + Real(1))) return false;
    return true;
  };
  for (long k = 0; k + 1 < qlen; ++k) e[k] = q[k + 1] - q[k];  // e(1,k), e(0,*) = 0
  long elen = qlen - 1;
  while (static_cast<long>(b.size()) < M) {
    b.push_back(-q[0]);  // b(2j-1) = -q(j,0)
    if (static_cast<long>(b.size()) >= M) break;
    if (row_vanishes(e, elen)) break;  // terminating fraction, tail is zero
    b.push_back(-e[0]);  // b(2j) = -e(j,0)
    if (static_cast<long>(b.size()) >= M) break;
    // q(j+1,k) = q(j,k+1) e(j,k+1) / e(j,k)
    long q2len = elen - 1;
    if (q2len <= 0) break;
    for (long k = 0; k < q2len; ++k) q2[k] = safe_div(q[k + 1] * e[k + 1], e[k]);
    // e(j+1,k) = e(j,k+1) + q(j+1,k+1) - q(j+1,k)
    long e2len = q2len - 1;
    for (long k = 0; k < e2len; ++k) e2[k] = e[k + 1] + q2[k + 1] - q2[k];
    std::swap(q, q2);
    std::swap(e, e2);
    qlen = q2len;
    elen = e2len;
  }
  b.resize(static_cast<std::size_t>(M), Complex(0L));  // pad a terminated tail
  return b;
}

}  // namespace

ContFracB qd(const std::function<Complex(long)>& c, long M) {
  long caller = working_digits();
  {
    // identically-zero series: S = 1, all b vanish
    Real maxc(0);
    for (long n = 1; n <= M; ++n) maxc = max(maxc, abs(c(n)));
    if (maxc < pow10(-(2 * caller))) {
      ContFracB cf;
      cf.b.assign(static_cast<std::size_t>(M), Complex(0L));
      return cf;
    }
  }
  // instability -> double the working accuracy and re-query the series
  for (int attempt = 0; attempt < 3; ++attempt) {
    PrecisionGuard guard(caller * (1L << attempt) + 10);
    try {
      ContFracB cf;
      cf.b = qd_pass(c, M);
      PrecisionGuard back(caller);
      for (auto& v : cf.b) v = to_current_prec(v);
      return cf;
    } catch (const QdUnstable&) {
    }
  }
  // remedy: multiply the power series by (1 - z/pi) and compensate at
  // evaluation time
  {
    PrecisionGuard guard(caller * 2 + 10);
    Real invpi = Real(1) / const_pi();
    auto cmod = [&](long n) {
      Complex v = c(n);
      if (n == 1) return v - Complex(invpi);
      return v - c(n - 1) * Complex(invpi);
    };
    try {
      ContFracB cf;
      cf.b = qd_pass(cmod, M);
      cf.pi_compensated = true;
      PrecisionGuard back(caller);
      for (auto& v : cf.b) v = to_current_prec(v);
      return cf;
    } catch (const QdUnstable&) {
      throw std::runtime_error("qd: unstable even after the (1 - z/pi) remedy");
    }
  }
}

ContFracB qd(const std::vector<Complex>& c) {
  return qd([&](long n) { return c[static_cast<std::size_t>(n - 1)]; },
            static_cast<long>(c.size()) - 1);
}

EulerCF to_euler(const ContFracB& cf) {
  EulerCF out;
  out.pi_compensated = cf.pi_compensated;
  std::size_t nb = cf.b.size();
  if (nb == 0) return out;
  std::size_t nA = nb / 2;  // A(1..nA)
  out.A.assign(nA + 1, Complex(0L));
  out.B.assign(nA + 1, Complex(0L));
  out.B[0] = cf.b[0];
  if (nA >= 1) out.A[1] = nb > 1 ? cf.b[1] : Complex(0L);
  for (std::size_t n = 2; n <= nA; ++n) {
    out.A[n] = cf.b[2 * n - 2] + cf.b[2 * n - 1];
    out.B[n - 1] = -cf.b[2 * n - 2] * cf.b[2 * n - 3];
  }
  if (nA >= 1 && 2 * nA < nb) out.B[nA] = -cf.b[2 * nA] * cf.b[2 * nA - 1];
  return out;
}

namespace {

Complex pi_compensation(const Complex& z) {
  return Complex(Real(1)) - z / Complex(const_pi());
}

}  // namespace

Complex eval_cf(const ContFracB& cf, const Complex& z, long depth, Real* gauge) {
  long n = depth < 0 ? static_cast<long>(cf.b.size()) : std::min<long>(depth, cf.b.size());
  Real tiny = pow10(-(working_digits() * 2));
  auto eval_at = [&](long d) {
    if (d <= 0) return Complex(1L);
    Complex t(1L);
    for (long i = d - 1; i >= 1; --i) {
      t = Complex(1L) + cf.b[i] * z / t;
      if (abs(t) < tiny) t += Complex(tiny);  // perturb a vanishing denominator
    }
    return Complex(1L) + cf.b[0] * z / t;
  };
  Complex v = eval_at(n);
  if (gauge) {
    Complex v2 = eval_at(n >= 2 ? n - 2 : 0);
    *gauge = abs(v - v2);
  }
  if (cf.pi_compensated) v = v / pi_compensation(z);
  return v;
}

Complex eval_euler(const EulerCF& cf, const Complex& z, long depth) {
  long nA = static_cast<long>(cf.A.size()) - 1;
  long n = depth < 0 ? nA : std::min<long>(depth, nA);
  if (cf.B.empty()) return Complex(1L);
  if (n <= 0) {
    Complex v = Complex(1L) + cf.B[0] * z;
    if (cf.pi_compensated) v = v / pi_compensation(z);
    return v;
  }
  Complex Z = Complex(1L) / z;
  Real tiny = pow10(-(working_digits() * 2));
  Complex t = Z + cf.A[n];
  for (long i = n - 1; i >= 1; --i) {
    if (abs(t) < tiny) t += Complex(tiny);
    t = Z + cf.A[i] + cf.B[i] / t;
  }
  Complex v = Complex(1L) + cf.B[0] / t;
  if (cf.pi_compensated) v = v / pi_compensation(z);
  return v;
}

Complex incgamma_cf(const Complex& s, const Real& x) {
  long caller = working_digits();
  PrecisionGuard guard(caller + 10);
  Complex z = to_current_prec(s);
  Real xx = to_current_prec(x);
  Real eps = pow10(-(caller + 4));
  auto eval_depth = [&](long d) {
    Complex t = Complex(xx + Real(2 * d + 1)) - z;
    for (long j = d; j >= 1; --j)
      t = Complex(xx + Real(2 * j - 1)) - z - Complex(Real(j)) * (Complex(Real(j)) - z) / t;
    return t;
  };
  Complex lead = exp(z * Complex(log(xx)) - Complex(xx));
  long d = 16;
  Complex prev = lead / eval_depth(d);
  for (int iter = 0; iter < 12; ++iter) {
    d *= 2;
    Complex cur = lead / eval_depth(d);
    if (abs(cur - prev) <= eps * (abs(cur) + pow10(-(2 * caller)))) {
      PrecisionGuard back(caller);
      return to_current_prec(cur);
    }
    prev = cur;
  }
  throw std::runtime_error("incgamma_cf: no convergence (x below the useful threshold?)");
}

// -------------------------------------------------------------- Gauss rules

namespace {

std::string rule_cache_dir() {
  const char* d = std::getenv("LFUNKIT_CACHE_DIR");
  return d ? std::string(d) : std::string();
}

bool rule_load(const std::string& id, long n, long digits, GaussRule& out) {
  if (id.empty()) return false;
  std::string dir = rule_cache_dir();
  if (dir.empty()) return false;
  std::ifstream in(dir + "/rule_" + id + "_" + std::to_string(n) + "_" + std::to_string(digits) +
                   ".txt");
  if (!in) return false;
  out.n = n;
  out.measure_id = id;
  out.nodes.clear();
  out.weights.clear();
  std::string sx, sw;
  for (long i = 0; i < n; ++i) {
    if (!(in >> sx >> sw)) return false;
    out.nodes.push_back(Real(sx));
    out.weights.push_back(Real(sw));
  }
  return true;
}

void rule_store(const GaussRule& rule, long digits) {
  if (rule.measure_id.empty()) return;
  std::string dir = rule_cache_dir();
  if (dir.empty()) return;
  std::ofstream out(dir + "/rule_" + rule.measure_id + "_" + std::to_string(rule.n) + "_" +
                    std::to_string(digits) + ".txt");
  for (long i = 0; i < rule.n; ++i)
    out << rule.nodes[i].str(digits + 5) << " " << rule.weights[i].str(digits + 5) << "\n";
}

Real poly_eval(const std::vector<Real>& p, const Real& x) {
  Real acc(0);
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

}  // namespace

GaussRule gauss_from_moments(const std::function<Real(long)>& moment, long n,
                             const std::string& cache_id) {
  long caller = working_digits();
  GaussRule rule;
  if (rule_load(cache_id, n, caller, rule)) return rule;
  rule.n = n;
  rule.measure_id = cache_id;

  long P = caller + 3 * n + 30;  // QD and root isolation need headroom
  PrecisionGuard guard(P);
  Real M0 = moment(0);
  // c-form CF of Phi(z) = sum M_k z^(k+1): Phi = M0 z/(1 + b'_0 z/(1+...))
  // where b' comes from the QD of the reciprocal series of S = Phi/(M0 z)
  std::vector<Real> S(2 * n + 1);
  S[0] = Real(1);
  for (long k = 1; k <= 2 * n; ++k) S[k] = moment(k) / M0;
  std::vector<Real> Rinv(2 * n + 1);  // series of 1/S
  for (long i = 0; i <= 2 * n; ++i) {
    Real acc = i == 0 ? Real(1) : Real(0);
    for (long j = 1; j <= i; ++j) acc -= S[j] * Rinv[i - j];
    Rinv[i] = acc;
  }
  ContFracB cf = qd([&](long m) { return Complex(Rinv[m]); }, 2 * n - 1);
  if (cf.pi_compensated)
    throw std::runtime_error("gauss_from_moments: degenerate moment stream (Hankel failure?)");
  // convergent recursion for Phi-form with c(0) = M0, c(m) = b'(m-1)
  std::vector<std::vector<Real>> ppoly, qpoly;  // polynomials in z
  // p(-1) = 0, q(-1) = 1; p(0) = c0 z, q(0) = 1
  std::vector<Real> pm1 = {Real(0)}, qm1 = {Real(1)};
  std::vector<Real> p0 = {Real(0), M0}, q0 = {Real(1)};
  ppoly.push_back(p0);
  qpoly.push_back(q0);
  for (long m = 1; m <= 2 * n - 1; ++m) {
    Real cm = cf.b[static_cast<std::size_t>(m - 1)].re;
    auto step = [&](const std::vector<Real>& cur, const std::vector<Real>& prev) {
      std::vector<Real> out = cur;
      out.resize(std::max(cur.size(), prev.size() + 1), Real(0));
      for (std::size_t i = 0; i < prev.size(); ++i) out[i + 1] += cm * prev[i];
      return out;
    };
    std::vector<Real> pn = step(ppoly.back(), m == 1 ? pm1 : ppoly[ppoly.size() - 2]);
    std::vector<Real> qn = step(qpoly.back(), m == 1 ? qm1 : qpoly[qpoly.size() - 2]);
    ppoly.push_back(pn);
    qpoly.push_back(qn);
  }

  // reciprocal polynomials D_j(x) = x^j q_(2j-1)(1/x) for every level j <= n
  auto recip_q = [&](long j) {
    const auto& q = qpoly[static_cast<std::size_t>(2 * j - 1)];
    std::vector<Real> D(static_cast<std::size_t>(j + 1), Real(0));
    for (std::size_t i = 0; i < q.size() && i <= static_cast<std::size_t>(j); ++i)
      D[static_cast<std::size_t>(j) - i] = q[i];
    return D;
  };
  // root bound for bracketing
  auto root_bound = [&](const std::vector<Real>& D) {
    Real lead = abs(D.back());
    Real m(0);
    for (std::size_t i = 0; i + 1 < D.size(); ++i) m = max(m, abs(D[i]) / lead);
    return m + 1;
  };
  std::vector<Real> prev_roots;
  for (long j = 1; j <= n; ++j) {
    std::vector<Real> D = recip_q(j);
    Real hi = root_bound(D);
    std::vector<Real> brackets = {Real(0)};
    for (auto& r : prev_roots) brackets.push_back(r);
    brackets.push_back(hi);
    std::vector<Real> Dp(D.size() - 1);
    for (std::size_t t = 1; t < D.size(); ++t) Dp[t - 1] = Real(static_cast<long>(t)) * D[t];
    std::vector<Real> roots;
    for (long i = 0; i + 1 <= j; ++i) {
      Real lo = brackets[static_cast<std::size_t>(i)], up = brackets[static_cast<std::size_t>(i) + 1];
      Real flo = poly_eval(D, lo);
      Real fup = poly_eval(D, up);
      if (flo.sign() == fup.sign())
        throw std::runtime_error("gauss_from_moments: interlacing bracket failed "
                                 "(non-positive-definite moments?)");
      // bisection bootstrap, then Newton polished to full precision with a
      // verified step; falls back to plain bisection if Newton misbehaves
      for (int it = 0; it < 64; ++it) {
        Real mid = (lo + up) / 2;
        Real fm = poly_eval(D, mid);
        if (fm.sign() == 0) {
          lo = up = mid;
          break;
        }
        if (fm.sign() == flo.sign()) {
          lo = mid;
          flo = fm;
        } else {
          up = mid;
        }
      }
      Real x = (lo + up) / 2;
      Real step_eps = (abs(x) + Real(1)) * pow10(-(caller + 14));
      bool converged = false;
      for (int nw = 0; nw < 400; ++nw) {
        Real fx = poly_eval(D, x);
        Real fpx = poly_eval(Dp, x);
        if (fpx.is_zero()) break;
        Real dx = fx / fpx;
        Real xn = x - dx;
        if (!(xn > lo && xn < up)) break;
        x = xn;
        if (abs(dx) < step_eps) {
          converged = true;
          break;
        }
      }
      if (!converged) {
        // slow path: bisect all the way down
        for (long it = 0; it < static_cast<long>(3.4 * P) + 8; ++it) {
          Real mid = (lo + up) / 2;
          Real fm = poly_eval(D, mid);
          if (fm.sign() == 0) {
            lo = up = mid;
            break;
          }
          if (fm.sign() == flo.sign()) {
            lo = mid;
            flo = fm;
          } else {
            up = mid;
          }
        }
        x = (lo + up) / 2;
      }
      roots.push_back(x);
    }
    prev_roots = roots;
  }

  // weights w_i = N_n(x_i)/D'_n(x_i)
  std::vector<Real> Dn = recip_q(n);
  std::vector<Real> Dp(Dn.size() - 1);
  for (std::size_t t = 1; t < Dn.size(); ++t) Dp[t - 1] = Real(static_cast<long>(t)) * Dn[t];
  const auto& plast = ppoly.back();  // p_(2n-1), divisible by z
  std::vector<Real> Nn(static_cast<std::size_t>(n), Real(0));
  for (std::size_t i = 1; i < plast.size() && i <= static_cast<std::size_t>(n); ++i)
    Nn[static_cast<std::size_t>(n) - i] = plast[i];  // reciprocal of p/z, degree n-1
  PrecisionGuard back(caller);
  for (auto& x : prev_roots) {
    Real xx = to_current_prec(x);
    rule.nodes.push_back(xx);
    PrecisionGuard high(P);
    Real w = poly_eval(Nn, x) / poly_eval(Dp, x);
    PrecisionGuard low(caller);
    rule.weights.push_back(to_current_prec(w));
  }
  // exactness invariant
  {
    Real tol = pow10(-(caller - 5));
    for (long k = 0; k <= 2 * n - 1; ++k) {
      Real acc(0);
      for (long i = 0; i < n; ++i) acc += rule.weights[i] * pow(rule.nodes[i], k);
      Real mk = moment(k);
      if (abs(acc - mk) > tol * (abs(mk) + Real(1)))
        throw std::runtime_error("gauss_from_moments: exactness check failed");
    }
  }
  rule_store(rule, caller);
  return rule;
}

GaussRule monien_rule(long n) {
  static thread_local std::map<std::pair<long, long>, GaussRule> cache;
  long d = working_digits();
  auto it = cache.find({d, n});
  if (it != cache.end()) return it->second;
  GaussRule raw = gauss_from_moments([&](long k) { return zeta_int(k + 2); }, n, "monien");
  GaussRule out;
  out.n = n;
  out.measure_id = "monien-y";
  for (long i = 0; i < n; ++i) {
    Real x = raw.nodes[static_cast<std::size_t>(i)];
    out.nodes.push_back(Real(1) / x);
    out.weights.push_back(raw.weights[static_cast<std::size_t>(i)] / (x * x));
  }
  cache.emplace(std::make_pair(d, n), out);
  return out;
}

Real monien_sum(const std::function<Real(const Real&)>& f, long n) {
  GaussRule rule = monien_rule(n);
  Real acc(0);
  for (long i = 0; i < n; ++i)
    acc += rule.weights[static_cast<std::size_t>(i)] * f(rule.nodes[static_cast<std::size_t>(i)]);
  return acc;
}

GaussRule abel_plana_kernel_rule(long n) {
  static thread_local std::map<std::pair<long, long>, GaussRule> cache;
  long d = working_digits();
  auto it = cache.find({d, n});
  if (it != cache.end()) return it->second;
  Real twopi = const_pi() * 2;
  auto moment = [&](long k) {
    // int_0^oo t^k/(e^(2 pi t)+1) dt = k! eta(k+1)/(2 pi)^(k+1)
    Real eta = k == 0 ? const_log2() : (Real(1) - pow(Real(2), -k)) * zeta_int(k + 1);
    return Real(factorial_mpz(k)) * eta / pow(twopi, k + 1);
  };
  GaussRule rule = gauss_from_moments(moment, n, "abelplana");
  cache.emplace(std::make_pair(d, n), rule);
  return rule;
}

// ------------------------------------------- inverse Mellin asymptotic series

MellinAsymptotic mellin_cf_build(const GammaProduct& gp, long terms) {
  int d = gp.degree();
  if (d < 1) throw std::invalid_argument("mellin_cf_build: empty gamma product");
  MellinAsymptotic out;
  out.B = mpq_class(1 - d + gp.shift_sum(), d);
  out.B.canonicalize();
  // c_j = b_j - B
  std::vector<mpq_class> c;
  for (long b : gp.shifts) c.push_back(mpq_class(b) - out.B);
  long M = terms;
  // Laurent coefficients on x^e for e in [-M, d]; index e + M
  long lo = -M;
  auto idx = [&](long e) { return static_cast<std::size_t>(e - lo); };
  std::vector<mpq_class> psi(static_cast<std::size_t>(M + 1), 0);
  psi[0] = 1;  // K'_0
  for (long nn = 1; nn <= M; ++nn) {
    // residual R = (Op - x^d) applied to Psi_(<nn), coefficient at x^(d-1-nn)
    std::vector<mpq_class> cur(static_cast<std::size_t>(M + d + 1), 0);
    for (long i = 0; i < nn; ++i)
      if (psi[static_cast<std::size_t>(i)] != 0) cur[idx(-i)] = psi[static_cast<std::size_t>(i)];
    for (int j = 0; j < d; ++j) {
      std::vector<mpq_class> nxt(cur.size(), 0);
      for (long e = lo; e <= d; ++e) {
        const mpq_class& v = cur[idx(e)];
        if (v == 0) continue;
        nxt[idx(e)] += (c[static_cast<std::size_t>(j)] - mpq_class(2 * e, d)) * v;
        if (e + 1 <= d) nxt[idx(e + 1)] += v;
      }
      cur.swap(nxt);
    }
    // subtract x^d Psi
    for (long i = 0; i < nn; ++i) {
      long e = d - i;
      if (e >= lo && e <= d) cur[idx(e)] -= psi[static_cast<std::size_t>(i)];
    }
    mpq_class R = cur[idx(d - 1 - nn)];
    psi[static_cast<std::size_t>(nn)] = -R / (2 * nn);
  }
  out.psi = psi;
  out.cf = cf_of_series(
      [&](long n) { return Complex(Real(psi[static_cast<std::size_t>(n)])); }, M - 1);
  return out;
}

EulerCF cf_of_series(const std::function<Complex(long)>& c, long M) {
  return to_euler(qd(c, M));
}

}  // namespace lfunkit
