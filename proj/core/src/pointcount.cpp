#include "lfunkit/pointcount.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "lfunkit/charsums.hpp"
#include "lfunkit/padic.hpp"

namespace lfunkit {

mpz_class EllipticCurveQ::discriminant() const {
  mpz_class A1(static_cast<long>(a1)), A2(static_cast<long>(a2)), A3(static_cast<long>(a3)),
      A4(static_cast<long>(a4)), A6(static_cast<long>(a6));
  mpz_class b2 = A1 * A1 + 4 * A2;
  mpz_class b4 = 2 * A4 + A1 * A3;
  mpz_class b6 = A3 * A3 + 4 * A6;
  mpz_class b8 = A1 * A1 * A6 + 4 * A2 * A6 - A1 * A3 * A4 + A2 * A3 * A3 - A4 * A4;
  return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
}

namespace {

// Legendre-symbol table over F_p: qr[v] = +1/-1/0
std::vector<signed char> qr_table(u64 p) {
  std::vector<signed char> qr(p, -1);
  qr[0] = 0;
  for (u64 x = 1; x <= (p - 1) / 2; ++x) qr[mulmod(x, x, p)] = 1;
  return qr;
}

u64 reduce(i64 v, u64 p) {
  i64 r = v % static_cast<i64>(p);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(p) : r);
}

}  // namespace

i64 ec_ap_naive(const EllipticCurveQ& E, u64 p) {
  if (p <= 3) {
    // a(p) = p - #affine solutions of the full Weierstrass congruence
    long cnt = 0;
    for (u64 x = 0; x < p; ++x)
      for (u64 y = 0; y < p; ++y) {
        u64 lhs = (mulmod(y, y, p) + mulmod(mulmod(reduce(E.a1, p), x, p), y, p) +
                   mulmod(reduce(E.a3, p), y, p)) %
                  p;
        u64 rhs = (mulmod(mulmod(x, x, p), x, p) + mulmod(reduce(E.a2, p), mulmod(x, x, p), p) +
                   mulmod(reduce(E.a4, p), x, p) + reduce(E.a6, p)) %
                  p;
        if (lhs == rhs) ++cnt;
      }
    return static_cast<i64>(p) - cnt;
  }
  // complete the square: (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
  u64 b2 = reduce(E.a1 * E.a1 + 4 * E.a2, p);
  u64 b4 = reduce(2 * E.a4 + E.a1 * E.a3, p);
  u64 b6 = reduce(E.a3 * E.a3 + 4 * E.a6, p);
  auto qr = qr_table(p);
  i64 acc = 0;
  for (u64 x = 0; x < p; ++x) {
    u64 v = (mulmod(mulmod(4, x, p), mulmod(x, x, p), p) + mulmod(b2, mulmod(x, x, p), p) +
             mulmod(mulmod(2, b4, p), x, p) + b6) %
            p;
    acc += qr[v];
  }
  return -acc;
}

std::vector<i64> ec_an(const EllipticCurveQ& E, u64 nmax) {
  std::vector<i64> a(nmax + 1, 0);
  if (nmax >= 1) a[1] = 1;
  // smallest prime factor sieve
  std::vector<std::uint32_t> spf(nmax + 1, 0);
  for (u64 i = 2; i <= nmax; ++i) {
    if (spf[i] == 0)
      for (u64 j = i; j <= nmax; j += i)
        if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
  }
  for (u64 p = 2; p <= nmax; ++p) {
    if (spf[p] != p) continue;
    i64 ap;
    int chi = 1;
    bool listed = false;
    for (auto& b : E.bad)
      if (b.p == p) {
        ap = b.ap;
        chi = b.chi;
        listed = true;
        break;
      }
    if (!listed) ap = ec_ap_naive(E, p);
    // prime powers
    i64 prev2 = 1, prev1 = ap;  // a(p^0), a(p^1)
    u64 pk = p;
    if (pk <= nmax) a[pk] = ap;
    while (pk <= nmax / p) {
      pk *= p;
      i64 cur = ap * prev1 - static_cast<i64>(chi) * static_cast<i64>(p) * prev2;
      a[pk] = cur;
      prev2 = prev1;
      prev1 = cur;
    }
  }
  for (u64 n = 2; n <= nmax; ++n) {
    u64 p = spf[n];
    if (p == n) continue;
    u64 pk = 1;
    u64 m = n;
    while (m % p == 0) {
      m /= p;
      pk *= p;
    }
    if (m == 1) continue;  // prime power, already done
    a[n] = a[pk] * a[m];
  }
  return a;
}

i64 ec_ap_cm(i64 n, u64 p) {
  if (p == 2) throw std::domain_error("ec_ap_cm: p must be odd");
  if (reduce(n, p) == 0) throw std::domain_error("ec_ap_cm: p | n");
  if (p % 4 == 3) return 0;
  auto uv = cornacchia(1, p);
  if (!uv) throw std::logic_error("ec_ap_cm: cornacchia failed");
  i64 u = static_cast<i64>(uv->first), v = static_cast<i64>(uv->second);
  if (u % 2 == 0) std::swap(u, v);
  if (reduce(u, 4) != 3) u = -u;  // u = -1 mod 4
  u64 t = powmod(reduce(n, p), (p - 1) / 4, p);
  u64 um = reduce(u, p), vm = reduce(v, p);
  u64 uv_ratio = mulmod(um, invmod(vm, p), p);
  i64 base;
  if (t == 1)
    base = -u;
  else if (t == p - 1)
    base = u;
  else if (t == (p - uv_ratio) % p)
    base = -v;
  else if (t == uv_ratio)
    base = v;
  else
    throw std::logic_error("ec_ap_cm: quartic residue fell outside the four cases");
  return 2 * legendre(2, p) * base;
}

// ------------------------------------------------------- quasi-diagonal

mpz_class quasidiagonal_brute_affine(const HypersurfaceSpec& spec, u64 p) {
  int m = spec.m;
  if (m < 2) throw std::invalid_argument("quasidiagonal: m >= 2");
  double budget = std::pow(static_cast<double>(p), m - 1);
  if (budget > 1e7) throw std::length_error("quasidiagonal brute force: p^(m-1) > 1e7");
  std::vector<u64> av(m);
  for (int i = 0; i < m; ++i) {
    av[i] = reduce(spec.a[i], p);
    if (av[i] == 0) throw std::invalid_argument("quasidiagonal: a_i = 0 mod p");
  }
  u64 b = reduce(spec.b, p);
  if (m == 2) {
    // a1 x^2 - b x y + a2 y^2 = 0, count over y with the discriminant
    auto qr = qr_table(p);
    mpz_class cnt = 1;  // (0,0)
    for (u64 y = 1; y < p; ++y) {
      u64 disc = (mulmod(mulmod(b, b, p), mulmod(y, y, p), p) + p * p -
                  mulmod(4, mulmod(av[0], mulmod(av[1], mulmod(y, y, p), p), p), p)) %
                 p;
      cnt += 1 + qr[disc];
    }
    return cnt;
  }
  // roots table: cnt[c][d] = #{x : a1 x^m + c x + d = 0}
  std::vector<std::uint8_t> cnt(p * p, 0);
  for (u64 x = 0; x < p; ++x) {
    u64 xm = powmod(x, static_cast<u64>(m), p);
    u64 axm = mulmod(av[0], xm, p);
    for (u64 c = 0; c < p; ++c) {
      u64 d = (2 * p - axm - mulmod(c, x, p)) % p;
      cnt[c * p + d]++;
    }
  }
  mpz_class total = 0;
  std::vector<u64> x(m - 1, 0);
  while (true) {
    u64 prod = 1, s = 0;
    for (int i = 0; i < m - 1; ++i) {
      prod = mulmod(prod, x[i], p);
      s = (s + mulmod(av[i + 1], powmod(x[i], static_cast<u64>(m), p), p)) % p;
    }
    u64 c = (p - mulmod(b, prod, p)) % p;
    total += cnt[c * p + s];
    int i = 0;
    for (; i < m - 1; ++i) {
      if (++x[i] < p) break;
      x[i] = 0;
    }
    if (i == m - 1) break;
  }
  return total;
}

namespace {

// J_m(omega^n, ..., omega^n) for nontrivial omega^n, by the recursive
// J2-chain; lu[u] = log(1 - g^u)
Complex jm_recursive(u64 p, u64 n, int m, const std::vector<u64>& lu,
                     const std::vector<Complex>& zq) {
  u64 pm1 = p - 1;
  auto j2 = [&](u64 a, u64 b) {
    Complex acc(0L);
    for (u64 u = 1; u <= pm1 - 1; ++u) {
      if (lu[u] == pm1) continue;  // u with 1 - g^u = 0 never occurs for u >= 1
      acc += zq[(mulmod(a, u, pm1) + mulmod(b, lu[u], pm1)) % pm1];
    }
    return acc;
  };
  std::vector<Complex> J(m + 1, Complex(1L));
  for (int j = 2; j <= m; ++j) {
    u64 psi = mulmod(static_cast<u64>(j - 1), n, pm1);
    if (psi != 0)
      J[j] = J[j - 1] * j2(psi, n);
    else
      J[j] = Complex(Real(n % 2 == 0 ? 1 : -1)) * Complex(Real(static_cast<long>(p))) * J[j - 2];
  }
  return J[m];
}

}  // namespace

QuasiDiagonalCount quasidiagonal_count(const HypersurfaceSpec& spec, u64 p) {
  QuasiDiagonalCount out;
  int m = spec.m;
  u64 b = reduce(spec.b, p);
  if (gcd_u64(static_cast<u64>(m), p - 1) != 1 || b == 0) {
    out.used_brute = true;
    out.affine = quasidiagonal_brute_affine(spec, p);
    out.projective = (out.affine - 1) / (p - 1);
    return out;
  }
  long digits = static_cast<long>((m + 1) * std::log10(static_cast<double>(p)) / 2) + 25;
  PrecisionGuard guard(digits);
  FieldContext ctx = make_field(p);
  build_log_table_full(ctx);
  u64 pm1 = p - 1;
  std::vector<u64> lu(pm1, pm1);
  {
    u64 gu = 1;
    for (u64 u = 1; u < pm1; ++u) {
      gu = mulmod(gu, ctx.g, p);
      if (gu != 1) lu[u] = ctx.full_log[(1 + p - gu) % p];
    }
  }
  std::vector<Complex> zq(pm1);
  for (u64 k = 0; k < pm1; ++k) zq[k] = unit_root(static_cast<long>(k), static_cast<long>(pm1));
  // B = prod(a_i / b)
  u64 B = 1;
  for (int i = 0; i < m; ++i) B = mulmod(B, reduce(spec.a[i], p), p);
  B = mulmod(B, powmod(invmod(b, p), static_cast<u64>(m), p), p);
  u64 lB = ctx.full_log[B];
  Complex acc(0L);
  for (u64 n = 1; n < pm1; ++n) {
    Complex jm = jm_recursive(p, n, m, lu, zq);
    acc += zq[(pm1 - mulmod(n, lB, pm1)) % pm1] * jm;
  }
  mpz_class pm;
  mpz_ui_pow_ui(pm.get_mpz_t(), p, static_cast<unsigned long>(m - 1));
  Real total = acc.re + Real(mpz_class(pm)) + Real(m % 2 == 1 ? 1 : -1);
  if (abs(acc.im) > Real("0.01")) throw std::logic_error("quasidiagonal_count: nonreal sum");
  out.affine = round_nearest(total).to_mpz();
  if ((out.affine - 1) % (p - 1) != 0)
    throw std::logic_error("quasidiagonal_count: affine count not 1 mod p-1");
  out.projective = (out.affine - 1) / (p - 1);
  return out;
}

// ------------------------------------------------------------- hgm traces

namespace {

struct HgmField {
  FieldContext ctx;
  std::vector<u64> lu;  // log(1 - g^u)
  std::vector<Complex> zq;
};

HgmField hgm_field(u64 p) {
  HgmField f{make_field(p), {}, {}};
  build_log_table_full(f.ctx);
  u64 pm1 = p - 1;
  f.lu.assign(pm1, pm1);
  u64 gu = 1;
  for (u64 u = 1; u < pm1; ++u) {
    gu = mulmod(gu, f.ctx.g, p);
    if (gu != 1) f.lu[u] = f.ctx.full_log[(1 + p - gu) % p];
  }
  f.zq.resize(pm1);
  for (u64 k = 0; k < pm1; ++k)
    f.zq[k] = unit_root(static_cast<long>(k), static_cast<long>(pm1));
  return f;
}

i64 round_to_i64(const Real& x) {
  Real r = round_nearest(x);
  if (abs(x - r) > Real("0.01")) throw std::logic_error("hgm_trace: non-integral value");
  return r.to_long();
}

}  // namespace

i64 hgm_trace(HgmCatalog which, u64 p, i64 t) {
  if (p < 5) throw std::domain_error("hgm_trace: p too small");
  u64 tm = reduce(t, p);
  if (tm == 0 || tm == 1) throw std::domain_error("hgm_trace: t in {0,1} mod p");
  long digits = static_cast<long>(3 * std::log10(static_cast<double>(p))) + 25;
  PrecisionGuard guard(digits);
  HgmField f = hgm_field(p);
  u64 pm1 = p - 1;
  auto j2 = [&](u64 a, u64 b) {
    Complex acc(0L);
    for (u64 u = 1; u < pm1; ++u)
      acc += f.zq[(mulmod(a, u, pm1) + mulmod(b, f.lu[u], pm1)) % pm1];
    return acc;
  };
  auto qr = qr_table(p);

  i64 a_char, a_aff, a_curve;
  if (which == HgmCatalog::gamma_4_m2) {
    u64 w = mulmod(tm, invmod(4, p), p);  // M t with M = 1/4
    u64 lw = f.ctx.full_log[w];
    Complex acc(1L);
    for (u64 n = 1; n < pm1; ++n) {
      Complex J = j2(n, n);
      acc += f.zq[mulmod(n, lw, pm1)] * J * J;
    }
    a_char = round_to_i64(acc.re / Real(1 - static_cast<long>(p)));
    // affine: (t/4) x(1-x) y(1-y) = 1
    long N = 0;
    for (u64 x = 2; x < p; ++x) {
      // y(1-y) = 1/((t/4) x (1-x)); for x=2..p-1 this covers x != 0,1
      u64 xx = mulmod(x, (1 + p - x) % p, p);
      u64 c = invmod(mulmod(w, xx, p), p);
      u64 disc = (1 + p - mulmod(4, c, p) % p) % p;
      N += 1 + qr[disc];
    }
    a_aff = static_cast<i64>(p) - 3 - N;
    // curve Y^2 + XY = X (X - 4/t)^2 = X^3 - 2rX^2 + r^2 X, r = 4/t
    u64 r = mulmod(4, invmod(tm, p), p);
    EllipticCurveQ E;
    E.a1 = 1;
    E.a2 = -static_cast<i64>(mulmod(2, r, p));
    E.a4 = static_cast<i64>(mulmod(r, r, p));
    a_curve = ec_ap_naive(E, p);
  } else {
    // gamma = (3,0,-1): M = 1/27 by the stated product convention
    u64 w = mulmod(tm, invmod(27, p), p);
    u64 lw = f.ctx.full_log[w];
    Complex acc(1L);
    for (u64 n = 1; n < pm1; ++n) {
      Complex J3;
      u64 n2 = mulmod(2, n, pm1);
      if (n2 != 0)
        J3 = j2(n, n) * j2(n2, n);
      else
        J3 = Complex(Real(n % 2 == 0 ? 1 : -1)) * Complex(Real(static_cast<long>(p)));
      acc += f.zq[mulmod(n, lw, pm1)] * J3;
    }
    a_char = round_to_i64(acc.re / Real(1 - static_cast<long>(p)));
    // affine: x+y+z = 1, xyz = c with c = 1/(Mt)
    u64 c = invmod(w, p);
    long N = 0;
    for (u64 x = 1; x < p; ++x) {
      // y+z = 1-x, yz = c/x
      u64 s = (1 + p - x) % p;
      u64 q = mulmod(c, invmod(x, p), p);
      u64 disc = (mulmod(s, s, p) + p - mulmod(4, q, p) % p) % p;
      N += 1 + qr[disc];
    }
    a_aff = static_cast<i64>(p) - 2 - N;
    // curve Y^2 + XY + cY = X^3
    EllipticCurveQ E;
    E.a1 = 1;
    E.a3 = static_cast<i64>(c);
    a_curve = ec_ap_naive(E, p);
  }
  if (a_char != a_aff || a_aff != a_curve)
    throw std::logic_error("hgm_trace: character-sum, affine and curve routes disagree");
  return a_aff;
}

// ------------------------------------------------------------ S(p;z)

namespace {

struct SField {
  FieldContext ctx;
  std::vector<u64> lu;
  u64 ell;  // log_g(z)
};

SField s_field(u64 p, i64 z, bool full_table) {
  SField f{make_field(p), {}, 0};
  u64 zr = reduce(z, p);
  if (zr == 0) throw std::domain_error("hypersurface_S: p | z");
  if (full_table) {
    build_log_table_full(f.ctx);
    u64 pm1 = p - 1;
    f.lu.assign(pm1, pm1);
    u64 gu = 1;
    for (u64 u = 1; u < pm1; ++u) {
      gu = mulmod(gu, f.ctx.g, p);
      if (gu != 1) f.lu[u] = f.ctx.full_log[(1 + p - gu) % p];
    }
    f.ell = f.ctx.full_log[zr];
  } else {
    f.ell = dlog_bsgs(p, f.ctx.g, zr);
  }
  return f;
}

mpz_class round_to_mpz(const Complex& z, const char* what) {
  if (abs(z.im) > Real("0.1")) throw std::logic_error(std::string(what) + ": nonreal result");
  Real r = round_nearest(z.re);
  if (abs(z.re - r) > Real("0.1")) throw std::logic_error(std::string(what) + ": non-integral result");
  return r.to_mpz();
}

mpz_class s_naive(u64 p, i64 z) {
  long digits = static_cast<long>(4 * std::log10(static_cast<double>(p))) + 25;
  PrecisionGuard guard(digits);
  SField f = s_field(p, z, true);
  u64 pm1 = p - 1;
  std::vector<Complex> zq(pm1);
  for (u64 k = 0; k < pm1; ++k) zq[k] = unit_root(static_cast<long>(k), static_cast<long>(pm1));
  auto j2 = [&](u64 a, u64 b) {
    Complex acc(0L);
    for (u64 u = 1; u < pm1; ++u)
      acc += zq[(mulmod(a, u, pm1) + mulmod(b, f.lu[u], pm1)) % pm1];
    return acc;
  };
  auto j5 = [&](u64 n) {
    // J_5(n,n,n,n,n) by the recursive chain
    Complex Jm2(1L), Jm1(1L);  // J_0 unused, J_1 = 1
    for (int j = 2; j <= 5; ++j) {
      u64 psi = mulmod(static_cast<u64>(j - 1), n, pm1);
      Complex cur;
      if (psi != 0)
        cur = Jm1 * j2(psi, n);
      else
        cur = Complex(Real(n % 2 == 0 ? 1 : -1)) * Complex(Real(static_cast<long>(p))) * Jm2;
      Jm2 = Jm1;
      Jm1 = cur;
    }
    return Jm1;
  };
  // n = 0 term is q^4; pair n with p-1-n (complex conjugates, reciprocity)
  mpz_class p4;
  mpz_ui_pow_ui(p4.get_mpz_t(), p, 4);
  Complex acc(0L);
  for (u64 n = 1; 2 * n <= pm1; ++n) {
    Complex term = zq[(pm1 - mulmod(n, f.ell, pm1)) % pm1] * j5(n);
    if (2 * n == pm1)
      acc += Complex(term.re);
    else
      acc += Complex(term.re * 2);
  }
  return round_to_mpz(acc, "S naive") + p4;
}

// pack coefficient vector into an mpz with the given limb stride (Kronecker)
mpz_class kronecker_pack(const std::vector<mpz_class>& v, int limbs) {
  const mpz_class mask = (mpz_class(1) << 64) - 1;
  std::vector<u64> buf(v.size() * static_cast<std::size_t>(limbs), 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    mpz_class c = v[i];
    for (int j = 0; j < limbs && c != 0; ++j) {
      buf[i * limbs + j] = mpz_get_ui(mpz_class(c & mask).get_mpz_t());
      c >>= 64;
    }
  }
  mpz_class out;
  mpz_import(out.get_mpz_t(), buf.size(), -1, sizeof(u64), 0, 0, buf.data());
  return out;
}

std::vector<mpz_class> kronecker_unpack(const mpz_class& z, std::size_t n, int limbs) {
  std::size_t words = n * static_cast<std::size_t>(limbs);
  std::vector<u64> buf(words + 2, 0);
  std::size_t count = 0;
  mpz_export(buf.data(), &count, -1, sizeof(u64), 0, 0, z.get_mpz_t());
  std::vector<mpz_class> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class c = 0;
    for (int j = limbs - 1; j >= 0; --j) {
      c <<= 64;
      std::size_t idx = i * limbs + static_cast<std::size_t>(j);
      if (idx < count) c += buf[idx];
    }
    out[i] = c;
  }
  return out;
}

// cyclic convolution mod X^L - 1 via Kronecker substitution
std::vector<mpz_class> cyclo_mul(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
  std::size_t L = a.size();
  mpz_class maxa = 0, maxb = 0;
  for (auto& c : a) maxa = std::max(maxa, c);
  for (auto& c : b) maxb = std::max(maxb, c);
  mpz_class bound = maxa * maxb * static_cast<unsigned long>(L) + 1;
  int limbs = static_cast<int>((mpz_sizeinbase(bound.get_mpz_t(), 2) + 63) / 64);
  mpz_class prod = kronecker_pack(a, limbs) * kronecker_pack(b, limbs);
  std::vector<mpz_class> full = kronecker_unpack(prod, 2 * L, limbs);
  std::vector<mpz_class> out(L);
  for (std::size_t i = 0; i < L; ++i) {
    out[i] = full[i];
    if (i + L < full.size()) out[i] += full[i + L];
  }
  return out;
}

mpz_class s_cyclovec(u64 p, i64 z) {
  SField f = s_field(p, z, true);
  u64 pm1 = p - 1;
  std::vector<std::vector<mpz_class>> P(4, std::vector<mpz_class>(pm1, 0));
  for (u64 u = 1; u < pm1; ++u)
    for (u64 a = 1; a <= 4; ++a)
      P[a - 1][(u + mulmod(a, f.lu[u], pm1)) % pm1] += 1;
  auto Q1 = cyclo_mul(P[0], P[1]);
  auto Q2 = cyclo_mul(P[2], P[3]);
  auto Pa = cyclo_mul(Q1, Q2);
  mpz_class a_ell = Pa[f.ell];

  mpz_class pz(static_cast<unsigned long>(p));
  mpz_class T1 = 8 * (pz * pz - 2 * pz + 2);
  mpz_class T2 = legendre(static_cast<i64>(reduce(z, p)), p) * (pz + 1);
  mpz_class T3 = 0, T4 = 0;
  if (pm1 % 3 == 0) {
    auto J = jacobi_small_order_exact(p, 3);
    // J^2 in Z[zeta_3], then multiply by zeta_3^(-ell)
    long x = J.a * J.a - J.b * J.b;
    long y = 2 * J.a * J.b - J.b * J.b;
    int k = static_cast<int>((3 - f.ell % 3) % 3);
    for (int i = 0; i < k; ++i) {
      long nx = -y, ny = x - y;
      x = nx;
      y = ny;
    }
    T3 = 2 * x - y;  // 2 Re(x + y zeta_3)
  }
  if (pm1 % 4 == 0) {
    auto J = jacobi_small_order_exact(p, 4);
    long x = J.a * J.a - J.b * J.b;
    long y = 2 * J.a * J.b;
    int k = static_cast<int>((4 - f.ell % 4) % 4);
    for (int i = 0; i < k; ++i) {
      long nx = -y, ny = x;
      x = nx;
      y = ny;
    }
    T4 = 2 * x;
  }
  return (pz - 1) * (T1 + T2 + T3 + T4 + a_ell);
}

mpz_class s_theta(u64 p, i64 z) {
  long digits = std::max<long>(25, static_cast<long>(2 * std::log10(static_cast<double>(p))) + 15);
  PrecisionGuard guard(digits);
  u64 pm1 = p - 1;
  SField f = s_field(p, z, false);
  // bounded log table out to the theta truncation limit
  double D = static_cast<double>(digits) + 8;
  u64 M = static_cast<u64>(std::sqrt(static_cast<double>(p) * D * 2.302585 / 3.1415926)) + 2;
  build_log_table_bounded(f.ctx, M);
  std::vector<Complex> zq(pm1);
  for (u64 k = 0; k < pm1; ++k) zq[k] = unit_root(static_cast<long>(k), static_cast<long>(pm1));
  std::vector<Real> w(M + 1, Real(0));
  std::vector<u64> lm(M + 1, 0);
  Real pi = const_pi();
  for (u64 m = 1; m <= M; ++m) {
    if (m % p == 0) continue;  // chi(m) = 0
    w[m] = exp(-pi * static_cast<long>(m * m) / static_cast<long>(p));
    lm[m] = f.ctx.log(m);
  }
  Real sp = sqrt(Real(static_cast<long>(p)));
  std::vector<Complex> G(pm1);
  Real tiny = pow10(-(digits / 2));
  for (u64 n = 1; n < pm1; ++n) {
    int e = static_cast<int>(n % 2);
    Complex num(0L), den(0L);
    for (u64 m = 1; m <= M; ++m) {
      if (m % p == 0) continue;
      u64 k = mulmod(n, lm[m], pm1);
      Real wm = e == 0 ? w[m] : w[m] * static_cast<long>(m);
      num += zq[k] * Complex(wm);
      den += zq[(pm1 - k) % pm1] * Complex(wm);
    }
    if (abs(den) < tiny) {
      G[n] = gauss_sum_theta_fp(f.ctx, n);  // t-fallback path
    } else if (e == 0) {
      G[n] = Complex(sp) * num / den;
    } else {
      G[n] = Complex(Real(0), sp) * num / den;
    }
  }
  mpz_class p4;
  mpz_ui_pow_ui(p4.get_mpz_t(), p, 4);
  Complex acc(0L);
  for (u64 n = 1; n < pm1; ++n) {
    Complex J5;
    u64 n5 = mulmod(5, n, pm1);
    if (n5 != 0)
      J5 = pow(G[n], 5L) / G[n5];
    else
      J5 = -pow(G[n], 5L) / Complex(Real(static_cast<long>(p)));
    acc += zq[(pm1 - mulmod(n, f.ell, pm1)) % pm1] * J5;
  }
  return round_to_mpz(acc, "S theta") + p4;
}

}  // namespace

mpz_class hypersurface_S(u64 p, i64 z, SMethod method) {
  if (p < 7 || !is_prime(p)) throw std::domain_error("hypersurface_S: p must be prime >= 7");
  switch (method) {
    case SMethod::naive:
      return s_naive(p, z);
    case SMethod::cyclovec:
      return s_cyclovec(p, z);
    case SMethod::theta:
      return s_theta(p, z);
    case SMethod::gk:
      return s_reconstruct(p, s_mod_p2(p, z));
  }
  throw std::logic_error("hypersurface_S: bad method");
}

// --------------------------------------------------- modular coefficients

std::vector<mpz_class> eta_product_coeffs(const std::vector<EtaFactor>& factors, long B) {
  long w24 = 0;
  for (auto& f : factors) {
    if (f.r <= 0) throw std::invalid_argument("eta_product_coeffs: need r > 0");
    w24 += f.m * f.r;
  }
  if (w24 % 24 != 0) throw std::invalid_argument("eta_product_coeffs: weight not divisible by 24");
  long shift = w24 / 24;
  long L = B - shift;  // expansion order of the product of E-series
  std::vector<mpz_class> dense(std::max<long>(L + 1, 1), 0);
  dense[0] = 1;
  for (auto& f : factors) {
    // E(q^m) support: exponents m (j^2-1)/24 with sign (12/j)
    std::vector<std::pair<long, int>> sup;
    for (long j = 1;; j += 2) {
      if (j % 3 == 0) continue;
      long e = f.m * ((j * j - 1) / 24);
      if (e > L) break;
      int s = (j % 12 == 1 || j % 12 == 11) ? 1 : -1;
      sup.push_back({e, s});
    }
    for (long rep = 0; rep < f.r; ++rep) {
      std::vector<mpz_class> next(dense.size(), 0);
      for (auto& [e, s] : sup)
        for (long i = 0; i + e <= L; ++i) {
          if (dense[i] == 0) continue;
          if (s > 0)
            next[i + e] += dense[i];
          else
            next[i + e] -= dense[i];
        }
      dense.swap(next);
    }
  }
  std::vector<mpz_class> a(B + 1, 0);
  for (long n = shift; n <= B; ++n) a[n] = dense[n - shift];
  return a;
}

std::vector<mpz_class> eta_power_coeffs(long m1, long r1, long m2, long r2, long B) {
  return eta_product_coeffs({{m1, r1}, {m2, r2}}, B);
}

std::vector<mpz_class> theta_bqf_coeffs(long B) {
  std::vector<mpz_class> c1(B + 1, 0), c2(B + 1, 0);
  long nb = static_cast<long>(std::sqrt(8.0 * B / 23.0)) + 2;
  long mb = static_cast<long>(std::sqrt(static_cast<double>(B))) + 2;
  for (long n = -nb; n <= nb; ++n)
    for (long m = -(mb + nb); m <= mb + nb; ++m) {
      long q1 = m * m + m * n + 6 * n * n;
      if (q1 >= 0 && q1 <= B) c1[q1] += 1;
      long q2 = 2 * m * m + m * n + 3 * n * n;
      if (q2 >= 0 && q2 <= B) c2[q2] += 1;
    }
  std::vector<mpz_class> a(B + 1, 0);
  for (long k = 1; k <= B; ++k) {
    mpz_class d = c1[k] - c2[k];
    if (mpz_odd_p(d.get_mpz_t())) throw std::logic_error("theta_bqf_coeffs: odd difference");
    a[k] = d / 2;
  }
  return a;
}

std::vector<mpz_class> cubic_field_coeffs(long B) {
  std::vector<mpz_class> a(B + 1, 0);
  if (B >= 1) a[1] = 1;
  std::vector<long> spf(B + 1, 0);
  for (long i = 2; i <= B; ++i)
    if (spf[i] == 0)
      for (long j = i; j <= B; j += i)
        if (spf[j] == 0) spf[j] = i;
  for (long p = 2; p <= B; ++p) {
    if (spf[p] != p) continue;
    long roots = 0;
    for (long x = 0; x < p; ++x) {
      long v = ((x * x % p) * x - x - 1) % p;
      if ((v + p) % p == 0) ++roots;
    }
    long ap;
    int chi;
    if (p == 23) {
      ap = 1;
      chi = 0;
    } else {
      ap = roots - 1;
      mpz_class pz(p);
      chi = mpz_si_kronecker(-23, pz.get_mpz_t());
    }
    long pk = p;
    mpz_class prev2 = 1, prev1 = ap;
    if (pk <= B) a[pk] = prev1;
    while (pk <= B / p) {
      pk *= p;
      mpz_class cur = ap * prev1 - chi * prev2;
      a[pk] = cur;
      prev2 = prev1;
      prev1 = cur;
    }
  }
  for (long n = 2; n <= B; ++n) {
    long p = spf[n];
    long pk = 1, m = n;
    while (m % p == 0) {
      m /= p;
      pk *= p;
    }
    if (m == 1) continue;
    a[n] = a[pk] * a[m];
  }
  return a;
}

std::vector<mpz_class> eta24_coeffs(long B) {
  return eta_product_coeffs({{1, 24}}, B);
}

mpq_class hurwitz_H(long N) {
  if (N < 0) return 0;
  if (N == 0) return mpq_class(-1, 12);
  long r = N % 4;
  if (r == 1 || r == 2) return 0;
  mpq_class acc(0);
  for (long b = N % 2; b * b <= N; b += 2) {
    long num = b * b + N;
    if (num % 4 != 0) continue;
    long ac = num / 4;
    for (long a = std::max<long>(b, 1); a * a <= ac; ++a) {
      if (ac % a != 0) continue;
      long c = ac / a;
      // reduced forms (a, +-b, c) with -a < b <= a <= c, b >= 0 if a = c
      mpq_class w;
      if (b == 0)
        w = (a == c) ? mpq_class(1, 2) : mpq_class(1);
      else if (b == a && a == c)
        w = mpq_class(1, 3);
      else if (b < a && a < c)
        w = 2;
      else
        w = 1;
      acc += w;
    }
  }
  return acc;
}

namespace {

mpz_class hurwitz12(long N) {
  mpq_class h = 12 * hurwitz_H(N);
  if (h.get_den() != 1) throw std::logic_error("hurwitz12: 12H not integral");
  return h.get_num();
}

// Gegenbauer coefficient for weight 12: P(t,n) = t^10 - 9nt^8 + 28n^2t^6 - 35n^3t^4 + 15n^4t^2 - n^5
mpz_class p12(const mpz_class& t, const mpz_class& n) {
  mpz_class t2 = t * t;
  return ((((t2 - 9 * n) * t2 + 28 * n * n) * t2 - 35 * n * n * n) * t2 + 15 * n * n * n * n) * t2 -
         n * n * n * n * n;
}

}  // namespace

mpz_class tau_trace_formula(u64 p) {
  if (!is_prime(p)) throw std::domain_error("tau_trace_formula: p must be prime");
  // 12 tau(p) = -6 sum_(t^2 <= 4p) P12(t,p) H12(4p - t^2)/12... work with 12H
  mpz_class pz(static_cast<unsigned long>(p));
  mpz_class acc = 0;
  long tmax = static_cast<long>(std::sqrt(4.0 * static_cast<double>(p))) + 1;
  for (long t = -tmax; t <= tmax; ++t) {
    mpz_class disc = 4 * pz - mpz_class(t) * t;
    if (disc < 0) continue;
    acc += p12(mpz_class(t), pz) * hurwitz12(disc.get_si());
  }
  // tau(p) = -(1/2) sum P12 H - 1; acc = 12 * sum
  mpz_class num = -acc;  // 12 * sum * (-1)
  if (num % 24 != 0) throw std::logic_error("tau_trace_formula: non-integral trace");
  return num / 24 - 1;
}

mpz_class tau_trace_formula_odd(u64 p) {
  if (!is_prime(p) || p == 2) throw std::domain_error("tau_trace_formula_odd: p must be an odd prime");
  mpz_class pz(static_cast<unsigned long>(p));
  mpz_class main = 28 * pz * pz * pz * pz * pz * pz - 28 * pz * pz * pz * pz * pz -
                   90 * pz * pz * pz * pz - 35 * pz * pz * pz - 1;
  mpz_class acc = 0;
  for (long t = 1; static_cast<u64>(t) * static_cast<u64>(t) < p; ++t) {
    long N = static_cast<long>(p) - t * t;
    mpz_class H3_12 = hurwitz12(4 * N) + 2 * hurwitz12(N);  // 12*H3(N)
    mpz_class t2 = mpz_class(t) * t;
    mpz_class poly = 4 * t2 * t2 - 9 * pz * t2 + 7 * pz * pz;
    acc += t2 * t2 * t2 * poly * H3_12;
  }
  if (acc % 12 != 0) throw std::logic_error("tau_trace_formula_odd: non-integral sum");
  return main - 128 * (acc / 12);
}

}  // namespace lfunkit
