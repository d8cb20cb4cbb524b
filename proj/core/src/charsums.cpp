#include "lfunkit/charsums.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace lfunkit {

namespace {

u64 primitive_root_pp(u64 p, int a) {
  u64 g = primitive_root(p);
  if (a == 1) return g;
  if (powmod(g, p - 1, p * p) == 1) g += p;
  return g;
}

u64 ipow(u64 b, int e) {
  u64 r = 1;
  while (e-- > 0) r *= b;
  return r;
}

DirichletCharacter::Component make_component(u64 p, int a) {
  DirichletCharacter::Component c;
  c.p = p;
  c.a = a;
  c.q = ipow(p, a);
  if (p != 2) {
    u64 g = primitive_root_pp(p, a);
    u64 m = c.q / p * (p - 1);
    c.gens = {g % c.q};
    c.orders = {m};
    c.dlog.assign(c.q, 0);
    u64 cur = 1;
    for (u64 k = 0; k < m; ++k) {
      c.dlog[cur] = static_cast<std::uint32_t>(k);
      cur = mulmod(cur, g, c.q);
    }
  } else if (a == 2) {
    c.gens = {3};
    c.orders = {2};
  } else if (a >= 3) {
    u64 m5 = c.q / 4;
    c.gens = {c.q - 1, 5};
    c.orders = {2, m5};
    c.dlog5.assign(c.q, 0);
    c.sign2.assign(c.q, 0);
    u64 cur = 1;
    for (u64 k = 0; k < m5; ++k) {
      c.dlog5[cur] = static_cast<std::uint32_t>(k);
      c.dlog5[c.q - cur] = static_cast<std::uint32_t>(k);
      c.sign2[c.q - cur] = 1;
      cur = mulmod(cur, 5, c.q);
    }
  }
  c.exponents.assign(c.gens.size(), 0);
  return c;
}

std::vector<std::pair<u64, int>> sorted_factor(u64 N) {
  auto f = factor(N);
  std::sort(f.begin(), f.end());
  return f;
}

DirichletCharacter make_basis(u64 N) {
  DirichletCharacter chi;
  chi.modulus = N;
  if (N == 1) return chi;
  for (auto& [p, a] : sorted_factor(N)) chi.comps.push_back(make_component(p, a));
  chi.group_exponent = 1;
  for (auto& c : chi.comps)
    for (u64 m : c.orders) chi.group_exponent = std::lcm(chi.group_exponent, m);
  if (chi.group_exponent == 0) chi.group_exponent = 1;
  return chi;
}

}  // namespace

DirichletCharacter trivial_character(u64 N) { return make_basis(N); }

DirichletCharacter character_from_exponents(u64 N, const std::vector<u64>& exps) {
  DirichletCharacter chi = make_basis(N);
  std::size_t idx = 0;
  for (auto& c : chi.comps)
    for (std::size_t i = 0; i < c.gens.size(); ++i) {
      if (idx >= exps.size()) throw std::invalid_argument("character_from_exponents: too few exponents");
      c.exponents[i] = exps[idx++] % c.orders[i];
    }
  if (idx != exps.size()) throw std::invalid_argument("character_from_exponents: too many exponents");
  return chi;
}

bool DirichletCharacter::value_exponent(i64 x, u64& num, u64& den) const {
  u64 N = modulus;
  i64 xr = x % static_cast<i64>(N);
  if (xr < 0) xr += static_cast<i64>(N);
  u64 xu = static_cast<u64>(xr);
  if (N == 1) {
    num = 0;
    den = 1;
    return true;
  }
  if (gcd_u64(xu, N) != 1) return false;
  u64 L = group_exponent;
  u128 acc = 0;
  for (auto& c : comps) {
    u64 xc = xu % c.q;
    if (c.p != 2) {
      u64 k = c.dlog[xc];
      acc += (u128)(c.exponents[0] % c.orders[0]) * k % c.orders[0] * (L / c.orders[0]);
    } else if (c.a == 1) {
      continue;
    } else if (c.a == 2) {
      if (xc == 3 && c.exponents[0] % 2 == 1) acc += L / 2;
    } else {
      u64 k0 = c.sign2[xc];
      u64 k1 = c.dlog5[xc];
      if (k0 && c.exponents[0] % 2 == 1) acc += L / 2;
      acc += (u128)(c.exponents[1] % c.orders[1]) * k1 % c.orders[1] * (L / c.orders[1]);
    }
  }
  num = static_cast<u64>(acc % L);
  den = L;
  return true;
}

Complex DirichletCharacter::value(i64 x) const {
  u64 num, den;
  if (!value_exponent(x, num, den)) return Complex(0L);
  return unit_root(static_cast<long>(num), static_cast<long>(den));
}

bool DirichletCharacter::is_trivial() const {
  for (auto& c : comps)
    for (u64 e : c.exponents)
      if (e != 0) return false;
  return true;
}

u64 DirichletCharacter::order() const {
  u64 ord = 1;
  for (auto& c : comps)
    for (std::size_t i = 0; i < c.gens.size(); ++i) {
      u64 m = c.orders[i];
      u64 e = c.exponents[i] % m;
      ord = std::lcm(ord, m / gcd_u64(m, e == 0 ? m : e));
    }
  return ord;
}

int DirichletCharacter::parity() const {
  u64 num, den;
  if (!value_exponent(-1, num, den)) return 0;
  return num == 0 ? 0 : 1;
}

u64 DirichletCharacter::conductor() const {
  u64 f = 1;
  for (auto& c : comps) {
    if (c.p != 2) {
      u64 e = c.exponents[0] % c.orders[0];
      if (e == 0) continue;
      int v = 0;
      u64 t = e;
      while (t % c.p == 0) {
        t /= c.p;
        ++v;
      }
      f *= ipow(c.p, c.a - v);
    } else if (c.a == 1) {
      continue;
    } else if (c.a == 2) {
      if (c.exponents[0] % 2 == 1) f *= 4;
    } else {
      u64 e1 = c.exponents[1] % c.orders[1];
      if (e1 != 0) {
        int v = 0;
        u64 t = e1;
        while (t % 2 == 0) {
          t /= 2;
          ++v;
        }
        f *= ipow(2, c.a - v);
      } else if (c.exponents[0] % 2 == 1) {
        f *= 4;
      }
    }
  }
  return f;
}

std::vector<DirichletCharacter> all_characters(u64 N) {
  DirichletCharacter base = make_basis(N);
  std::vector<u64> orders;
  for (auto& c : base.comps)
    for (u64 m : c.orders) orders.push_back(m);
  std::vector<DirichletCharacter> out;
  std::vector<u64> exps(orders.size(), 0);
  while (true) {
    out.push_back(character_from_exponents(N, exps));
    std::size_t i = 0;
    for (; i < exps.size(); ++i) {
      if (++exps[i] < orders[i]) break;
      exps[i] = 0;
    }
    if (i == exps.size()) break;
  }
  return out;
}

DirichletCharacter kronecker_character(i64 D) {
  u64 N = static_cast<u64>(D < 0 ? -D : D);
  DirichletCharacter chi = make_basis(N);
  mpz_class Nz(static_cast<long>(N));
  for (auto& c : chi.comps) {
    for (std::size_t i = 0; i < c.gens.size(); ++i) {
      // CRT-lift the component generator to a unit mod N
      mpz_class lift = crt(mpz_class(static_cast<unsigned long>(c.gens[i])),
                           mpz_class(static_cast<unsigned long>(c.q)), mpz_class(1),
                           mpz_class(static_cast<unsigned long>(N / c.q)));
      int v = mpz_si_kronecker(static_cast<long>(D), lift.get_mpz_t());
      if (v == -1) {
        if (c.orders[i] % 2 != 0) throw std::logic_error("kronecker_character: odd order component");
        c.exponents[i] = c.orders[i] / 2;
      } else {
        c.exponents[i] = 0;
      }
    }
  }
  return chi;
}

DirichletCharacter mul(const DirichletCharacter& a, const DirichletCharacter& b) {
  if (a.modulus != b.modulus) throw std::invalid_argument("character mul: moduli differ");
  DirichletCharacter r = a;
  for (std::size_t ci = 0; ci < r.comps.size(); ++ci)
    for (std::size_t i = 0; i < r.comps[ci].exponents.size(); ++i)
      r.comps[ci].exponents[i] =
          (r.comps[ci].exponents[i] + b.comps[ci].exponents[i]) % r.comps[ci].orders[i];
  return r;
}

DirichletCharacter inverse(const DirichletCharacter& a) {
  DirichletCharacter r = a;
  for (auto& c : r.comps)
    for (std::size_t i = 0; i < c.exponents.size(); ++i)
      c.exponents[i] = c.exponents[i] == 0 ? 0 : c.orders[i] - c.exponents[i];
  return r;
}

namespace {

// x = target mod (component of f), x = 1 at primes of N away from f; any lift
// works since chi factors through mod f on such x
u64 lift_residue(const DirichletCharacter& chi, u64 f, u64 g) {
  mpz_class x(1), m(1);
  for (auto& c : chi.comps) {
    u64 r = 1;
    u64 qf = 1;
    u64 t = f;
    while (t % c.p == 0) {
      t /= c.p;
      qf *= c.p;
    }
    if (qf > 1) r = g % qf;  // coprime to p since g is a unit mod f
    // lift r (defined mod qf) to c.q keeping coprimality: r itself works
    x = crt(x, m, mpz_class(static_cast<unsigned long>(r == 0 ? 1 : r)),
            mpz_class(static_cast<unsigned long>(c.q)));
    m *= static_cast<unsigned long>(c.q);
  }
  return mpz_class(x % mpz_class(static_cast<unsigned long>(chi.modulus))).get_ui();
}

// exponent of chi at x rescaled to a root of unity of order m (must divide)
u64 rescale_exponent(const DirichletCharacter& chi, u64 x, u64 m) {
  u64 num, den;
  if (!chi.value_exponent(static_cast<i64>(x), num, den))
    throw std::logic_error("rescale_exponent: non-unit");
  // chi(x) = e(num/den) must be an m-th root of unity
  u128 t = (u128)num * m;
  if (t % den != 0) throw std::logic_error("rescale_exponent: order mismatch");
  return static_cast<u64>(t / den % m);
}

}  // namespace

std::pair<u64, DirichletCharacter> conductor_and_primitive_part(const DirichletCharacter& chi) {
  u64 f = chi.conductor();
  DirichletCharacter psi = make_basis(f);
  for (auto& c : psi.comps)
    for (std::size_t i = 0; i < c.gens.size(); ++i) {
      u64 x = lift_residue(chi, f, c.gens[i]);
      c.exponents[i] = rescale_exponent(chi, x, c.orders[i]);
    }
  return {f, psi};
}

std::pair<DirichletCharacter, DirichletCharacter> split_character(const DirichletCharacter& chi,
                                                                  u64 N1, u64 N2) {
  if (N1 * N2 != chi.modulus || gcd_u64(N1, N2) != 1)
    throw std::invalid_argument("split_character: need coprime N1*N2 = N");
  u64 u2N2 = N2 % N1 == 0 ? 0 : mulmod(invmod(N2 % N1, N1), N2, chi.modulus);
  // u1*N1 + u2*N2 = 1: compute both pieces mod N
  u64 u1N1 = (1 + chi.modulus - u2N2 % chi.modulus) % chi.modulus;
  auto build = [&](u64 Ni, u64 proj, u64 other) {
    DirichletCharacter part = make_basis(Ni);
    for (auto& c : part.comps)
      for (std::size_t i = 0; i < c.gens.size(); ++i) {
        u64 x = (mulmod(c.gens[i] % chi.modulus, proj, chi.modulus) + other) % chi.modulus;
        c.exponents[i] = rescale_exponent(chi, x, c.orders[i]);
      }
    return part;
  };
  if (N1 == 1) return {make_basis(1), build(N2, u1N1, u2N2)};
  if (N2 == 1) return {build(N1, u2N2, u1N1), make_basis(1)};
  return {build(N1, u2N2, u1N1), build(N2, u1N1, u2N2)};
}

// ---------------------------------------------------------------- Gauss sums

Complex gauss_sum_naive(const DirichletCharacter& chi, i64 a) {
  u64 N = chi.modulus;
  if (N == 1) return Complex(1L);
  // precompute zeta_N powers
  std::vector<Complex> zN(N);
  for (u64 k = 0; k < N; ++k) zN[k] = unit_root(static_cast<long>(k), static_cast<long>(N));
  Complex acc(0L);
  i64 ar = a % static_cast<i64>(N);
  if (ar < 0) ar += static_cast<i64>(N);
  for (u64 x = 0; x < N; ++x) {
    u64 num, den;
    if (!chi.value_exponent(static_cast<i64>(x), num, den)) continue;
    acc += unit_root(static_cast<long>(num), static_cast<long>(den)) *
           zN[mulmod(static_cast<u64>(ar), x, N)];
  }
  return acc;
}

Complex gauss_sum_naive_fp(const FieldContext& ctx, u64 n, i64 a) {
  u64 p = ctx.p;
  if (!ctx.has_full()) throw std::logic_error("gauss_sum_naive_fp: full log table required");
  std::vector<Complex> zP(p), zQ(p - 1);
  for (u64 k = 0; k < p; ++k) zP[k] = unit_root(static_cast<long>(k), static_cast<long>(p));
  for (u64 k = 0; k + 1 < p; ++k) zQ[k] = unit_root(static_cast<long>(k), static_cast<long>(p - 1));
  i64 ar = a % static_cast<i64>(p);
  if (ar < 0) ar += static_cast<i64>(p);
  n %= (p - 1);
  Complex acc(0L);
  for (u64 x = 1; x < p; ++x) {
    u64 e = mulmod(n, ctx.full_log[x], p - 1);
    acc += zQ[e] * zP[mulmod(static_cast<u64>(ar), x, p)];
  }
  return acc;
}

namespace {

Complex theta_ratio(u64 p, int e, const std::function<Complex(u64)>& chi_of) {
  long D = working_digits();
  Real pi = const_pi();
  Real pr(static_cast<long>(p));
  const char* ts[] = {"1", "1.1", "0.9"};
  for (const char* tstr : ts) {
    Real t(tstr);
    Real tmax = max(t, Real(1) / t);
    // truncate when exp(-pi m^2 / (p*tmax)) < 10^(-D-10)
    Real m2 = pr * tmax / pi * Real(static_cast<long>(D) + 10) * log(Real(10));
    u64 M = static_cast<u64>(sqrt(m2).to_double()) + 2;
    Real c1 = -pi / (pr * t), c2 = -pi * t / pr;
    Complex num(0L), den(0L);
    for (u64 m = 1; m <= M; ++m) {
      Complex cv = chi_of(m);
      if (cv.is_zero()) continue;
      Real mm(static_cast<long>(m));
      Real m2r = mm * mm;
      Real w1 = exp(c1 * m2r), w2 = exp(c2 * m2r);
      if (e == 1) {
        w1 *= mm;
        w2 *= mm;
      }
      num += cv * Complex(w1);
      den += conj(cv) * Complex(w2);
    }
    if (abs(den) < pow10(-(D / 2))) continue;
    Real sp = sqrt(pr);
    if (e == 0) return Complex(sp) * num / (Complex(sqrt(t)) * den);
    return Complex(Real(0), sp) * num / (Complex(t * sqrt(t)) * den);
  }
  throw ThetaDegenerate();
}

}  // namespace

Complex gauss_sum_theta(const DirichletCharacter& chi) {
  u64 p = chi.modulus;
  if (!is_prime(p)) throw std::invalid_argument("gauss_sum_theta: modulus must be prime");
  if (chi.is_trivial()) throw std::invalid_argument("gauss_sum_theta: chi must be nontrivial");
  return theta_ratio(p, chi.parity(), [&](u64 m) { return chi.value(static_cast<i64>(m)); });
}

Complex gauss_sum_theta_fp(const FieldContext& ctx, u64 n) {
  u64 p = ctx.p;
  n %= (p - 1);
  if (n == 0) throw std::invalid_argument("gauss_sum_theta_fp: chi must be nontrivial");
  int e = static_cast<int>(n % 2);
  return theta_ratio(p, e, [&](u64 m) {
    if (m % p == 0) return Complex(0L);
    return unit_root(static_cast<long>(mulmod(n, ctx.log(m), p - 1)),
                     static_cast<long>(p - 1));
  });
}

namespace {

// log_p(1+z) mod p^k as an exact rational partial sum reduced mod p^k;
// requires v_p(z) >= 1 (>= 2 for p = 2)
mpz_class padic_log1p(const mpz_class& z, u64 p, int k) {
  mpz_class pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), p, static_cast<unsigned long>(k));
  if (z % pk == 0) return 0;  // log(1 + z) = z = 0 mod p^k
  mpq_class acc(0);
  mpz_class zj(1);
  int v1 = 0;  // v_p(z)
  {
    mpz_class t = z;
    while (t != 0 && mpz_divisible_ui_p(t.get_mpz_t(), static_cast<unsigned long>(p))) {
      t /= static_cast<unsigned long>(p);
      ++v1;
    }
  }
  if (v1 < 1) throw std::invalid_argument("padic_log1p: v_p(z) < 1");
  for (long j = 1;; ++j) {
    zj *= z;
    int vj = 0;
    long jj = j;
    while (jj % static_cast<long>(p) == 0) {
      jj /= static_cast<long>(p);
      ++vj;
    }
    long val = v1 * j - vj;
    if (val > k + 2 && j > 4) break;
    mpq_class term(zj, mpz_class(j));
    if (j % 2 == 0) term = -term;
    acc += term;
  }
  acc.canonicalize();
  // acc = P/Q with Q coprime to p; reduce mod p^k
  mpz_class P = acc.get_num(), Q = acc.get_den(), Qinv;
  if (mpz_invert(Qinv.get_mpz_t(), Q.get_mpz_t(), pk.get_mpz_t()) == 0)
    throw std::logic_error("padic_log1p: denominator not invertible");
  mpz_class r = (P % pk) * Qinv % pk;
  if (r < 0) r += pk;
  return r;
}

}  // namespace

Complex gauss_sum_odoni(const DirichletCharacter& chi) {
  if (!chi.is_primitive()) throw std::invalid_argument("gauss_sum_odoni: chi must be primitive");
  if (chi.comps.size() != 1) throw std::invalid_argument("gauss_sum_odoni: modulus must be p^n");
  const auto& c = chi.comps[0];
  u64 p = c.p;
  int n = c.a;
  u64 q = c.q;
  if (n < 2) throw std::invalid_argument("gauss_sum_odoni: need n >= 2");

  Real sp = sqrt(Real(static_cast<long>(p)));
  auto halfpow = [&](int nn) {  // p^(nn/2)
    Real r(1);
    mpz_class ip;
    mpz_ui_pow_ui(ip.get_mpz_t(), p, static_cast<unsigned long>(nn / 2));
    r = Real(mpz_class(ip));
    if (nn % 2) r *= sp;
    return r;
  };

  // q = 4: the naive sum gives zeta_4 - zeta_4^3 = 2i (the character is odd)
  if (q == 4) return Complex(Real(0), Real(2));
  if (q == 8) {
    if (chi.parity() == 0) return Complex(halfpow(3));
    return Complex(Real(0), halfpow(3));
  }

  mpz_class qz(static_cast<unsigned long>(q));
  mpz_class B;
  u64 b;
  if (p != 2) {
    // chi(1+p) = e(-b/p^(n-1))
    u64 num, den;
    if (!chi.value_exponent(static_cast<i64>(1 + p), num, den))
      throw std::logic_error("odoni: 1+p not a unit");
    // num/den = num/(p^(n-1)(p-1)): b = -num/(p-1) mod p^(n-1)
    u64 pn1 = q / p;
    if (num % (p - 1) != 0) throw std::logic_error("odoni: unexpected exponent");
    u64 bb = (num / (p - 1)) % pn1;
    b = (pn1 - bb) % pn1;
    if (b % p == 0) throw std::logic_error("odoni: p | b, chi not primitive?");
    if (q == 27) {
      B = 10;
    } else {
      mpz_class pk1;
      mpz_ui_pow_ui(pk1.get_mpz_t(), p, static_cast<unsigned long>(n + 1));
      mpz_class L = padic_log1p(mpz_class(static_cast<unsigned long>(p)), p, n + 1);
      mpz_class u = L / static_cast<unsigned long>(p);  // unit, log = p*u
      mpz_class Ainv = u % qz, A;
      if (mpz_invert(A.get_mpz_t(), Ainv.get_mpz_t(), qz.get_mpz_t()) == 0)
        throw std::logic_error("odoni: log unit not invertible");
      mpz_class logA = padic_log1p(A - 1, p, n);
      B = A * (1 - logA) % qz;
      if (B < 0) B += qz;
    }
    u64 Bu = mpz_class(B % qz).get_ui();
    u64 e1 = mulmod(b, Bu, q);
    Complex g = Complex(halfpow(n)) * unit_root(static_cast<long>(e1), static_cast<long>(q)) *
                chi.value(static_cast<i64>(b));
    if (n % 2 == 1) {
      int ls = legendre(static_cast<i64>(b), p);
      long ipow4 = static_cast<long>((p * (p - 1) / 2) % 4);
      Complex ii = unit_root(ipow4, 4);
      g *= Complex(Real(ls)) * ii;
    }
    return g;
  }

  // p = 2, n >= 4; chi(5) = e(b/2^(n-2)) and 5 is the second basis generator
  if (n < 4) throw std::invalid_argument("gauss_sum_odoni: 2^n needs n >= 4 here");
  b = c.exponents[1] % c.orders[1];
  if (b % 2 == 0) throw std::logic_error("odoni: 2 | b, chi not primitive?");
  if (q == 16) {
    B = 13;
  } else {
    mpz_class L = padic_log1p(mpz_class(4), 2, n + 2);
    mpz_class u = L / 4;  // log_2(5) = 4 * unit
    mpz_class Ainv = u % qz, A;
    if (mpz_invert(A.get_mpz_t(), Ainv.get_mpz_t(), qz.get_mpz_t()) == 0)
      throw std::logic_error("odoni: log unit not invertible");
    A = (-A) % qz;
    if (A < 0) A += qz;
    mpz_class logA = padic_log1p(A - 1, 2, n);
    B = A * (1 - logA) % qz;
    if (B < 0) B += qz;
  }
  u64 Bu = mpz_class(B % qz).get_ui();
  u64 e1 = mulmod(b, Bu, q);
  Complex g = Complex(halfpow(n)) * unit_root(static_cast<long>(e1), static_cast<long>(q)) *
              chi.value(static_cast<i64>(b));
  if (n % 2 == 0) {
    g *= unit_root(static_cast<long>(b % 8), 8);
  } else {
    u64 t = ((b * b - 1) / 2 + b) % 8;
    g *= unit_root(static_cast<long>(t), 8);
  }
  // at 2^4 the special value B = 13 fits the even characters only; the odd
  // ones need B = 5, i.e. an extra chi(-1) (checked against the naive sum)
  if (q == 16 && chi.parity() == 1) g = -g;
  return g;
}

Complex gauss_sum(const DirichletCharacter& chi, u64 theta_threshold) {
  u64 N = chi.modulus;
  if (N == 1) return Complex(1L);
  if (!chi.is_primitive()) return gauss_sum_naive(chi);
  Complex acc(1L);
  for (auto& c : chi.comps) {
    DirichletCharacter part = character_from_exponents(c.q, c.exponents);
    Complex g;
    if (c.a >= 2)
      g = gauss_sum_odoni(part);
    else if (c.p > theta_threshold)
      g = gauss_sum_theta(part);
    else
      g = gauss_sum_naive(part);
    acc *= g * part.value(static_cast<i64>((N / c.q) % c.q));
  }
  return acc;
}

Complex gauss_sum_fp(const FieldContext& ctx, u64 n, u64 theta_threshold) {
  n %= (ctx.p - 1);
  if (ctx.p > theta_threshold && n != 0) return gauss_sum_theta_fp(ctx, n);
  return gauss_sum_naive_fp(ctx, n);
}

// --------------------------------------------------------------- Jacobi sums

JacobiExact jacobi_sum_naive(const FieldContext& ctx, const std::vector<u64>& ns, i64 a) {
  u64 p = ctx.p;
  if (!ctx.has_full()) throw std::logic_error("jacobi_sum_naive: full log table required");
  std::size_t k = ns.size();
  std::vector<u64> nred(k);
  for (std::size_t i = 0; i < k; ++i) nred[i] = ns[i] % (p - 1);
  std::vector<mpz_class> coeff(p - 1, 0);
  i64 ar = a % static_cast<i64>(p);
  if (ar < 0) ar += static_cast<i64>(p);

  // odometer over x_1..x_(k-1), x_k determined
  std::vector<u64> x(k, 0);
  while (true) {
    u64 sum = 0;
    for (std::size_t i = 0; i + 1 < k; ++i) sum += x[i];
    x[k - 1] = (static_cast<u64>(ar) + p - sum % p) % p;
    u64 expo = 0;
    bool zero = false;
    for (std::size_t i = 0; i < k && !zero; ++i) {
      if (x[i] == 0) {
        if (nred[i] != 0) zero = true;  // chi(0) = 0 for chi != eps; eps(0) = 1
      } else {
        expo = (expo + mulmod(nred[i], ctx.full_log[x[i]], p - 1)) % (p - 1);
      }
    }
    if (!zero) coeff[expo] += 1;
    // advance odometer over first k-1 coordinates
    std::size_t i = 0;
    for (; i + 1 < k; ++i) {
      if (++x[i] < p) break;
      x[i] = 0;
    }
    if (i + 1 >= k) break;
  }
  JacobiExact out;
  out.cyclo = coeff;
  Complex acc(0L);
  for (u64 j = 0; j + 1 < p; ++j) {
    if (coeff[j] == 0) continue;
    acc += Complex(Real(mpq_class(coeff[j]))) *
           unit_root(static_cast<long>(j), static_cast<long>(p - 1));
  }
  out.value = acc;
  return out;
}

namespace {

Complex jacobi2(const FieldContext& ctx, u64 na, u64 nb, u64 theta_threshold) {
  u64 pm1 = ctx.p - 1;
  u64 s = (na + nb) % pm1;
  if (s != 0) {
    return gauss_sum_fp(ctx, na, theta_threshold) * gauss_sum_fp(ctx, nb, theta_threshold) /
           gauss_sum_fp(ctx, s, theta_threshold);
  }
  // J2(chi, chi^-1) = -chi2(-1) = -(-1)^nb
  return Complex(Real(nb % 2 == 0 ? -1 : 1));
}

Complex jacobi_rec(const FieldContext& ctx, const std::vector<u64>& ns, std::size_t k,
                   u64 theta_threshold) {
  u64 pm1 = ctx.p - 1;
  if (k == 1) return Complex(1L);
  u64 psi = 0;
  for (std::size_t i = 0; i + 1 < k; ++i) psi = (psi + ns[i]) % pm1;
  if (psi != 0) return jacobi_rec(ctx, ns, k - 1, theta_threshold) * jacobi2(ctx, psi, ns[k - 1], theta_threshold);
  // psi = eps: J_k = chi_(k-1)(-1) q J_(k-2)
  Real sign(ns[k - 2] % 2 == 0 ? 1 : -1);
  return Complex(sign * Real(static_cast<long>(ctx.p))) * jacobi_rec(ctx, ns, k - 2, theta_threshold);
}

}  // namespace

Complex jacobi_sum(const FieldContext& ctx, const std::vector<u64>& ns, u64 theta_threshold) {
  u64 pm1 = ctx.p - 1;
  std::size_t k = ns.size();
  std::vector<u64> nred(k);
  std::size_t t = 0;
  u64 total = 0;
  for (std::size_t i = 0; i < k; ++i) {
    nred[i] = ns[i] % pm1;
    if (nred[i] == 0) ++t;
    total = (total + nred[i]) % pm1;
  }
  if (t == k) {
    mpz_class qk;
    mpz_ui_pow_ui(qk.get_mpz_t(), ctx.p, static_cast<unsigned long>(k - 1));
    return Complex(Real(mpz_class(qk)));
  }
  if (t >= 1) return Complex(0L);
  if (total == 0) {
    // J_k = -chi_k(-1) J_(k-1)
    Real sign(nred[k - 1] % 2 == 0 ? -1 : 1);
    return Complex(sign) * jacobi_rec(ctx, nred, k - 1, theta_threshold);
  }
  return jacobi_rec(ctx, nred, k, theta_threshold);
}

JacobiSmallOrder jacobi_small_order_exact(u64 p, int order) {
  if (order != 3 && order != 4) throw std::invalid_argument("jacobi_small_order_exact: order 3 or 4");
  if ((p - 1) % static_cast<u64>(order) != 0)
    throw std::invalid_argument("jacobi_small_order_exact: p != 1 mod order");
  JacobiSmallOrder out;
  out.order = order;
  std::vector<std::pair<long, long>> candidates;
  if (order == 4) {
    auto uv = cornacchia(1, p);
    if (!uv) throw std::logic_error("jacobi_small_order_exact: cornacchia failed");
    long u = static_cast<long>(uv->first), v = static_cast<long>(uv->second);
    if (u % 2 == 0) std::swap(u, v);
    long a = (u % 4 == 3 || u % 4 == -1) ? u : -u;
    candidates = {{a, v}, {a, -v}};
  } else {
    auto AB = cornacchia(3, p);
    if (!AB) throw std::logic_error("jacobi_small_order_exact: cornacchia failed");
    long A = static_cast<long>(AB->first), Bv = static_cast<long>(AB->second);
    // base solution of a^2 - a b + b^2 = p from A^2 + 3 B^2 = p
    long a0 = A + Bv, b0 = 2 * Bv;
    // associates: multiply a + b rho by units +-1, +-rho, +-rho^2, plus conjugation
    std::vector<std::pair<long, long>> assoc;
    auto push_all = [&](long a, long b) {
      assoc.push_back({a, b});
      assoc.push_back({-b, a - b});      // *rho
      assoc.push_back({b - a, -a});      // *rho^2
      assoc.push_back({-a, -b});
      assoc.push_back({b, b - a});
      assoc.push_back({a - b, a});
    };
    push_all(a0, b0);
    push_all(a0 - b0, -b0);  // conjugate
    long q9 = static_cast<long>((p - 2) % 9);
    for (auto& [a, b] : assoc) {
      long am3 = ((a % 3) + 3) % 3;
      long bm3 = ((b % 3) + 3) % 3;
      long s9 = (((a + b) % 9) + 9) % 9;
      if (bm3 == 0 && am3 == 2 && s9 == q9) candidates.push_back({a, b});
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    if (candidates.empty()) throw std::logic_error("jacobi_small_order_exact: no candidate");
  }
  // disambiguate the sign of b with one low-precision theta evaluation of
  // J(chi, chi) = g(chi)^2 / g(chi^2), chi = omega^((p-1)/order)
  PrecisionGuard guard(15);
  FieldContext ctx = make_field(p);
  u64 n = (p - 1) / static_cast<u64>(order);
  Complex g1, g2;
  if (p > 50) {
    u64 M = static_cast<u64>(std::sqrt(19.0 * static_cast<double>(p))) + 10;
    build_log_table_bounded(ctx, M);
    g1 = gauss_sum_theta_fp(ctx, n);
    g2 = gauss_sum_theta_fp(ctx, 2 * n);
  } else {
    build_log_table_full(ctx);
    g1 = gauss_sum_naive_fp(ctx, n);
    g2 = gauss_sum_naive_fp(ctx, 2 * n);
  }
  Complex jref = g1 * g1 / g2;
  Real best(1e30);
  for (auto& [a, b] : candidates) {
    Complex cand = order == 4 ? Complex(Real(a), Real(b))
                              : Complex(Real(a), Real(0)) +
                                    Complex(Real(b)) * unit_root(1, 3);
    Real d = abs(cand - jref);
    if (d < best) {
      best = d;
      out.a = a;
      out.b = b;
    }
  }
  return out;
}

std::pair<Complex, Complex> hasse_davenport_product(const FieldContext& ctx, u64 n_chi, u64 m) {
  u64 p = ctx.p;
  u64 pm1 = p - 1;
  if (pm1 % m != 0) throw std::invalid_argument("hasse_davenport_product: need m | p-1");
  u64 r = pm1 / m;
  Complex lhs(1L);
  for (u64 a = 0; a < m; ++a) lhs *= gauss_sum_naive_fp(ctx, (n_chi + a * r) % pm1);
  // rhs = chi^(-m)(m) k(p,1,m) p^((m-1)/2) g(chi^m)
  u64 lm = ctx.log(m % p);
  u64 e = mulmod(mulmod(n_chi % pm1, m % pm1, pm1), lm, pm1);
  Complex chim = unit_root(static_cast<long>((pm1 - e) % pm1), static_cast<long>(pm1));
  Complex kf;
  if (m % 2 == 1) {
    mpz_class pz(static_cast<unsigned long>(p)), mz(static_cast<unsigned long>(m));
    kf = Complex(Real(mpz_jacobi(pz.get_mpz_t(), mz.get_mpz_t())));
  } else {
    i64 arg = static_cast<i64>(m / 2);
    if ((m / 2 + 1) % 2 == 1) arg = -arg;
    kf = Complex(Real(legendre(arg, p)));
    if (p % 4 == 3) kf *= Complex(Real(0), Real(1));
  }
  Real ppow(1);
  {
    mpz_class t;
    mpz_ui_pow_ui(t.get_mpz_t(), p, static_cast<unsigned long>((m - 1) / 2));
    ppow = Real(mpz_class(t));
    if ((m - 1) % 2) ppow *= sqrt(Real(static_cast<long>(p)));
  }
  Complex rhs = chim * kf * Complex(ppow) * gauss_sum_naive_fp(ctx, mulmod(n_chi, m, pm1));
  return {lhs, rhs};
}

// ---------------------------------------------------------------- Kloosterman

Real kloosterman_naive(i64 m, i64 n, u64 N) {
  if (N == 1) return Real(1);
  std::vector<Complex> zN(N);
  for (u64 k = 0; k < N; ++k) zN[k] = unit_root(static_cast<long>(k), static_cast<long>(N));
  auto red = [&](i64 v) {
    i64 r = v % static_cast<i64>(N);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(N) : r);
  };
  u64 mr = red(m), nr = red(n);
  Complex acc(0L);
  for (u64 x = 1; x < N; ++x) {
    if (gcd_u64(x, N) != 1) continue;
    u64 xinv = invmod(x, N);
    acc += zN[(mulmod(mr, x, N) + mulmod(nr, xinv, N)) % N];
  }
  return acc.re;  // imaginary part cancels by x <-> x^{-1} symmetry... (x -> -x)
}

namespace {

u64 sqrt_mod_pa(u64 Q, u64 p, int a) {
  // Hensel lift of a root mod p
  auto r0 = sqrt_mod_p(Q % p, p);
  if (!r0) throw std::logic_error("sqrt_mod_pa: non-residue");
  u64 q = p, t = *r0;
  for (int i = 1; i < a; ++i) {
    u64 qn = q * p;
    u64 f = (mulmod(t, t, qn) + qn - Q % qn) % qn;
    u64 corr = mulmod(f / q % p, invmod(mulmod(2, t, p) % p, p), p);
    t = (t + qn - mulmod(corr, q, qn) % qn) % qn;
    q = qn;
  }
  return t;
}

Real kloosterman_pp(i64 m, i64 n, u64 p, int a) {
  u64 q = 1;
  for (int i = 0; i < a; ++i) q *= p;
  if (p == 2 || a == 1) return kloosterman_naive(m, n, q);
  auto red = [&](i64 v) {
    i64 r = v % static_cast<i64>(q);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(q) : r);
  };
  u64 mr = red(m), nr = red(n);
  if (mr % p == 0 || nr % p == 0) return kloosterman_naive(m, n, q);
  u64 Q = mulmod(mr, nr, q);  // K(m,n,q) = K(1, mn, q)
  if (legendre(static_cast<i64>(Q % p), p) == -1) return Real(0);
  u64 t = sqrt_mod_pa(Q, p, a);
  Real lead(2);
  {
    mpz_class w;
    mpz_ui_pow_ui(w.get_mpz_t(), p, static_cast<unsigned long>(a / 2));
    lead *= Real(mpz_class(w));
    if (a % 2) lead *= sqrt(Real(static_cast<long>(p)));
  }
  // angle 4 pi t / q = 2 pi (2t mod q)/q
  u64 ang = mulmod(2, t, q);
  Real c = cos(const_pi() * 2 * static_cast<long>(ang) / static_cast<long>(q));
  Real s = sin(const_pi() * 2 * static_cast<long>(ang) / static_cast<long>(q));
  if (a % 2 == 0) return lead * c;
  int ls = legendre(static_cast<i64>(t), p);
  if (p % 4 == 1) return lead * Real(ls) * c;
  return -lead * Real(ls) * s;
}

}  // namespace

Real kloosterman(i64 m, i64 n, u64 N) {
  if (N == 1) return Real(1);
  auto red = [](i64 v, u64 q) {
    i64 r = v % static_cast<i64>(q);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(q) : r);
  };
  auto fs = factor(N);
  Real acc(1);
  for (auto& [p, a] : fs) {
    u64 q = 1;
    for (int i = 0; i < a; ++i) q *= p;
    u64 c = (N / q) % q;
    u64 cbar = invmod(c, q);
    i64 mm = static_cast<i64>(mulmod(red(m, q), cbar, q));
    i64 nn = static_cast<i64>(mulmod(red(n, q), cbar, q));
    acc *= kloosterman_pp(mm, nn, p, a);
  }
  return acc;
}

}  // namespace lfunkit
