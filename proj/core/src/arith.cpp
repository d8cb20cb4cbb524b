#include "lfunkit/arith.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace lfunkit {

u64 invmod(u64 a, u64 m) {
  i64 t = 0, newt = 1;
  i64 r = static_cast<i64>(m), newr = static_cast<i64>(a % m);
  while (newr != 0) {
    i64 q = r / newr;
    t -= q * newt;
    std::swap(t, newt);
    r -= q * newr;
    std::swap(r, newr);
  }
  if (r != 1) throw std::domain_error("invmod: not invertible");
  return static_cast<u64>(t < 0 ? t + static_cast<i64>(m) : t);
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  // deterministic Miller-Rabin for 64-bit with the standard base set
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

int legendre(i64 a, u64 p) {
  i64 m = a % static_cast<i64>(p);
  if (m < 0) m += static_cast<i64>(p);
  if (m == 0) return 0;
  u64 r = powmod(static_cast<u64>(m), (p - 1) / 2, p);
  return r == 1 ? 1 : -1;
}

PrimeSieve sieve_primes(u64 limit) {
  PrimeSieve s;
  s.limit = limit;
  if (limit < 2) return s;
  std::vector<bool> comp(limit + 1, false);
  for (u64 i = 2; i * i <= limit; ++i) {
    if (!comp[i])
      for (u64 j = i * i; j <= limit; j += i) comp[j] = true;
  }
  for (u64 i = 2; i <= limit; ++i)
    if (!comp[i]) s.primes.push_back(i);
  return s;
}

namespace {
u64 pollard_rho(u64 n) {
  if ((n & 1) == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 x = 2, y = 2, d = 1;
    while (d == 1) {
      x = (mulmod(x, x, n) + c) % n;
      y = (mulmod(y, y, n) + c) % n;
      y = (mulmod(y, y, n) + c) % n;
      d = gcd_u64(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void factor_rec(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}
}  // namespace

std::vector<std::pair<u64, int>> factor(u64 n) {
  std::vector<u64> fs;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    while (n % p == 0) {
      fs.push_back(p);
      n /= p;
    }
  }
  if (n > 1) factor_rec(n, fs);
  std::sort(fs.begin(), fs.end());
  std::vector<std::pair<u64, int>> out;
  for (u64 q : fs) {
    if (!out.empty() && out.back().first == q)
      out.back().second++;
    else
      out.push_back({q, 1});
  }
  return out;
}

u64 primitive_root(u64 p) {
  if (!is_prime(p)) throw std::domain_error("primitive_root: p not prime");
  if (p == 2) return 1;
  auto fs = factor(p - 1);
  for (u64 g = 2; g < p; ++g) {
    bool ok = true;
    for (auto& [q, e] : fs) {
      (void)e;
      if (powmod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw std::logic_error("primitive_root: none found");
}

u64 dlog_bsgs(u64 p, u64 g, u64 x) {
  x %= p;
  if (x == 0) throw std::domain_error("dlog: x = 0");
  u64 n = p - 1;
  u64 m = 1;
  while (m * m < n) ++m;
  std::unordered_map<u64, u64> baby;
  baby.reserve(m * 2);
  u64 cur = 1;
  for (u64 j = 0; j < m; ++j) {
    baby.emplace(cur, j);
    cur = mulmod(cur, g, p);
  }
  u64 gm_inv = powmod(invmod(g, p), m, p);
  u64 y = x;
  for (u64 i = 0; i <= m; ++i) {
    auto it = baby.find(y);
    if (it != baby.end()) return (i * m + it->second) % n;
    y = mulmod(y, gm_inv, p);
  }
  throw std::logic_error("dlog: not found");
}

FieldContext make_field(u64 p) {
  FieldContext ctx;
  ctx.p = p;
  ctx.g = primitive_root(p);
  return ctx;
}

void build_log_table_full(FieldContext& ctx, u64 max_entries) {
  if (ctx.p > max_entries)
    throw std::length_error("build_log_table_full: p exceeds memory budget");
  ctx.full_log.assign(ctx.p, 0);
  u64 cur = 1;
  for (u64 k = 0; k < ctx.p - 1; ++k) {
    ctx.full_log[cur] = static_cast<std::uint32_t>(k);
    cur = mulmod(cur, ctx.g, ctx.p);
  }
}

void build_log_table_bounded(FieldContext& ctx, u64 bound) {
  if (bound > ctx.p - 1) bound = ctx.p - 1;
  ctx.bound = bound;
  ctx.bounded_log.assign(bound + 1, 0);
  u64 cur = 1;
  for (u64 k = 0; k < ctx.p - 1; ++k) {
    if (cur <= bound) ctx.bounded_log[cur] = static_cast<std::uint32_t>(k);
    cur = mulmod(cur, ctx.g, ctx.p);
  }
}

u64 FieldContext::log(u64 x) const {
  x %= p;
  if (x == 0) throw std::domain_error("FieldContext::log: x = 0");
  if (has_full()) return full_log[x];
  if (has_bounded() && x <= bound) return bounded_log[x];
  return dlog_bsgs(p, g, x);
}

std::optional<u64> sqrt_mod_p(u64 a, u64 p) {
  a %= p;
  if (a == 0) return 0;
  if (p == 2) return a;
  if (legendre(static_cast<i64>(a), p) != 1) return std::nullopt;
  if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
  // Tonelli-Shanks
  u64 q = p - 1;
  int s = 0;
  while ((q & 1) == 0) q >>= 1, ++s;
  u64 z = 2;
  while (legendre(static_cast<i64>(z), p) != -1) ++z;
  u64 m = static_cast<u64>(s);
  u64 c = powmod(z, q, p);
  u64 t = powmod(a, q, p);
  u64 r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    u64 t2 = t;
    u64 i = 0;
    while (t2 != 1) {
      t2 = mulmod(t2, t2, p);
      ++i;
    }
    u64 b = c;
    for (u64 j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

std::optional<u64> sqrt_minus_d_mod_p(u64 d, u64 p) {
  if (p == 2) return std::nullopt;
  u64 a = (p - d % p) % p;
  std::optional<u64> x;
  if (d % p == 1) {
    if (p % 4 != 1) return std::nullopt;
    // incremental z = 2, 3, ... with (z/p) = -1, then x = z^((p-1)/4)
    u64 z = 2;
    while (legendre(static_cast<i64>(z), p) != -1) ++z;
    x = powmod(z, (p - 1) / 4, p);
  } else {
    x = sqrt_mod_p(a, p);
    if (!x) return std::nullopt;
  }
  u64 v = *x;
  if (v <= p / 2) v = p - v;
  return v;
}

std::optional<std::pair<u64, u64>> cornacchia(u64 d, u64 p) {
  if (d >= p) {
    // tiny cases by direct search
    for (u64 v = 1; d * v * v < p; ++v) {
      u64 rem = p - d * v * v;
      u64 u = static_cast<u64>(std::sqrt(static_cast<double>(rem)));
      for (u64 uu = u > 1 ? u - 1 : 0; uu <= u + 1; ++uu)
        if (uu * uu == rem && uu > 0) return std::make_pair(uu, v);
    }
    return std::nullopt;
  }
  auto x0 = sqrt_minus_d_mod_p(d, p);
  if (!x0) return std::nullopt;
  u64 a = p, b = *x0;
  while (b * b >= p) {
    u64 r = a % b;
    a = b;
    b = r;
  }
  u64 u = b;
  u64 rem = p - u * u;
  if (rem % d != 0) return std::nullopt;
  u64 v2 = rem / d;
  u64 v = static_cast<u64>(std::sqrt(static_cast<double>(v2)));
  while (v * v < v2) ++v;
  while (v * v > v2) --v;
  if (v * v != v2 || v == 0) return std::nullopt;
  return std::make_pair(u, v);
}

mpz_class crt(const mpz_class& r1, const mpz_class& m1, const mpz_class& r2,
              const mpz_class& m2) {
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), m1.get_mpz_t(), m2.get_mpz_t()) == 0)
    throw std::domain_error("crt: moduli not coprime");
  mpz_class t = ((r2 - r1) * inv) % m2;
  if (t < 0) t += m2;
  return r1 + m1 * t;
}

}  // namespace lfunkit
