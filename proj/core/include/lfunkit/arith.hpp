#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lfunkit {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }

inline u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 m);
bool is_prime(u64 n);
int legendre(i64 a, u64 p);  // (a/p) for odd prime p

struct PrimeSieve {
  u64 limit = 0;
  std::vector<u64> primes;
};
PrimeSieve sieve_primes(u64 limit);

std::vector<std::pair<u64, int>> factor(u64 n);  // trial division + Pollard rho

// smallest generator of (Z/pZ)*, deterministic
u64 primitive_root(u64 p);

u64 dlog_bsgs(u64 p, u64 g, u64 x);  // log_g(x) mod p-1, O(sqrt(p))

// Prime field with a chosen primitive root and optional discrete-log tables.
// Immutable once the tables are built; all queries are const.
struct FieldContext {
  u64 p = 0;
  u64 g = 0;
  std::vector<std::uint32_t> full_log;     // index x in [1,p-1], value log_g(x)
  std::vector<std::uint32_t> bounded_log;  // index x in [1,bound]
  u64 bound = 0;

  bool has_full() const { return !full_log.empty(); }
  bool has_bounded() const { return !bounded_log.empty(); }

  // log_g(x); uses the cheapest available source (table, else BSGS)
  u64 log(u64 x) const;
};

FieldContext make_field(u64 p);
// Full table is built by iterating powers of g (O(p) time, O(p) memory).
// A bounded table runs the same iteration but only retains entries <= bound.
void build_log_table_full(FieldContext& ctx, u64 max_entries = 100000000ULL);
void build_log_table_bounded(FieldContext& ctx, u64 bound);

// x with x^2 = a (mod p), via Tonelli-Shanks; nullopt if a is a non-residue
std::optional<u64> sqrt_mod_p(u64 a, u64 p);

// x with x^2 = -d (mod p), normalized to p/2 < x < p; the d=1 path searches
// incrementally for z with (z/p) = -1 and uses z^((p-1)/4)
std::optional<u64> sqrt_minus_d_mod_p(u64 d, u64 p);

// (u,v) with u^2 + d v^2 = p, u,v > 0; Euclid remainder sequence on (p, x)
// stopped at the first a_n with a_n^2 < p
std::optional<std::pair<u64, u64>> cornacchia(u64 d, u64 p);

// CRT: x = r1 (mod m1), x = r2 (mod m2) for coprime m1, m2
mpz_class crt(const mpz_class& r1, const mpz_class& m1, const mpz_class& r2,
              const mpz_class& m2);

inline u64 gcd_u64(u64 a, u64 b) {
  while (b) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline mpz_class factorial_mpz(long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

}  // namespace lfunkit
