#include "lfunkit/padic.hpp"

#include <stdexcept>
#include <vector>

namespace lfunkit {

PadicInt gamma_p(const mpq_class& s, u64 p, int k, u64 max_loop) {
  PadicInt out;
  out.p = p;
  out.k = k;
  mpz_class pk = out.modulus();
  if (mpz_divisible_ui_p(s.get_den().get_mpz_t(), static_cast<unsigned long>(p)))
    throw std::domain_error("gamma_p: s is not a p-adic integer");
  mpz_class deninv;
  mpz_class den = s.get_den() % pk;
  mpz_invert(deninv.get_mpz_t(), den.get_mpz_t(), pk.get_mpz_t());
  mpz_class m = (s.get_num() % pk) * deninv % pk;
  if (m <= 0) m += pk;  // positive integer representative of s mod p^k
  if (mpz_cmp_ui(pk.get_mpz_t(), max_loop) > 0)
    throw std::length_error("gamma_p: p^k exceeds compute budget");
  u64 mm = mpz_get_ui(m.get_mpz_t());
  u64 pku = mpz_get_ui(pk.get_mpz_t());
  u64 acc = 1 % pku;
  for (u64 j = 1; j < mm; ++j) {
    if (j % p == 0) continue;
    acc = mulmod(acc, j, pku);
  }
  if (mm % 2 == 1) acc = (pku - acc) % pku;  // (-1)^m with m = mm
  out.value = mpz_class(acc);
  return out;
}

PadicInt teichmuller(const mpz_class& z, u64 p, int k) {
  if (mpz_divisible_ui_p(z.get_mpz_t(), static_cast<unsigned long>(p)))
    throw std::domain_error("teichmuller: p | z");
  PadicInt out;
  out.p = p;
  out.k = k;
  mpz_class pk = out.modulus();
  mpz_class t = z % pk;
  if (t < 0) t += pk;
  for (int j = 0; j < k + 2; ++j) {
    mpz_class next;
    mpz_powm_ui(next.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(p), pk.get_mpz_t());
    if (next == t) break;
    t = next;
  }
  out.value = t;
  return out;
}

u64 wilson_quotient(u64 p) {
  u64 p2 = p * p;
  u64 f = 1;
  for (u64 j = 2; j < p; ++j) f = mulmod(f, j, p2);
  // (p-1)! = -1 + p W_p mod p^2
  u64 t = (f + 1) % p2;
  if (t % p != 0) throw std::logic_error("wilson_quotient: Wilson's theorem violated");
  return (t / p) % p;
}

std::pair<long, mpz_class> gross_koblitz_gauss_mod_p2(u64 r, u64 p) {
  if (r >= p - 1) throw std::domain_error("gross_koblitz_gauss_mod_p2: need 0 <= r < p-1");
  u64 p2 = p * p;
  // unit = -(1/r!)(1 - p r (H_r - W_p)) mod p^2
  u64 rf = 1, Hr = 0;
  for (u64 j = 1; j <= r; ++j) {
    rf = mulmod(rf, j, p2);
    Hr = (Hr + invmod(j, p2)) % p2;
  }
  u64 W = wilson_quotient(p);
  u64 corr = (1 + p2 - mulmod(mulmod(p, r % p2, p2), (Hr + p2 - W) % p2, p2)) % p2;
  u64 unit = mulmod(invmod(rf, p2), corr, p2);
  unit = (p2 - unit) % p2;
  return {static_cast<long>(r), mpz_class(unit)};
}

mpz_class s_mod_p2(u64 p, i64 z) {
  if (p < 7 || !is_prime(p)) throw std::domain_error("s_mod_p2: p must be prime >= 7");
  u64 p2 = p * p;
  i64 zr = z % static_cast<i64>(p2);
  if (zr < 0) zr += static_cast<i64>(p2);
  u64 zu = static_cast<u64>(zr);
  if (zu % p == 0) throw std::domain_error("s_mod_p2: p | z");

  u64 R1 = (p - 1) / 5, R2 = 2 * (p - 1) / 5;
  // batch inverses of 1..p-1 mod p^2
  std::vector<u64> inv(p, 0);
  inv[1] = 1;
  for (u64 i = 2; i < p; ++i) inv[i] = mulmod(p2 - p2 / i, inv[p2 % i], p2);

  u64 zp = powmod(zu, p, p2);
  u64 acc = 0;
  {
    u64 F = 1;       // (5r)!/r!^5
    u64 H5 = 0, H1 = 0;  // H_(5r), H_r
    u64 zpow = 1;    // z^(p r)
    for (u64 r = 1; r <= R1; ++r) {
      for (u64 j = 5 * r - 4; j <= 5 * r; ++j) {
        F = mulmod(F, j, p2);
        H5 = (H5 + inv[j]) % p2;
      }
      u64 i5 = inv[r];
      u64 i52 = mulmod(i5, i5, p2);
      F = mulmod(F, mulmod(mulmod(i52, i52, p2), i5, p2), p2);
      H1 = (H1 + inv[r]) % p2;
      zpow = mulmod(zpow, zp, p2);
      u64 fac = (1 + mulmod(mulmod(5 * r % p2, p, p2), (H5 + p2 - H1) % p2, p2)) % p2;
      acc = (acc + mulmod(mulmod(F, fac, p2), zpow, p2)) % p2;
    }
    // second range: -p (5r - (p-1))!/r!^5 z^r
    u64 G = 1;  // running (5r-(p-1))!
    u64 invr5 = 1;  // inv(r!)^5, rebuilt through r = R1 then extended
    for (u64 r = 1; r <= R1; ++r) {
      u64 i5 = inv[r];
      u64 i52 = mulmod(i5, i5, p2);
      invr5 = mulmod(invr5, mulmod(mulmod(i52, i52, p2), i5, p2), p2);
    }
    u64 zpow2 = powmod(zu, R1, p2);
    for (u64 r = R1 + 1; r <= R2; ++r) {
      u64 i5 = inv[r];
      u64 i52 = mulmod(i5, i5, p2);
      invr5 = mulmod(invr5, mulmod(mulmod(i52, i52, p2), i5, p2), p2);
      u64 lo5 = 5 * (r - 1) >= (p - 1) ? 5 * (r - 1) - (p - 1) + 1 : 1;
      u64 hi5 = 5 * r - (p - 1);
      for (u64 j = lo5; j <= hi5; ++j) G = mulmod(G, j, p2);
      zpow2 = mulmod(zpow2, zu, p2);
      u64 term = mulmod(mulmod(G, invr5, p2), zpow2, p2);
      acc = (acc + p2 - mulmod(p % p2, term, p2)) % p2;
    }
  }
  return mpz_class(acc);
}

mpz_class s_reconstruct(u64 p, const mpz_class& a) {
  if (p < 67) throw std::domain_error("s_reconstruct: need p >= 67 (8 p^(5/2) < p^2 (p-1))");
  mpz_class pz(static_cast<unsigned long>(p));
  mpz_class p2 = pz * pz;
  mpz_class M = (pz - 1) * p2;
  mpz_class x = (a - (1 + a) * p2) % M;
  if (x < 0) x += M;
  if (2 * x > M) x -= M;  // |S - p^4| < 4 p^(5/2) < M/2 centers the residue
  return pz * pz * pz * pz + x;
}

}  // namespace lfunkit
