#pragma once

#include <gmpxx.h>

#include <utility>

#include "lfunkit/arith.hpp"

namespace lfunkit {

// Residue mod p^k with arithmetic closed mod p^k; division only by units.
struct PadicInt {
  u64 p = 0;
  int k = 0;
  mpz_class value;

  mpz_class modulus() const {
    mpz_class m;
    mpz_ui_pow_ui(m.get_mpz_t(), p, static_cast<unsigned long>(k));
    return m;
  }
};

// Morita p-adic gamma via the product formula at the positive integer
// m = s mod p^k; the product loop is O(p^k), gated by max_loop
PadicInt gamma_p(const mpq_class& s, u64 p, int k, u64 max_loop = 100000000ULL);

// Teichmuller lift: limit of z^(p^j) mod p^k
PadicInt teichmuller(const mpz_class& z, u64 p, int k);

u64 wilson_quotient(u64 p);  // ((p-1)! + 1)/p mod p

// f=1 Gross-Koblitz digits: g_q(r) = -(pi^r / r!)(1 - p r (H_r - W_p) + O(p^2)).
// Returns (r = pi-valuation, unit mod p^2); 0 <= r < p-1.
std::pair<long, mpz_class> gross_koblitz_gauss_mod_p2(u64 r, u64 p);

// S(p;z) mod p^2 by the Gross-Koblitz two-range formula, cost ~O(p)
mpz_class s_mod_p2(u64 p, i64 z);
// exact S(p;z) from the mod-p^2 residue; needs 8 p^(5/2) < p^2 (p-1), p >= 67
mpz_class s_reconstruct(u64 p, const mpz_class& a);

}  // namespace lfunkit
