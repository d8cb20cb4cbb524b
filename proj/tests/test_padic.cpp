#include <doctest.h>

#include <cmath>

#include "lfunkit/padic.hpp"
#include "test_util.hpp"

using namespace lfunkit;

TEST_CASE("p-adic gamma: digit string and factorial identity") {
  // Gamma_5(-1/4) = 4 + 4*5 + 5^3 + 3*5^4 + 2*5^5 + 2*5^6 + 2*5^7 + 4*5^8 + ...
  PadicInt g = gamma_p(mpq_class(-1, 4), 5, 9);
  mpz_class expect = 4 + 4 * 5 + 125 + 3 * 625 + 2 * 3125 + 2 * 15625 + 2 * 78125;
  expect += 4 * mpz_class(390625);
  CHECK(g.value == expect);
  // Gamma_5(-1/4)^2/16 is a 5-adic root of 5X^2 + 4X + 1 (mod 5^8)
  {
    PadicInt g8 = gamma_p(mpq_class(-1, 4), 5, 8);
    mpz_class m = g8.modulus();
    mpz_class x = g8.value * g8.value % m;
    mpz_class inv16;
    mpz_class c16(16);
    mpz_invert(inv16.get_mpz_t(), c16.get_mpz_t(), m.get_mpz_t());
    x = x * inv16 % m;
    mpz_class val = (5 * x * x + 4 * x + 1) % m;
    CHECK(val == 0);
  }
  // Gamma_p(-r) = 1/r! mod p^2 for p = 11, 0 <= r < p-1
  {
    u64 p = 11;
    mpz_class p2(static_cast<long>(p * p));
    for (long r = 0; r < 10; ++r) {
      PadicInt g2 = gamma_p(mpq_class(-r), p, 2);
      mpz_class rf = factorial_mpz(r);
      mpz_class rfinv;
      mpz_invert(rfinv.get_mpz_t(), rf.get_mpz_t(), p2.get_mpz_t());
      CHECK(g2.value == rfinv);
    }
  }
}

TEST_CASE("p-adic gamma derivative structure via finite differences") {
  // Gamma'_p(-r) = (-gamma_p + H_r)/r! with gamma_p = W_p mod p:
  // check (Gamma_p(-r + p^2) - Gamma_p(-r))/p^2 = Gamma'_p(-r) mod p for p = 5, 7
  for (u64 p : {5ULL, 7ULL}) {
    long k = 3;
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p, static_cast<unsigned long>(k));
    mpz_class p2(static_cast<long>(p * p));
    u64 W = wilson_quotient(p);
    for (long r = 0; r + 1 < static_cast<long>(p); ++r) {
      PadicInt a = gamma_p(mpq_class(-r), p, k);
      PadicInt b = gamma_p(mpq_class(-r) + mpq_class(p2), p, k);
      mpz_class diff = (b.value - a.value) % pk;
      if (diff < 0) diff += pk;
      CHECK(diff % p2 == 0);
      mpz_class deriv = diff / p2;  // Gamma'_p(-r) mod p
      // expected: (-W_p + H_r)/r! mod p
      u64 Hr = 0;
      for (long j = 1; j <= r; ++j) Hr = (Hr + invmod(j, p)) % p;
      u64 rfinv = invmod(mpz_class(factorial_mpz(r) % p).get_ui() % p, p);
      u64 expect = mulmod((Hr + p - W % p) % p, rfinv, p);
      CHECK(mpz_class(deriv % p) == mpz_class(static_cast<long>(expect)));
    }
  }
}

TEST_CASE("teichmuller") {
  PadicInt t = teichmuller(2, 5, 2);
  CHECK(t.value == 7);  // 2^5 mod 25
  CHECK(teichmuller(1, 7, 5).value == 1);
  // omega(z)^(p-1) = 1 mod p^3 at z = 3, p = 7
  PadicInt w = teichmuller(3, 7, 3);
  mpz_class m = w.modulus();
  mpz_class acc(1);
  for (int i = 0; i < 6; ++i) acc = acc * w.value % m;
  CHECK(acc == 1);
  CHECK_THROWS(teichmuller(10, 5, 3));
}

TEST_CASE("wilson quotient") {
  CHECK(wilson_quotient(5) == 0);  // (24+1)/5 = 5 = 0 mod 5
  for (u64 p : {7ULL, 11ULL, 13ULL}) {
    // direct: ((p-1)! + 1)/p mod p with exact integers
    mpz_class f = factorial_mpz(static_cast<long>(p - 1)) + 1;
    CHECK(f % p == 0);
    mpz_class w = (f / p) % p;
    CHECK(mpz_class(static_cast<long>(wilson_quotient(p))) == w);
  }
}

TEST_CASE("gross-koblitz digits: r = 0 gives -1") {
  auto [val, unit] = gross_koblitz_gauss_mod_p2(0, 11);
  CHECK(val == 0);
  CHECK(unit == 121 - 1);  // -1 mod 11^2
}

TEST_CASE("s_mod_p2 basics") {
  // mod-p truncation: S = sum (5r)!/r!^5 z^r mod p at p = 31, z = 3
  u64 p = 31;
  mpz_class a = s_mod_p2(p, 3);
  mpz_class expect(0);
  for (u64 r = 1; r <= (p - 1) / 5; ++r) {
    mpz_class num = factorial_mpz(static_cast<long>(5 * r));
    mpz_class den;
    mpz_pow_ui(den.get_mpz_t(), factorial_mpz(static_cast<long>(r)).get_mpz_t(), 5);
    mpz_class dinv;
    mpz_class pz(static_cast<long>(p));
    mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t());
    mpz_class zr;
    mpz_class z3(3);
    mpz_powm_ui(zr.get_mpz_t(), z3.get_mpz_t(), static_cast<unsigned long>(r), pz.get_mpz_t());
    expect = (expect + num % p * dinv % p * zr) % p;
  }
  CHECK(a % p == expect);
  CHECK_THROWS(s_mod_p2(11, 22));  // p | z
}

TEST_CASE("s_reconstruct threshold and congruences") {
  CHECK_THROWS_AS(s_reconstruct(61, mpz_class(5)), std::domain_error);
  // (p-1) | S and S = a mod p^2 for a battery of primes and z
  for (u64 p : {67ULL, 71ULL, 101ULL, 151ULL, 211ULL, 307ULL, 401ULL, 499ULL}) {
    for (i64 z : {2LL, 3LL, 5LL, 7LL}) {
      mpz_class a = s_mod_p2(p, z);
      mpz_class S = s_reconstruct(p, a);
      CHECK(S % (p - 1) == 0);
      CHECK(S % (p * p) == a);
      // Deligne-range: |S - p^4| < 4 p^(5/2)
      mpz_class p4;
      mpz_ui_pow_ui(p4.get_mpz_t(), p, 4);
      mpz_class dev = S - p4;
      if (dev < 0) dev = -dev;
      mpz_class bound(static_cast<long>(4 * std::pow(static_cast<double>(p), 2.5)) + 1);
      CHECK(dev < bound);
    }
  }
}

TEST_CASE("paper numerical example: p = 10^6 + 3, z = 2") {
  u64 p = 1000003;
  mpz_class a = s_mod_p2(p, 2);
  CHECK(a == mpz_class("356022712041"));
  CHECK(s_reconstruct(p, a) == mpz_class("1000012000056356142712140"));
}
